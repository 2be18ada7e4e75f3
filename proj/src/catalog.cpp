#include "picard/catalog.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "picard/errors.hpp"

namespace picard {

namespace {

bool entry_less(const CatalogEntry& a, const CatalogEntry& b) {
  return canonical_less(Block::simple(a.simple_dim, a.albert), Block::simple(b.simple_dim, b.albert));
}

std::string describe(const CatalogEntry& e) {
  return "{dim " + std::to_string(e.simple_dim) + ", " + e.albert.to_string() + "}";
}

bool is_supersingular_entry(const CatalogEntry& e) {
  return e.simple_dim == 1 && e.albert == AlbertType::type_iii(1);
}

// Endomorphism algebras of simple abelian surfaces over an algebraically
// closed field.
bool simple_surface_algebra(const AlbertType& t) {
  return t == AlbertType::type_i(1) || t == AlbertType::type_i(2) || t == AlbertType::type_ii(1) ||
         t == AlbertType::type_iv(2, 1);
}

}  // namespace

Catalog::Catalog(CatalogMode mode, std::vector<CatalogEntry> entries, const CharContext& ctx)
    : mode_(mode), entries_(std::move(entries)) {
  for (const auto& e : entries_) {
    if (e.simple_dim < 1) throw ValidationError("catalog entry " + describe(e) + ": dim must be >= 1");
    if (!restrictions_ok(e.albert, e.simple_dim, ctx)) {
      throw ValidationError("catalog entry " + describe(e) +
                            " violates the divisibility restrictions in characteristic " +
                            to_string(ctx.mode));
    }
    if (is_supersingular_entry(e) && e.classes != ClassCount::one) {
      throw ValidationError("catalog entry " + describe(e) +
                            ": the supersingular curve forms a single isogeny class");
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(), entry_less);
  for (std::size_t i = 1; i < entries_.size(); ++i) {
    if (entries_[i].simple_dim == entries_[i - 1].simple_dim &&
        entries_[i].albert == entries_[i - 1].albert) {
      throw ValidationError("duplicate catalog entry " + describe(entries_[i]));
    }
  }
}

int Catalog::max_simple_dim() const noexcept {
  int m = 0;
  for (const auto& e : entries_) m = std::max(m, e.simple_dim);
  return m;
}

bool Catalog::entry_enabled(const CatalogEntry& e, const CharContext& ctx) const {
  switch (e.condition) {
    case Condition::always:
      return true;
    case Condition::p_split:
      if (ctx.p_split == SplitPolicy::split) return true;
      if (ctx.p_split == SplitPolicy::nonsplit) return false;
      return mode_ == CatalogMode::upper;
    case Condition::unknown:
      return mode_ == CatalogMode::upper;
  }
  return false;
}

Catalog builtin(CatalogMode mode, int g_max, const CharContext& ctx) {
  if (g_max < 1) throw PreconditionError("catalog dimension bound must be >= 1");
  std::vector<CatalogEntry> entries;
  const bool charp = ctx.positive_char();
  switch (mode) {
    case CatalogMode::upper: {
      const std::int64_t cap = 2LL * g_max * g_max - g_max;
      for (int n = 1; n <= g_max; ++n) {
        for (const auto& t : admissible_types(n, ctx, cap)) {
          if (n == 2 && !simple_surface_algebra(t)) continue;
          CatalogEntry e{n, t, ClassCount::unbounded, Condition::always};
          if (n == 1 && t == AlbertType::type_iii(1)) e.classes = ClassCount::one;
          if (n >= 2 && t == AlbertType::type_iv(1, n)) e.condition = Condition::p_split;
          entries.push_back(e);
        }
      }
      break;
    }
    case CatalogMode::paper:
    case CatalogMode::conservative: {
      entries.push_back({1, AlbertType::type_iv(1, 1), ClassCount::unbounded, Condition::always});
      if (charp) entries.push_back({1, AlbertType::type_iii(1), ClassCount::one, Condition::always});
      for (int n = 1; n <= g_max; ++n) {
        entries.push_back({n, AlbertType::type_i(1), ClassCount::unbounded, Condition::always});
      }
      if (mode == CatalogMode::paper && charp) {
        for (int n = 3; n <= g_max; ++n) {
          entries.push_back({n, AlbertType::type_iv(1, n), ClassCount::unbounded, Condition::p_split});
        }
      }
      break;
    }
    case CatalogMode::file:
      throw ValidationError("'file' catalogs are loaded, not built in");
  }
  return Catalog(mode, std::move(entries), ctx);
}

Catalog parse_catalog(std::string_view json_text, const CharContext& ctx) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, std::string("catalog JSON: ") + e.what());
  }
  if (!doc.is_array()) throw ParseError(std::string::npos, "catalog file must be a JSON array");
  std::vector<CatalogEntry> entries;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const auto& item = doc[i];
    const std::string where = "catalog entry #" + std::to_string(i);
    try {
      const int dim = item.at("dim").get<int>();
      const auto type = parse_albert_type(item.at("type").get<std::string>());
      const std::string classes = item.value("classes", std::string("unbounded"));
      const std::string condition = item.value("condition", std::string("always"));
      CatalogEntry e{dim, type, ClassCount::unbounded, Condition::always};
      if (classes == "one") {
        e.classes = ClassCount::one;
      } else if (classes != "unbounded") {
        throw ValidationError(where + ": classes must be \"one\" or \"unbounded\"");
      }
      if (condition == "p_split") {
        e.condition = Condition::p_split;
      } else if (condition == "unknown") {
        e.condition = Condition::unknown;
      } else if (condition != "always") {
        throw ValidationError(where + ": condition must be always, p_split or unknown");
      }
      entries.push_back(e);
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(std::string::npos, where + ": " + e.what());
    } catch (const ParseError& e) {
      throw ParseError(std::string::npos, where + ": bad type: " + e.what());
    }
  }
  return Catalog(CatalogMode::file, std::move(entries), ctx);
}

Catalog load_catalog(const std::filesystem::path& file, const CharContext& ctx) {
  std::ifstream in(file);
  if (!in) throw ParseError(std::string::npos, "cannot open catalog file " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_catalog(buffer.str(), ctx);
}

std::vector<BlockTemplate> blocks_for_dim(const Catalog& c, int m, const CharContext& ctx) {
  std::vector<BlockTemplate> out;
  if (m < 1) return out;
  for (const auto& e : c.entries()) {
    if (m % e.simple_dim != 0 || !c.entry_enabled(e, ctx)) continue;
    out.push_back({Block::simple(e.simple_dim, e.albert, m / e.simple_dim), e.classes});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return canonical_less(a.block, b.block); });
  return out;
}

CatalogMode parse_catalog_mode(std::string_view label) {
  if (label == "upper") return CatalogMode::upper;
  if (label == "paper") return CatalogMode::paper;
  if (label == "conservative") return CatalogMode::conservative;
  if (label == "file") return CatalogMode::file;
  throw ValidationError("unknown catalog mode '" + std::string(label) + "'");
}

std::string to_string(CatalogMode mode) {
  switch (mode) {
    case CatalogMode::upper:
      return "upper";
    case CatalogMode::paper:
      return "paper";
    case CatalogMode::conservative:
      return "conservative";
    case CatalogMode::file:
      return "file";
  }
  return "?";
}

std::string to_string(ClassCount c) { return c == ClassCount::one ? "one" : "unbounded"; }

std::string to_string(Condition c) {
  switch (c) {
    case Condition::always:
      return "always";
    case Condition::p_split:
      return "p_split";
    case Condition::unknown:
      return "unknown";
  }
  return "?";
}

}  // namespace picard
