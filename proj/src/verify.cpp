#include "picard/verify.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "picard/catalog.hpp"
#include "picard/errors.hpp"
#include "picard/range.hpp"

namespace picard {

namespace {

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ParseError(std::string::npos, "cannot open " + file.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

nlohmann::json parse_json(const std::string& text, const char* what) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(e.byte, std::string(what) + ": " + e.what());
  }
}

}  // namespace

std::vector<Fixture> parse_fixtures(const std::string& json_text) {
  const auto doc = parse_json(json_text, "fixtures");
  std::vector<Fixture> out;
  try {
    for (const auto& item : doc.at("fixtures")) {
      Fixture f{item.at("label").get<std::string>(), item.at("g").get<int>(),
                item.value("citation", std::string()),
                item.at("values").get<std::vector<std::int64_t>>(),
                item.at("star").get<std::vector<std::int64_t>>()};
      if (!std::is_sorted(f.values.begin(), f.values.end()) ||
          std::adjacent_find(f.values.begin(), f.values.end()) != f.values.end()) {
        throw ValidationError("fixture " + f.label + ": values must be strictly ascending");
      }
      if (!std::is_sorted(f.star.begin(), f.star.end()) ||
          !std::includes(f.values.begin(), f.values.end(), f.star.begin(), f.star.end())) {
        throw ValidationError("fixture " + f.label + ": star must be a sorted subset of values");
      }
      if (f.g < 1) throw ValidationError("fixture " + f.label + ": g must be >= 1");
      out.push_back(std::move(f));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string::npos, std::string("fixtures: ") + e.what());
  }
  return out;
}

std::vector<Fixture> load_fixtures(const std::filesystem::path& file) {
  return parse_fixtures(slurp(file));
}

std::vector<AllowlistEntry> parse_allowlist(const std::string& json_text) {
  const auto doc = parse_json(json_text, "allowlist");
  std::vector<AllowlistEntry> out;
  try {
    for (const auto& item : doc.at("allowlist")) {
      const auto aspect = item.at("aspect").get<std::string>();
      if (aspect != "value" && aspect != "star") {
        throw ValidationError("allowlist aspect must be \"value\" or \"star\"");
      }
      out.push_back({item.at("label").get<std::string>(), item.at("rho").get<std::int64_t>(),
                     aspect == "value" ? DiffAspect::value : DiffAspect::star,
                     item.value("note", std::string())});
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string::npos, std::string("allowlist: ") + e.what());
  }
  return out;
}

std::vector<AllowlistEntry> load_allowlist(const std::filesystem::path& file) {
  return parse_allowlist(slurp(file));
}

std::size_t VerifyReport::diff_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.pass; }));
}

std::size_t VerifyReport::unexpected_diff_count() const {
  return static_cast<std::size_t>(std::count_if(
      entries.begin(), entries.end(), [](const auto& e) { return !e.pass && !e.allowlisted; }));
}

VerifyReport verify(const std::vector<Fixture>& fixtures, const std::vector<AllowlistEntry>& allowlist,
                    const CharContext& ctx) {
  VerifyReport report;
  for (const auto& f : fixtures) {
    const Enumerator lower(builtin(CatalogMode::paper, f.g, ctx), f.g, ctx);
    std::optional<Enumerator> upper;

    std::set<std::int64_t> all(f.values.begin(), f.values.end());
    for (auto rho : lower.values(f.g)) all.insert(rho);
    const std::set<std::int64_t> printed_star(f.star.begin(), f.star.end());

    for (auto rho : all) {
      VerifyEntry entry{f.label, rho, true, std::nullopt, "absent", "absent", std::nullopt, false, {}};
      const bool printed = std::binary_search(f.values.begin(), f.values.end(), rho);
      const bool computed = lower.contains(f.g, rho);
      const bool computed_star = lower.contains_star(f.g, rho);
      if (printed) entry.printed = printed_star.count(rho) ? "star" : "ss-only";
      if (computed) {
        entry.computed = computed_star ? "star" : "ss-only";
      } else {
        if (!upper) upper.emplace(builtin(CatalogMode::upper, f.g, ctx), f.g, ctx);
        entry.computed = upper->contains(f.g, rho) ? "absent (undetermined)" : "absent (refuted)";
      }

      if (printed != computed) {
        entry.pass = false;
        entry.aspect = DiffAspect::value;
      } else if (entry.printed != entry.computed) {
        entry.pass = false;
        entry.aspect = DiffAspect::star;
      }
      if (!entry.pass && computed) {
        entry.witness = computed_star ? lower.star_witness(f.g, rho) : lower.witness(f.g, rho);
      }
      if (!entry.pass) {
        for (const auto& a : allowlist) {
          if (a.label == f.label && a.rho == rho && a.aspect == *entry.aspect) {
            entry.allowlisted = true;
            entry.note = a.note;
          }
        }
      }
      report.entries.push_back(std::move(entry));
    }
  }
  return report;
}

std::string to_string(DiffAspect a) { return a == DiffAspect::value ? "value" : "star"; }

}  // namespace picard
