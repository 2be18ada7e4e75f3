#include "picard/range.hpp"

#include <algorithm>

#include "picard/errors.hpp"

namespace picard {

Enumerator::Enumerator(const Catalog& catalog, int g_max, const CharContext& ctx, bool allow_ss)
    : g_max_(g_max), ctx_(ctx), mode_(catalog.mode()), rho_bound_(b2(g_max)) {
  if (g_max < 1) throw PreconditionError("dimension must be >= 1");

  struct Raw {
    Block block;
    ClassCount classes;
  };
  std::vector<Raw> raw;
  for (const auto& e : catalog.entries()) {
    if (e.simple_dim > g_max || !catalog.entry_enabled(e, ctx)) continue;
    const Block base = Block::simple(e.simple_dim, e.albert);
    if (base.is_supersingular() && !allow_ss) continue;
    for (int k = 1; e.simple_dim * k <= g_max; ++k) {
      const Block b = base.with_power(k);
      if (b.rho() > rho_bound_) {
        throw ValidationError("catalog block " + format(b) + " exceeds the Picard bound 2g^2-g");
      }
      raw.push_back({b, e.classes});
    }
  }
  std::stable_sort(raw.begin(), raw.end(),
                   [](const Raw& a, const Raw& b) { return canonical_less(a.block, b.block); });

  const std::size_t n = raw.size();
  items_.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    items_.push_back({raw[i].block, raw[i].block.dim(), raw[i].block.rho(), i});
    if (raw[i].block.is_supersingular()) first_non_ss_ = i + 1;
  }
  // Items of one entry are contiguous; a single-class entry contributes at
  // most one of its powers, so taking it jumps past the whole group.
  for (std::size_t i = 0; i < n; ++i) {
    if (raw[i].classes == ClassCount::unbounded) continue;
    std::size_t end = i + 1;
    while (end < n && raw[end].block.simple_dim() == raw[i].block.simple_dim() &&
           raw[end].block.albert() == raw[i].block.albert()) {
      ++end;
    }
    items_[i].next = end;
  }

  const int width = g_max_ + 1;
  reach_.assign((n + 1) * width, Bits(static_cast<std::size_t>(rho_bound_ + 1)));
  reach_[n * width + 0].set(0);
  for (std::size_t i = n; i-- > 0;) {
    const Item& it = items_[i];
    for (int d = 0; d <= g_max_; ++d) {
      Bits row = reach_[(i + 1) * width + d];
      if (d >= it.dim) row |= reach_[it.next * width + (d - it.dim)] << static_cast<std::size_t>(it.rho);
      reach_[i * width + d] = std::move(row);
    }
  }
}

std::vector<std::int64_t> Enumerator::collect(std::size_t suffix, int g) const {
  std::vector<std::int64_t> out;
  if (g < 1 || g > g_max_) return out;
  const Bits& bits = reach(suffix, g);
  for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i)) {
    out.push_back(static_cast<std::int64_t>(i));
  }
  return out;
}

std::vector<std::int64_t> Enumerator::values(int g) const { return collect(0, g); }

std::vector<std::int64_t> Enumerator::star_values(int g) const { return collect(first_non_ss_, g); }

std::vector<std::int64_t> Enumerator::values_with_ss(int g, int s) const {
  if (s == 0) return star_values(g);
  std::vector<std::int64_t> out;
  if (g < 1 || g > g_max_ || s < 0 || s > g || first_non_ss_ == 0) return out;
  if (s == g) return {b2(g)};
  for (auto x : collect(first_non_ss_, g - s)) out.push_back(b2(s) + x);
  return out;
}

bool Enumerator::contains(int g, std::int64_t rho) const {
  if (g < 1 || g > g_max_ || rho < 0 || rho > rho_bound_) return false;
  return reach(0, g).test(static_cast<std::size_t>(rho));
}

bool Enumerator::contains_star(int g, std::int64_t rho) const {
  if (g < 1 || g > g_max_ || rho < 0 || rho > rho_bound_) return false;
  return reach(first_non_ss_, g).test(static_cast<std::size_t>(rho));
}

std::optional<Decomposition> Enumerator::reconstruct(std::size_t suffix, int d, std::int64_t rho,
                                                     std::vector<Block> prefix) const {
  if (d < 0 || d > g_max_ || rho < 0 || rho > rho_bound_) return std::nullopt;
  if (!reach(suffix, d).test(static_cast<std::size_t>(rho))) return std::nullopt;
  while (d > 0) {
    std::size_t j = suffix;
    for (; j < items_.size(); ++j) {
      const Item& it = items_[j];
      if (it.dim <= d && it.rho <= rho &&
          reach(it.next, d - it.dim).test(static_cast<std::size_t>(rho - it.rho))) {
        break;
      }
    }
    if (j == items_.size()) return std::nullopt;
    const Item& it = items_[j];
    prefix.push_back(it.block);
    d -= it.dim;
    rho -= it.rho;
    suffix = it.next;
  }
  if (prefix.empty()) return std::nullopt;
  return Decomposition(std::move(prefix));
}

std::optional<Decomposition> Enumerator::witness(int g, std::int64_t rho) const {
  if (g < 1) return std::nullopt;
  return reconstruct(0, g, rho, {});
}

std::optional<Decomposition> Enumerator::star_witness(int g, std::int64_t rho) const {
  if (g < 1) return std::nullopt;
  return reconstruct(first_non_ss_, g, rho, {});
}

std::optional<Decomposition> Enumerator::witness_with_ss(int g, int s, std::int64_t rho) const {
  if (s == 0) return star_witness(g, rho);
  if (first_non_ss_ == 0 || s < 0 || s > g || g > g_max_) return std::nullopt;
  if (s == g) {
    if (rho != b2(g)) return std::nullopt;
    return Decomposition({Block::supersingular(g)});
  }
  return reconstruct(first_non_ss_, g - s, rho - b2(s), {Block::supersingular(s)});
}

void Enumerator::dfs(std::size_t suffix, int d, std::int64_t rho, std::vector<Block>& path,
                     std::vector<Decomposition>& out, std::size_t limit) const {
  if (out.size() >= limit) return;
  if (d == 0) {
    if (rho == 0 && !path.empty()) out.emplace_back(path);
    return;
  }
  for (std::size_t j = suffix; j < items_.size() && out.size() < limit; ++j) {
    const Item& it = items_[j];
    if (it.dim > d || it.rho > rho) continue;
    if (!reach(it.next, d - it.dim).test(static_cast<std::size_t>(rho - it.rho))) continue;
    path.push_back(it.block);
    dfs(it.next, d - it.dim, rho - it.rho, path, out, limit);
    path.pop_back();
  }
}

std::vector<Decomposition> Enumerator::all_witnesses(int g, std::int64_t rho,
                                                     std::size_t limit) const {
  std::vector<Decomposition> out;
  if (g < 1 || g > g_max_ || rho < 0 || rho > rho_bound_) return out;
  std::vector<Block> path;
  dfs(0, g, rho, path, out, limit);
  return out;
}

std::optional<std::int64_t> Enumerator::max_by_length(int g, int r) const {
  if (g < 1 || g > g_max_ || r < 1 || r > g) return std::nullopt;
  const std::size_t n = items_.size();
  const std::size_t w = static_cast<std::size_t>(g_max_ + 1);
  auto at = [&](std::size_t i, int d, int c) -> std::int64_t& {
    return best_[(i * w + static_cast<std::size_t>(d)) * w + static_cast<std::size_t>(c)];
  };
  if (best_.empty()) {
    best_.assign((n + 1) * w * w, -1);
    at(n, 0, 0) = 0;
    for (std::size_t i = n; i-- > 0;) {
      const Item& it = items_[i];
      for (int d = 0; d <= g_max_; ++d) {
        for (int c = 0; c <= g_max_; ++c) {
          std::int64_t v = at(i + 1, d, c);
          if (d >= it.dim && c >= 1) {
            const std::int64_t prev = at(it.next, d - it.dim, c - 1);
            if (prev >= 0) v = std::max(v, prev + it.rho);
          }
          at(i, d, c) = v;
        }
      }
    }
  }
  const std::int64_t v = at(0, g, r);
  if (v < 0) return std::nullopt;
  return v;
}

std::vector<std::int64_t> RangeResult::rhos() const {
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(v.rho);
  return out;
}

std::vector<std::int64_t> RangeResult::star_rhos() const {
  std::vector<std::int64_t> out;
  for (const auto& v : values) {
    if (v.star) out.push_back(v.rho);
  }
  return out;
}

const RangeValue* RangeResult::find(std::int64_t rho) const {
  auto it = std::lower_bound(values.begin(), values.end(), rho,
                             [](const RangeValue& v, std::int64_t r) { return v.rho < r; });
  if (it == values.end() || it->rho != rho) return nullptr;
  return &*it;
}

RangeResult to_range_result(const Enumerator& e, int g, bool allow_ss) {
  RangeResult result{g, e.ctx(), e.mode(), {}};
  const ValueStatus status =
      e.mode() == CatalogMode::upper ? ValueStatus::upper_only : ValueStatus::certified;
  for (auto rho : allow_ss ? e.values(g) : e.star_values(g)) {
    RangeValue v{rho, status, e.contains_star(g, rho), std::nullopt, std::nullopt};
    if (v.star) v.star_witness = e.star_witness(g, rho);
    v.witness = allow_ss ? e.witness(g, rho) : v.star_witness;
    result.values.push_back(std::move(v));
  }
  return result;
}

RangeResult attainable(int g, const Catalog& c, const CharContext& ctx, bool allow_ss) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  return to_range_result(Enumerator(c, g, ctx, allow_ss), g, allow_ss);
}

MembershipResult RangeSets::classify(std::int64_t rho) const {
  if (const auto* v = lower.find(rho)) return {Membership::certified, v->witness};
  if (const auto* v = upper.find(rho)) return {Membership::undetermined, v->witness};
  return {Membership::refuted, std::nullopt};
}

RangeSets range_sets(int g, const CharContext& ctx) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  return RangeSets{attainable(g, builtin(CatalogMode::paper, g, ctx), ctx),
                   attainable(g, builtin(CatalogMode::upper, g, ctx), ctx)};
}

MembershipResult membership(std::int64_t rho, int g, const CharContext& ctx) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  if (rho < 1 || rho > b2(g)) {
    throw PreconditionError("Picard number " + std::to_string(rho) + " outside [1, " +
                            std::to_string(b2(g)) + "] for g = " + std::to_string(g));
  }
  return range_sets(g, ctx).classify(rho);
}

std::int64_t max_by_length_closed_form(int r, int g) {
  const std::int64_t m = g - r + 1;
  return b2(m) + (r - 1);
}

LengthMaximum max_by_length(int r, int g, const CharContext& ctx) {
  if (r < 1 || g < 1 || r > g) {
    throw PreconditionError("length r must satisfy 1 <= r <= g (r = " + std::to_string(r) +
                            ", g = " + std::to_string(g) + ")");
  }
  const Enumerator e(builtin(CatalogMode::upper, g, ctx), g, ctx);
  return LengthMaximum{e.max_by_length(g, r).value_or(-1), max_by_length_closed_form(r, g)};
}

std::vector<std::pair<std::int64_t, std::int64_t>> gaps(int g, const CharContext& ctx) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  const Enumerator e(builtin(CatalogMode::upper, g, ctx), g, ctx);
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  std::int64_t start = -1;
  for (std::int64_t rho = 1; rho <= b2(g); ++rho) {
    const bool missing = !e.contains(g, rho);
    if (missing && start < 0) start = rho;
    if (!missing && start >= 0) {
      out.emplace_back(start, rho - 1);
      start = -1;
    }
  }
  if (start >= 0) out.emplace_back(start, b2(g));
  return out;
}

std::vector<Decomposition> structure_witnesses(int g, std::int64_t rho, const CharContext& ctx) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  const Enumerator e(builtin(CatalogMode::upper, g, ctx), g, ctx);
  return e.all_witnesses(g, rho);
}

std::vector<std::int64_t> translated_range(int g, int n, const CharContext& ctx, CatalogMode mode) {
  if (n < 1 || n > g) {
    throw PreconditionError("translated range needs 1 <= n <= g (n = " + std::to_string(n) +
                            ", g = " + std::to_string(g) + ")");
  }
  const Enumerator e(builtin(mode, n, ctx), n, ctx);
  std::vector<std::int64_t> out;
  for (auto x : e.star_values(n)) out.push_back(b2(g - n) + x);
  return out;
}

std::vector<RangeValue> parity_filter(const RangeResult& result) {
  std::vector<RangeValue> out;
  const std::int64_t parity = b2(result.g) % 2;
  for (const auto& v : result.values) {
    if (v.rho % 2 == parity) out.push_back(v);
  }
  return out;
}

std::string to_string(ValueStatus s) { return s == ValueStatus::certified ? "certified" : "upper-only"; }

std::string to_string(Membership m) {
  switch (m) {
    case Membership::certified:
      return "certified";
    case Membership::refuted:
      return "refuted";
    case Membership::undetermined:
      return "undetermined";
  }
  return "?";
}

}  // namespace picard
