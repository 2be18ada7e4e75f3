#include "picard/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <map>
#include <numeric>
#include <set>

#include "picard/catalog.hpp"
#include "picard/errors.hpp"
#include "picard/range.hpp"

namespace picard {

namespace {

using i128 = __int128;

std::int64_t isqrt(std::int64_t n) {
  if (n <= 0) return 0;
  auto r = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_square(std::int64_t n) {
  const auto r = isqrt(n);
  return r * r == n;
}

// Legendre: n is a sum of three squares unless n = 4^k (8j + 7).
bool three_squares(std::int64_t n) {
  if (n == 0) return true;
  while (n % 4 == 0) n /= 4;
  return n % 8 != 7;
}

// Largest c with n - c^2 a square and c^2 >= n - c^2, or -1.
std::int64_t largest_two_square_part(std::int64_t n) {
  for (std::int64_t c = isqrt(n); 2 * c * c >= n; --c) {
    if (is_square(n - c * c)) return c;
  }
  return -1;
}

std::vector<std::int64_t> as_vector(const std::set<std::int64_t>& s) { return {s.begin(), s.end()}; }

}  // namespace

std::array<std::int64_t, 4> four_square(std::int64_t m) {
  if (m < 0) throw PreconditionError("four_square needs m >= 0");
  // Maximality of each greedy choice forces the later parts to be no larger.
  for (std::int64_t a = isqrt(m);; --a) {
    const std::int64_t r1 = m - a * a;
    if (!three_squares(r1)) continue;
    for (std::int64_t b = isqrt(r1);; --b) {
      const std::int64_t r2 = r1 - b * b;
      const std::int64_t c = largest_two_square_part(r2);
      if (c >= 0) return {a, b, c, isqrt(r2 - c * c)};
    }
  }
}

bool proof_bound_holds(std::int64_t n, int g) {
  // n < 2g^2 + 32(g+1) - 16 g sqrt(g+1)  <=>  L > 16 g sqrt(g+1) with L > 0
  const i128 gg = g;
  const i128 lhs = 2 * gg * gg + 32 * (gg + 1) - n;
  if (lhs <= 0) return false;
  return lhs * lhs > 256 * gg * gg * (gg + 1);
}

Decomposition completeness_witness(std::int64_t n, int g) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  if (n < 1 || n > b2(g)) {
    throw PreconditionError("n = " + std::to_string(n) + " outside [1, 2g^2-g] = [1, " +
                            std::to_string(b2(g)) + "]");
  }
  std::int64_t n1 = 0;
  while (b2(n1 + 1) <= n - 1) ++n1;
  const auto squares = four_square(n - 1 - b2(n1));
  std::int64_t used = n1;
  for (auto q : squares) used += q;
  if (used > g - 1) {
    throw PreconditionError(
        "n1 + n2 + n3 + n4 + n5 <= g - 1 fails (" + std::to_string(used) + " > " +
        std::to_string(g - 1) + "); n < 2g^2 - 16g*sqrt(g+1) + 32(g+1) " +
        (proof_bound_holds(n, g) ? "holds" : "fails") + " for n = " + std::to_string(n) +
        ", g = " + std::to_string(g));
  }
  std::vector<Block> blocks;
  if (n1 > 0) blocks.push_back(Block::supersingular(static_cast<int>(n1)));
  for (auto q : squares) {
    if (q > 0) blocks.push_back(Block::cm(static_cast<int>(q)));
  }
  blocks.push_back(Block::simple(g - static_cast<int>(used), AlbertType::type_i(1)));
  return Decomposition(std::move(blocks));
}

std::pair<std::int64_t, std::int64_t> DensityRecord::reduced() const {
  const auto d = std::gcd(count, bound);
  return {count / d, bound / d};
}

DensityRecord density(int g, const CharContext& ctx) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  const Enumerator e(builtin(CatalogMode::paper, g, ctx), g, ctx);
  return {g, static_cast<std::int64_t>(e.values(g).size()), b2(g)};
}

std::vector<DensityRecord> density_table(int g_max, const CharContext& ctx) {
  if (g_max < 1) throw PreconditionError("dimension must be >= 1");
  // Catalog entries of dimension <= g do not depend on g_max.
  const Enumerator e(builtin(CatalogMode::paper, g_max, ctx), g_max, ctx);
  std::vector<DensityRecord> out;
  for (int g = 1; g <= g_max; ++g) {
    out.push_back({g, static_cast<std::int64_t>(e.values(g).size()), b2(g)});
  }
  return out;
}

std::int64_t large_threshold(int g) {
  if (g < 5) throw PreconditionError("large_threshold needs g >= 5");
  const i128 gg = g;
  auto ok = [&](i128 n) {
    const i128 t = 4 * gg - 1 - 4 * n;
    if (t < 0 || t * t < 8 * gg * gg - 7) return false;
    return (n + 3) * (n + 3) <= 4 * gg + 6;
  };
  std::int64_t n = 0;
  while (ok(n + 1)) ++n;
  return n;
}

bool large_condition_1(int g, int n) {
  const std::int64_t gg = g;
  return gg * gg < b2(g - n) + 1;
}

bool large_condition_2(int g, int n) {
  const std::int64_t nn = n;
  return b2(g - n - 1) + (nn + 1) * (nn + 1) < b2(g - n) + 1;
}

int min_genus(int ell) {
  if (ell < 1) throw PreconditionError("min_genus needs ell >= 1");
  for (int g = ell + 1;; ++g) {
    bool all = true;
    for (int n = 1; n <= ell && all; ++n) {
      all = large_condition_1(g, n) && large_condition_2(g, n);
    }
    if (all) return g;
  }
}

namespace {

void require_large_genus(int g, int ell) {
  if (ell < 1) throw PreconditionError("ell must be >= 1");
  const int g0 = min_genus(ell);
  if (g < g0) {
    throw PreconditionError("g = " + std::to_string(g) + " is below min_genus(" +
                            std::to_string(ell) + ") = " + std::to_string(g0));
  }
}

}  // namespace

DistributionReport check_distribution(int g, int ell, const CharContext& ctx) {
  require_large_genus(g, ell);
  const Enumerator e(builtin(CatalogMode::paper, g, ctx), g, ctx);
  DistributionReport report{g, ell, {}, {}, {}, {}};

  std::map<std::int64_t, std::vector<int>> owners;  // rho -> pieces (0 = top)
  std::set<std::int64_t> pieces;
  for (int n = 1; n <= ell; ++n) {
    std::vector<std::int64_t> t;
    for (auto x : e.star_values(n)) t.push_back(b2(g - n) + x);
    for (auto rho : t) {
      owners[rho].push_back(n);
      pieces.insert(rho);
    }
    report.translates.push_back(std::move(t));
  }
  owners[b2(g)].push_back(0);
  pieces.insert(b2(g));

  for (const auto& [rho, who] : owners) {
    if (who.size() < 2) continue;
    std::string desc = "shared by";
    for (int n : who) desc += n == 0 ? " {2g^2-g}" : " R_{g," + std::to_string(n) + "}";
    report.overlaps.push_back({rho, desc, e.witness(g, rho)});
  }

  const std::int64_t lo = b2(g - ell) + 1;
  for (auto rho : e.values(g)) {
    if (rho >= lo) report.tail.push_back(rho);
  }
  for (auto rho : report.tail) {
    if (!pieces.count(rho)) {
      report.mismatches.push_back({rho, "in R_g tail but in no translate", e.witness(g, rho)});
    }
  }
  for (auto rho : pieces) {
    if (!std::binary_search(report.tail.begin(), report.tail.end(), rho)) {
      report.mismatches.push_back({rho, "in a translate but not in the R_g tail", std::nullopt});
    }
  }
  return report;
}

CorrespondenceReport check_ss_correspondence(int g, int ell, const CharContext& ctx) {
  require_large_genus(g, ell);
  const Enumerator e(builtin(CatalogMode::upper, g, ctx), g, ctx);
  CorrespondenceReport report{g, ell, {}};
  for (int n = 1; n <= ell; ++n) {
    std::set<std::int64_t> translate;
    for (auto x : e.star_values(n)) translate.insert(b2(g - n) + x);
    for (int s = 0; s <= g; ++s) {
      for (auto rho : e.values_with_ss(g, s)) {
        const bool in_translate = translate.count(rho) > 0;
        if (in_translate == (s == g - n)) continue;
        report.violations.push_back(
            {rho,
             "n = " + std::to_string(n) + ", ss_index = " + std::to_string(s) +
                 (in_translate ? ": in R_{g,n} but ss_index != g-n" : ": ss_index = g-n but not in R_{g,n}"),
             e.witness_with_ss(g, s, rho)});
      }
    }
  }
  return report;
}

std::vector<std::int64_t> conjecture_rhs(int g, const CharContext& ctx) {
  if (g < 2) throw PreconditionError("conjecture check needs g >= 2");
  std::set<std::int64_t> rhs;
  const Catalog upper = builtin(CatalogMode::upper, g, ctx);
  // rho(A^k) with k | g and dim A = g/k
  for (const auto& t : blocks_for_dim(upper, g, ctx)) rhs.insert(t.block.rho());
  const Enumerator lower(builtin(CatalogMode::paper, g, ctx), g, ctx);
  for (int n = 1; n <= g - 1; ++n) {
    const auto left = lower.star_values(n);
    const auto right = lower.star_values(g - n);
    for (auto x : left) {
      for (auto y : right) rhs.insert(x + y);
    }
    if (ctx.positive_char()) {
      for (auto y : right) rhs.insert(b2(n) + y);
    }
  }
  return as_vector(rhs);
}

ConjectureReport conjecture_check(int g, const CharContext& ctx) {
  ConjectureReport report{g, conjecture_rhs(g, ctx), {}, {}, {}};
  const Enumerator lower(builtin(CatalogMode::paper, g, ctx), g, ctx);
  report.enumerated = lower.values(g);
  std::set_difference(report.rhs.begin(), report.rhs.end(), report.enumerated.begin(),
                      report.enumerated.end(), std::back_inserter(report.only_rhs));
  std::vector<std::int64_t> only_enum;
  std::set_difference(report.enumerated.begin(), report.enumerated.end(), report.rhs.begin(),
                      report.rhs.end(), std::back_inserter(only_enum));
  for (auto rho : only_enum) {
    report.only_enumerated.push_back({rho, "enumerated but not on the right-hand side", lower.witness(g, rho)});
  }
  return report;
}

std::vector<NonAdditivity> nonadditivity_counterexamples(int g, const CharContext& ctx) {
  if (g < 2) throw PreconditionError("non-additivity needs g >= 2");
  const Enumerator e(builtin(CatalogMode::paper, g, ctx), g, ctx);
  std::vector<NonAdditivity> out;
  for (int a = g - 1; 2 * a >= g; --a) {
    const int b = g - a;
    const auto ra_values = e.values(a);
    const auto rb_values = e.values(b);
    for (auto ra : ra_values) {
      for (auto rb : rb_values) {
        if (a == b && rb > ra) continue;
        if (!e.contains(g, ra + rb)) out.push_back({a, ra, b, rb});
      }
    }
  }
  return out;
}

ModuliDims moduli_dims(int g, int f, int r) {
  if (g < 1) throw PreconditionError("dimension must be >= 1");
  if (f < 0 || f > g) throw PreconditionError("p-rank f must satisfy 0 <= f <= g");
  if (r < 0 || r > g) throw PreconditionError("r must satisfy 0 <= r <= g");
  const std::int64_t gg = g;
  const std::int64_t ag = gg * (gg + 1) / 2;
  const std::int64_t rest = gg - r;
  return {ag, gg * gg / 4, ag - gg + f, rest * rest / 4 + static_cast<std::int64_t>(r) * (r + 1) / 2};
}

}  // namespace picard
