#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "picard/albert.hpp"
#include "picard/decomp.hpp"

namespace picard {

/// m = a^2 + b^2 + c^2 + d^2 with a >= b >= c >= d >= 0; among all such
/// quadruples the lexicographically largest (greedy in a, then b, then c).
std::array<std::int64_t, 4> four_square(std::int64_t m);

/// Exact form of n < 2g^2 - 16 g sqrt(g+1) + 32(g+1).
bool proof_bound_holds(std::int64_t n, int g);

/// ss^{n1} x cm^{n2} x ... x cm^{n5} x [I(1); dim=g-sum], where n1 is the
/// largest integer with 2n1^2 - n1 <= n-1 and (n2..n5) = four_square of the
/// remainder. Requires 1 <= n <= 2g^2-g and n1+...+n5 <= g-1; the error
/// message names the failing inequality and whether proof_bound_holds.
Decomposition completeness_witness(std::int64_t n, int g);

/// #R_g / (2g^2 - g), R_g taken from the paper catalog.
struct DensityRecord {
  int g;
  std::int64_t count;
  std::int64_t bound;

  /// count/bound in lowest terms.
  std::pair<std::int64_t, std::int64_t> reduced() const;
  double value() const { return static_cast<double>(count) / static_cast<double>(bound); }
};

DensityRecord density(int g, const CharContext& ctx);
std::vector<DensityRecord> density_table(int g_max, const CharContext& ctx);

/// Greatest n with n <= (4g-1-sqrt(8g^2-7))/4 and n <= -3+sqrt(4g+6), by
/// integer squaring. Requires g >= 5.
std::int64_t large_threshold(int g);

/// Disjointness conditions on the translated ranges for one n:
///   (1) g^2 < [2(g-n)^2 - (g-n)] + 1
///   (2) [2(g-n-1)^2 - (g-n-1)] + (n+1)^2 < [2(g-n)^2 - (g-n)] + 1
bool large_condition_1(int g, int n);
bool large_condition_2(int g, int n);

/// Least g > ell at which conditions (1) and (2) hold for every 1 <= n <= ell.
/// Both conditions are monotone in g on that range.
int min_genus(int ell);

struct Finding {
  std::int64_t rho;
  std::string description;
  std::optional<Decomposition> witness;
};

/// Tail structure of R_g above 2(g-ell)^2 - (g-ell):
/// [b2(g-ell)+1, b2(g)] cap R_g = R_{g,ell} u ... u R_{g,1} u {b2(g)}, disjointly.
struct DistributionReport {
  int g;
  int ell;
  std::vector<std::vector<std::int64_t>> translates;  // [n-1] -> R_{g,n}
  std::vector<std::int64_t> tail;                     // interval cap R_g
  std::vector<Finding> overlaps;                      // disjointness violations
  std::vector<Finding> mismatches;                    // set-equality violations
  bool passed() const { return overlaps.empty() && mismatches.empty(); }
};

/// Requires g >= min_genus(ell).
DistributionReport check_distribution(int g, int ell, const CharContext& ctx);

/// rho in R_{g,n} <=> ss_index = g-n for all upper-mode decompositions of
/// dimension g and n <= ell. Decompositions are grouped by supersingularity
/// index s, whose values are exactly {2s^2 - s} + R_{g-s}^*.
struct CorrespondenceReport {
  int g;
  int ell;
  std::vector<Finding> violations;
  bool passed() const { return violations.empty(); }
};

CorrespondenceReport check_ss_correspondence(int g, int ell, const CharContext& ctx);

/// Union over k | g of {rho(A^k) : A simple, dim A = g/k} (upper catalog),
/// R_n^* + R_{g-n}^*, and {2n^2 - n} + R_{g-n}^* for 1 <= n <= g-1.
std::vector<std::int64_t> conjecture_rhs(int g, const CharContext& ctx);

struct ConjectureReport {
  int g;
  std::vector<std::int64_t> rhs;
  std::vector<std::int64_t> enumerated;
  std::vector<std::int64_t> only_rhs;
  std::vector<Finding> only_enumerated;
  bool matches() const { return only_rhs.empty() && only_enumerated.empty(); }
};

ConjectureReport conjecture_check(int g, const CharContext& ctx);

struct NonAdditivity {
  int a;
  std::int64_t ra;
  int b;
  std::int64_t rb;
  friend bool operator==(const NonAdditivity&, const NonAdditivity&) = default;
};

/// (a, ra, b, rb) with a + b = g, a >= b, ra in R_a, rb in R_b and
/// ra + rb not in R_g.
std::vector<NonAdditivity> nonadditivity_counterexamples(int g, const CharContext& ctx);

struct ModuliDims {
  std::int64_t dim_ag;  // g(g+1)/2
  std::int64_t dim_ss;  // floor(g^2/4)
  std::int64_t dim_vf;  // g(g+1)/2 - g + f
  std::int64_t dim_l;   // floor((g-r)^2/4) + r(r+1)/2
};

ModuliDims moduli_dims(int g, int f, int r);

}  // namespace picard
