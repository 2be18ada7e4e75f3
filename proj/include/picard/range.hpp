#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

#include "picard/albert.hpp"
#include "picard/catalog.hpp"
#include "picard/decomp.hpp"

namespace picard {

/// 2g^2 - g, the second Betti number of a g-dimensional abelian variety.
constexpr std::int64_t b2(std::int64_t g) { return 2 * g * g - g; }

/// Attainable-sum tables for one catalog.
///
/// Catalog blocks become knapsack items in canonical block order: unbounded
/// entries may repeat (distinct isogeny classes), single-class entries and
/// the supersingular block are used at most once. For every suffix of the
/// item list and every dimension budget d <= g_max we keep the set of
/// reachable Picard numbers; witnesses are reconstructed greedily from these
/// tables and are the lexicographically smallest canonical block sequences.
class Enumerator {
 public:
  Enumerator(const Catalog& catalog, int g_max, const CharContext& ctx, bool allow_ss = true);

  int g_max() const noexcept { return g_max_; }
  const CharContext& ctx() const noexcept { return ctx_; }
  CatalogMode mode() const noexcept { return mode_; }

  /// Picard numbers of decompositions of dimension g (g <= g_max).
  std::vector<std::int64_t> values(int g) const;
  /// Same, restricted to supersingularity index 0.
  std::vector<std::int64_t> star_values(int g) const;
  /// Values reachable with supersingularity index exactly s.
  std::vector<std::int64_t> values_with_ss(int g, int s) const;

  bool contains(int g, std::int64_t rho) const;
  bool contains_star(int g, std::int64_t rho) const;

  std::optional<Decomposition> witness(int g, std::int64_t rho) const;
  std::optional<Decomposition> star_witness(int g, std::int64_t rho) const;
  std::optional<Decomposition> witness_with_ss(int g, int s, std::int64_t rho) const;

  /// Every decomposition of dimension g with Picard number rho, in canonical
  /// order. Stops after `limit` results.
  std::vector<Decomposition> all_witnesses(int g, std::int64_t rho,
                                           std::size_t limit = static_cast<std::size_t>(-1)) const;

  /// Largest Picard number over decompositions of dimension g with exactly r
  /// blocks, or nullopt if there are none.
  std::optional<std::int64_t> max_by_length(int g, int r) const;

 private:
  struct Item {
    Block block;
    int dim;
    std::int64_t rho;
    std::size_t next;  // suffix to continue from after taking this item
  };

  using Bits = boost::dynamic_bitset<>;

  const Bits& reach(std::size_t suffix, int d) const { return reach_[suffix * (g_max_ + 1) + d]; }
  std::vector<std::int64_t> collect(std::size_t suffix, int g) const;
  std::optional<Decomposition> reconstruct(std::size_t suffix, int d, std::int64_t rho,
                                           std::vector<Block> prefix) const;
  void dfs(std::size_t suffix, int d, std::int64_t rho, std::vector<Block>& path,
           std::vector<Decomposition>& out, std::size_t limit) const;

  int g_max_;
  CharContext ctx_;
  CatalogMode mode_;
  std::int64_t rho_bound_;
  std::vector<Item> items_;
  std::size_t first_non_ss_ = 0;  // ss items occupy [0, first_non_ss_)
  std::vector<Bits> reach_;
  // best_[suffix][d][r] = max rho with exactly r blocks, -1 if impossible
  mutable std::vector<std::int64_t> best_;
};

enum class ValueStatus { certified, upper_only };

struct RangeValue {
  std::int64_t rho;
  ValueStatus status;
  bool star;
  std::optional<Decomposition> witness;
  /// A supersingularity-free witness, present iff star.
  std::optional<Decomposition> star_witness;
};

/// Attainable Picard numbers for fixed g and catalog.
struct RangeResult {
  int g;
  CharContext ctx;
  CatalogMode mode;
  std::vector<RangeValue> values;

  std::vector<std::int64_t> rhos() const;
  std::vector<std::int64_t> star_rhos() const;
  const RangeValue* find(std::int64_t rho) const;
};

RangeResult attainable(int g, const Catalog& c, const CharContext& ctx, bool allow_ss = true);
RangeResult to_range_result(const Enumerator& e, int g, bool allow_ss = true);

enum class Membership { certified, refuted, undetermined };

struct MembershipResult {
  Membership status;
  std::optional<Decomposition> witness;
};

/// Lower bound (paper catalog) and upper bound (restrictions only) for R_g.
struct RangeSets {
  RangeResult lower;
  RangeResult upper;

  std::vector<std::int64_t> star_lower() const { return lower.star_rhos(); }
  std::vector<std::int64_t> star_upper() const { return upper.star_rhos(); }
  MembershipResult classify(std::int64_t rho) const;
};

RangeSets range_sets(int g, const CharContext& ctx);

/// Throws PreconditionError unless 1 <= rho <= 2g^2 - g.
MembershipResult membership(std::int64_t rho, int g, const CharContext& ctx);

struct LengthMaximum {
  std::int64_t enumerated;
  std::int64_t closed_form;
  bool matches() const { return enumerated == closed_form; }
};

/// M_{r,g} = [2(g-r+1)^2 - (g-r+1)] + (r-1).
std::int64_t max_by_length_closed_form(int r, int g);
/// Enumerated maximum over upper-mode decompositions of dimension g and
/// length r, alongside the closed form. Throws PreconditionError if r > g.
LengthMaximum max_by_length(int r, int g, const CharContext& ctx);

/// Maximal intervals of [1, 2g^2-g] containing no upper-mode value.
std::vector<std::pair<std::int64_t, std::int64_t>> gaps(int g, const CharContext& ctx);

/// All upper-mode decompositions of dimension g with Picard number rho.
std::vector<Decomposition> structure_witnesses(int g, std::int64_t rho, const CharContext& ctx);

/// R_{g,n} = {2(g-n)^2 - (g-n) + x : x in R_n^*}.
std::vector<std::int64_t> translated_range(int g, int n, const CharContext& ctx,
                                           CatalogMode mode = CatalogMode::paper);

/// Values whose parity matches b2 = 2g^2 - g.
std::vector<RangeValue> parity_filter(const RangeResult& result);

std::string to_string(ValueStatus s);
std::string to_string(Membership m);

}  // namespace picard
