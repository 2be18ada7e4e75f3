#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "picard/albert.hpp"

namespace picard {

/// One isogeny factor A^k of a Poincare decomposition.
///
/// The supersingular elliptic curve is the simple block [III(1); dim=1]; any
/// block of that shape is the supersingular block.
class Block {
 public:
  /// E^s for the fixed supersingular elliptic curve E.
  static Block supersingular(int power = 1);
  /// A^k with A simple of dimension simple_dim and type t.
  static Block simple(int simple_dim, const AlbertType& t, int power = 1);
  static Block ordinary(int power = 1) { return simple(1, AlbertType::type_i(1), power); }
  static Block cm(int power = 1) { return simple(1, AlbertType::type_iv(1, 1), power); }

  int simple_dim() const noexcept { return simple_dim_; }
  const AlbertType& albert() const noexcept { return albert_; }
  int power() const noexcept { return power_; }
  bool is_supersingular() const noexcept { return supersingular_; }

  int dim() const noexcept { return simple_dim_ * power_; }
  std::int64_t rho() const { return rho_power(albert_, power_); }
  std::int64_t endo_dim() const { return picard::endo_dim(albert_, power_); }

  Block with_power(int power) const;

  friend bool operator==(const Block&, const Block&) = default;

 private:
  Block(int simple_dim, AlbertType t, int power);

  int simple_dim_;
  AlbertType albert_;
  int power_;
  bool supersingular_;
};

/// Strict weak order used for normalized decompositions: the supersingular
/// block first, then descending (simple_dim, albert, power).
bool canonical_less(const Block& a, const Block& b);

/// Normalized isogeny decomposition X ~ X_1^{n_1} x ... x X_r^{n_r} x E^s.
///
/// Non-supersingular blocks are pairwise non-isogenous classes even when
/// their (dim, type, power) coincide; all supersingular factors live in one
/// block whose power is the supersingularity index.
class Decomposition {
 public:
  /// Normalizes: merges supersingular blocks, sorts canonically.
  explicit Decomposition(std::vector<Block> blocks);

  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  std::int64_t rho() const;
  int dim() const;
  int length() const { return static_cast<int>(blocks_.size()); }
  int ss_index() const;
  /// Bounds on the p-rank f attainable in this isogeny shape.
  std::pair<int, int> p_rank_interval() const;
  /// Slope-1/2 segments contributed by the supersingular part.
  int slope_half_multiplicity() const { return 2 * ss_index(); }
  /// dim_Q End(X) (x) Q; Hom between distinct blocks vanishes.
  std::int64_t endo_dim() const;
  /// True when endo_dim < 2g, so this representative cannot be defined over
  /// a finite field. Only a necessary condition: another member of the
  /// isogeny class is not ruled out.
  bool tate_obstruction() const { return endo_dim() < 2 * static_cast<std::int64_t>(dim()); }

  friend bool operator==(const Decomposition&, const Decomposition&) = default;

 private:
  std::vector<Block> blocks_;
};

Decomposition normalize(std::vector<Block> blocks);

/// Grammar:
///   decomp := block ("*" block)*
///   block  := "ss" ["^" INT] | ("ord" | "cm") ["^" INT]
///           | "[" type "; dim=" INT "]" ["^" INT]
///   type   := "I(" INT ")" | "II(" INT ")" | "III(" INT ")" | "IV(" INT "," INT ")"
/// Whitespace between tokens is ignored. Throws ParseError with a byte
/// offset, or ValidationError for out-of-range type parameters.
Decomposition parse(std::string_view text);

/// Canonical text; parse(format(d)) == d.
std::string format(const Decomposition& d);
std::string format(const Block& b);

}  // namespace picard
