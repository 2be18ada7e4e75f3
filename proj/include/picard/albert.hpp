#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace picard {

enum class AlbertKind { I, II, III, IV };

/// Endomorphism-algebra type of a simple abelian variety.
///
/// Kinds I-III carry the degree e of the totally real centre; kind IV carries
/// e0 (degree of the maximal totally real subfield of the CM centre) and d.
class AlbertType {
 public:
  static AlbertType type_i(int e);
  static AlbertType type_ii(int e);
  static AlbertType type_iii(int e);
  static AlbertType type_iv(int e0, int d);

  AlbertKind kind() const noexcept { return kind_; }
  /// e for kinds I-III, e0 for kind IV.
  int e() const noexcept { return e_; }
  /// Square root of [D:K]: 1 for I, 2 for II/III, the parameter d for IV.
  int d() const noexcept;
  /// [K:Q]: e for I-III, 2*e0 for IV.
  int centre_degree() const noexcept;

  /// Picard number of a simple variety of this type.
  std::int64_t base_rho() const noexcept;

  /// "I(1)", "IV(2,3)", ...
  std::string to_string() const;

  friend auto operator<=>(const AlbertType&, const AlbertType&) = default;

 private:
  AlbertType(AlbertKind kind, int e, int d) : kind_(kind), e_(e), d_(d) {}

  AlbertKind kind_;
  int e_;
  int d_;  // only meaningful for kind IV; 0 otherwise
};

enum class CharMode { zero, positive };
enum class SplitPolicy { split, nonsplit, unknown };

struct CharContext {
  CharMode mode = CharMode::positive;
  /// Concrete prime, if one is fixed. Positive mode works without one.
  std::optional<std::int64_t> p;
  SplitPolicy p_split = SplitPolicy::unknown;

  static CharContext positive(SplitPolicy policy = SplitPolicy::unknown);
  static CharContext zero();
  /// Throws ValidationError unless p is prime.
  static CharContext with_prime(std::int64_t p, SplitPolicy policy = SplitPolicy::unknown);

  bool positive_char() const noexcept { return mode == CharMode::positive; }
};

bool is_prime(std::int64_t n) noexcept;

std::string to_string(AlbertKind kind);
std::string to_string(SplitPolicy policy);
std::string to_string(CharMode mode);

/// Divisibility restrictions for a simple variety of dimension n.
///
/// Positive characteristic: I(e): e | n, II(e): 2e | n, III(e): e | n,
/// IV(e0,d): e0*d | n.
/// Characteristic zero (comparison rules, from the classical conditions over
/// the complex numbers): I(e): e | n, II(e): 2e | n, III(e): 2e | n,
/// IV(e0,d): e0*d^2 | n.
bool restrictions_ok(const AlbertType& t, int n, const CharContext& ctx);

/// Every type passing restrictions_ok for dimension n with base Picard number
/// at most rho_cap, sorted by (kind, parameters).
std::vector<AlbertType> admissible_types(int n, const CharContext& ctx, std::int64_t rho_cap);

/// Picard number of A^k for A simple of type t.
std::int64_t rho_power(const AlbertType& t, int k);

/// Rational dimension of End(A^k) (x) Q = M_k(D).
std::int64_t endo_dim(const AlbertType& t, int k);

/// Parses "I(e)", "II(e)", "III(e)" or "IV(e0,d)".
AlbertType parse_albert_type(const std::string& text);

}  // namespace picard
