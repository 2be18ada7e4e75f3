#include "picard/albert.hpp"

#include <algorithm>
#include <cctype>

#include "picard/errors.hpp"

namespace picard {

namespace {

void require_positive(int value, const char* name) {
  if (value < 1) {
    throw ValidationError(std::string("Albert parameter ") + name + " must be >= 1, got " +
                          std::to_string(value));
  }
}

bool divides(std::int64_t a, std::int64_t b) { return a > 0 && b % a == 0; }

}  // namespace

AlbertType AlbertType::type_i(int e) {
  require_positive(e, "e");
  return AlbertType(AlbertKind::I, e, 0);
}

AlbertType AlbertType::type_ii(int e) {
  require_positive(e, "e");
  return AlbertType(AlbertKind::II, e, 0);
}

AlbertType AlbertType::type_iii(int e) {
  require_positive(e, "e");
  return AlbertType(AlbertKind::III, e, 0);
}

AlbertType AlbertType::type_iv(int e0, int d) {
  require_positive(e0, "e0");
  require_positive(d, "d");
  return AlbertType(AlbertKind::IV, e0, d);
}

int AlbertType::d() const noexcept {
  switch (kind_) {
    case AlbertKind::I:
      return 1;
    case AlbertKind::II:
    case AlbertKind::III:
      return 2;
    case AlbertKind::IV:
      return d_;
  }
  return 1;
}

int AlbertType::centre_degree() const noexcept {
  return kind_ == AlbertKind::IV ? 2 * e_ : e_;
}

std::int64_t AlbertType::base_rho() const noexcept { return rho_power(*this, 1); }

std::string AlbertType::to_string() const {
  if (kind_ == AlbertKind::IV) {
    return "IV(" + std::to_string(e_) + "," + std::to_string(d_) + ")";
  }
  return picard::to_string(kind_) + "(" + std::to_string(e_) + ")";
}

CharContext CharContext::positive(SplitPolicy policy) {
  return CharContext{CharMode::positive, std::nullopt, policy};
}

CharContext CharContext::zero() {
  return CharContext{CharMode::zero, std::nullopt, SplitPolicy::unknown};
}

CharContext CharContext::with_prime(std::int64_t p, SplitPolicy policy) {
  if (!is_prime(p)) {
    throw ValidationError("characteristic " + std::to_string(p) + " is not prime");
  }
  return CharContext{CharMode::positive, p, policy};
}

bool is_prime(std::int64_t n) noexcept {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::int64_t i = 5; i * i <= n; i += 6) {
    if (n % i == 0 || n % (i + 2) == 0) return false;
  }
  return true;
}

std::string to_string(AlbertKind kind) {
  switch (kind) {
    case AlbertKind::I:
      return "I";
    case AlbertKind::II:
      return "II";
    case AlbertKind::III:
      return "III";
    case AlbertKind::IV:
      return "IV";
  }
  return "?";
}

std::string to_string(SplitPolicy policy) {
  switch (policy) {
    case SplitPolicy::split:
      return "split";
    case SplitPolicy::nonsplit:
      return "nonsplit";
    case SplitPolicy::unknown:
      return "unknown";
  }
  return "?";
}

std::string to_string(CharMode mode) { return mode == CharMode::zero ? "0" : "p"; }

bool restrictions_ok(const AlbertType& t, int n, const CharContext& ctx) {
  if (n < 1) return false;
  const std::int64_t e = t.e();
  const std::int64_t d = t.d();
  const bool charp = ctx.positive_char();
  switch (t.kind()) {
    case AlbertKind::I:
      return divides(e, n);
    case AlbertKind::II:
      return divides(2 * e, n);
    case AlbertKind::III:
      return divides(charp ? e : 2 * e, n);
    case AlbertKind::IV:
      return divides(charp ? e * d : e * d * d, n);
  }
  return false;
}

std::vector<AlbertType> admissible_types(int n, const CharContext& ctx, std::int64_t rho_cap) {
  std::vector<AlbertType> out;
  if (n < 1 || rho_cap < 1) return out;
  // Every rule forces e <= n (and e0*d <= n), so n bounds the search.
  for (int e = 1; e <= n; ++e) {
    for (auto t : {AlbertType::type_i(e), AlbertType::type_ii(e), AlbertType::type_iii(e)}) {
      if (t.base_rho() <= rho_cap && restrictions_ok(t, n, ctx)) out.push_back(t);
    }
    for (int d = 1; static_cast<std::int64_t>(e) * d <= n; ++d) {
      auto t = AlbertType::type_iv(e, d);
      if (t.base_rho() <= rho_cap && restrictions_ok(t, n, ctx)) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::int64_t rho_power(const AlbertType& t, int k) {
  const std::int64_t kk = k;
  const std::int64_t e = t.e();
  switch (t.kind()) {
    case AlbertKind::I:
      return e * kk * (kk + 1) / 2;
    case AlbertKind::II:
      return e * kk * (2 * kk + 1);
    case AlbertKind::III:
      return e * kk * (2 * kk - 1);
    case AlbertKind::IV: {
      const std::int64_t d = t.d();
      return e * d * d * kk * kk;
    }
  }
  return 0;
}

std::int64_t endo_dim(const AlbertType& t, int k) {
  const std::int64_t kk = k;
  const std::int64_t d = t.d();
  return kk * kk * t.centre_degree() * d * d;
}

AlbertType parse_albert_type(const std::string& text) {
  std::size_t pos = 0;
  auto fail = [&](const std::string& msg) -> AlbertType { throw ParseError(pos, msg); };
  while (pos < text.size() && text[pos] == 'I') ++pos;
  const std::size_t is = pos;
  bool four = false;
  if (pos < text.size() && text[pos] == 'V') {
    if (is != 1) return fail("unknown Albert kind");
    four = true;
    ++pos;
  } else if (is < 1 || is > 3) {
    return fail("expected Albert kind I, II, III or IV");
  }
  if (pos >= text.size() || text[pos] != '(') return fail("expected '('");
  ++pos;
  auto number = [&]() {
    const std::size_t start = pos;
    long long v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      v = v * 10 + (text[pos] - '0');
      if (v > 1'000'000) fail("integer too large");
      ++pos;
    }
    if (pos == start) fail("expected integer");
    return static_cast<int>(v);
  };
  const int a = number();
  int b = 0;
  if (four) {
    if (pos >= text.size() || text[pos] != ',') return fail("expected ','");
    ++pos;
    b = number();
  }
  if (pos >= text.size() || text[pos] != ')') return fail("expected ')'");
  ++pos;
  if (pos != text.size()) return fail("trailing characters after type");
  if (four) return AlbertType::type_iv(a, b);
  switch (is) {
    case 1:
      return AlbertType::type_i(a);
    case 2:
      return AlbertType::type_ii(a);
    default:
      return AlbertType::type_iii(a);
  }
}

}  // namespace picard
