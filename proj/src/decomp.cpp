#include "picard/decomp.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

#include "picard/errors.hpp"

namespace picard {

Block::Block(int simple_dim, AlbertType t, int power)
    : simple_dim_(simple_dim),
      albert_(t),
      power_(power),
      supersingular_(simple_dim == 1 && t == AlbertType::type_iii(1)) {
  if (simple_dim < 1) throw ValidationError("block dimension must be >= 1");
  if (power < 1) throw ValidationError("block power must be >= 1");
}

Block Block::supersingular(int power) { return Block(1, AlbertType::type_iii(1), power); }

Block Block::simple(int simple_dim, const AlbertType& t, int power) {
  return Block(simple_dim, t, power);
}

Block Block::with_power(int power) const { return Block(simple_dim_, albert_, power); }

bool canonical_less(const Block& a, const Block& b) {
  if (a.is_supersingular() != b.is_supersingular()) return a.is_supersingular();
  if (a.simple_dim() != b.simple_dim()) return a.simple_dim() > b.simple_dim();
  if (a.albert() != b.albert()) return a.albert() > b.albert();
  return a.power() > b.power();
}

Decomposition::Decomposition(std::vector<Block> blocks) {
  int ss = 0;
  for (const auto& b : blocks) {
    if (b.is_supersingular()) {
      ss += b.power();
    } else {
      blocks_.push_back(b);
    }
  }
  if (ss > 0) blocks_.push_back(Block::supersingular(ss));
  if (blocks_.empty()) throw ValidationError("a decomposition needs at least one block");
  std::stable_sort(blocks_.begin(), blocks_.end(), canonical_less);
}

std::int64_t Decomposition::rho() const {
  std::int64_t total = 0;
  for (const auto& b : blocks_) total += b.rho();
  return total;
}

int Decomposition::dim() const {
  int total = 0;
  for (const auto& b : blocks_) total += b.dim();
  return total;
}

int Decomposition::ss_index() const {
  // Normalized: the supersingular block, if any, is first.
  return blocks_.front().is_supersingular() ? blocks_.front().power() : 0;
}

std::pair<int, int> Decomposition::p_rank_interval() const {
  int lo = 0;
  int hi = 0;
  for (const auto& b : blocks_) {
    if (b.is_supersingular()) continue;
    const int k = b.power();
    switch (b.simple_dim()) {
      case 1:
        // elliptic: supersingular iff p-rank 0
        lo += k;
        hi += k;
        break;
      case 2:
        lo += k;
        hi += 2 * k;
        break;
      default:
        hi += b.dim();
        break;
    }
  }
  return {lo, hi};
}

std::int64_t Decomposition::endo_dim() const {
  std::int64_t total = 0;
  for (const auto& b : blocks_) total += b.endo_dim();
  return total;
}

Decomposition normalize(std::vector<Block> blocks) { return Decomposition(std::move(blocks)); }

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Decomposition run() {
    std::vector<Block> blocks;
    skip_ws();
    if (at_end()) fail("empty decomposition");
    blocks.push_back(block());
    skip_ws();
    while (!at_end()) {
      expect('*');
      skip_ws();
      blocks.push_back(block());
      skip_ws();
    }
    return Decomposition(std::move(blocks));
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  void skip_ws() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool consume(std::string_view word) {
    if (text_.substr(pos_, word.size()) == word) {
      pos_ += word.size();
      return true;
    }
    return false;
  }

  int integer() {
    skip_ws();
    const std::size_t start = pos_;
    long long value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = value * 10 + (text_[pos_] - '0');
      if (value > std::numeric_limits<int>::max() / 16) {
        pos_ = start;
        fail("integer too large");
      }
      ++pos_;
    }
    if (pos_ == start) fail("expected integer");
    return static_cast<int>(value);
  }

  int optional_power() {
    skip_ws();
    if (peek() != '^') return 1;
    ++pos_;
    const std::size_t at = pos_;
    const int k = integer();
    if (k < 1) {
      pos_ = at;
      fail("power must be >= 1");
    }
    return k;
  }

  AlbertType albert() {
    skip_ws();
    const std::size_t start = pos_;
    std::size_t numerals = 0;
    while (peek() == 'I') {
      ++numerals;
      ++pos_;
    }
    bool four = false;
    if (peek() == 'V') {
      if (numerals != 1) fail("unknown Albert kind");
      four = true;
      ++pos_;
    } else if (numerals < 1 || numerals > 3) {
      pos_ = start;
      fail("expected Albert kind I, II, III or IV");
    }
    skip_ws();
    expect('(');
    const int a = integer();
    int b = 0;
    if (four) {
      skip_ws();
      expect(',');
      b = integer();
    }
    skip_ws();
    expect(')');
    try {
      if (four) return AlbertType::type_iv(a, b);
      if (numerals == 1) return AlbertType::type_i(a);
      if (numerals == 2) return AlbertType::type_ii(a);
      return AlbertType::type_iii(a);
    } catch (const ValidationError& e) {
      throw ValidationError("at position " + std::to_string(start) + ": " + e.what());
    }
  }

  Block block() {
    if (consume("ss")) return Block::supersingular(optional_power());
    if (consume("ord")) return Block::ordinary(optional_power());
    if (consume("cm")) return Block::cm(optional_power());
    if (peek() != '[') fail("expected 'ss', 'ord', 'cm' or '['");
    ++pos_;
    const AlbertType t = albert();
    skip_ws();
    expect(';');
    skip_ws();
    if (!consume("dim")) fail("expected 'dim='");
    skip_ws();
    expect('=');
    const std::size_t at = pos_;
    const int n = integer();
    if (n < 1) {
      pos_ = at;
      fail("dimension must be >= 1");
    }
    skip_ws();
    expect(']');
    return Block::simple(n, t, optional_power());
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Decomposition parse(std::string_view text) { return Parser(text).run(); }

std::string format(const Block& b) {
  std::string head;
  if (b.is_supersingular()) {
    head = "ss";
  } else if (b.simple_dim() == 1 && b.albert() == AlbertType::type_i(1)) {
    head = "ord";
  } else if (b.simple_dim() == 1 && b.albert() == AlbertType::type_iv(1, 1)) {
    head = "cm";
  } else {
    head = "[" + b.albert().to_string() + "; dim=" + std::to_string(b.simple_dim()) + "]";
  }
  if (b.power() != 1) head += "^" + std::to_string(b.power());
  return head;
}

std::string format(const Decomposition& d) {
  std::string out;
  for (const auto& b : d.blocks()) {
    if (!out.empty()) out += " * ";
    out += format(b);
  }
  return out;
}

}  // namespace picard
