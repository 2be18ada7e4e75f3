#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "picard/decomp.hpp"
#include "picard/errors.hpp"

using namespace picard;

TEST_CASE("parse examples") {
  const auto d = parse("ss^3 * cm^2 * ord");
  REQUIRE(d.length() == 3);
  CHECK(d.blocks()[0] == Block::supersingular(3));
  CHECK(d.blocks()[1] == Block::cm(2));
  CHECK(d.blocks()[2] == Block::ordinary(1));

  const auto merged = parse("ss^2 * ss^2");
  REQUIRE(merged.length() == 1);
  CHECK(merged.blocks()[0] == Block::supersingular(4));

  const auto q = parse("[II(1); dim=2]^3");
  REQUIRE(q.length() == 1);
  CHECK(q.blocks()[0].simple_dim() == 2);
  CHECK(q.blocks()[0].power() == 3);
  CHECK(q.blocks()[0].albert() == AlbertType::type_ii(1));
}

TEST_CASE("format examples") {
  CHECK(format(parse("ord * ss^2")) == "ss^2 * ord");
  CHECK(format(Decomposition({Block::supersingular(4)})) == "ss^4");
  CHECK(format(parse("[I(1); dim=3]^1 * cm^2")) == "[I(1); dim=3] * cm^2");
  CHECK(format(parse("[III(1); dim=1]^2")) == "ss^2");
  CHECK(format(parse("[IV(1,1); dim=1] * [I(1); dim=1]")) == "cm * ord");
}

TEST_CASE("parse errors carry positions") {
  try {
    (void)parse("ss^3 * ");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() >= 5);
  }
  CHECK_THROWS_AS(parse(""), ParseError);
  CHECK_THROWS_AS(parse("ss^0"), ParseError);
  CHECK_THROWS_AS(parse("foo"), ParseError);
  CHECK_THROWS_AS(parse("[I(1); dim=0]"), ParseError);
  CHECK_THROWS_AS(parse("[I(0); dim=2]"), ValidationError);
}

TEST_CASE("normalize examples") {
  const auto ss = normalize({Block::supersingular(2), Block::supersingular(2)});
  REQUIRE(ss.length() == 1);
  CHECK(ss.blocks()[0].power() == 4);
  const auto ord = normalize({Block::ordinary(), Block::ordinary()});
  CHECK(ord.length() == 2);
  CHECK(ord.rho() == 2);
}

TEST_CASE("rho examples") {
  CHECK(parse("ss^2").rho() == 6);
  CHECK(parse("ss^4").rho() == 28);
  CHECK(parse("ss^3 * cm^2 * ord").rho() == 20);
}

TEST_CASE("dim, length, ss_index") {
  const auto a = parse("ss^3 * cm^2 * ord");
  CHECK(a.dim() == 6);
  CHECK(a.length() == 3);
  CHECK(a.ss_index() == 3);
  const auto b = parse("ss^4");
  CHECK(b.dim() == 4);
  CHECK(b.length() == 1);
  CHECK(b.ss_index() == 4);
  const auto c = parse("[I(1); dim=5]");
  CHECK(c.dim() == 5);
  CHECK(c.length() == 1);
  CHECK(c.ss_index() == 0);
}

TEST_CASE("p-rank intervals") {
  for (int g = 1; g <= 6; ++g) CHECK(Decomposition({Block::supersingular(g)}).p_rank_interval() == std::pair{0, 0});
  CHECK(parse("ss^5 * ord").p_rank_interval() == std::pair{1, 1});
  CHECK(parse("[I(1); dim=3]").p_rank_interval() == std::pair{0, 3});
  CHECK(parse("[I(2); dim=2]^2").p_rank_interval() == std::pair{2, 4});
  CHECK(parse("cm^2 * ord").p_rank_interval() == std::pair{3, 3});
}

TEST_CASE("slope 1/2 multiplicity") {
  CHECK(parse("ss^3").slope_half_multiplicity() == 6);
  CHECK(parse("[I(1); dim=4]").slope_half_multiplicity() == 0);
  CHECK(parse("ss^2 * ord").slope_half_multiplicity() == 4);
}

TEST_CASE("endomorphism dimension and the Tate bound") {
  CHECK(parse("ss").endo_dim() == 4);
  CHECK_FALSE(parse("ss").tate_obstruction());
  CHECK(parse("[I(1); dim=3]").endo_dim() == 1);
  CHECK(parse("[I(1); dim=3]").tate_obstruction());
  CHECK(parse("cm^2").endo_dim() == 8);
  CHECK_FALSE(parse("cm^2").tate_obstruction());
  CHECK(parse("ord * ord").endo_dim() == 2);
}

namespace {

Block random_block(std::mt19937& rng) {
  std::uniform_int_distribution<int> kind(0, 6), small(1, 4), power(1, 4);
  switch (kind(rng)) {
    case 0: return Block::supersingular(power(rng));
    case 1: return Block::ordinary(power(rng));
    case 2: return Block::cm(power(rng));
    case 3: return Block::simple(small(rng) + 1, AlbertType::type_i(small(rng)), power(rng));
    case 4: return Block::simple(small(rng), AlbertType::type_ii(small(rng)), power(rng));
    case 5: return Block::simple(small(rng), AlbertType::type_iii(small(rng)), power(rng));
    default: return Block::simple(small(rng), AlbertType::type_iv(small(rng), small(rng)), power(rng));
  }
}

std::vector<Block> random_blocks(std::mt19937& rng) {
  std::uniform_int_distribution<int> count(1, 6);
  std::vector<Block> out;
  for (int i = count(rng); i > 0; --i) out.push_back(random_block(rng));
  return out;
}

}  // namespace

TEST_CASE("parse/format round trip on random decompositions") {
  std::mt19937 rng(20240611);
  for (int i = 0; i < 1000; ++i) {
    const auto d = normalize(random_blocks(rng));
    const auto text = format(d);
    CAPTURE(text);
    CHECK(parse(text) == d);
    CHECK(format(parse(text)) == text);
  }
}

TEST_CASE("normalize is idempotent and preserves dimension") {
  std::mt19937 rng(7);
  for (int i = 0; i < 1000; ++i) {
    auto raw = random_blocks(rng);
    int dim = 0;
    for (const auto& b : raw) dim += b.dim();
    const auto once = normalize(raw);
    CHECK(once.dim() == dim);
    CHECK(normalize(once.blocks()) == once);
    CHECK(std::is_sorted(once.blocks().begin(), once.blocks().end(), canonical_less));
  }
}

TEST_CASE("p-rank interval within [0, dim]") {
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const auto d = normalize(random_blocks(rng));
    const auto [lo, hi] = d.p_rank_interval();
    CHECK(0 <= lo);
    CHECK(lo <= hi);
    CHECK(hi <= d.dim());
    // Blocks of dimension <= 2: zero p-rank only for the supersingular part.
    bool small = true;
    for (const auto& b : d.blocks()) small = small && b.simple_dim() <= 2;
    if (small) CHECK((hi == 0) == (d.ss_index() == d.dim()));
  }
}
