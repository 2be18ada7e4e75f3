#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "picard/catalog.hpp"
#include "picard/errors.hpp"

using namespace picard;

namespace {

using Key = std::pair<int, std::string>;

std::set<Key> keys(const Catalog& c) {
  std::set<Key> out;
  for (const auto& e : c.entries()) out.insert({e.simple_dim, e.albert.to_string()});
  return out;
}

bool has_entry(const Catalog& c, int dim, const AlbertType& t, ClassCount cls) {
  return std::any_of(c.entries().begin(), c.entries().end(), [&](const CatalogEntry& e) {
    return e.simple_dim == dim && e.albert == t && e.classes == cls;
  });
}

std::set<std::string> formatted(const std::vector<BlockTemplate>& v) {
  std::set<std::string> out;
  for (const auto& t : v) out.insert(format(t.block));
  return out;
}

const std::vector<CharContext> kContexts = {
    CharContext::positive(SplitPolicy::unknown), CharContext::positive(SplitPolicy::split),
    CharContext::positive(SplitPolicy::nonsplit), CharContext::zero()};

}  // namespace

TEST_CASE("builtin examples") {
  const auto p = CharContext::positive();
  CHECK(has_entry(builtin(CatalogMode::paper, 4, p), 1, AlbertType::type_iv(1, 1), ClassCount::unbounded));
  CHECK(keys(builtin(CatalogMode::upper, 4, p)).count({4, "IV(2,2)"}) == 1);
  const auto cons = builtin(CatalogMode::conservative, 5, p);
  CHECK(std::none_of(cons.entries().begin(), cons.entries().end(),
                     [](const CatalogEntry& e) { return e.condition == Condition::p_split; }));
}

TEST_CASE("paper catalog content") {
  const auto p = CharContext::positive();
  const auto c = builtin(CatalogMode::paper, 6, p);
  CHECK(has_entry(c, 1, AlbertType::type_iii(1), ClassCount::one));
  for (int n = 1; n <= 6; ++n) CHECK(has_entry(c, n, AlbertType::type_i(1), ClassCount::unbounded));
  for (int n = 3; n <= 6; ++n) CHECK(keys(c).count({n, AlbertType::type_iv(1, n).to_string()}) == 1);
  // No supersingular curves in characteristic zero.
  CHECK_FALSE(has_entry(builtin(CatalogMode::paper, 6, CharContext::zero()), 1, AlbertType::type_iii(1),
                        ClassCount::one));
}

TEST_CASE("blocks_for_dim examples") {
  const auto p = CharContext::positive();
  const auto paper = builtin(CatalogMode::paper, 4, p);
  const auto two = formatted(blocks_for_dim(paper, 2, p));
  for (const char* s : {"ord^2", "cm^2", "ss^2", "[I(1); dim=2]"}) CHECK(two.count(s) == 1);
  for (auto mode : {CatalogMode::upper, CatalogMode::paper, CatalogMode::conservative}) {
    CHECK(formatted(blocks_for_dim(builtin(mode, 4, p), 1, p)).count("ss") == 1);
  }
}

TEST_CASE("catalog files") {
  const auto p = CharContext::positive();
  CHECK_THROWS_AS(parse_catalog(R"j([{"dim": 3, "type": "IV(2,2)"}])j", p), ValidationError);
  CHECK_THROWS_AS(parse_catalog("not json", p), ParseError);
  CHECK_THROWS_AS(parse_catalog(R"j([{"dim": 1, "type": "X(1)"}])j", p), ParseError);
  CHECK_THROWS_AS(parse_catalog(R"j([{"dim": 1, "type": "I(1)", "classes": "many"}])j", p), ValidationError);
  const auto c = parse_catalog(
      R"j([{"dim": 1, "type": "I(1)", "classes": "unbounded", "condition": "always"},
          {"dim": 1, "type": "III(1)", "classes": "one"},
          {"dim": 2, "type": "II(1)", "classes": "unbounded", "condition": "unknown"}])j",
      p);
  CHECK(c.mode() == CatalogMode::file);
  CHECK(c.entries().size() == 3);
  CHECK(formatted(blocks_for_dim(c, 2, p)) == std::set<std::string>{"ss^2", "ord^2"});
  CHECK_THROWS(parse_catalog_mode("bogus"));
  CHECK(parse_catalog_mode("upper") == CatalogMode::upper);
}

TEST_CASE("catalog inclusions conservative <= paper <= upper") {
  for (const auto& ctx : kContexts) {
    for (int g = 1; g <= 12; ++g) {
      CAPTURE(g);
      const auto c = keys(builtin(CatalogMode::conservative, g, ctx));
      const auto p = keys(builtin(CatalogMode::paper, g, ctx));
      const auto u = keys(builtin(CatalogMode::upper, g, ctx));
      CHECK(std::includes(p.begin(), p.end(), c.begin(), c.end()));
      CHECK(std::includes(u.begin(), u.end(), p.begin(), p.end()));
    }
  }
}

TEST_CASE("every builtin entry passes the restrictions") {
  for (const auto& ctx : kContexts) {
    for (auto mode : {CatalogMode::upper, CatalogMode::paper, CatalogMode::conservative}) {
      const auto c = builtin(mode, 12, ctx);
      for (const auto& e : c.entries()) CHECK(restrictions_ok(e.albert, e.simple_dim, ctx));
    }
  }
}

TEST_CASE("split policy only adds blocks") {
  for (auto mode : {CatalogMode::upper, CatalogMode::paper, CatalogMode::conservative}) {
    for (int m = 1; m <= 12; ++m) {
      const auto unknown = CharContext::positive(SplitPolicy::unknown);
      const auto split = CharContext::positive(SplitPolicy::split);
      const auto a = formatted(blocks_for_dim(builtin(mode, 12, unknown), m, unknown));
      const auto b = formatted(blocks_for_dim(builtin(mode, 12, split), m, split));
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
    }
  }
  const auto split = CharContext::positive(SplitPolicy::split);
  CHECK(formatted(blocks_for_dim(builtin(CatalogMode::paper, 3, split), 3, split)).count("[IV(1,3); dim=3]") == 1);
  const auto unknown = CharContext::positive();
  CHECK(formatted(blocks_for_dim(builtin(CatalogMode::paper, 3, unknown), 3, unknown)).count("[IV(1,3); dim=3]") == 0);
}
