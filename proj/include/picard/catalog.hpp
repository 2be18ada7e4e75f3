#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "picard/albert.hpp"
#include "picard/decomp.hpp"

namespace picard {

/// How many pairwise non-isogenous simple varieties of an entry are assumed.
enum class ClassCount { one, unbounded };

/// Existence status of an entry.
enum class Condition { always, p_split, unknown };

enum class CatalogMode { upper, paper, conservative, file };

struct CatalogEntry {
  int simple_dim;
  AlbertType albert;
  ClassCount classes;
  Condition condition;

  friend bool operator==(const CatalogEntry&, const CatalogEntry&) = default;
};

/// The existence policy behind an enumeration: which simple blocks are
/// available, and in how many isogeny classes.
class Catalog {
 public:
  /// Validates entries against restrictions_ok for ctx and rejects duplicate
  /// (dim, type) pairs. Entries are kept in canonical block order.
  Catalog(CatalogMode mode, std::vector<CatalogEntry> entries, const CharContext& ctx);

  CatalogMode mode() const noexcept { return mode_; }
  const std::vector<CatalogEntry>& entries() const noexcept { return entries_; }
  int max_simple_dim() const noexcept;

  /// Whether conditional entries are usable under ctx: p_split entries need
  /// policy split; under policy unknown, conditional entries are kept only by
  /// the upper catalog.
  bool entry_enabled(const CatalogEntry& e, const CharContext& ctx) const;

 private:
  CatalogMode mode_;
  std::vector<CatalogEntry> entries_;
};

/// Built-in catalogs for simple dimensions 1..g_max.
///
///  - upper: every type allowed by the divisibility restrictions, with simple
///    surfaces limited to the algebras a simple abelian surface can carry
///    (I(1), I(2), II(1), IV(2,1)). IV(1,n) in dimension n >= 2 is marked
///    p_split.
///  - paper: ordinary and CM elliptic curves, the supersingular curve, a
///    Picard-number-one simple variety in every dimension, and IV(1,n) in
///    dimension n >= 3 conditional on p splitting.
///  - conservative: paper without conditional entries.
///
/// In characteristic zero there is no supersingular entry.
Catalog builtin(CatalogMode mode, int g_max, const CharContext& ctx);

/// Loads a JSON array of {"dim", "type", "classes", "condition"} objects.
/// Throws ParseError for malformed files and ValidationError naming the
/// offending entry.
Catalog load_catalog(const std::filesystem::path& file, const CharContext& ctx);
Catalog parse_catalog(std::string_view json_text, const CharContext& ctx);

struct BlockTemplate {
  Block block;
  ClassCount classes;
};

/// Every block A^k of total dimension m built from an enabled entry of
/// simple dimension n with n*k = m, in canonical order.
std::vector<BlockTemplate> blocks_for_dim(const Catalog& c, int m, const CharContext& ctx);

CatalogMode parse_catalog_mode(std::string_view label);
std::string to_string(CatalogMode mode);
std::string to_string(ClassCount c);
std::string to_string(Condition c);

}  // namespace picard
