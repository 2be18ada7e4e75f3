#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "picard/albert.hpp"
#include "picard/decomp.hpp"

namespace picard {

/// A published R_g table. `star` lists the values marked as attainable with
/// supersingularity index 0.
struct Fixture {
  std::string label;
  int g;
  std::string citation;
  std::vector<std::int64_t> values;
  std::vector<std::int64_t> star;
};

enum class DiffAspect { value, star };

/// A known discrepancy between a published table and the enumeration.
struct AllowlistEntry {
  std::string label;
  std::int64_t rho;
  DiffAspect aspect;
  std::string note;
};

/// Throws ParseError / ValidationError (unsorted values, star not a subset).
std::vector<Fixture> load_fixtures(const std::filesystem::path& file);
std::vector<Fixture> parse_fixtures(const std::string& json_text);
std::vector<AllowlistEntry> load_allowlist(const std::filesystem::path& file);
std::vector<AllowlistEntry> parse_allowlist(const std::string& json_text);

struct VerifyEntry {
  std::string label;
  std::int64_t rho;
  bool pass;
  std::optional<DiffAspect> aspect;  // set on DIFF
  std::string printed;               // "star", "ss-only" or "absent"
  std::string computed;              // same vocabulary, plus refuted/undetermined
  std::optional<Decomposition> witness;
  bool allowlisted = false;
  std::string note;
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  std::size_t diff_count() const;
  std::size_t unexpected_diff_count() const;  // DIFFs not on the allowlist
  bool any_diff() const { return diff_count() > 0; }
};

/// Compares each fixture with the paper-catalog enumeration: membership of
/// every value in either set, then the star split of common values. Every
/// DIFF where the enumeration has the value carries a witness (a star witness
/// when the enumeration says star, an ss witness otherwise). Published data
/// is never rewritten.
VerifyReport verify(const std::vector<Fixture>& fixtures, const std::vector<AllowlistEntry>& allowlist,
                    const CharContext& ctx);

std::string to_string(DiffAspect a);

}  // namespace picard
