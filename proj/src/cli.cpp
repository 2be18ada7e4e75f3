#include "picard/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "picard/albert.hpp"
#include "picard/asymptotics.hpp"
#include "picard/catalog.hpp"
#include "picard/decomp.hpp"
#include "picard/errors.hpp"
#include "picard/range.hpp"
#include "picard/verify.hpp"

#ifndef PICARD_DATA_DIR
#define PICARD_DATA_DIR "data"
#endif

namespace picard::cli {

namespace {

using nlohmann::json;

enum class Format { md, csv, json };

/// Tabular view of a command result; md and csv render it, json uses the
/// structured payload built from the same data.
struct Output {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
  json payload;
  std::vector<std::string> notes;
};

std::string cell_text(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  return v.dump();
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string md_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '|') out += '\\';
    out += c;
  }
  return out;
}

void emit(const Output& o, Format fmt, std::ostream& out) {
  switch (fmt) {
    case Format::json:
      out << o.payload.dump(2) << "\n";
      return;
    case Format::csv:
      for (std::size_t i = 0; i < o.columns.size(); ++i) {
        out << (i ? "," : "") << csv_escape(o.columns[i]);
      }
      out << "\n";
      for (const auto& row : o.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
          out << (i ? "," : "") << csv_escape(cell_text(row[i]));
        }
        out << "\n";
      }
      return;
    case Format::md:
      if (!o.title.empty()) out << o.title << "\n\n";
      if (!o.columns.empty()) {
        out << "|";
        for (const auto& c : o.columns) out << " " << c << " |";
        out << "\n|";
        for (std::size_t i = 0; i < o.columns.size(); ++i) out << "---|";
        out << "\n";
        for (const auto& row : o.rows) {
          out << "|";
          for (const auto& v : row) out << " " << md_escape(cell_text(v)) << " |";
          out << "\n";
        }
      }
      for (const auto& n : o.notes) out << "\n" << n << "\n";
      return;
  }
}

json witness_json(const std::optional<Decomposition>& d) {
  return d ? json(format(*d)) : json(nullptr);
}

std::string join(const std::vector<std::int64_t>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

std::string context_label(const CharContext& ctx) {
  return "char " + to_string(ctx.mode) +
         (ctx.positive_char() ? ", p-split " + to_string(ctx.p_split) : std::string());
}

json context_json(const CharContext& ctx) {
  return json{{"char", to_string(ctx.mode)}, {"p_split", to_string(ctx.p_split)}};
}

json findings_json(const std::vector<Finding>& fs) {
  json arr = json::array();
  for (const auto& f : fs) {
    arr.push_back({{"rho", f.rho}, {"description", f.description}, {"witness", witness_json(f.witness)}});
  }
  return arr;
}

void add_findings(Output& o, const std::string& kind, const std::vector<Finding>& fs) {
  for (const auto& f : fs) o.rows.push_back({kind, f.rho, f.description, witness_json(f.witness)});
}

struct Globals {
  std::string format = "md";
  std::string characteristic = "p";
  std::string p_split = "unknown";

  CharContext ctx() const {
    if (characteristic == "0") return CharContext::zero();
    SplitPolicy policy = SplitPolicy::unknown;
    if (p_split == "split") policy = SplitPolicy::split;
    if (p_split == "nonsplit") policy = SplitPolicy::nonsplit;
    if (characteristic == "p") return CharContext::positive(policy);
    return CharContext::with_prime(std::stoll(characteristic), policy);
  }

  Format fmt() const {
    if (format == "csv") return Format::csv;
    if (format == "json") return Format::json;
    return Format::md;
  }
};

Output cmd_rho(const std::string& text) {
  const Decomposition d = parse(text);
  const auto [lo, hi] = d.p_rank_interval();
  Output o;
  o.title = "`" + format(d) + "`: rho = " + std::to_string(d.rho());
  o.columns = {"decomposition", "rho", "dim", "length", "ss_index", "p_rank_lo", "p_rank_hi",
               "slope_half", "endo_dim", "tate_obstruction"};
  o.rows.push_back({format(d), d.rho(), d.dim(), d.length(), d.ss_index(), lo, hi,
                    d.slope_half_multiplicity(), d.endo_dim(), d.tate_obstruction()});
  o.payload = {{"decomposition", format(d)}, {"rho", d.rho()},       {"dim", d.dim()},
               {"length", d.length()},       {"ss_index", d.ss_index()}, {"p_rank", {lo, hi}},
               {"slope_half", d.slope_half_multiplicity()}, {"endo_dim", d.endo_dim()},
               {"tate_obstruction", d.tate_obstruction()}};
  return o;
}

Output range_output(const RangeResult& r, const std::string& mode_label, bool star_only) {
  Output o;
  const auto rhos = r.rhos();
  o.title = std::string(star_only ? "R_" : "R_") + std::to_string(r.g) + (star_only ? "^*" : "") +
            " (" + context_label(r.ctx) + ", mode " + mode_label + "): " + join(rhos);
  o.columns = {"rho", "status", "star", "witness"};
  json values = json::array();
  for (const auto& v : r.values) {
    o.rows.push_back({v.rho, to_string(v.status), v.star, witness_json(v.witness)});
    values.push_back({{"rho", v.rho},
                      {"status", to_string(v.status)},
                      {"star", v.star},
                      {"witness", witness_json(v.witness)}});
  }
  o.payload = {{"g", r.g}, {"char", to_string(r.ctx.mode)}, {"mode", mode_label}, {"values", values}};
  return o;
}

Output cmd_membership(std::int64_t rho, int g, const CharContext& ctx) {
  const auto m = membership(rho, g, ctx);
  Output o;
  o.title = std::to_string(rho) + " in R_" + std::to_string(g) + ": " + to_string(m.status) +
            (m.witness ? " (" + format(*m.witness) + ")" : "");
  o.columns = {"rho", "g", "status", "witness"};
  o.rows.push_back({rho, g, to_string(m.status), witness_json(m.witness)});
  o.payload = {{"rho", rho}, {"g", g}, {"status", to_string(m.status)}, {"witness", witness_json(m.witness)}};
  o.payload.update(context_json(ctx));
  if (m.status == Membership::undetermined) {
    o.notes.push_back("The witness is an upper-mode decomposition whose blocks are not known to exist.");
  }
  return o;
}

Output cmd_gaps(int g, const CharContext& ctx) {
  Output o;
  const auto gs = gaps(g, ctx);
  o.title = "Gaps of R_" + std::to_string(g) + " (upper bound, " + context_label(ctx) + ")";
  o.columns = {"from", "to", "size"};
  json arr = json::array();
  for (const auto& [a, b] : gs) {
    o.rows.push_back({a, b, b - a + 1});
    arr.push_back({{"from", a}, {"to", b}});
  }
  o.payload = {{"g", g}, {"gaps", arr}};
  o.payload.update(context_json(ctx));
  return o;
}

Output cmd_max_by_length(int g, const CharContext& ctx) {
  Output o;
  o.title = "Maximal Picard number by length, g = " + std::to_string(g);
  o.columns = {"r", "enumerated", "closed_form", "match"};
  const Enumerator e(builtin(CatalogMode::upper, g, ctx), g, ctx);
  json arr = json::array();
  for (int r = 1; r <= g; ++r) {
    const auto v = e.max_by_length(g, r).value_or(-1);
    const auto cf = max_by_length_closed_form(r, g);
    o.rows.push_back({r, v, cf, v == cf});
    arr.push_back({{"r", r}, {"enumerated", v}, {"closed_form", cf}, {"match", v == cf}});
  }
  o.payload = {{"g", g}, {"lengths", arr}};
  return o;
}

Output cmd_witness(std::int64_t n, int g) {
  const auto d = completeness_witness(n, g);
  Output o;
  o.title = format(d);
  o.columns = {"n", "g", "witness", "rho", "dim", "proof_bound"};
  o.rows.push_back({n, g, format(d), d.rho(), d.dim(), proof_bound_holds(n, g)});
  o.payload = {{"n", n}, {"g", g}, {"witness", format(d)}, {"rho", d.rho()}, {"dim", d.dim()},
               {"proof_bound", proof_bound_holds(n, g)}};
  return o;
}

Output cmd_density(int g_max, const CharContext& ctx) {
  Output o;
  o.title = "Density of R_g (paper catalog, " + context_label(ctx) + ")";
  o.columns = {"g", "count", "bound", "delta", "delta_reduced", "value"};
  json arr = json::array();
  for (const auto& d : density_table(g_max, ctx)) {
    const auto [num, den] = d.reduced();
    const std::string frac = std::to_string(d.count) + "/" + std::to_string(d.bound);
    const std::string red = std::to_string(num) + "/" + std::to_string(den);
    std::ostringstream value;
    value.precision(6);
    value << std::fixed << d.value();
    o.rows.push_back({d.g, d.count, d.bound, frac, red, value.str()});
    arr.push_back({{"g", d.g}, {"count", d.count}, {"bound", d.bound}, {"delta", red}});
  }
  o.payload = {{"densities", arr}};
  return o;
}

Output cmd_distribution(int g, int ell, const CharContext& ctx) {
  const auto rep = check_distribution(g, ell, ctx);
  Output o;
  o.title = "Distribution of large Picard numbers, g = " + std::to_string(g) +
            ", ell = " + std::to_string(ell) + ": " + (rep.passed() ? "PASS" : "FAIL");
  o.columns = {"kind", "rho", "description", "witness"};
  json translates = json::object();
  for (std::size_t i = 0; i < rep.translates.size(); ++i) {
    o.notes.push_back("R_{" + std::to_string(g) + "," + std::to_string(i + 1) + "} = {" +
                      join(rep.translates[i], ", ") + "}");
    translates[std::to_string(i + 1)] = rep.translates[i];
  }
  o.notes.push_back("tail = {" + join(rep.tail, ", ") + "}");
  add_findings(o, "overlap", rep.overlaps);
  add_findings(o, "mismatch", rep.mismatches);
  o.payload = {{"g", g},           {"ell", ell},
               {"passed", rep.passed()},
               {"translates", translates},
               {"tail", rep.tail},
               {"overlaps", findings_json(rep.overlaps)},
               {"mismatches", findings_json(rep.mismatches)}};
  return o;
}

Output cmd_correspondence(int g, int ell, const CharContext& ctx) {
  const auto rep = check_ss_correspondence(g, ell, ctx);
  Output o;
  o.title = "Picard number vs supersingularity index, g = " + std::to_string(g) +
            ", ell = " + std::to_string(ell) + ": " + (rep.passed() ? "PASS" : "FAIL");
  o.columns = {"kind", "rho", "description", "witness"};
  add_findings(o, "violation", rep.violations);
  o.payload = {{"g", g}, {"ell", ell}, {"passed", rep.passed()}, {"violations", findings_json(rep.violations)}};
  return o;
}

Output cmd_conjecture(int g, const CharContext& ctx) {
  const auto rep = conjecture_check(g, ctx);
  Output o;
  o.title = "Conjectural description of R_" + std::to_string(g) + ": " +
            (rep.matches() ? "match" : "differences found");
  o.columns = {"kind", "rho", "description", "witness"};
  for (auto rho : rep.only_rhs) o.rows.push_back({"only-rhs", rho, "right-hand side only", nullptr});
  add_findings(o, "only-enumerated", rep.only_enumerated);
  o.notes.push_back("rhs = {" + join(rep.rhs, ", ") + "}");
  o.notes.push_back("enumerated = {" + join(rep.enumerated, ", ") + "}");
  o.payload = {{"g", g},
               {"matches", rep.matches()},
               {"rhs", rep.rhs},
               {"enumerated", rep.enumerated},
               {"only_rhs", rep.only_rhs},
               {"only_enumerated", findings_json(rep.only_enumerated)}};
  return o;
}

Output cmd_nonadditivity(int g, const CharContext& ctx) {
  Output o;
  const auto list = nonadditivity_counterexamples(g, ctx);
  o.title = "Non-additivity counterexamples for g = " + std::to_string(g) + ": " +
            std::to_string(list.size());
  o.columns = {"a", "rho_a", "b", "rho_b", "sum"};
  json arr = json::array();
  for (const auto& c : list) {
    o.rows.push_back({c.a, c.ra, c.b, c.rb, c.ra + c.rb});
    arr.push_back({{"a", c.a}, {"rho_a", c.ra}, {"b", c.b}, {"rho_b", c.rb}, {"sum", c.ra + c.rb}});
  }
  o.payload = {{"g", g}, {"counterexamples", arr}};
  return o;
}

Output cmd_moduli(int g, int f, int r) {
  const auto m = moduli_dims(g, f, r);
  Output o;
  o.title = "Moduli dimensions, g = " + std::to_string(g) + ", f = " + std::to_string(f) +
            ", r = " + std::to_string(r);
  o.columns = {"g", "f", "r", "dim_Ag", "dim_Ss", "dim_Vf", "dim_L"};
  o.rows.push_back({g, f, r, m.dim_ag, m.dim_ss, m.dim_vf, m.dim_l});
  o.payload = {{"g", g},           {"f", f},           {"r", r},          {"dim_Ag", m.dim_ag},
               {"dim_Ss", m.dim_ss}, {"dim_Vf", m.dim_vf}, {"dim_L", m.dim_l}};
  return o;
}

Output cmd_structure(int g, std::int64_t rho, const CharContext& ctx) {
  const auto ws = structure_witnesses(g, rho, ctx);
  Output o;
  o.title = "Upper-mode decompositions of dimension " + std::to_string(g) + " with rho = " +
            std::to_string(rho) + ": " + std::to_string(ws.size());
  o.columns = {"decomposition", "ss_index", "length"};
  json arr = json::array();
  for (const auto& d : ws) {
    o.rows.push_back({format(d), d.ss_index(), d.length()});
    arr.push_back(format(d));
  }
  o.payload = {{"g", g}, {"rho", rho}, {"witnesses", arr}};
  return o;
}

std::filesystem::path default_fixtures() {
  if (const char* env = std::getenv("PICARD_FIXTURES"); env && *env) return env;
  return std::filesystem::path(PICARD_DATA_DIR) / "fixtures.json";
}

Output verify_output(const VerifyReport& rep) {
  Output o;
  const auto diffs = rep.diff_count();
  o.title = "Fixture verification: " + std::to_string(rep.entries.size()) + " entries, " +
            std::to_string(diffs) + " DIFF (" + std::to_string(rep.unexpected_diff_count()) +
            " not allowlisted)";
  o.columns = {"fixture", "rho", "result", "aspect", "printed", "computed", "witness", "witness_rho",
               "witness_dim", "allowlisted", "note"};
  json arr = json::array();
  for (const auto& e : rep.entries) {
    const json aspect = e.aspect ? json(to_string(*e.aspect)) : json(nullptr);
    const json wrho = e.witness ? json(e.witness->rho()) : json(nullptr);
    const json wdim = e.witness ? json(e.witness->dim()) : json(nullptr);
    o.rows.push_back({e.label, e.rho, e.pass ? "PASS" : "DIFF", aspect, e.printed, e.computed,
                      witness_json(e.witness), wrho, wdim, e.allowlisted, e.note});
    arr.push_back({{"fixture", e.label},
                   {"rho", e.rho},
                   {"result", e.pass ? "PASS" : "DIFF"},
                   {"aspect", aspect},
                   {"printed", e.printed},
                   {"computed", e.computed},
                   {"witness", witness_json(e.witness)},
                   {"witness_rho", wrho},
                   {"witness_dim", wdim},
                   {"allowlisted", e.allowlisted},
                   {"note", e.note}});
  }
  o.payload = {{"entries", arr}, {"diffs", diffs}, {"unexpected_diffs", rep.unexpected_diff_count()}};
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Picard numbers of abelian varieties in positive characteristic", "picard"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--format", globals.format, "Output format")
      ->check(CLI::IsMember({"md", "csv", "json"}));
  app.add_option("--char", globals.characteristic, "Characteristic: p (generic), 0, or a prime");
  app.add_option("--p-split", globals.p_split, "Whether p splits in the CM algebra of Type IV(1,g)")
      ->check(CLI::IsMember({"split", "nonsplit", "unknown"}));

  std::function<Output()> action;
  int exit_on_success = kOk;

  auto* rho_cmd = app.add_subcommand("rho", "Invariants of a decomposition");
  std::string decomp_text;
  rho_cmd->add_option("decomposition", decomp_text)->required();
  rho_cmd->callback([&] { action = [&] { return cmd_rho(decomp_text); }; });

  auto* range_cmd = app.add_subcommand("range", "Attainable Picard numbers R_g");
  int g = 0;
  std::string mode = "paper";
  std::string catalog_file;
  bool star = false;
  range_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  range_cmd->add_option("--mode", mode)->check(CLI::IsMember({"upper", "paper", "conservative"}));
  range_cmd->add_option("--catalog", catalog_file, "Catalog JSON file (overrides --mode)")
      ->check(CLI::ExistingFile);
  range_cmd->add_flag("--star", star, "Only supersingularity-free decompositions");
  range_cmd->callback([&] {
    action = [&] {
      const auto ctx = globals.ctx();
      const Catalog c = catalog_file.empty() ? builtin(parse_catalog_mode(mode), g, ctx)
                                             : load_catalog(catalog_file, ctx);
      return range_output(attainable(g, c, ctx, !star), catalog_file.empty() ? mode : "file", star);
    };
  });

  auto* member_cmd = app.add_subcommand("membership", "Is rho in R_g?");
  std::int64_t rho = 0;
  member_cmd->add_option("rho", rho)->required();
  member_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  member_cmd->callback([&] { action = [&] { return cmd_membership(rho, g, globals.ctx()); }; });

  auto* gaps_cmd = app.add_subcommand("gaps", "Maximal intervals missing from the upper bound of R_g");
  gaps_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  gaps_cmd->callback([&] { action = [&] { return cmd_gaps(g, globals.ctx()); }; });

  auto* mbl_cmd = app.add_subcommand("max-by-length", "M_{r,g} by enumeration and closed form");
  mbl_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  mbl_cmd->callback([&] { action = [&] { return cmd_max_by_length(g, globals.ctx()); }; });

  auto* witness_cmd = app.add_subcommand("witness", "Constructive witness for n in R_g");
  std::int64_t n = 0;
  witness_cmd->add_option("n", n)->required();
  witness_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  witness_cmd->callback([&] { action = [&] { return cmd_witness(n, g); }; });

  auto* density_cmd = app.add_subcommand("density", "Densities #R_g / (2g^2 - g)");
  int g_max = 0;
  density_cmd->add_option("g_max", g_max)->required()->check(CLI::PositiveNumber);
  density_cmd->callback([&] { action = [&] { return cmd_density(g_max, globals.ctx()); }; });

  auto* dist_cmd = app.add_subcommand("distribution", "Check the distribution of large Picard numbers");
  int ell = 0;
  dist_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  dist_cmd->add_option("ell", ell)->required()->check(CLI::PositiveNumber);
  dist_cmd->callback([&] { action = [&] { return cmd_distribution(g, ell, globals.ctx()); }; });

  auto* corr_cmd = app.add_subcommand("correspondence", "Check rho in R_{g,n} <=> s(X) = g - n");
  corr_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  corr_cmd->add_option("ell", ell)->required()->check(CLI::PositiveNumber);
  corr_cmd->callback([&] { action = [&] { return cmd_correspondence(g, ell, globals.ctx()); }; });

  auto* conj_cmd = app.add_subcommand("conjecture", "Compare R_g with its conjectural description");
  conj_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  conj_cmd->callback([&] { action = [&] { return cmd_conjecture(g, globals.ctx()); }; });

  auto* nonadd_cmd = app.add_subcommand("nonadditivity", "ra + rb outside R_g with ra in R_a, rb in R_b");
  nonadd_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  nonadd_cmd->callback([&] { action = [&] { return cmd_nonadditivity(g, globals.ctx()); }; });

  auto* moduli_cmd = app.add_subcommand("moduli", "Moduli dimension formulas");
  int f = 0;
  int r = 0;
  moduli_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  moduli_cmd->add_option("--f", f, "p-rank");
  moduli_cmd->add_option("--r", r, "NL-locus index");
  moduli_cmd->callback([&] { action = [&] { return cmd_moduli(g, f, r); }; });

  auto* structure_cmd = app.add_subcommand("structure", "All upper-mode decompositions with given rho");
  structure_cmd->add_option("g", g)->required()->check(CLI::PositiveNumber);
  structure_cmd->add_option("rho", rho)->required();
  structure_cmd->callback([&] { action = [&] { return cmd_structure(g, rho, globals.ctx()); }; });

  auto* verify_cmd = app.add_subcommand("verify", "Compare published tables with the enumeration");
  std::string fixtures_file;
  std::string allowlist_file;
  verify_cmd->add_option("--fixtures", fixtures_file, "Fixture JSON (default: $PICARD_FIXTURES)");
  verify_cmd->add_option("--allowlist", allowlist_file, "Known-errata JSON");
  verify_cmd->callback([&] {
    action = [&] {
      const auto fixtures = load_fixtures(fixtures_file.empty() ? default_fixtures() : std::filesystem::path(fixtures_file));
      std::vector<AllowlistEntry> allow;
      if (!allowlist_file.empty()) {
        allow = load_allowlist(allowlist_file);
      } else if (const auto def = std::filesystem::path(PICARD_DATA_DIR) / "errata_allowlist.json";
                 std::filesystem::exists(def)) {
        allow = load_allowlist(def);
      }
      const auto rep = verify(fixtures, allow, globals.ctx());
      if (rep.any_diff()) exit_on_success = kDiscrepancies;
      return verify_output(rep);
    };
  });

  std::vector<const char*> argv{"picard"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kOk;
    }
    err << "error: " << e.what() << "\n";
    return kUsage;
  }

  try {
    const Output o = action();
    emit(o, globals.fmt(), out);
    return exit_on_success;
  } catch (const PreconditionError& e) {
    err << "precondition violated: " << e.what() << "\n";
    return kPrecondition;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace picard::cli
