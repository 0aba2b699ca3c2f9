// psat: command-line front end for the partial-assignment library.
//
// Exit codes: 0 the property holds / success, 1 it does not hold, 2 error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "psat/assignment.hpp"
#include "psat/cnf.hpp"
#include "psat/cnf_formula.hpp"
#include "psat/enumerate.hpp"
#include "psat/error.hpp"
#include "psat/formula.hpp"
#include "psat/satcheck.hpp"
#include "selftest.hpp"

namespace {

using namespace psat;

constexpr int kHolds = 0;
constexpr int kFails = 1;
constexpr int kError = 2;

struct Config {
  std::size_t expansion_bound = 20;
  std::size_t brute_bound = 20;
  std::size_t exhaustive_bound = 12;
  std::uint64_t seed = 1;

  [[nodiscard]] CheckLimits limits() const { return {expansion_bound, exhaustive_bound}; }
};

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

Formula load_formula(const std::string& path, FormulaArena& arena) {
  const std::string text = read_input(path);
  if (looks_like_dimacs(text)) return to_formula(read_dimacs(text, arena).cnf, arena);
  return parse(text, arena);
}

AtomSet parse_atom_list(const std::string& text, AtomTable& table) {
  AtomSet out;
  std::string name;
  std::istringstream in(text);
  while (std::getline(in, name, ',')) {
    const auto b = name.find_first_not_of(" \t");
    const auto e = name.find_last_not_of(" \t");
    if (b == std::string::npos) continue;
    name = name.substr(b, e - b + 1);
    if (!AtomTable::valid_name(name)) throw Error("invalid atom name '" + name + "'");
    out.insert(table.declare(name));
  }
  return out;
}

std::string cube_text(const Assignment& a, const AtomTable& table) {
  return a.empty() ? "true" : to_string(a, table);
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
}

// --- check --------------------------------------------------------------------

struct CheckArgs {
  std::string mode = "verify";
  std::string assign;
  std::string exists;
  bool explain = false;
  std::string file;
};

int run_check(const CheckArgs& args, const Config& cfg) {
  FormulaArena arena;
  const Formula f = load_formula(args.file, arena);
  const Assignment mu = parse_assignment(args.assign, arena.atoms());
  const AtomTable& table = arena.atoms();

  bool holds = false;
  if (!args.exists.empty()) {
    const QuantifiedFormula q{f, parse_atom_list(args.exists, arena.atoms())};
    if (args.mode == "verify") {
      const auto witness = verifying_witness(mu, q);
      holds = witness.has_value();
      if (args.explain) {
        if (holds)
          std::cout << "witness: " << cube_text(*witness, table) << '\n';
        else
          std::cout << "no witness over the bound atoms\n";
      }
    } else if (args.mode == "entail") {
      const auto cex = exists_counterexample(mu, q, ExistsMethod::Auto, cfg.limits());
      holds = !cex.has_value();
      if (args.explain && cex) std::cout << "counterexample: " << cube_text(*cex, table) << '\n';
    } else {
      throw Error("--exists supports only --mode verify or entail");
    }
  } else if (args.mode == "verify" || args.mode == "verify-ext") {
    const bool ext = args.mode == "verify-ext";
    holds = ext ? verifies_extended(mu, f) : verifies(mu, f);
    if (args.explain)
      std::cout << "residual: " << to_string(ext ? residual_extended(f, mu) : residual(f, mu)) << '\n';
  } else if (args.mode == "entail") {
    holds = entails(mu, f);
    if (args.explain) std::cout << "residual: " << to_string(residual(f, mu)) << '\n';
  } else if (args.mode == "dual") {
    const auto cm = dual_countermodel(mu, f);
    holds = !cm.has_value();
    if (args.explain && cm) std::cout << "countermodel: " << cube_text(*cm, table) << '\n';
  } else {
    throw Error("unknown mode '" + args.mode + "'");
  }
  std::cout << (holds ? "holds" : "does not hold") << '\n';
  return holds ? kHolds : kFails;
}

// --- cnfize -------------------------------------------------------------------

struct CnfizeArgs {
  std::string method = "tseitin";
  std::string output;
  std::string map;
  std::string file;
};

int run_cnfize(const CnfizeArgs& args) {
  FormulaArena arena;
  const Formula f = load_formula(args.file, arena);
  CnfMethod method = CnfMethod::Tseitin;
  if (args.method == "pg")
    method = CnfMethod::PlaistedGreenbaum;
  else if (args.method == "pg-nnf")
    method = CnfMethod::PgNnf;
  else if (args.method != "tseitin")
    throw Error("unknown method '" + args.method + "'");

  const DimacsOutput out = write_dimacs(cnfize(f, method), arena.atoms());
  // the mapping is also embedded as comments so the file reads back with names
  std::string text;
  std::istringstream lines(out.mapping);
  for (std::string line; std::getline(lines, line);) text += "c " + line + '\n';
  text += out.dimacs;

  if (args.output.empty())
    std::cout << text;
  else
    write_file(args.output, text);
  std::string map_path = args.map;
  if (map_path.empty() && !args.output.empty()) map_path = args.output + ".map";
  if (!map_path.empty()) write_file(map_path, out.mapping);
  return kHolds;
}

// --- shannon ------------------------------------------------------------------

struct ShannonArgs {
  std::string exists;
  bool list = false;
  std::string file;
};

int run_shannon(const ShannonArgs& args, const Config& cfg) {
  FormulaArena arena;
  const Formula f = load_formula(args.file, arena);
  const QuantifiedFormula q{f, parse_atom_list(args.exists, arena.atoms())};
  if (args.list) {
    for (Formula d : shannon_disjuncts(q, cfg.limits())) std::cout << to_string(d) << '\n';
  } else {
    std::cout << to_string(shannon_expansion(q, cfg.limits())) << '\n';
  }
  return kHolds;
}

// --- enumerate / compare ------------------------------------------------------

struct EnumerateArgs {
  std::string mode = "entail";
  bool overlap = false;
  std::string project;
  bool count = false;
  bool json = false;
  std::string file;
};

CubeSet enumerate_in_mode(const std::string& mode, Formula f, const std::optional<QuantifiedFormula>& q,
                          const EnumerateOptions& opts) {
  if (mode == "verify" || mode == "entail") {
    const Mode m = mode == "verify" ? Mode::Verify : Mode::Entail;
    return q ? enumerate_projected(*q, m, opts) : enumerate_with_generalization(f, m, opts);
  }
  if (q) throw Error("--project supports only --mode verify or entail");
  if (mode == "dpll") return enumerate_verification(f);
  if (mode == "brute") return enumerate_brute(f, opts);
  throw Error("unknown mode '" + mode + "'");
}

int run_enumerate(const EnumerateArgs& args, const Config& cfg) {
  FormulaArena arena;
  const Formula f = load_formula(args.file, arena);
  std::optional<QuantifiedFormula> q;
  if (!args.project.empty()) q = QuantifiedFormula{f, parse_atom_list(args.project, arena.atoms())};
  EnumerateOptions opts;
  opts.disjoint = !args.overlap;
  opts.brute_bound = cfg.brute_bound;
  opts.limits = cfg.limits();
  if (args.count && args.overlap) throw Error("count requires disjoint cubes");

  const CubeSet cs = enumerate_in_mode(args.mode, f, q, opts);
  const AtomTable& table = arena.atoms();
  if (args.json) {
    nlohmann::json j;
    j["cubes"] = nlohmann::json::array();
    for (const auto& c : cs.cubes) j["cubes"].push_back(cube_text(c.assignment, table));
    j["disjoint"] = cs.disjoint;
    j["model_count"] = cs.disjoint ? nlohmann::json(count_models(cs)) : nlohmann::json(nullptr);
    j["stats"] = {{"num_cubes", cs.stats.num_cubes},
                  {"sum_cube_sizes", cs.stats.sum_cube_sizes},
                  {"solver_calls", cs.stats.solver_calls},
                  {"wall_ms", cs.stats.wall_ms}};
    std::cout << j.dump(2) << '\n';
  } else if (args.count) {
    std::cout << count_models(cs) << '\n';
  } else {
    for (const auto& c : cs.cubes) std::cout << cube_text(c.assignment, table) << '\n';
  }
  return kHolds;
}

struct CompareArgs {
  bool overlap = false;
  std::string project;
  std::string file;
};

int run_compare(const CompareArgs& args, const Config& cfg) {
  FormulaArena arena;
  const Formula f = load_formula(args.file, arena);
  std::optional<QuantifiedFormula> q;
  if (!args.project.empty()) q = QuantifiedFormula{f, parse_atom_list(args.project, arena.atoms())};
  EnumerateOptions opts;
  opts.disjoint = !args.overlap;
  opts.brute_bound = cfg.brute_bound;
  opts.limits = cfg.limits();

  std::printf("%-8s %8s %10s %10s %12s %10s\n", "mode", "cubes", "literals", "models", "solver_calls", "ms");
  for (const char* mode : {"verify", "entail"}) {
    const CubeSet cs = enumerate_in_mode(mode, f, q, opts);
    const std::string models = cs.disjoint ? std::to_string(count_models(cs)) : "-";
    std::printf("%-8s %8zu %10zu %10s %12llu %10.2f\n", mode, cs.stats.num_cubes, cs.stats.sum_cube_sizes,
                models.c_str(), static_cast<unsigned long long>(cs.stats.solver_calls), cs.stats.wall_ms);
  }
  return kHolds;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Partial-assignment verification, entailment and AllSAT enumeration"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "psat 0.1.0");

  Config cfg;
  auto positive = CLI::PositiveNumber;
  app.add_option("--expansion-bound", cfg.expansion_bound, "Largest bound-atom set to Shannon-expand")
      ->envname("PSAT_EXPANSION_BOUND")
      ->check(positive)
      ->capture_default_str();
  app.add_option("--brute-bound", cfg.brute_bound, "Largest atom count for brute-force enumeration")
      ->envname("PSAT_BRUTE_BOUND")
      ->check(positive)
      ->capture_default_str();
  app.add_option("--exhaustive-bound", cfg.exhaustive_bound,
                 "Unassigned free atoms up to which existential entailment enumerates extensions")
      ->envname("PSAT_EXHAUSTIVE_BOUND")
      ->check(positive)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "Seed for the random property suites")
      ->envname("PSAT_SEED")
      ->capture_default_str();

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Decide whether an assignment verifies or entails a formula");
  check_cmd->add_option("--mode", check.mode)
      ->check(CLI::IsMember({"verify", "verify-ext", "entail", "dual"}))
      ->capture_default_str();
  check_cmd->add_option("--assign", check.assign, "Literals such as A1,-A3");
  check_cmd->add_option("--exists", check.exists, "Existentially bound atoms, comma-separated");
  check_cmd->add_flag("--explain", check.explain, "Print the residual, witness or countermodel");
  check_cmd->add_option("file", check.file, "Formula file (grammar or DIMACS), '-' for stdin")->required();

  CnfizeArgs cnfize_args;
  auto* cnfize_cmd = app.add_subcommand("cnfize", "Convert a formula to DIMACS CNF");
  cnfize_cmd->add_option("--method", cnfize_args.method)
      ->check(CLI::IsMember({"tseitin", "pg", "pg-nnf"}))
      ->capture_default_str();
  cnfize_cmd->add_option("-o,--output", cnfize_args.output, "DIMACS output file (default stdout)");
  cnfize_cmd->add_option("--map", cnfize_args.map, "Atom mapping file (default <output>.map)");
  cnfize_cmd->add_option("file", cnfize_args.file)->required();

  ShannonArgs shannon;
  auto* shannon_cmd = app.add_subcommand("shannon", "Shannon-expand the bound atoms away");
  shannon_cmd->add_option("--exists", shannon.exists, "Bound atoms, comma-separated");
  shannon_cmd->add_flag("--list", shannon.list, "Print one disjunct per line");
  shannon_cmd->add_option("file", shannon.file)->required();

  EnumerateArgs enumerate;
  auto* enumerate_cmd = app.add_subcommand("enumerate", "Enumerate a cube cover of the models");
  enumerate_cmd->add_option("--mode", enumerate.mode)
      ->check(CLI::IsMember({"verify", "entail", "dpll", "brute"}))
      ->capture_default_str();
  enumerate_cmd->add_flag("--overlap", enumerate.overlap, "Allow cubes to overlap for more shrinking");
  enumerate_cmd->add_option("--project", enumerate.project, "Atoms to project away, comma-separated");
  enumerate_cmd->add_flag("--count", enumerate.count, "Print only the model count");
  enumerate_cmd->add_flag("--json", enumerate.json, "Print cubes and statistics as JSON");
  enumerate_cmd->add_option("file", enumerate.file)->required();

  CompareArgs compare;
  auto* compare_cmd = app.add_subcommand("compare", "Run verify and entail enumeration side by side");
  compare_cmd->add_flag("--overlap", compare.overlap);
  compare_cmd->add_option("--project", compare.project);
  compare_cmd->add_option("file", compare.file)->required();

  std::size_t instances = 100;
  auto* selftest_cmd = app.add_subcommand("selftest", "Run the built-in fixture and property checks");
  selftest_cmd->add_option("--instances", instances, "Random instances per property")
      ->check(positive)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*check_cmd) return run_check(check, cfg);
    if (*cnfize_cmd) return run_cnfize(cnfize_args);
    if (*shannon_cmd) return run_shannon(shannon, cfg);
    if (*enumerate_cmd) return run_enumerate(enumerate, cfg);
    if (*compare_cmd) return run_compare(compare, cfg);
    if (*selftest_cmd)
      return psat_cli::run_selftest(std::cout, cfg.seed, instances, cfg.limits()) ? kHolds : kFails;
  } catch (const std::exception& e) {
    std::cerr << "psat: " << e.what() << '\n';
    return kError;
  }
  return kError;
}
