#include "psat/cnf_formula.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>
#include <stdexcept>

#include "psat/error.hpp"

namespace psat {

AtomSet CnfFormula::all_atoms() const {
  AtomSet out = original_atoms;
  out.insert(fresh_atoms.begin(), fresh_atoms.end());
  for (const auto& c : clauses)
    for (Literal l : c) out.insert(l.atom);
  return out;
}

bool is_tautology(const Clause& c) {
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == c[j].negated()) return true;
  return false;
}

bool is_tautology_free_cnf(const CnfFormula& f) {
  return std::none_of(f.clauses.begin(), f.clauses.end(), [](const Clause& c) { return is_tautology(c); });
}

CnfFormula remove_tautologies(const CnfFormula& f) {
  CnfFormula out;
  out.original_atoms = f.original_atoms;
  out.fresh_atoms = f.fresh_atoms;
  for (const auto& c : f.clauses)
    if (!is_tautology(c)) out.clauses.push_back(c);
  return out;
}

Formula to_formula(const CnfFormula& f, FormulaArena& arena) {
  std::vector<Formula> conjuncts;
  conjuncts.reserve(f.clauses.size());
  for (const auto& c : f.clauses) {
    std::vector<Formula> lits;
    lits.reserve(c.size());
    for (Literal l : c) lits.push_back(arena.literal(l));
    conjuncts.push_back(arena.disjunction(lits));
  }
  return arena.conjunction(conjuncts);
}

namespace {

bool is_clause(Formula f) {
  if (f.is_literal()) return true;
  if (f.kind() == NodeKind::Or) return is_clause(f.lhs()) && is_clause(f.rhs());
  return false;
}

}  // namespace

bool is_cnf(Formula f) {
  if (f.kind() == NodeKind::And) return is_cnf(f.lhs()) && is_cnf(f.rhs());
  return is_clause(f);
}

// --- DIMACS -----------------------------------------------------------------

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = text.find('\n', start);
    if (end == std::string_view::npos) {
      lines.push_back(text.substr(start));
      break;
    }
    lines.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return lines;
}

std::vector<std::string> words(std::string_view line) {
  std::istringstream in{std::string(line)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

long long to_int(const std::string& w, std::size_t line) {
  long long v = 0;
  auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
  if (ec != std::errc() || p != w.data() + w.size())
    throw ParseError("expected an integer but found '" + w + "'", line, 1);
  return v;
}

}  // namespace

bool looks_like_dimacs(std::string_view text) {
  for (auto line : split_lines(text)) {
    const auto w = words(line);
    if (w.empty() || w[0] == "c") continue;
    return w.size() >= 2 && w[0] == "p" && w[1] == "cnf";
  }
  return false;
}

DimacsInput read_dimacs(std::string_view text, FormulaArena& arena) {
  struct Named {
    std::string name;
    bool fresh;
  };
  std::map<long long, Named> renames;
  long long num_vars = -1, num_clauses = -1;
  std::vector<std::vector<long long>> raw;
  std::vector<long long> current;
  const auto lines = split_lines(text);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::size_t lineno = i + 1;
    const auto w = words(lines[i]);
    if (w.empty()) continue;
    if (w[0] == "c") {
      if (w.size() >= 4 && w[1] == "atom") {
        const long long var = to_int(w[3], lineno);
        renames[var] = Named{w[2], w.size() >= 5 && w[4] == "fresh"};
      }
      continue;
    }
    if (w[0] == "p") {
      if (num_vars >= 0) throw ParseError("duplicate problem line", lineno, 1);
      if (w.size() != 4 || w[1] != "cnf") throw ParseError("expected 'p cnf <vars> <clauses>'", lineno, 1);
      num_vars = to_int(w[2], lineno);
      num_clauses = to_int(w[3], lineno);
      if (num_vars < 0 || num_clauses < 0) throw ParseError("negative count in problem line", lineno, 1);
      continue;
    }
    if (num_vars < 0) throw ParseError("clause before problem line", lineno, 1);
    for (const auto& tok : w) {
      if (tok == "%") break;  // SATLIB trailer
      const long long v = to_int(tok, lineno);
      if (v == 0) {
        raw.push_back(current);
        current.clear();
        continue;
      }
      if (std::llabs(v) > num_vars)
        throw ParseError("variable " + std::to_string(std::llabs(v)) + " exceeds declared count", lineno, 1);
      current.push_back(v);
    }
  }
  if (num_vars < 0) throw ParseError("missing 'p cnf' problem line", 1, 1);
  if (!current.empty()) raw.push_back(current);
  if (static_cast<long long>(raw.size()) != num_clauses)
    throw ParseError("header declares " + std::to_string(num_clauses) + " clauses but found " +
                         std::to_string(raw.size()),
                     lines.size(), 1);

  DimacsInput in;
  in.var_to_atom.assign(static_cast<std::size_t>(num_vars) + 1, 0);
  for (long long k = 1; k <= num_vars; ++k) {
    auto it = renames.find(k);
    const std::string name = it != renames.end() ? it->second.name : "A" + std::to_string(k);
    const AtomId id = arena.atoms().declare(name);
    in.var_to_atom[static_cast<std::size_t>(k)] = id;
    if (it != renames.end() && it->second.fresh)
      in.cnf.fresh_atoms.insert(id);
    else
      in.cnf.original_atoms.insert(id);
  }
  for (const auto& rc : raw) {
    Clause c;
    for (long long v : rc) c.push_back(Literal{in.var_to_atom[static_cast<std::size_t>(std::llabs(v))], v > 0});
    in.cnf.clauses.push_back(std::move(c));
  }
  return in;
}

DimacsOutput write_dimacs(const CnfFormula& f, const AtomTable& table) {
  std::map<AtomId, std::size_t> var;
  for (AtomId a : f.all_atoms()) var.emplace(a, var.size() + 1);
  DimacsOutput out;
  std::ostringstream d, m;
  d << "p cnf " << var.size() << ' ' << f.clauses.size() << '\n';
  for (const auto& c : f.clauses) {
    for (Literal l : c) d << (l.positive ? "" : "-") << var.at(l.atom) << ' ';
    d << "0\n";
  }
  for (auto [a, k] : var) {
    m << "atom " << table.name(a) << ' ' << k;
    if (f.fresh_atoms.contains(a)) m << " fresh";
    m << '\n';
  }
  out.dimacs = d.str();
  out.mapping = m.str();
  return out;
}

std::string to_string(const Clause& c, const AtomTable& table) {
  std::string out = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) out += " | ";
    if (!c[i].positive) out += '!';
    out += table.name(c[i].atom);
  }
  return out + ")";
}

}  // namespace psat
