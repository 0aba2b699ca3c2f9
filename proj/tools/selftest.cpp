#include "selftest.hpp"

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "psat/assignment.hpp"
#include "psat/cnf.hpp"
#include "psat/enumerate.hpp"
#include "psat/formula.hpp"
#include "psat/random.hpp"

namespace psat_cli {

namespace {

using namespace psat;

constexpr const char* kTwoDisjuncts = "(A1 & A2) | (A1 & !A2)";
constexpr const char* kFactored = "((A1 & A2) | (A1 & !A2)) & ((!A3 & A4) | (!A3 & !A4))";
constexpr const char* kLabelled =
    "(B1 | B2) & (!B1 | A1) & (!B1 | A2) & (B1 | !A1 | !A2) & (!B2 | A1) & (!B2 | !A2) & (B2 | !A1 | A2)";
constexpr const char* kLabelledFresh =
    "(_B1 | _B2) & (!_B1 | A1) & (!_B1 | A2) & (_B1 | !A1 | !A2) & (!_B2 | A1) & (!_B2 | !A2) & "
    "(_B2 | !A1 | A2)";
constexpr const char* kSiblingCubes =
    "(A1 & C1 & C2) | (A2 & C1 & !C2) | (A3 & !C1 & C2) | (A4 & !C1 & !C2)";

Assignment lits(FormulaArena& arena, const char* text) { return parse_assignment(text, arena.atoms()); }

AtomSet named(FormulaArena& arena, std::initializer_list<const char*> names) {
  AtomSet out;
  for (const char* n : names) out.insert(arena.atoms().declare(n));
  return out;
}

// Clauses as sorted literal strings, for comparison up to ordering.
std::vector<std::vector<std::string>> canonical(const CnfFormula& cnf, const AtomTable& table) {
  std::vector<std::vector<std::string>> out;
  for (const auto& c : cnf.clauses) {
    std::vector<std::string> lits;
    for (Literal l : c) lits.push_back((l.positive ? "" : "!") + table.name(l.atom));
    std::sort(lits.begin(), lits.end());
    out.push_back(std::move(lits));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::vector<std::string>> canonical(Formula cnf_formula, const AtomTable& table) {
  CnfFormula cnf;
  std::vector<Formula> stack{cnf_formula};
  while (!stack.empty()) {
    const Formula g = stack.back();
    stack.pop_back();
    if (g.kind() == NodeKind::And) {
      stack.push_back(g.lhs());
      stack.push_back(g.rhs());
      continue;
    }
    Clause c;
    std::vector<Formula> ds{g};
    while (!ds.empty()) {
      const Formula d = ds.back();
      ds.pop_back();
      if (d.kind() == NodeKind::Or) {
        ds.push_back(d.lhs());
        ds.push_back(d.rhs());
      } else {
        c.push_back(d.as_literal());
      }
    }
    cnf.clauses.push_back(std::move(c));
  }
  return canonical(cnf, table);
}

Assignment random_partial(Rng& rng, const AtomSet& over, unsigned percent) {
  Assignment mu;
  for (AtomId a : over)
    if (rng() % 100 < percent) mu.assign(a, rng() % 2 == 0);
  return mu;
}

// --- fixtures -------------------------------------------------------------------

bool two_disjuncts() {
  FormulaArena ar;
  const Formula f = parse(kTwoDisjuncts, ar);
  const Assignment mu = lits(ar, "A1");
  return entails(mu, f) && !verifies(mu, f) && dual_entails(mu, f);
}

bool equivalent_pair() {
  FormulaArena ar;
  const Formula f1 = parse(kTwoDisjuncts, ar);
  const Formula f2 = parse("A1", ar);
  const Assignment mu = lits(ar, "A1");
  return equivalent(f1, f2) && residual(f1, mu) == parse("A2 | !A2", ar) && residual(f2, mu).is_true() &&
         entails(mu, f1) && entails(mu, f2) && !verifies(mu, f1) && verifies(mu, f2) &&
         verifies_extended(mu, f1);
}

bool existential_projection() {
  FormulaArena ar;
  const QuantifiedFormula q{parse(kLabelled, ar), named(ar, {"B1", "B2"})};
  const auto ds = shannon_disjuncts(q);
  const char* expected[] = {"A1 & A2 & !A2", "A1 & A2", "A1 & !A2", "false"};
  if (ds.size() != 4) return false;
  for (std::size_t i = 0; i < 4; ++i)
    if (!equivalent(ds[i], parse(expected[i], ar))) return false;
  const Assignment mu = lits(ar, "A1");
  return entails_exists(mu, q) && !verifies_exists(mu, q);
}

bool encodings() {
  FormulaArena ar;
  const Formula f = parse(kTwoDisjuncts, ar);
  const CnfFormula ts = tseitin(f);
  const CnfFormula pg = plaisted_greenbaum(f);
  const CnfFormula pn = pg_nnf(f);
  const AtomTable& t = ar.atoms();
  const auto expected_ts = canonical(parse(kLabelledFresh, ar), t);
  auto expected_pg = expected_ts;
  std::erase_if(expected_pg, [](const auto& c) { return c.size() == 3; });
  if (canonical(ts, t) != expected_ts || canonical(pg, t) != expected_pg || canonical(pn, t) != expected_pg)
    return false;
  const Assignment mu = lits(ar, "A1");
  for (const CnfFormula* cnf : {&ts, &pg, &pn}) {
    const QuantifiedFormula q{to_formula(*cnf, ar), cnf->fresh_atoms};
    if (!entails_exists(mu, q) || verifies_exists(mu, q)) return false;
  }
  return true;
}

bool factored_generalization() {
  FormulaArena ar;
  const Formula f = parse(kFactored, ar);
  const Assignment eta = lits(ar, "A1,A2,-A3,A4");
  if (generalize(eta, f, Mode::Verify).assignment != eta) return false;
  if (generalize(eta, f, Mode::Entail).assignment != lits(ar, "A1,-A3")) return false;
  const CubeSet v = enumerate_with_generalization(f, Mode::Verify);
  const CubeSet e = enumerate_with_generalization(f, Mode::Entail);
  return v.cubes.size() == 4 && e.cubes.size() == 1 && e.cubes[0].assignment == lits(ar, "A1,-A3") &&
         count_models(v) == 4 && count_models(e) == 4;
}

bool sibling_cubes() {
  FormulaArena ar;
  const Formula f = parse(kSiblingCubes, ar);
  const Assignment mu = lits(ar, "A1,A2,A3,A4");
  return entails(mu, f) && !verifies_extended(mu, f) && !verifies(mu, f);
}

// --- properties -----------------------------------------------------------------

struct Suite {
  Rng rng;
  std::size_t instances;
  CheckLimits limits;

  Formula formula(FormulaArena& ar, std::size_t atoms = 6, std::size_t depth = 5) {
    return random_formula(ar, rng, {atoms, depth, false});
  }
};

bool verification_chain(Suite& s) {
  bool gap = false;
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const Formula f = s.formula(ar);
    const Assignment mu = random_partial(s.rng, atoms(f), 60);
    const bool v = verifies(mu, f), x = verifies_extended(mu, f), e = entails(mu, f);
    if ((v && !x) || (x && !e)) return false;
    gap = gap || (e && !v);
  }
  return gap;
}

bool cnf_coincidence(Suite& s) {
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const CnfFormula cnf = remove_tautologies(random_cnf(ar, s.rng, 6, 2 + s.rng() % 6));
    const Formula f = to_formula(cnf, ar);
    const Assignment mu = random_partial(s.rng, cnf.original_atoms, 60);
    if (verifies(mu, f) != entails(mu, f)) return false;
  }
  return true;
}

bool rewrite_invariance(Suite& s) {
  bool divergence = false;
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const Formula f1 = s.formula(ar);
    const Formula f2 = random_rewrite(f1, s.rng, 6);
    AtomSet all = atoms(f1);
    const AtomSet a2 = atoms(f2);
    all.insert(a2.begin(), a2.end());
    const Assignment mu = random_partial(s.rng, all, 60);
    if (entails(mu, f1) != entails(mu, f2)) return false;
    divergence = divergence || verifies(mu, f1) != verifies(mu, f2);
  }
  return divergence;
}

bool dual_agreement(Suite& s) {
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const Formula f = s.formula(ar);
    const Assignment mu = random_partial(s.rng, atoms(f), 50);
    if (dual_entails(mu, f) != entails(mu, f)) return false;
  }
  return true;
}

QuantifiedFormula random_quantified(Suite& s, FormulaArena& ar) {
  const Formula m = s.formula(ar, 8);
  AtomSet bound;
  for (AtomId a : atoms(m))
    if (bound.size() < 4 && s.rng() % 3 == 0) bound.insert(a);
  return {m, bound};
}

bool expansion_agreement(Suite& s) {
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const QuantifiedFormula q = random_quantified(s, ar);
    const Formula sh = shannon_expansion(q, s.limits);
    const Assignment mu = random_partial(s.rng, q.free_atoms(), 50);
    if (verifies_exists(mu, q) != verifies(mu, sh)) return false;
    if (entails_exists(mu, q, ExistsMethod::Auto, s.limits) != entails(mu, sh)) return false;
  }
  return true;
}

bool existential_implication(Suite& s) {
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const QuantifiedFormula q = random_quantified(s, ar);
    const Assignment mu = random_partial(s.rng, q.free_atoms(), 50);
    if (verifies_exists(mu, q) && !entails_exists(mu, q, ExistsMethod::Auto, s.limits)) return false;
  }
  return true;
}

bool encoding_entailment(Suite& s) {
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const Formula f = s.formula(ar);
    const Assignment mu = random_partial(s.rng, atoms(f), 50);
    const bool expected = entails(mu, f);
    for (CnfMethod m : {CnfMethod::Tseitin, CnfMethod::PlaistedGreenbaum, CnfMethod::PgNnf}) {
      const CnfFormula cnf = cnfize(f, m);
      const QuantifiedFormula q{to_formula(cnf, ar), cnf.fresh_atoms};
      if (entails_exists(mu, q, ExistsMethod::Auto, s.limits) != expected) return false;
    }
  }
  return true;
}

bool enumeration_cover(Suite& s) {
  for (std::size_t i = 0; i < s.instances; ++i) {
    FormulaArena ar;
    const Formula f = s.formula(ar);
    const std::uint64_t models = enumerate_brute(f).cubes.size();
    for (const CubeSet& cs : {enumerate_verification(f), enumerate_with_generalization(f, Mode::Verify),
                              enumerate_with_generalization(f, Mode::Entail)}) {
      if (!check_cover(cs, f) || !check_disjoint(cs) || count_models(cs) != models) return false;
    }
  }
  return true;
}

}  // namespace

bool run_selftest(std::ostream& out, std::uint64_t seed, std::size_t instances, const CheckLimits& limits) {
  std::size_t passed = 0, failed = 0;
  auto report = [&](const std::string& name, const std::function<bool()>& check) {
    bool ok = false;
    try {
      ok = check();
    } catch (const std::exception&) {
      ok = false;
    }
    out << (ok ? "PASS  " : "FAIL  ") << name << '\n';
    (ok ? passed : failed)++;
  };

  report("two-disjunct formula: {A1} entails but does not verify", two_disjuncts);
  report("equivalent pair: residual A2 | !A2 vs true", equivalent_pair);
  report("existential projection: expansion disjuncts and {A1}", existential_projection);
  report("encodings: tseitin/pg clause sets and projected entailment", encodings);
  report("factored formula: generalization and enumeration", factored_generalization);
  report("sibling cubes: extended rewrite is weaker than entailment", sibling_cubes);

  Suite s{Rng(seed), instances, limits};
  auto property = [&](const std::string& name, bool (*check)(Suite&)) {
    report(name, [&] { return check(s); });
  };
  property("verify => verify-ext => entail, with a strict gap", verification_chain);
  property("verify <=> entail on tautology-free CNF", cnf_coincidence);
  property("entailment invariant under equivalent rewrites, verification not", rewrite_invariance);
  property("dual solver check agrees with entailment", dual_agreement);
  property("existential checks agree with the Shannon expansion", expansion_agreement);
  property("existential verification implies existential entailment", existential_implication);
  property("entailment survives tseitin, pg and pg-nnf projection", encoding_entailment);
  property("enumeration covers the models and counts them", enumeration_cover);

  out << passed << " passed, " << failed << " failed\n";
  return failed == 0;
}

}  // namespace psat_cli
