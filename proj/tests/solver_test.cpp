#include <gtest/gtest.h>

#include "oracle.hpp"
#include "psat/cnf.hpp"
#include "psat/random.hpp"
#include "psat/solver.hpp"

using namespace psat;

namespace {

constexpr const char* kLabelled =
    "(B1 | B2) & (!B1 | A1) & (!B1 | A2) & (B1 | !A1 | !A2) & (!B2 | A1) & (!B2 | !A2) & (B2 | !A1 | A2)";
constexpr const char* kFactored = "((A1 & A2) | (A1 & !A2)) & ((!A3 & A4) | (!A3 & !A4))";

CnfFormula clauses_of(Formula f) {
  // the formula is already in CNF, so its Tseitin skeleton is exactly its clauses
  CnfFormula cnf = tseitin(f);
  EXPECT_TRUE(cnf.fresh_atoms.empty());
  return cnf;
}

bool oracle_sat(const CnfFormula& cnf, std::size_t table_size) {
  bool sat = false;
  oracle::for_each_valuation(cnf.all_atoms(), table_size, [&](const oracle::Valuation& v) {
    sat = sat || oracle::eval(cnf, v);
  });
  return sat;
}

}  // namespace

TEST(SolverTest, LabelledFormulaIsSatisfiable) {
  FormulaArena ar;
  const CnfFormula psi = clauses_of(parse(kLabelled, ar));
  const SolveResult r = solve(psi);
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(r.model.is_total_over(psi.all_atoms()));
  EXPECT_TRUE(oracle::eval(psi, oracle::to_valuation(r.model, ar.atoms().size())));
  // lowest atom first, true first
  EXPECT_EQ(to_string(r.model, ar.atoms()), "B1 -B2 A1 A2");
}

TEST(SolverTest, ComplementaryUnitsAreUnsat) {
  CnfFormula f;
  f.clauses = {{pos(0)}, {neg(0)}};
  EXPECT_FALSE(solve(f).sat());
  CnfFormula empty_clause;
  empty_clause.clauses.emplace_back();
  EXPECT_FALSE(solve(empty_clause).sat());
  EXPECT_TRUE(solve(CnfFormula{}).sat());
}

TEST(SolverTest, DualEncodingUnderTheSharedAtomIsUnsat) {
  FormulaArena ar;
  const Formula phi = parse("(A1 & A2) | (A1 & !A2)", ar);
  CnfFormula dual = tseitin(ar.make_not(phi));
  EXPECT_TRUE(solve(dual).sat());
  dual.clauses.push_back({pos(*ar.atoms().find("A1"))});
  EXPECT_FALSE(solve(dual).sat());
}

TEST(SolverTest, Assumptions) {
  FormulaArena ar;
  const Formula phi = parse(kFactored, ar);
  const CnfFormula dual = tseitin(ar.make_not(phi));
  EXPECT_FALSE(solve_assumptions(dual, parse_assignment("A1,-A3", ar.atoms())).sat());
  EXPECT_TRUE(solve_assumptions(dual, parse_assignment("A1", ar.atoms())).sat());

  CnfFormula units;
  units.clauses = {{pos(0)}, {neg(1), pos(2)}};
  EXPECT_FALSE(solve_assumptions(units, Assignment{neg(0)}).sat());
  EXPECT_EQ(solve_assumptions(units, {}).model, solve(units).model);
  const SolveResult r = solve_assumptions(units, Assignment{pos(1)});
  ASSERT_TRUE(r.sat());
  EXPECT_TRUE(Assignment({pos(0), pos(1), pos(2)}).subset_of(r.model));
}

TEST(SolverTest, IncrementalBlocking) {
  FormulaArena ar;
  const Formula phi = parse(kFactored, ar);
  Solver s(tseitin(phi));
  ASSERT_TRUE(s.solve().sat());
  s.add_blocking_clause(parse_assignment("A1,-A3", ar.atoms()));
  EXPECT_FALSE(s.solve().sat());
  EXPECT_FALSE(s.okay());
}

TEST(SolverTest, BlockingOneLiteralHalvesTheSpace) {
  Solver s;
  for (AtomId a = 0; a < 4; ++a) s.register_atom(a);
  s.add_blocking_clause(Assignment{pos(2)});
  int models = 0;
  while (true) {
    const SolveResult r = s.solve();
    if (!r.sat()) break;
    EXPECT_EQ(r.model.value(2), false);
    s.add_blocking_clause(r.model);
    ++models;
  }
  EXPECT_EQ(models, 8);
}

TEST(SolverTest, BlockingEveryModelTerminatesAfterTheModelCount) {
  Rng rng(41);
  for (int i = 0; i < 100; ++i) {
    FormulaArena ar;
    const CnfFormula f = random_cnf(ar, rng, 8, 10, 3);
    std::uint64_t expected = 0;
    oracle::for_each_valuation(f.original_atoms, ar.atoms().size(),
                               [&](const oracle::Valuation& v) { expected += oracle::eval(f, v); });
    Solver s(f);
    std::uint64_t found = 0;
    for (SolveResult r = s.solve(); r.sat(); r = s.solve()) {
      ASSERT_TRUE(oracle::eval(f, oracle::to_valuation(r.model, ar.atoms().size())));
      s.add_blocking_clause(r.model.restricted_to(f.original_atoms));
      ++found;
    }
    EXPECT_EQ(found, expected);
  }
}

TEST(SolverTest, DisjointCubesRemoveTheirExtensions) {
  Rng rng(43);
  for (int i = 0; i < 100; ++i) {
    FormulaArena ar;
    const CnfFormula f = random_cnf(ar, rng, 8, 6, 3);
    const std::size_t n = f.original_atoms.size();
    // cubes: models restricted to a prefix, made disjoint by construction
    std::vector<Assignment> models;
    oracle::for_each_valuation(f.original_atoms, ar.atoms().size(), [&](const oracle::Valuation& v) {
      if (oracle::eval(f, v)) models.push_back(oracle::to_assignment(v, f.original_atoms));
    });
    Solver s(f);
    std::uint64_t removed = 0;
    std::vector<Assignment> blocked;
    for (const auto& m : models) {
      if (rng() % 3) continue;
      if (std::any_of(blocked.begin(), blocked.end(), [&](const Assignment& b) { return b.subset_of(m); })) continue;
      blocked.push_back(m);
      s.add_blocking_clause(m);
      removed += 1;
    }
    std::uint64_t left = 0;
    for (SolveResult r = s.solve(); r.sat(); r = s.solve()) {
      s.add_blocking_clause(r.model.restricted_to(f.original_atoms));
      ++left;
    }
    EXPECT_EQ(left, models.size() - removed) << n;
  }
}

TEST(SolverTest, AgreesWithTruthTables) {
  Rng rng(47);
  for (int i = 0; i < 1000; ++i) {
    FormulaArena ar;
    const std::size_t atoms = 3 + rng() % 10;
    const CnfFormula f = random_cnf(ar, rng, atoms, atoms * 4 + rng() % 8, 3);
    const SolveResult r = solve(f);
    ASSERT_EQ(r.sat(), oracle_sat(f, ar.atoms().size()));
    if (r.sat()) {
      ASSERT_TRUE(oracle::eval(f, oracle::to_valuation(r.model, ar.atoms().size())));
    }
  }
}

TEST(SolverTest, ModelsExtendAssumptions) {
  Rng rng(53);
  for (int i = 0; i < 500; ++i) {
    FormulaArena ar;
    const CnfFormula f = random_cnf(ar, rng, 10, 25, 3);
    Assignment mu;
    for (AtomId a : f.original_atoms)
      if (rng() % 4 == 0) mu.assign(a, rng() % 2);
    CnfFormula with_units = f;
    for (Literal l : mu) with_units.clauses.push_back({l});
    const SolveResult r = solve_assumptions(f, mu);
    ASSERT_EQ(r.sat(), oracle_sat(with_units, ar.atoms().size()));
    if (r.sat()) {
      ASSERT_TRUE(mu.subset_of(r.model));
    }
  }
}

TEST(SolverTest, DeterministicAcrossRuns) {
  Rng rng(59);
  FormulaArena ar;
  const CnfFormula f = random_cnf(ar, rng, 12, 40, 3);
  const SolveResult a = solve(f), b = solve(f);
  EXPECT_EQ(a.sat(), b.sat());
  EXPECT_EQ(a.model, b.model);
}

TEST(SolverTest, LargerInstanceNeedsLearning) {
  // pigeonhole: 6 pigeons, 5 holes
  Solver s;
  auto var = [](int p, int h) { return static_cast<AtomId>(p * 5 + h); };
  for (int p = 0; p < 6; ++p) {
    Clause c;
    for (int h = 0; h < 5; ++h) c.push_back(pos(var(p, h)));
    s.add_clause(c);
  }
  for (int h = 0; h < 5; ++h)
    for (int p = 0; p < 6; ++p)
      for (int q = p + 1; q < 6; ++q) s.add_clause(Clause{neg(var(p, h)), neg(var(q, h))});
  EXPECT_FALSE(s.solve().sat());
  EXPECT_GT(s.conflicts(), 0u);
}
