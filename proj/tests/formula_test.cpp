#include <gtest/gtest.h>

#include "oracle.hpp"
#include "psat/cnf_formula.hpp"
#include "psat/error.hpp"
#include "psat/formula.hpp"
#include "psat/random.hpp"

using namespace psat;

namespace {

Formula atom(FormulaArena& ar, const char* name) { return ar.atom(ar.atoms().declare(name)); }

}  // namespace

TEST(ParseTest, SharedConjunctDisjunction) {
  FormulaArena ar;
  const Formula f = parse("(A1 & A2) | (A1 & !A2)", ar);
  const Formula a1 = atom(ar, "A1"), a2 = atom(ar, "A2");
  EXPECT_EQ(f, ar.make_or(ar.make_and(a1, a2), ar.make_and(a1, ar.make_not(a2))));
}

TEST(ParseTest, Constants) {
  FormulaArena ar;
  EXPECT_TRUE(parse("true", ar).is_true());
  EXPECT_TRUE(parse("false", ar).is_false());
  EXPECT_EQ(ar.atoms().size(), 0u);
}

TEST(ParseTest, ImplicationIsRightAssociative) {
  FormulaArena ar;
  const Formula f = parse("A1 -> A2 -> A3", ar);
  const Formula a1 = atom(ar, "A1"), a2 = atom(ar, "A2"), a3 = atom(ar, "A3");
  EXPECT_EQ(f, ar.make_implies(a1, ar.make_implies(a2, a3)));
  // the two readings differ, e.g. at A1=A2=A3=false
  EXPECT_FALSE(oracle::equivalent(f, ar.make_implies(ar.make_implies(a1, a2), a3)));
}

TEST(ParseTest, Precedence) {
  FormulaArena ar;
  const Formula f = parse("!A | B & C -> D <-> E", ar);
  const Formula a = atom(ar, "A"), b = atom(ar, "B"), c = atom(ar, "C"), d = atom(ar, "D"), e = atom(ar, "E");
  EXPECT_EQ(f, ar.make_iff(ar.make_implies(ar.make_or(ar.make_not(a), ar.make_and(b, c)), d), e));
}

TEST(ParseTest, AlternativeNegationAndComments) {
  FormulaArena ar;
  EXPECT_EQ(parse("~A1 # trailing\n& A2", ar), parse("!A1 & A2", ar));
}

TEST(ParseTest, ErrorsCarryPosition) {
  FormulaArena ar;
  try {
    parse("A1 &\n  (A2 | $)", ar);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
    EXPECT_NE(std::string(e.what()).find("unknown character"), std::string::npos);
  }
  EXPECT_THROW(parse("A1 &", ar), ParseError);
  EXPECT_THROW(parse("(A1", ar), ParseError);
  EXPECT_THROW(parse("A1 A2", ar), ParseError);
  EXPECT_THROW(parse("", ar), ParseError);
}

TEST(PrintTest, MinimalParentheses) {
  FormulaArena ar;
  EXPECT_EQ(to_string(parse("(A1 & A2) | (A1 & !A2)", ar)), "A1 & A2 | A1 & !A2");
  EXPECT_EQ(to_string(parse("(A -> B) -> C", ar)), "(A -> B) -> C");
  EXPECT_EQ(to_string(parse("A -> (B -> C)", ar)), "A -> B -> C");
  EXPECT_EQ(to_string(parse("A & (B & C)", ar)), "A & (B & C)");
  EXPECT_EQ(to_string(parse("!(A | B)", ar)), "!(A | B)");
  EXPECT_EQ(to_string(parse("!!A", ar)), "!!A");
}

TEST(PrintTest, RoundTripIsNodeIdentical) {
  Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    FormulaArena ar;
    const Formula f = random_formula(ar, rng, {6, 6, true});
    EXPECT_EQ(parse(to_string(f), ar), f) << to_string(f);
  }
}

TEST(ArenaTest, HashConsing) {
  FormulaArena ar;
  const Formula a = parse("A1 & !A2", ar);
  const std::size_t before = ar.size();
  EXPECT_EQ(parse("A1 & !A2", ar), a);
  EXPECT_EQ(ar.size(), before);
  EXPECT_NE(parse("!A2 & A1", ar), a);
}

TEST(ArenaTest, RejectsForeignFormulas) {
  FormulaArena a, b;
  const Formula x = parse("X", a);
  EXPECT_THROW(b.make_not(x), std::invalid_argument);
}

TEST(AtomTableTest, NamesAndFreshLabels) {
  AtomTable t;
  const AtomId b1 = t.declare("_B1");
  EXPECT_EQ(t.declare("_B1"), b1);
  EXPECT_FALSE(t.is_fresh(b1));
  const AtomId l0 = t.fresh_label(0);
  EXPECT_EQ(t.name(l0), "_B2");
  EXPECT_TRUE(t.is_fresh(l0));
  EXPECT_EQ(t.fresh_label(0), l0);
  EXPECT_EQ(t.find("_B2"), l0);
  EXPECT_FALSE(t.find("nope").has_value());
  EXPECT_THROW(t.declare("1bad"), std::invalid_argument);
  EXPECT_TRUE(AtomTable::valid_name("_x9"));
  EXPECT_FALSE(AtomTable::valid_name(""));
  EXPECT_FALSE(AtomTable::valid_name("a-b"));
}

TEST(AtomsTest, Examples) {
  FormulaArena ar;
  EXPECT_EQ(atoms(parse("(A1 & A2) | (A1 & !A2)", ar)).size(), 2u);
  EXPECT_TRUE(atoms(ar.top()).empty());
  const Formula psi = parse(
      "(B1 | B2) & (!B1 | A1) & (!B1 | A2) & (B1 | !A1 | !A2) & (!B2 | A1) & (!B2 | !A2) & (B2 | !A1 | A2)", ar);
  AtomSet expected;
  for (const char* n : {"A1", "A2", "B1", "B2"}) expected.insert(*ar.atoms().find(n));
  EXPECT_EQ(atoms(psi), expected);
}

TEST(AtomsTest, MatchesOracleOnRandomFormulas) {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    FormulaArena ar;
    const Formula f = random_formula(ar, rng, {8, 6, true});
    EXPECT_EQ(atoms(f), oracle::atoms_of(f));
  }
}

TEST(NnfTest, Examples) {
  FormulaArena ar;
  EXPECT_EQ(nnf(parse("!(A1 & A2)", ar)), parse("!A1 | !A2", ar));
  const Formula f = parse("(A1 & A2) | (A1 & !A2)", ar);
  EXPECT_EQ(nnf(f), f);
  const Formula g = nnf(parse("!(A1 <-> A2)", ar));
  EXPECT_TRUE(oracle::equivalent(g, parse("!(A1 <-> A2)", ar)));
}

namespace {

bool is_nnf(Formula f) {
  switch (f.kind()) {
    case NodeKind::Not: return f.operand().is_atom();
    case NodeKind::And:
    case NodeKind::Or: return is_nnf(f.lhs()) && is_nnf(f.rhs());
    case NodeKind::Implies:
    case NodeKind::Iff: return false;
    default: return true;
  }
}

}  // namespace

TEST(NnfTest, EquivalentOnRandomFormulas) {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    FormulaArena ar;
    const Formula f = random_formula(ar, rng, {10, 6, true});
    const Formula g = nnf(f);
    ASSERT_TRUE(is_nnf(g)) << to_string(g);
    ASSERT_TRUE(oracle::equivalent(f, g)) << to_string(f);
  }
}

TEST(EquivalentTest, Examples) {
  FormulaArena ar;
  const Formula f1 = parse("(A1 & A2) | (A1 & !A2)", ar);
  EXPECT_TRUE(equivalent(f1, parse("A1", ar)));
  EXPECT_TRUE(equivalent(f1, f1));
  EXPECT_FALSE(equivalent(parse("A1 & A2", ar), parse("A1 | A2", ar)));
}

TEST(EquivalentTest, AgreesWithOracleInBothMethods) {
  Rng rng(5);
  for (int i = 0; i < 300; ++i) {
    FormulaArena ar;
    const Formula f = random_formula(ar, rng, {5, 4, true});
    const Formula g = i % 2 ? random_rewrite(f, rng, 5) : random_formula(ar, rng, {5, 4, true});
    const bool expected = oracle::equivalent(f, g);
    EXPECT_EQ(equivalent(f, g, CheckMethod::Exhaustive), expected);
    EXPECT_EQ(equivalent(f, g, CheckMethod::Solver), expected);
    EXPECT_EQ(equivalent(f, g), expected);
  }
}

TEST(EquivalentTest, LargeFormulasUseTheSolver) {
  FormulaArena ar;
  Rng rng(9);
  for (int i = 0; i < 20; ++i) {
    const Formula f = random_formula(ar, rng, {18, 7, false});
    const Formula g = random_rewrite(f, rng, 18);
    EXPECT_TRUE(equivalent(f, g));
    EXPECT_FALSE(equivalent(f, ar.make_not(f)));
  }
}

// --- CNF utilities ---------------------------------------------------------------

TEST(CnfUtilTest, TautologyFree) {
  FormulaArena ar;
  const AtomId a1 = ar.atoms().declare("A1"), a2 = ar.atoms().declare("A2"), a3 = ar.atoms().declare("A3");
  CnfFormula taut;
  taut.clauses = {{pos(a1), neg(a1)}};
  EXPECT_FALSE(is_tautology_free_cnf(taut));
  CnfFormula mixed;
  mixed.clauses = {{pos(a1), pos(a2)}, {pos(a2), neg(a2), pos(a3)}};
  EXPECT_FALSE(is_tautology_free_cnf(mixed));
  CnfFormula clean;
  clean.clauses = {{pos(a1), pos(a2)}, {neg(a1), pos(a3)}};
  EXPECT_TRUE(is_tautology_free_cnf(clean));
}

TEST(CnfUtilTest, RemoveTautologies) {
  FormulaArena ar;
  const AtomId a1 = ar.atoms().declare("A1"), a2 = ar.atoms().declare("A2");
  CnfFormula f;
  f.clauses = {{pos(a1), neg(a1)}, {pos(a2)}};
  EXPECT_EQ(remove_tautologies(f).clauses, (std::vector<Clause>{{pos(a2)}}));
}

TEST(CnfUtilTest, RemoveTautologiesPreservesModels) {
  Rng rng(21);
  for (int i = 0; i < 300; ++i) {
    FormulaArena ar;
    CnfFormula f = random_cnf(ar, rng, 12, 8, 4);
    // inject a tautological clause or two
    for (int k = 0; k < 2; ++k) {
      Clause c = f.clauses[rng() % f.clauses.size()];
      c.push_back(c.front().negated());
      f.clauses.push_back(c);
    }
    const CnfFormula g = remove_tautologies(f);
    ASSERT_TRUE(is_tautology_free_cnf(g));
    bool same = true;
    oracle::for_each_valuation(f.original_atoms, ar.atoms().size(), [&](const oracle::Valuation& v) {
      same = same && oracle::eval(f, v) == oracle::eval(g, v);
    });
    ASSERT_TRUE(same);
  }
}

TEST(CnfUtilTest, FormulaConversion) {
  FormulaArena ar;
  const Formula f = parse("(A1 | !A2) & A3 & (A2 | A1 | !A3)", ar);
  EXPECT_TRUE(is_cnf(f));
  EXPECT_FALSE(is_cnf(parse("A1 | (A2 & A3)", ar)));
  EXPECT_FALSE(is_cnf(parse("!!A1", ar)));
  CnfFormula empty_clause;
  empty_clause.clauses.emplace_back();
  EXPECT_TRUE(to_formula(empty_clause, ar).is_false());
  EXPECT_TRUE(to_formula(CnfFormula{}, ar).is_true());
}

TEST(DimacsTest, ReadWriteRoundTrip) {
  FormulaArena ar;
  const std::string text = "c sample\np cnf 3 2\n1 -2 0\n2 3\n-1 0\n";
  ASSERT_TRUE(looks_like_dimacs(text));
  const DimacsInput in = read_dimacs(text, ar);
  ASSERT_EQ(in.cnf.clauses.size(), 2u);
  EXPECT_EQ(ar.atoms().name(in.var_to_atom[3]), "A3");
  EXPECT_EQ(in.cnf.clauses[1].size(), 3u);

  const DimacsOutput out = write_dimacs(in.cnf, ar.atoms());
  EXPECT_EQ(out.dimacs, "p cnf 3 2\n1 -2 0\n2 3 -1 0\n");
  EXPECT_EQ(out.mapping, "atom A1 1\natom A2 2\natom A3 3\n");
}

TEST(DimacsTest, NamedAtomsAndFreshMarkers) {
  FormulaArena ar;
  const DimacsInput in = read_dimacs("c atom X 1\nc atom _B1 2 fresh\np cnf 2 1\n1 2 0\n", ar);
  EXPECT_EQ(ar.atoms().name(in.var_to_atom[1]), "X");
  EXPECT_EQ(in.cnf.fresh_atoms, AtomSet{in.var_to_atom[2]});
  EXPECT_EQ(in.cnf.original_atoms, AtomSet{in.var_to_atom[1]});
}

TEST(DimacsTest, Errors) {
  FormulaArena ar;
  EXPECT_FALSE(looks_like_dimacs("A1 & A2"));
  EXPECT_THROW(read_dimacs("1 2 0\n", ar), ParseError);
  EXPECT_THROW(read_dimacs("p cnf 1 1\n2 0\n", ar), ParseError);
  EXPECT_THROW(read_dimacs("p cnf 2 2\n1 0\n", ar), ParseError);
  EXPECT_THROW(read_dimacs("p cnf 2 1\n1 x 0\n", ar), ParseError);
}
