#include "psat/random.hpp"

#include <algorithm>
#include <string>
#include <vector>

namespace psat {

namespace {

std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

bool chance(Rng& rng, unsigned percent) { return pick(rng, 100) < percent; }

AtomId declared_atom(FormulaArena& arena, std::size_t k) {
  return arena.atoms().declare("A" + std::to_string(k));
}

Formula random_leaf(FormulaArena& arena, Rng& rng, const RandomFormulaOptions& o) {
  if (o.allow_constants && chance(rng, 5)) return arena.constant(chance(rng, 50));
  const Formula a = arena.atom(declared_atom(arena, 1 + pick(rng, o.num_atoms)));
  return chance(rng, 30) ? arena.make_not(a) : a;
}

Formula grow(FormulaArena& arena, Rng& rng, const RandomFormulaOptions& o, std::size_t depth) {
  if (depth == 0 || chance(rng, 20)) return random_leaf(arena, rng, o);
  const std::size_t k = pick(rng, 10);
  if (k == 0) return arena.make_not(grow(arena, rng, o, depth - 1));
  const Formula l = grow(arena, rng, o, depth - 1);
  const Formula r = grow(arena, rng, o, depth - 1);
  if (k <= 3) return arena.make_and(l, r);
  if (k <= 6) return arena.make_or(l, r);
  if (k <= 8) return arena.make_implies(l, r);
  return arena.make_iff(l, r);
}

class Rewriter {
 public:
  Rewriter(Rng& rng, std::size_t num_atoms) : rng_(rng), num_atoms_(num_atoms) {}

  Formula run(Formula f) {
    FormulaArena& ar = f.arena();
    Formula g = f;
    switch (f.kind()) {
      case NodeKind::Not: g = ar.make_not(run(f.operand())); break;
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Implies:
      case NodeKind::Iff: {
        const Formula l = run(f.lhs());
        const Formula r = run(f.rhs());
        g = ar.make_binary(f.kind(), l, r);
        break;
      }
      default: break;
    }
    return chance(rng_, 35) ? local(g) : g;
  }

 private:
  Formula some_atom(FormulaArena& ar) {
    return ar.atom(declared_atom(ar, 1 + pick(rng_, std::max<std::size_t>(num_atoms_, 1))));
  }

  Formula local(Formula f) {
    FormulaArena& ar = f.arena();
    switch (pick(rng_, 6)) {
      case 0: return ar.make_not(ar.make_not(f));
      case 1: {
        const Formula a = some_atom(ar);
        return ar.make_and(f, ar.make_or(a, ar.make_not(a)));
      }
      case 2: {
        const Formula a = some_atom(ar);
        return ar.make_or(f, ar.make_and(a, ar.make_not(a)));
      }
      case 3: {
        const Formula a = some_atom(ar);
        return ar.make_or(ar.make_and(f, a), ar.make_and(f, ar.make_not(a)));
      }
      default: break;
    }
    switch (f.kind()) {
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Iff: return ar.make_binary(f.kind(), f.rhs(), f.lhs());
      case NodeKind::Implies: return ar.make_or(ar.make_not(f.lhs()), f.rhs());
      case NodeKind::Not: {
        const Formula c = f.operand();
        if (c.kind() == NodeKind::And) return ar.make_or(ar.make_not(c.lhs()), ar.make_not(c.rhs()));
        if (c.kind() == NodeKind::Or) return ar.make_and(ar.make_not(c.lhs()), ar.make_not(c.rhs()));
        if (c.kind() == NodeKind::Not) return c.operand();
        return f;
      }
      default: return f;
    }
  }

  Rng& rng_;
  std::size_t num_atoms_;
};

}  // namespace

Formula random_formula(FormulaArena& arena, Rng& rng, const RandomFormulaOptions& options) {
  RandomFormulaOptions o = options;
  o.num_atoms = std::max<std::size_t>(o.num_atoms, 1);
  return grow(arena, rng, o, o.max_depth);
}

CnfFormula random_cnf(FormulaArena& arena, Rng& rng, std::size_t num_atoms, std::size_t num_clauses,
                      std::size_t max_len) {
  num_atoms = std::max<std::size_t>(num_atoms, 1);
  max_len = std::clamp<std::size_t>(max_len, 1, num_atoms);
  CnfFormula out;
  for (std::size_t k = 1; k <= num_atoms; ++k) out.original_atoms.insert(declared_atom(arena, k));
  for (std::size_t i = 0; i < num_clauses; ++i) {
    const std::size_t len = 1 + pick(rng, max_len);
    Clause c;
    while (c.size() < len) {
      const AtomId a = declared_atom(arena, 1 + pick(rng, num_atoms));
      if (std::any_of(c.begin(), c.end(), [&](Literal l) { return l.atom == a; })) continue;
      c.push_back(Literal{a, chance(rng, 50)});
    }
    out.clauses.push_back(std::move(c));
  }
  return out;
}

Formula random_rewrite(Formula f, Rng& rng, std::size_t num_atoms) { return Rewriter(rng, num_atoms).run(f); }

}  // namespace psat
