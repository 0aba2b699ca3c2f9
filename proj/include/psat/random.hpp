#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "psat/cnf_formula.hpp"
#include "psat/formula.hpp"

namespace psat {

/// Random instances for property suites. Draws use `rng() % n` rather than
/// the standard distributions so a seed means the same thing everywhere.
using Rng = std::mt19937_64;

struct RandomFormulaOptions {
  std::size_t num_atoms = 6;  // atoms A1..An are declared in the arena
  std::size_t max_depth = 5;
  bool allow_constants = false;
};

Formula random_formula(FormulaArena& arena, Rng& rng, const RandomFormulaOptions& options = {});

/// Clauses of 1..max_len distinct-atom literals over A1..An.
CnfFormula random_cnf(FormulaArena& arena, Rng& rng, std::size_t num_atoms, std::size_t num_clauses,
                      std::size_t max_len = 3);

/// Applies random equivalence-preserving rewrites: commutation, De Morgan,
/// double negation, expansion of -> and <->, and padding with valid or
/// unsatisfiable subterms such as `x & (A | !A)`. The result is equivalent
/// to f but usually not node-identical.
Formula random_rewrite(Formula f, Rng& rng, std::size_t num_atoms);

}  // namespace psat
