#pragma once

#include "psat/cnf_formula.hpp"
#include "psat/formula.hpp"

namespace psat {

// CNF encoders. Constants are propagated away first (residual under the empty
// assignment). The top-level And/Or skeleton is kept as clauses; every other
// binary node gets one definition atom from the arena's `_B<k>` pool, with
// negations folded into literals. Pool atoms occurring in f or in `avoid` are
// skipped, so the result never constrains them.

/// Full bi-implication definitions for every labelled node.
CnfFormula tseitin(Formula f, const AtomSet& avoid = {});

/// Keeps only the implication direction(s) matching each labelled node's
/// polarity: B -> def when it occurs only positively, B <- def when only
/// negatively, both otherwise. Children of <-> have both polarities.
CnfFormula plaisted_greenbaum(Formula f, const AtomSet& avoid = {});

/// plaisted_greenbaum(nnf(f)).
CnfFormula pg_nnf(Formula f, const AtomSet& avoid = {});

enum class CnfMethod { Tseitin, PlaistedGreenbaum, PgNnf };

CnfFormula cnfize(Formula f, CnfMethod method, const AtomSet& avoid = {});

}  // namespace psat
