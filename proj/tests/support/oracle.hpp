#pragma once

// Brute-force reference implementations. They only use the formula DAG
// accessors, never the library's evaluators, residuals or solver.

#include <cstdint>
#include <functional>
#include <vector>

#include "psat/assignment.hpp"
#include "psat/cnf_formula.hpp"
#include "psat/formula.hpp"

namespace oracle {

using psat::AtomId;
using psat::AtomSet;
using psat::Formula;

/// Truth values indexed by atom id.
using Valuation = std::vector<bool>;

bool eval(Formula f, const Valuation& v);
bool eval(const psat::CnfFormula& cnf, const Valuation& v);

/// Calls visit for all 2^|over| valuations of `over` (other atoms false).
void for_each_valuation(const AtomSet& over, std::size_t table_size,
                        const std::function<void(const Valuation&)>& visit);

psat::Assignment to_assignment(const Valuation& v, const AtomSet& over);
Valuation to_valuation(const psat::Assignment& a, std::size_t table_size);

/// Models over `over` in the library's lexicographic order (lowest id first, true first).
std::vector<psat::Assignment> models(Formula f, const AtomSet& over);
std::uint64_t count_models(Formula f, const AtomSet& over);

bool valid(Formula f);
bool equivalent(Formula a, Formula b);

/// Every total extension of mu over atoms(f) | mapped(mu) satisfies f.
bool entails(const psat::Assignment& mu, Formula f);

/// Some assignment to `bound` extends the total valuation `eta` to a model.
bool projected_model(Formula matrix, const AtomSet& bound, const psat::Assignment& eta);

/// Every total extension of mu over `free` is a projected model.
bool entails_exists(const psat::Assignment& mu, Formula matrix, const AtomSet& bound);

AtomSet atoms_of(Formula f);
AtomSet unite(const AtomSet& a, const AtomSet& b);

}  // namespace oracle
