#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "psat/assignment.hpp"
#include "psat/formula.hpp"

namespace psat {

struct CheckLimits {
  /// Largest bound set shannon_expansion will expand (2^n disjuncts).
  std::size_t expansion_bound = 20;
  /// entails_exists enumerates extensions directly up to this many unassigned
  /// free atoms and switches to the counterexample-guided loop above it.
  std::size_t exhaustive_fallback_bound = 12;
};

// --- plain formulas --------------------------------------------------------

/// mu validates f: the three-valued value is true (equivalently the residual is T).
bool verifies(const Assignment& mu, Formula f);

/// verifies() with the extra `l | !l => T` rewrite on sibling literals.
bool verifies_extended(const Assignment& mu, Formula f);

/// Every total assignment over atoms(f) satisfies f.
bool is_valid(Formula f, CheckMethod method = CheckMethod::Auto);

/// Every total extension of mu satisfies f, decided as validity of the residual.
bool entails(const Assignment& mu, Formula f, CheckMethod method = CheckMethod::Auto);

/// Entailment through a dual solver: the Tseitin encoding of !f is
/// unsatisfiable under mu as assumptions.
bool dual_entails(const Assignment& mu, Formula f);

/// The dual solver's model restricted to atoms(f) | mapped(mu), or nullopt if
/// mu entails f.
std::optional<Assignment> dual_countermodel(const Assignment& mu, Formula f);

// --- existentially quantified formulas -------------------------------------

/// Residuals of the matrix under each total assignment to the bound atoms, in
/// lexicographic order (lowest id most significant, true first).
/// Throws BoundError when |bound| exceeds limits.expansion_bound.
std::vector<Formula> shannon_disjuncts(const QuantifiedFormula& q, const CheckLimits& limits = {});

/// Left-folded disjunction of shannon_disjuncts(q). No simplification is
/// applied, so inconsistent and false disjuncts stay visible.
Formula shannon_expansion(const QuantifiedFormula& q, const CheckLimits& limits = {});

/// Some total delta over the bound atoms makes residual(matrix, mu | delta) = T.
/// Throws std::invalid_argument if mu assigns a bound atom.
bool verifies_exists(const Assignment& mu, const QuantifiedFormula& q);

/// The witness delta for verifies_exists, if any.
std::optional<Assignment> verifying_witness(const Assignment& mu, const QuantifiedFormula& q);

enum class ExistsMethod { Auto, Exhaustive, Cegar };

/// For every total extension eta of mu over the free atoms there is a delta on
/// the bound atoms with eta | delta satisfying the matrix.
/// Throws std::invalid_argument if mu assigns a bound atom.
bool entails_exists(const Assignment& mu, const QuantifiedFormula& q,
                    ExistsMethod method = ExistsMethod::Auto, const CheckLimits& limits = {});

/// A total extension of mu over the free atoms admitting no delta, if any.
std::optional<Assignment> exists_counterexample(const Assignment& mu, const QuantifiedFormula& q,
                                                ExistsMethod method = ExistsMethod::Auto,
                                                const CheckLimits& limits = {});

}  // namespace psat
