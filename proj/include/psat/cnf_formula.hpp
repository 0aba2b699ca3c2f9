#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "psat/formula.hpp"

namespace psat {

using Clause = std::vector<Literal>;

/// Clause list over `original_atoms` plus the definition atoms an encoder
/// introduced. A single empty clause is the encoding of false; no clauses at
/// all is true.
struct CnfFormula {
  std::vector<Clause> clauses;
  AtomSet original_atoms;
  AtomSet fresh_atoms;

  /// original | fresh | every atom mentioned by a clause.
  [[nodiscard]] AtomSet all_atoms() const;
};

[[nodiscard]] bool is_tautology(const Clause& c);
[[nodiscard]] bool is_tautology_free_cnf(const CnfFormula& f);
[[nodiscard]] CnfFormula remove_tautologies(const CnfFormula& f);

/// The clause list as a Formula (left-folded And of left-folded Ors).
Formula to_formula(const CnfFormula& f, FormulaArena& arena);

/// Recognizes formulas that already are a conjunction of clauses of literals.
[[nodiscard]] bool is_cnf(Formula f);

/// Result of reading DIMACS text.
struct DimacsInput {
  CnfFormula cnf;
  std::vector<AtomId> var_to_atom;  // index k holds the atom of DIMACS variable k; [0] unused
};

/// Reads `p cnf <vars> <clauses>` followed by 0-terminated clauses. Variable k
/// becomes atom `A<k>` unless a `c atom <name> <k> [fresh]` comment renames it.
DimacsInput read_dimacs(std::string_view text, FormulaArena& arena);

/// True if the first non-comment, non-blank line is a `p cnf` header.
[[nodiscard]] bool looks_like_dimacs(std::string_view text);

/// Variables are numbered 1..n following atom-id order over all_atoms().
struct DimacsOutput {
  std::string dimacs;
  /// One `atom <name> <var>` line per atom, suffixed ` fresh` for definition atoms.
  std::string mapping;
};

DimacsOutput write_dimacs(const CnfFormula& f, const AtomTable& table);

std::string to_string(const Clause& c, const AtomTable& table);

}  // namespace psat
