#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "psat/assignment.hpp"
#include "psat/cnf_formula.hpp"

namespace psat {

struct SolveResult {
  enum class Status { Sat, Unsat };

  Status status = Status::Unsat;
  /// Total over the solver's registered atoms when status is Sat.
  Assignment model;

  [[nodiscard]] bool sat() const noexcept { return status == Status::Sat; }
};

/// Incremental CDCL engine: two watched literals, first-UIP learning, no
/// restarts and no clause deletion. Branching always picks the lowest
/// unassigned registered atom and tries true first, so runs are reproducible.
///
/// Clauses may be added between calls to solve(); assumptions hold for a
/// single call only.
class Solver {
 public:
  Solver() = default;
  explicit Solver(const CnfFormula& f);

  /// Makes `a` part of the model even if no clause mentions it.
  void register_atom(AtomId a);
  void register_atoms(const AtomSet& atoms);

  /// Returns false once the clause database is unsatisfiable at level 0.
  bool add_clause(std::span<const Literal> clause);
  /// Adds the negation of the cube; an empty cube adds the empty clause.
  void add_blocking_clause(const Assignment& cube);

  SolveResult solve(const Assignment& assumptions = {});

  [[nodiscard]] bool okay() const noexcept { return ok_; }
  [[nodiscard]] std::uint64_t solve_calls() const noexcept { return solve_calls_; }
  [[nodiscard]] std::uint64_t conflicts() const noexcept { return conflicts_; }
  [[nodiscard]] std::size_t num_clauses() const noexcept { return clauses_.size() + units_; }
  [[nodiscard]] std::size_t num_learnts() const noexcept { return learnts_; }

 private:
  using Lit = std::uint32_t;
  static constexpr int kNoReason = -1;
  static constexpr Lit kNoLit = ~Lit{0};

  static Lit encode(Literal l) { return 2 * l.atom + (l.positive ? 0 : 1); }
  static AtomId var_of(Lit l) { return l >> 1; }

  // -1 unassigned, 0 false, 1 true
  [[nodiscard]] int lit_value(Lit l) const {
    const int v = value_[var_of(l)];
    return v < 0 ? -1 : (v ^ static_cast<int>(l & 1));
  }

  void ensure_var(AtomId v);
  void enqueue(Lit l, int reason);
  int propagate();
  void analyze(int conflict, std::vector<Lit>& learnt, int& backjump);
  void cancel_until(int level);
  [[nodiscard]] int decision_level() const { return static_cast<int>(trail_lim_.size()); }
  void attach(int cref);
  [[nodiscard]] bool model_satisfies_clauses() const;

  std::vector<std::vector<Lit>> clauses_;
  std::vector<std::vector<int>> watches_;  // indexed by literal: clauses watching it
  std::vector<std::int8_t> value_;
  std::vector<int> level_;
  std::vector<int> reason_;
  std::vector<std::uint8_t> seen_;
  std::vector<bool> registered_;
  std::vector<AtomId> order_;  // registered atoms, ascending
  std::vector<Lit> trail_;
  std::vector<std::size_t> trail_lim_;
  std::size_t qhead_ = 0;
  std::size_t units_ = 0;
  std::size_t learnts_ = 0;
  bool ok_ = true;
  std::uint64_t solve_calls_ = 0;
  std::uint64_t conflicts_ = 0;
};

SolveResult solve(const CnfFormula& f);
/// Same answer as solving f plus the assumptions as unit clauses; f is untouched.
SolveResult solve_assumptions(const CnfFormula& f, const Assignment& assumptions);

}  // namespace psat
