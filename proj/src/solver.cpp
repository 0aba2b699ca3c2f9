#include "psat/solver.hpp"

#include <algorithm>
#include <cassert>

#include "solve_counter.hpp"

namespace psat {

namespace {
thread_local std::uint64_t solve_counter = 0;
}  // namespace

std::uint64_t detail::thread_solve_calls() { return solve_counter; }

Solver::Solver(const CnfFormula& f) {
  register_atoms(f.all_atoms());
  for (const auto& c : f.clauses) add_clause(c);
}

void Solver::ensure_var(AtomId v) {
  if (v < value_.size()) return;
  const std::size_t n = std::size_t{v} + 1;
  value_.resize(n, -1);
  level_.resize(n, 0);
  reason_.resize(n, kNoReason);
  seen_.resize(n, 0);
  registered_.resize(n, false);
  watches_.resize(2 * n);
}

void Solver::register_atom(AtomId a) {
  ensure_var(a);
  if (registered_[a]) return;
  registered_[a] = true;
  order_.insert(std::upper_bound(order_.begin(), order_.end(), a), a);
}

void Solver::register_atoms(const AtomSet& atoms) {
  for (AtomId a : atoms) register_atom(a);
}

void Solver::enqueue(Lit l, int reason) {
  const AtomId v = var_of(l);
  value_[v] = static_cast<std::int8_t>((l & 1) ? 0 : 1);
  level_[v] = decision_level();
  reason_[v] = reason;
  trail_.push_back(l);
}

void Solver::attach(int cref) {
  const auto& c = clauses_[static_cast<std::size_t>(cref)];
  watches_[c[0]].push_back(cref);
  watches_[c[1]].push_back(cref);
}

bool Solver::add_clause(std::span<const Literal> clause) {
  if (!ok_) return false;
  cancel_until(0);
  std::vector<Lit> lits;
  lits.reserve(clause.size());
  for (Literal l : clause) {
    register_atom(l.atom);
    lits.push_back(encode(l));
  }
  std::sort(lits.begin(), lits.end());
  lits.erase(std::unique(lits.begin(), lits.end()), lits.end());
  for (std::size_t i = 1; i < lits.size(); ++i)
    if (lits[i] == (lits[i - 1] ^ 1)) return true;  // tautology

  std::vector<Lit> kept;
  for (Lit l : lits) {
    const int v = lit_value(l);
    if (v == 1) return true;  // satisfied at level 0
    if (v < 0) kept.push_back(l);
  }
  if (kept.empty()) {
    ok_ = false;
    return false;
  }
  if (kept.size() == 1) {
    ++units_;
    enqueue(kept[0], kNoReason);
    if (propagate() != kNoReason) ok_ = false;
    return ok_;
  }
  clauses_.push_back(std::move(kept));
  attach(static_cast<int>(clauses_.size() - 1));
  return true;
}

void Solver::add_blocking_clause(const Assignment& cube) {
  Clause c;
  c.reserve(cube.size());
  for (Literal l : cube) c.push_back(l.negated());
  add_clause(c);
}

int Solver::propagate() {
  while (qhead_ < trail_.size()) {
    const Lit p = trail_[qhead_++];
    const Lit false_lit = p ^ 1;
    auto& ws = watches_[false_lit];
    std::size_t i = 0, j = 0;
    while (i < ws.size()) {
      const int cref = ws[i++];
      auto& c = clauses_[static_cast<std::size_t>(cref)];
      if (c[0] == false_lit) std::swap(c[0], c[1]);
      if (lit_value(c[0]) == 1) {
        ws[j++] = cref;
        continue;
      }
      bool moved = false;
      for (std::size_t k = 2; k < c.size(); ++k) {
        if (lit_value(c[k]) != 0) {
          std::swap(c[1], c[k]);
          watches_[c[1]].push_back(cref);
          moved = true;
          break;
        }
      }
      if (moved) continue;
      ws[j++] = cref;
      if (lit_value(c[0]) == 0) {
        while (i < ws.size()) ws[j++] = ws[i++];
        ws.resize(j);
        qhead_ = trail_.size();
        return cref;
      }
      enqueue(c[0], cref);
    }
    ws.resize(j);
  }
  return kNoReason;
}

void Solver::analyze(int conflict, std::vector<Lit>& learnt, int& backjump) {
  learnt.assign(1, kNoLit);
  int pending = 0;
  Lit p = kNoLit;
  std::size_t index = trail_.size();
  int cref = conflict;
  do {
    assert(cref != kNoReason);
    const auto& c = clauses_[static_cast<std::size_t>(cref)];
    for (std::size_t k = (p == kNoLit ? 0 : 1); k < c.size(); ++k) {
      const Lit q = c[k];
      const AtomId v = var_of(q);
      if (seen_[v] || level_[v] == 0) continue;
      seen_[v] = 1;
      if (level_[v] >= decision_level())
        ++pending;
      else
        learnt.push_back(q);
    }
    while (!seen_[var_of(trail_[--index])]) {
    }
    p = trail_[index];
    cref = reason_[var_of(p)];
    seen_[var_of(p)] = 0;
    --pending;
  } while (pending > 0);
  learnt[0] = p ^ 1;

  backjump = 0;
  if (learnt.size() > 1) {
    std::size_t max_i = 1;
    for (std::size_t k = 2; k < learnt.size(); ++k)
      if (level_[var_of(learnt[k])] > level_[var_of(learnt[max_i])]) max_i = k;
    std::swap(learnt[1], learnt[max_i]);
    backjump = level_[var_of(learnt[1])];
  }
  for (std::size_t k = 1; k < learnt.size(); ++k) seen_[var_of(learnt[k])] = 0;
}

void Solver::cancel_until(int level) {
  if (decision_level() <= level) return;
  const std::size_t keep = trail_lim_[static_cast<std::size_t>(level)];
  for (std::size_t k = trail_.size(); k > keep; --k) {
    const AtomId v = var_of(trail_[k - 1]);
    value_[v] = -1;
    reason_[v] = kNoReason;
  }
  trail_.resize(keep);
  trail_lim_.resize(static_cast<std::size_t>(level));
  qhead_ = trail_.size();
}

bool Solver::model_satisfies_clauses() const {
  for (const auto& c : clauses_)
    if (std::none_of(c.begin(), c.end(), [&](Lit l) { return lit_value(l) == 1; })) return false;
  return true;
}

SolveResult Solver::solve(const Assignment& assumptions) {
  ++solve_calls_;
  ++solve_counter;
  SolveResult result;
  if (!ok_) return result;
  cancel_until(0);

  std::vector<Lit> assume;
  assume.reserve(assumptions.size());
  for (Literal l : assumptions) {
    register_atom(l.atom);
    assume.push_back(encode(l));
  }
  if (propagate() != kNoReason) {
    ok_ = false;
    return result;
  }

  std::vector<Lit> learnt;
  for (;;) {
    const int conflict = propagate();
    if (conflict != kNoReason) {
      ++conflicts_;
      if (decision_level() == 0) {
        ok_ = false;
        return result;
      }
      int backjump = 0;
      analyze(conflict, learnt, backjump);
      cancel_until(backjump);
      if (learnt.size() == 1) {
        enqueue(learnt[0], kNoReason);
      } else {
        clauses_.push_back(learnt);
        ++learnts_;
        const int cref = static_cast<int>(clauses_.size() - 1);
        attach(cref);
        enqueue(learnt[0], cref);
      }
      continue;
    }

    Lit next = kNoLit;
    while (static_cast<std::size_t>(decision_level()) < assume.size()) {
      const Lit a = assume[static_cast<std::size_t>(decision_level())];
      const int v = lit_value(a);
      if (v == 1) {
        trail_lim_.push_back(trail_.size());  // already implied: empty level
      } else if (v == 0) {
        cancel_until(0);
        return result;
      } else {
        next = a;
        break;
      }
    }
    if (next == kNoLit) {
      for (AtomId v : order_) {
        if (value_[v] < 0) {
          next = encode(pos(v));
          break;
        }
      }
    }
    if (next == kNoLit) {
      assert(model_satisfies_clauses());
      result.status = SolveResult::Status::Sat;
      for (AtomId v : order_) result.model.assign(v, value_[v] == 1);
      cancel_until(0);
      return result;
    }
    trail_lim_.push_back(trail_.size());
    enqueue(next, kNoReason);
  }
}

SolveResult solve(const CnfFormula& f) { return Solver(f).solve(); }

SolveResult solve_assumptions(const CnfFormula& f, const Assignment& assumptions) {
  return Solver(f).solve(assumptions);
}

}  // namespace psat
