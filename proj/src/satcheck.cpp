#include "psat/satcheck.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>

#include "psat/cnf.hpp"
#include "psat/error.hpp"
#include "psat/solver.hpp"

namespace psat {

namespace {

bool use_exhaustive(CheckMethod method, std::size_t num_atoms) {
  switch (method) {
    case CheckMethod::Exhaustive: return true;
    case CheckMethod::Solver: return false;
    case CheckMethod::Auto: break;
  }
  return num_atoms <= kExhaustiveCheckAtoms;
}

bool valid_by_truth_table(Formula f) {
  bool valid = true;
  for_each_extension(Assignment{}, atoms(f), [&](const Assignment& eta) {
    valid = eval3(f, eta) == Tv3::True;
    return valid;
  });
  return valid;
}

bool valid_by_solver(Formula f) {
  if (f.is_true()) return true;
  return !solve(tseitin(f.arena().make_not(f))).sat();
}

void require_free(const Assignment& mu, const QuantifiedFormula& q) {
  for (Literal l : mu)
    if (q.bound.contains(l.atom))
      throw std::invalid_argument("assignment maps a bound atom");
}

// Depth-first search over the bound atoms; r is the residual so far.
bool find_witness(Formula r, const std::vector<AtomId>& bound, std::size_t next, Assignment& delta) {
  if (r.is_true()) return true;
  if (r.is_false()) return false;
  const AtomSet left = atoms(r);
  while (next < bound.size() && !left.contains(bound[next])) ++next;
  if (next == bound.size()) return false;
  const AtomId b = bound[next];
  for (bool v : {true, false}) {
    delta.assign(b, v);
    if (find_witness(residual(r, Assignment{Literal{b, v}}), bound, next + 1, delta)) return true;
    delta.erase(b);
  }
  return false;
}

// Above this many bound atoms the witness search goes to the solver.
constexpr std::size_t kWitnessSearchAtoms = 16;

// Dual-rail encoding of three-valued evaluation: for every node g a literal
// that can only be true when g evaluates to T, and one for F. Unassigned free
// atoms get neither. The root's T literal is satisfiable exactly when some
// delta on the bound atoms makes the residual T.
class KleeneEncoder {
 public:
  KleeneEncoder(const AtomSet& bound, AtomId first_aux) : bound_(bound), first_aux_(first_aux), next_(first_aux) {
    zero_ = pos(fresh());
    solver_.add_clause(std::array{zero_.negated()});
  }

  std::optional<Assignment> witness(Formula r) {
    const Literal root = encode(r).first;
    solver_.register_atoms(bound_);
    for (AtomId a = first_aux_; a < next_; ++a) solver_.register_atom(a);
    solver_.add_clause(std::array{root});
    const SolveResult res = solver_.solve();
    if (!res.sat()) return std::nullopt;
    return res.model.restricted_to(bound_);
  }

 private:
  using Rails = std::pair<Literal, Literal>;

  AtomId fresh() { return next_++; }

  void clause(std::initializer_list<Literal> lits) { solver_.add_clause(std::span(lits.begin(), lits.size())); }

  Rails encode(Formula g) {
    if (auto it = memo_.find(g.id()); it != memo_.end()) return it->second;
    Rails out;
    switch (g.kind()) {
      case NodeKind::True: out = {zero_.negated(), zero_}; break;
      case NodeKind::False: out = {zero_, zero_.negated()}; break;
      case NodeKind::Atom:
        out = bound_.contains(g.atom()) ? Rails{pos(g.atom()), neg(g.atom())} : Rails{zero_, zero_};
        break;
      case NodeKind::Not: {
        const auto [t, f] = encode(g.operand());
        out = {f, t};
        break;
      }
      default: {
        const auto [ta, fa] = encode(g.lhs());
        const auto [tb, fb] = encode(g.rhs());
        const Literal t = pos(fresh()), f = pos(fresh());
        const Literal nt = t.negated(), nf = f.negated();
        switch (g.kind()) {
          case NodeKind::And:
            clause({nt, ta});
            clause({nt, tb});
            clause({nf, fa, fb});
            break;
          case NodeKind::Or:
            clause({nt, ta, tb});
            clause({nf, fa});
            clause({nf, fb});
            break;
          case NodeKind::Implies:
            clause({nt, fa, tb});
            clause({nf, ta});
            clause({nf, fb});
            break;
          default:  // Iff: T needs equal known values, F unequal ones
            clause({nt, ta, fa});
            clause({nt, ta, fb});
            clause({nt, tb, fa});
            clause({nt, tb, fb});
            clause({nf, ta, fa});
            clause({nf, ta, tb});
            clause({nf, fb, fa});
            clause({nf, fb, tb});
            break;
        }
        out = {t, f};
      }
    }
    memo_.emplace(g.id(), out);
    return out;
  }

  const AtomSet& bound_;
  AtomId first_aux_;
  AtomId next_;
  Literal zero_{};
  Solver solver_;
  std::unordered_map<std::uint32_t, Rails> memo_;
};

std::optional<Assignment> counterexample_exhaustive(const Assignment& mu, const QuantifiedFormula& q,
                                                    const AtomSet& over) {
  std::optional<Assignment> found;
  for_each_extension(mu, over, [&](const Assignment& eta) {
    if (verifies_exists(eta, q)) return true;
    found = eta;
    return false;
  });
  return found;
}

std::optional<Assignment> counterexample_cegar(const Assignment& mu, const QuantifiedFormula& q,
                                               const AtomSet& over) {
  Solver candidates;
  candidates.register_atoms(over);
  AtomSet avoid = over;
  avoid.insert(q.bound.begin(), q.bound.end());
  Solver matrix(tseitin(q.matrix, avoid));
  for (;;) {
    const SolveResult c = candidates.solve(mu);
    if (!c.sat()) return std::nullopt;
    const Assignment eta = c.model.restricted_to(over);
    if (!matrix.solve(eta).sat()) return eta;
    candidates.add_blocking_clause(eta);
  }
}

}  // namespace

bool verifies(const Assignment& mu, Formula f) { return eval3(f, mu) == Tv3::True; }

bool verifies_extended(const Assignment& mu, Formula f) { return residual_extended(f, mu).is_true(); }

bool is_valid(Formula f, CheckMethod method) {
  if (f.is_constant()) return f.is_true();
  if (use_exhaustive(method, atoms(f).size())) return valid_by_truth_table(f);
  return valid_by_solver(f);
}

bool equivalent(Formula f1, Formula f2, CheckMethod method) {
  if (f1 == f2) return true;
  AtomSet all = atoms(f1);
  const AtomSet a2 = atoms(f2);
  all.insert(a2.begin(), a2.end());
  if (use_exhaustive(method, all.size())) {
    bool same = true;
    for_each_extension(Assignment{}, all, [&](const Assignment& eta) {
      same = eval3(f1, eta) == eval3(f2, eta);
      return same;
    });
    return same;
  }
  return valid_by_solver(f1.arena().make_iff(f1, f2));
}

bool entails(const Assignment& mu, Formula f, CheckMethod method) {
  return is_valid(residual(f, mu), method);
}

std::optional<Assignment> dual_countermodel(const Assignment& mu, Formula f) {
  const AtomSet mapped = mu.mapped();
  Solver dual(tseitin(f.arena().make_not(f), mapped));
  dual.register_atoms(mapped);
  const SolveResult r = dual.solve(mu);
  if (!r.sat()) return std::nullopt;
  AtomSet keep = atoms(f);
  keep.insert(mapped.begin(), mapped.end());
  return r.model.restricted_to(keep);
}

bool dual_entails(const Assignment& mu, Formula f) { return !dual_countermodel(mu, f).has_value(); }

std::vector<Formula> shannon_disjuncts(const QuantifiedFormula& q, const CheckLimits& limits) {
  if (q.bound.size() > limits.expansion_bound)
    throw BoundError("expansion too large: " + std::to_string(q.bound.size()) +
                     " bound atoms exceed the limit of " + std::to_string(limits.expansion_bound));
  std::vector<Formula> out;
  for_each_extension(Assignment{}, q.bound, [&](const Assignment& delta) {
    out.push_back(residual(q.matrix, delta));
    return true;
  });
  return out;
}

Formula shannon_expansion(const QuantifiedFormula& q, const CheckLimits& limits) {
  const auto disjuncts = shannon_disjuncts(q, limits);
  Formula out = disjuncts.front();
  for (std::size_t i = 1; i < disjuncts.size(); ++i) out = q.matrix.arena().make_or(out, disjuncts[i]);
  return out;
}

std::optional<Assignment> verifying_witness(const Assignment& mu, const QuantifiedFormula& q) {
  require_free(mu, q);
  const std::vector<AtomId> bound(q.bound.begin(), q.bound.end());
  const Formula r = residual(q.matrix, mu);
  if (bound.size() > kWitnessSearchAtoms && !r.is_constant()) {
    AtomId first_aux = static_cast<AtomId>(r.arena().atoms().size());
    for (AtomId b : q.bound) first_aux = std::max(first_aux, b + 1);
    return KleeneEncoder(q.bound, first_aux).witness(r);
  }
  Assignment delta;
  if (!find_witness(r, bound, 0, delta)) return std::nullopt;
  // atoms the search never touched are don't-cares; fill them true
  for (AtomId b : bound)
    if (!delta.assigns(b)) delta.assign(b, true);
  return delta;
}

bool verifies_exists(const Assignment& mu, const QuantifiedFormula& q) {
  return verifying_witness(mu, q).has_value();
}

std::optional<Assignment> exists_counterexample(const Assignment& mu, const QuantifiedFormula& q,
                                                ExistsMethod method, const CheckLimits& limits) {
  require_free(mu, q);
  AtomSet over = q.free_atoms();
  std::size_t unassigned = 0;
  for (AtomId a : over) unassigned += mu.assigns(a) ? 0 : 1;
  for (Literal l : mu) over.insert(l.atom);

  bool exhaustive = method == ExistsMethod::Exhaustive;
  if (method == ExistsMethod::Auto) exhaustive = unassigned <= limits.exhaustive_fallback_bound;
  return exhaustive ? counterexample_exhaustive(mu, q, over) : counterexample_cegar(mu, q, over);
}

bool entails_exists(const Assignment& mu, const QuantifiedFormula& q, ExistsMethod method,
                    const CheckLimits& limits) {
  return !exists_counterexample(mu, q, method, limits).has_value();
}

}  // namespace psat
