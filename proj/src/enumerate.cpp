#include "psat/enumerate.hpp"

#include <chrono>
#include <functional>
#include <stdexcept>
#include <string>

#include "psat/cnf.hpp"
#include "psat/error.hpp"
#include "psat/solver.hpp"
#include "solve_counter.hpp"

namespace psat {

std::string_view to_string(Mode m) { return m == Mode::Verify ? "verify" : "entail"; }

namespace {

class RunStats {
 public:
  RunStats() : calls_(detail::thread_solve_calls()), start_(std::chrono::steady_clock::now()) {}

  void finish(CubeSet& cs) const {
    cs.stats.num_cubes = cs.cubes.size();
    cs.stats.sum_cube_sizes = 0;
    for (const auto& c : cs.cubes) cs.stats.sum_cube_sizes += c.assignment.size();
    cs.stats.solver_calls = detail::thread_solve_calls() - calls_;
    cs.stats.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::uint64_t calls_;
  std::chrono::steady_clock::time_point start_;
};

bool clashes_with_all(const Assignment& a, std::span<const Cube> frozen) {
  for (const auto& c : frozen)
    if (!a.conflicts_with(c.assignment)) return false;
  return true;
}

// One greedy pass in atom-id order; `accepts` decides whether a reduced cube
// still satisfies the target.
Assignment shrink(const Assignment& eta, std::span<const Cube> frozen,
                  const std::function<bool(const Assignment&)>& accepts) {
  Assignment cur = eta;
  for (Literal l : eta) {
    Assignment cand = cur.without(l.atom);
    if (!clashes_with_all(cand, frozen)) continue;
    if (accepts(cand)) cur = std::move(cand);
  }
  return cur;
}

}  // namespace

CubeSet enumerate_brute(Formula f, const EnumerateOptions& options) {
  RunStats stats;
  CubeSet cs;
  cs.atom_universe = atoms(f);
  if (cs.atom_universe.size() > options.brute_bound)
    throw BoundError("brute-force enumeration over " + std::to_string(cs.atom_universe.size()) +
                     " atoms exceeds the limit of " + std::to_string(options.brute_bound));
  for_each_extension(Assignment{}, cs.atom_universe, [&](const Assignment& eta) {
    if (eval3(f, eta) == Tv3::True) cs.cubes.push_back(Cube{eta, Cube::Provenance::Total});
    return true;
  });
  stats.finish(cs);
  return cs;
}

CubeSet enumerate_verification(Formula f) {
  RunStats stats;
  CubeSet cs;
  cs.atom_universe = atoms(f);
  Assignment path;
  std::function<void(Formula)> branch = [&](Formula r) {
    if (r.is_true()) {
      cs.cubes.push_back(Cube{path, Cube::Provenance::Branch});
      return;
    }
    if (r.is_false()) return;
    const AtomId a = *atoms(r).begin();
    for (bool v : {true, false}) {
      path.assign(a, v);
      branch(residual(r, Assignment{Literal{a, v}}));
      path.erase(a);
    }
  };
  branch(residual(f, Assignment{}));
  stats.finish(cs);
  return cs;
}

// --- generalization ---------------------------------------------------------

struct Generalizer::Impl {
  Impl(Formula f, Mode mode) : f(f), mode(mode), universe(atoms(f)) {
    if (mode == Mode::Entail) {
      dual = Solver(tseitin(f.arena().make_not(f)));
      dual.register_atoms(universe);
    }
  }

  Formula f;
  Mode mode;
  AtomSet universe;
  Solver dual;
};

Generalizer::Generalizer(Formula f, Mode mode) : impl_(std::make_unique<Impl>(f, mode)) {}
Generalizer::~Generalizer() = default;
Generalizer::Generalizer(Generalizer&&) noexcept = default;
Generalizer& Generalizer::operator=(Generalizer&&) noexcept = default;

Cube Generalizer::generalize(const Assignment& eta, std::span<const Cube> frozen) {
  Impl& g = *impl_;
  if (!eta.is_total_over(g.universe)) throw std::invalid_argument("assignment is not total over the formula's atoms");
  if (eval3(g.f, eta) != Tv3::True) throw std::invalid_argument("assignment does not satisfy the formula");
  Assignment out;
  if (g.mode == Mode::Verify)
    out = shrink(eta, frozen, [&](const Assignment& a) { return verifies(a, g.f); });
  else
    out = shrink(eta, frozen, [&](const Assignment& a) { return !g.dual.solve(a).sat(); });
  return Cube{std::move(out), Cube::Provenance::Generalized};
}

std::uint64_t Generalizer::solver_calls() const { return impl_->dual.solve_calls(); }

Cube generalize(const Assignment& eta, Formula f, Mode mode, std::span<const Cube> frozen) {
  return Generalizer(f, mode).generalize(eta, frozen);
}

// --- solver-driven enumeration ----------------------------------------------

CubeSet enumerate_with_generalization(Formula f, Mode mode, const EnumerateOptions& options) {
  RunStats stats;
  CubeSet cs;
  cs.mode = mode;
  cs.disjoint = options.disjoint;
  cs.atom_universe = atoms(f);
  Solver models(tseitin(f));
  models.register_atoms(cs.atom_universe);
  Generalizer gen(f, mode);
  for (;;) {
    const SolveResult r = models.solve();
    if (!r.sat()) break;
    const Assignment eta = r.model.restricted_to(cs.atom_universe);
    std::span<const Cube> frozen;
    if (options.disjoint) frozen = cs.cubes;
    Cube cube = gen.generalize(eta, frozen);
    models.add_blocking_clause(cube.assignment);
    cs.cubes.push_back(std::move(cube));
  }
  stats.finish(cs);
  return cs;
}

CubeSet enumerate_projected(const QuantifiedFormula& q, Mode mode, const EnumerateOptions& options) {
  RunStats stats;
  CubeSet cs;
  cs.mode = mode;
  cs.disjoint = options.disjoint;
  cs.atom_universe = q.free_atoms();
  Solver models(tseitin(q.matrix, q.bound));
  models.register_atoms(cs.atom_universe);
  auto accepts = [&](const Assignment& a) {
    return mode == Mode::Verify ? verifies_exists(a, q)
                                : entails_exists(a, q, ExistsMethod::Auto, options.limits);
  };
  for (;;) {
    const SolveResult r = models.solve();
    if (!r.sat()) break;
    const Assignment eta = r.model.restricted_to(cs.atom_universe);
    std::span<const Cube> frozen;
    if (options.disjoint) frozen = cs.cubes;
    Cube cube{shrink(eta, frozen, accepts), Cube::Provenance::Generalized};
    models.add_blocking_clause(cube.assignment);
    cs.cubes.push_back(std::move(cube));
  }
  stats.finish(cs);
  return cs;
}

// --- oracles ----------------------------------------------------------------

namespace {

AtomSet cover_universe(const CubeSet& cs, const AtomSet& extra) {
  AtomSet u = cs.atom_universe;
  u.insert(extra.begin(), extra.end());
  for (const auto& c : cs.cubes)
    for (Literal l : c.assignment) u.insert(l.atom);
  return u;
}

void check_bound(const AtomSet& u, std::size_t bound) {
  if (u.size() > bound)
    throw BoundError("cover check over " + std::to_string(u.size()) + " atoms exceeds the limit of " +
                     std::to_string(bound));
}

bool covers_exactly(const CubeSet& cs, const AtomSet& u, const std::function<bool(const Assignment&)>& model) {
  bool ok = true;
  for_each_extension(Assignment{}, u, [&](const Assignment& eta) {
    bool covered = false;
    for (const auto& c : cs.cubes)
      if (c.assignment.subset_of(eta)) {
        covered = true;
        break;
      }
    ok = covered == model(eta);
    return ok;
  });
  return ok;
}

}  // namespace

bool check_cover(const CubeSet& cs, Formula f, std::size_t bound) {
  const AtomSet u = cover_universe(cs, atoms(f));
  check_bound(u, bound);
  return covers_exactly(cs, u, [&](const Assignment& eta) { return eval3(f, eta) == Tv3::True; });
}

bool check_cover_exists(const CubeSet& cs, const QuantifiedFormula& q, std::size_t bound) {
  AtomSet u = cover_universe(cs, q.free_atoms());
  for (AtomId b : q.bound) u.erase(b);
  check_bound(u, bound);
  check_bound(q.bound, bound);
  return covers_exactly(cs, u, [&](const Assignment& eta) {
    bool sat = false;
    for_each_extension(Assignment{}, q.bound, [&](const Assignment& delta) {
      sat = eval3(q.matrix, eta.merged(delta)) == Tv3::True;
      return !sat;
    });
    return sat;
  });
}

bool check_disjoint(const CubeSet& cs) {
  for (std::size_t i = 0; i < cs.cubes.size(); ++i)
    for (std::size_t j = i + 1; j < cs.cubes.size(); ++j)
      if (!cs.cubes[i].assignment.conflicts_with(cs.cubes[j].assignment)) return false;
  return true;
}

std::uint64_t count_models(const CubeSet& cs) {
  if (!cs.disjoint) throw std::logic_error("count requires disjoint cubes");
  const std::size_t n = cs.atom_universe.size();
  if (n >= 64) throw BoundError("model count does not fit in 64 bits");
  std::uint64_t total = 0;
  for (const auto& c : cs.cubes) total += std::uint64_t{1} << (n - c.assignment.size());
  return total;
}

}  // namespace psat
