#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "psat/assignment.hpp"
#include "psat/formula.hpp"
#include "psat/satcheck.hpp"

namespace psat {

/// Which partial-assignment test accepts a cube.
enum class Mode { Verify, Entail };

std::string_view to_string(Mode m);

struct Cube {
  enum class Provenance { Total, Branch, Generalized };

  Assignment assignment;
  Provenance provenance = Provenance::Total;

  friend bool operator==(const Cube&, const Cube&) = default;
};

struct EnumerationStats {
  std::size_t num_cubes = 0;
  std::size_t sum_cube_sizes = 0;
  std::uint64_t solver_calls = 0;
  double wall_ms = 0.0;
};

struct CubeSet {
  std::vector<Cube> cubes;
  AtomSet atom_universe;
  bool disjoint = true;
  Mode mode = Mode::Verify;
  EnumerationStats stats;
};

struct EnumerateOptions {
  /// Keep every cube in conflict with all earlier ones; required by count_models.
  bool disjoint = true;
  std::size_t brute_bound = 20;
  CheckLimits limits;
};

/// Every total model over atoms(f), lexicographic order.
/// Throws BoundError when atoms(f) exceeds options.brute_bound.
CubeSet enumerate_brute(Formula f, const EnumerateOptions& options = {});

/// Non-CNF DPLL over residuals: branch on the lowest atom of the current
/// residual (true first), emit at T, prune at F.
CubeSet enumerate_verification(Formula f);

/// Shrinks total models of a fixed formula by greedy literal removal. Entail
/// mode keeps one incremental dual solver over the Tseitin encoding of !f.
class Generalizer {
 public:
  Generalizer(Formula f, Mode mode);
  ~Generalizer();
  Generalizer(Generalizer&&) noexcept;
  Generalizer& operator=(Generalizer&&) noexcept;

  /// Tries to drop each literal of eta in atom-id order, one pass. A drop is
  /// kept if the smaller cube still verifies/entails f and, when `frozen` is
  /// non-empty, still conflicts with every cube in it.
  /// Throws std::invalid_argument unless eta is total over atoms(f) and satisfies f.
  Cube generalize(const Assignment& eta, std::span<const Cube> frozen = {});

  [[nodiscard]] std::uint64_t solver_calls() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Cube generalize(const Assignment& eta, Formula f, Mode mode, std::span<const Cube> frozen = {});

/// Blocking-clause AllSAT on the Tseitin encoding of f: each model is
/// restricted to atoms(f), generalized per mode, emitted and blocked.
CubeSet enumerate_with_generalization(Formula f, Mode mode, const EnumerateOptions& options = {});

/// Projected AllSAT: models of the matrix are projected onto the free atoms and
/// generalized with verifies_exists / entails_exists.
CubeSet enumerate_projected(const QuantifiedFormula& q, Mode mode, const EnumerateOptions& options = {});

/// The union of the cubes' total extensions is exactly models(f), over the
/// cube universe together with atoms(f).
/// Throws BoundError beyond `bound` atoms.
bool check_cover(const CubeSet& cs, Formula f, std::size_t bound = 20);

/// Same, against the projection of a quantified formula (brute force over the
/// bound atoms).
bool check_cover_exists(const CubeSet& cs, const QuantifiedFormula& q, std::size_t bound = 20);

/// Every pair of cubes clashes on some atom.
bool check_disjoint(const CubeSet& cs);

/// Sum of 2^(|universe| - |cube|). Throws std::logic_error("count requires
/// disjoint cubes") unless cs.disjoint.
std::uint64_t count_models(const CubeSet& cs);

}  // namespace psat
