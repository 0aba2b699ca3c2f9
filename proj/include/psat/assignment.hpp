#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "psat/formula.hpp"

namespace psat {

enum class Tv3 : std::uint8_t { False, True, Unknown };

std::string_view to_string(Tv3 v);

/// Partial map from atoms to {true,false}; unmapped atoms read as unknown.
/// Stored as a literal set sorted by atom id, so the set-of-literals view and
/// the cube view coincide.
class Assignment {
 public:
  Assignment() = default;
  /// Throws std::invalid_argument if the literals clash on an atom.
  Assignment(std::initializer_list<Literal> lits);
  explicit Assignment(std::span<const Literal> lits);

  [[nodiscard]] std::optional<bool> value(AtomId a) const;
  [[nodiscard]] Tv3 value3(AtomId a) const;
  [[nodiscard]] bool contains(Literal l) const;
  [[nodiscard]] bool assigns(AtomId a) const { return value(a).has_value(); }

  /// Throws std::invalid_argument if `a` is already mapped to the other value.
  void assign(AtomId a, bool value);
  void assign(Literal l) { assign(l.atom, l.positive); }
  bool erase(AtomId a);

  [[nodiscard]] std::size_t size() const noexcept { return lits_.size(); }
  [[nodiscard]] bool empty() const noexcept { return lits_.empty(); }
  [[nodiscard]] std::span<const Literal> literals() const noexcept { return lits_; }
  [[nodiscard]] AtomSet mapped() const;

  [[nodiscard]] bool is_total_over(const AtomSet& atoms) const;
  /// Some atom is mapped to different values in the two assignments.
  [[nodiscard]] bool conflicts_with(const Assignment& other) const;
  [[nodiscard]] bool subset_of(const Assignment& other) const;
  [[nodiscard]] Assignment restricted_to(const AtomSet& atoms) const;
  [[nodiscard]] Assignment without(AtomId a) const;
  /// Union; throws std::invalid_argument on conflict.
  [[nodiscard]] Assignment merged(const Assignment& other) const;

  auto begin() const noexcept { return lits_.begin(); }
  auto end() const noexcept { return lits_.end(); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
  friend auto operator<=>(const Assignment& a, const Assignment& b) { return a.lits_ <=> b.lits_; }

 private:
  std::vector<Literal> lits_;
};

/// Three-valued (Kleene) evaluation of f under a partial assignment.
Tv3 eval3(Formula f, const Assignment& a);

/// Substitutes assigned atoms by constants and propagates them bottom-up with
/// exactly these rewrites and nothing else:
///   !T=>F  !F=>T
///   T&x, x&T => x      F&x, x&F => F
///   T|x, x|T => T      F|x, x|F => x
///   T->x => x   F->x => T   x->T => T   x->F => !x
///   T<->x, x<->T => x  F<->x, x<->F => !x
Formula residual(Formula f, const Assignment& a);

/// residual() plus `l | !l => T` for two sibling literals under an Or.
Formula residual_extended(Formula f, const Assignment& a);

/// Calls `visit` on every total assignment over `over` that extends `a`, in
/// lexicographic order of the free atoms (lowest id most significant, true
/// before false). Stops early when `visit` returns false.
/// Throws std::invalid_argument if `a` maps an atom outside `over`.
void for_each_extension(const Assignment& a, const AtomSet& over,
                        const std::function<bool(const Assignment&)>& visit);

std::vector<Assignment> extensions(const Assignment& a, const AtomSet& over);

/// Conjunction of the literals in atom-id order (a single literal for |a| = 1).
/// Throws std::invalid_argument("empty cube") on an empty assignment.
Formula cube_of(const Assignment& a, FormulaArena& arena);

/// Reads `A1,-A3` (also `!A3`, `~A3`; commas or whitespace separate). Atoms are
/// declared in `table` as needed.
Assignment parse_assignment(std::string_view text, AtomTable& table);

/// Space-separated literals, `-` marks negation: `A1 -A3`.
std::string to_string(const Assignment& a, const AtomTable& table);

}  // namespace psat
