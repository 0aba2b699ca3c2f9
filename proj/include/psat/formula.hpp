#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace psat {

using AtomId = std::uint32_t;

/// Ordered set of atoms; iteration follows atom-id order.
using AtomSet = std::set<AtomId>;

struct Literal {
  AtomId atom = 0;
  bool positive = true;

  [[nodiscard]] constexpr Literal negated() const noexcept { return {atom, !positive}; }

  friend constexpr bool operator==(Literal, Literal) = default;
  // Atom-major; the positive literal sorts before the negative one.
  friend constexpr std::strong_ordering operator<=>(Literal a, Literal b) noexcept {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    return b.positive <=> a.positive;
  }
};

constexpr Literal pos(AtomId a) noexcept { return {a, true}; }
constexpr Literal neg(AtomId a) noexcept { return {a, false}; }

/// Bijective name <-> dense id mapping. Ids are handed out in declaration order.
class AtomTable {
 public:
  /// Returns the id for `name`, declaring it if needed. Names must match
  /// `[A-Za-z_][A-Za-z0-9_]*` and must not be `true` or `false`.
  AtomId declare(std::string_view name);
  [[nodiscard]] std::optional<AtomId> find(std::string_view name) const;
  [[nodiscard]] const std::string& name(AtomId id) const;
  [[nodiscard]] std::size_t size() const noexcept { return names_.size(); }
  [[nodiscard]] bool is_fresh(AtomId id) const;

  /// The k-th (0-based) atom of the fresh-label pool used by CNF encoders,
  /// named `_B<k'>`. Names already taken by user atoms are skipped.
  AtomId fresh_label(std::size_t k);

  static bool valid_name(std::string_view name);

 private:
  std::vector<std::string> names_;
  std::vector<bool> fresh_;
  std::unordered_map<std::string, AtomId> ids_;
  std::vector<AtomId> pool_;
  std::size_t next_label_suffix_ = 1;
};

enum class NodeKind : std::uint8_t { False, True, Atom, Not, And, Or, Implies, Iff };

[[nodiscard]] constexpr bool is_binary(NodeKind k) noexcept {
  return k == NodeKind::And || k == NodeKind::Or || k == NodeKind::Implies || k == NodeKind::Iff;
}

class FormulaArena;

/// Handle to an interned node. Two handles from the same arena compare equal
/// iff the formulas are structurally identical.
class Formula {
 public:
  Formula() = default;

  [[nodiscard]] NodeKind kind() const;
  [[nodiscard]] AtomId atom() const;    // kind() == Atom
  [[nodiscard]] Formula operand() const;  // kind() == Not
  [[nodiscard]] Formula lhs() const;    // binary kinds
  [[nodiscard]] Formula rhs() const;

  [[nodiscard]] bool is_true() const { return kind() == NodeKind::True; }
  [[nodiscard]] bool is_false() const { return kind() == NodeKind::False; }
  [[nodiscard]] bool is_constant() const { return is_true() || is_false(); }
  [[nodiscard]] bool is_atom() const { return kind() == NodeKind::Atom; }
  /// An atom or the negation of an atom.
  [[nodiscard]] bool is_literal() const;
  [[nodiscard]] Literal as_literal() const;

  [[nodiscard]] bool valid() const noexcept { return arena_ != nullptr; }
  [[nodiscard]] std::uint32_t id() const noexcept { return id_; }
  [[nodiscard]] FormulaArena& arena() const { return *arena_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  friend class FormulaArena;
  Formula(FormulaArena* arena, std::uint32_t id) : arena_(arena), id_(id) {}

  FormulaArena* arena_ = nullptr;
  std::uint32_t id_ = 0;
};

/// Hash-consing store for formula nodes plus the atom table they range over.
///
/// Construction never simplifies: `make_and(top(), x)` is a new node distinct
/// from `x`. Interning mutates the arena, so an arena must not be shared
/// between threads while anything (parsing, residuals, encoders) builds nodes.
class FormulaArena {
 public:
  FormulaArena();
  FormulaArena(const FormulaArena&) = delete;
  FormulaArena& operator=(const FormulaArena&) = delete;

  AtomTable& atoms() noexcept { return atoms_; }
  [[nodiscard]] const AtomTable& atoms() const noexcept { return atoms_; }

  Formula top() { return {this, kTrueId}; }
  Formula bottom() { return {this, kFalseId}; }
  Formula constant(bool value) { return value ? top() : bottom(); }
  Formula atom(AtomId id);
  Formula atom(std::string_view name) { return atom(atoms_.declare(name)); }
  Formula literal(Literal l) { return l.positive ? atom(l.atom) : make_not(atom(l.atom)); }

  Formula make_not(Formula f);
  Formula make_and(Formula l, Formula r) { return make_binary(NodeKind::And, l, r); }
  Formula make_or(Formula l, Formula r) { return make_binary(NodeKind::Or, l, r); }
  Formula make_implies(Formula l, Formula r) { return make_binary(NodeKind::Implies, l, r); }
  Formula make_iff(Formula l, Formula r) { return make_binary(NodeKind::Iff, l, r); }
  Formula make_binary(NodeKind kind, Formula l, Formula r);

  /// Left-folded chains; an empty span yields the neutral constant.
  Formula conjunction(std::span<const Formula> items);
  Formula disjunction(std::span<const Formula> items);

  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

 private:
  friend class Formula;

  struct Node {
    NodeKind kind;
    std::uint32_t a;
    std::uint32_t b;
    friend bool operator==(const Node&, const Node&) = default;
  };
  struct NodeHash {
    std::size_t operator()(const Node& n) const noexcept;
  };

  static constexpr std::uint32_t kFalseId = 0;
  static constexpr std::uint32_t kTrueId = 1;

  Formula intern(Node n);
  void check_owned(Formula f) const;

  AtomTable atoms_;
  std::vector<Node> nodes_;
  std::unordered_map<Node, std::uint32_t, NodeHash> index_;
};

/// Existential closure `exists bound. matrix`.
struct QuantifiedFormula {
  Formula matrix;
  AtomSet bound;

  /// atoms(matrix) minus the bound atoms.
  [[nodiscard]] AtomSet free_atoms() const;
};

/// Parses the textual grammar:
///   constants `true` `false`; negation `!` or `~`; `&`, `|`, `->`, `<->`;
///   precedence ! > & > | > -> > <->; `->` is right-associative, the other
///   binary connectives associate to the left; `#` starts a line comment.
/// Throws ParseError.
Formula parse(std::string_view text, FormulaArena& arena);

/// Prints with the minimal parentheses needed for `parse` to rebuild the
/// identical node.
std::string to_string(Formula f);

AtomSet atoms(Formula f);

/// Distinct binary nodes reachable from f.
std::size_t count_binary_nodes(Formula f);

/// Negation normal form over And/Or/literals/constants; -> and <-> are expanded.
Formula nnf(Formula f);

enum class CheckMethod { Auto, Exhaustive, Solver };

/// Same truth value under every total assignment over atoms(f1) | atoms(f2).
/// Auto picks exhaustive evaluation up to 14 atoms, the CNF solver beyond.
bool equivalent(Formula f1, Formula f2, CheckMethod method = CheckMethod::Auto);

inline constexpr std::size_t kExhaustiveCheckAtoms = 14;

}  // namespace psat
