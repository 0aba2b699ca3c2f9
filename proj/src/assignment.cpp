#include "psat/assignment.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <unordered_map>

#include "psat/error.hpp"

namespace psat {

std::string_view to_string(Tv3 v) {
  switch (v) {
    case Tv3::False: return "false";
    case Tv3::True: return "true";
    case Tv3::Unknown: return "unknown";
  }
  return "?";
}

// --- Assignment -------------------------------------------------------------

Assignment::Assignment(std::initializer_list<Literal> lits)
    : Assignment(std::span<const Literal>(lits.begin(), lits.size())) {}

Assignment::Assignment(std::span<const Literal> lits) {
  for (Literal l : lits) assign(l);
}

namespace {

auto find_atom(const std::vector<Literal>& lits, AtomId a) {
  return std::lower_bound(lits.begin(), lits.end(), a,
                          [](Literal l, AtomId atom) { return l.atom < atom; });
}

}  // namespace

std::optional<bool> Assignment::value(AtomId a) const {
  auto it = find_atom(lits_, a);
  if (it == lits_.end() || it->atom != a) return std::nullopt;
  return it->positive;
}

Tv3 Assignment::value3(AtomId a) const {
  const auto v = value(a);
  if (!v) return Tv3::Unknown;
  return *v ? Tv3::True : Tv3::False;
}

bool Assignment::contains(Literal l) const { return value(l.atom) == l.positive; }

void Assignment::assign(AtomId a, bool v) {
  auto it = find_atom(lits_, a);
  if (it != lits_.end() && it->atom == a) {
    if (it->positive != v) throw std::invalid_argument("atom assigned both true and false");
    return;
  }
  lits_.insert(it, Literal{a, v});
}

bool Assignment::erase(AtomId a) {
  auto it = find_atom(lits_, a);
  if (it == lits_.end() || it->atom != a) return false;
  lits_.erase(it);
  return true;
}

AtomSet Assignment::mapped() const {
  AtomSet out;
  for (Literal l : lits_) out.insert(out.end(), l.atom);
  return out;
}

bool Assignment::is_total_over(const AtomSet& atoms) const {
  return std::all_of(atoms.begin(), atoms.end(), [&](AtomId a) { return assigns(a); });
}

bool Assignment::conflicts_with(const Assignment& other) const {
  auto i = lits_.begin();
  auto j = other.lits_.begin();
  while (i != lits_.end() && j != other.lits_.end()) {
    if (i->atom < j->atom) {
      ++i;
    } else if (j->atom < i->atom) {
      ++j;
    } else {
      if (i->positive != j->positive) return true;
      ++i;
      ++j;
    }
  }
  return false;
}

bool Assignment::subset_of(const Assignment& other) const {
  return std::includes(other.lits_.begin(), other.lits_.end(), lits_.begin(), lits_.end());
}

Assignment Assignment::restricted_to(const AtomSet& atoms) const {
  Assignment out;
  for (Literal l : lits_)
    if (atoms.contains(l.atom)) out.lits_.push_back(l);
  return out;
}

Assignment Assignment::without(AtomId a) const {
  Assignment out = *this;
  out.erase(a);
  return out;
}

Assignment Assignment::merged(const Assignment& other) const {
  Assignment out = *this;
  for (Literal l : other.lits_) out.assign(l);
  return out;
}

// --- three-valued evaluation ------------------------------------------------

namespace {

Tv3 not3(Tv3 v) {
  if (v == Tv3::Unknown) return v;
  return v == Tv3::True ? Tv3::False : Tv3::True;
}

Tv3 and3(Tv3 a, Tv3 b) {
  if (a == Tv3::False || b == Tv3::False) return Tv3::False;
  if (a == Tv3::True && b == Tv3::True) return Tv3::True;
  return Tv3::Unknown;
}

Tv3 or3(Tv3 a, Tv3 b) { return not3(and3(not3(a), not3(b))); }

Tv3 implies3(Tv3 a, Tv3 b) { return or3(not3(a), b); }

Tv3 iff3(Tv3 a, Tv3 b) {
  if (a == Tv3::Unknown || b == Tv3::Unknown) return Tv3::Unknown;
  return a == b ? Tv3::True : Tv3::False;
}

class Evaluator {
 public:
  explicit Evaluator(const Assignment& a) : a_(a) {}

  Tv3 eval(Formula f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Tv3 v = Tv3::Unknown;
    switch (f.kind()) {
      case NodeKind::True: v = Tv3::True; break;
      case NodeKind::False: v = Tv3::False; break;
      case NodeKind::Atom: v = a_.value3(f.atom()); break;
      case NodeKind::Not: v = not3(eval(f.operand())); break;
      case NodeKind::And: {
        // left operand false decides without looking right
        const Tv3 l = eval(f.lhs());
        v = l == Tv3::False ? Tv3::False : and3(l, eval(f.rhs()));
        break;
      }
      case NodeKind::Or: {
        const Tv3 l = eval(f.lhs());
        v = l == Tv3::True ? Tv3::True : or3(l, eval(f.rhs()));
        break;
      }
      case NodeKind::Implies: {
        const Tv3 l = eval(f.lhs());
        v = l == Tv3::False ? Tv3::True : implies3(l, eval(f.rhs()));
        break;
      }
      case NodeKind::Iff: v = iff3(eval(f.lhs()), eval(f.rhs())); break;
    }
    memo_.emplace(f.id(), v);
    return v;
  }

 private:
  const Assignment& a_;
  std::unordered_map<std::uint32_t, Tv3> memo_;
};

}  // namespace

Tv3 eval3(Formula f, const Assignment& a) { return Evaluator(a).eval(f); }

// --- residuals --------------------------------------------------------------

namespace {

class Residualizer {
 public:
  Residualizer(const Assignment& a, bool extended) : a_(a), extended_(extended) {}

  Formula run(Formula f) {
    if (auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    const Formula out = compute(f);
    memo_.emplace(f.id(), out);
    return out;
  }

 private:
  Formula negate(FormulaArena& ar, Formula x) {
    if (x.is_true()) return ar.bottom();
    if (x.is_false()) return ar.top();
    return ar.make_not(x);
  }

  Formula compute(Formula f) {
    FormulaArena& ar = f.arena();
    switch (f.kind()) {
      case NodeKind::True:
      case NodeKind::False: return f;
      case NodeKind::Atom: {
        const auto v = a_.value(f.atom());
        return v ? ar.constant(*v) : f;
      }
      case NodeKind::Not: {
        const Formula c = run(f.operand());
        if (c == f.operand() && !c.is_constant()) return f;
        return negate(ar, c);
      }
      default: break;
    }
    const Formula l = run(f.lhs());
    const Formula r = run(f.rhs());
    switch (f.kind()) {
      case NodeKind::And:
        if (l.is_true()) return r;
        if (r.is_true()) return l;
        if (l.is_false() || r.is_false()) return ar.bottom();
        break;
      case NodeKind::Or:
        if (l.is_true() || r.is_true()) return ar.top();
        if (l.is_false()) return r;
        if (r.is_false()) return l;
        if (extended_ && l.is_literal() && r.is_literal() && l.as_literal() == r.as_literal().negated())
          return ar.top();
        break;
      case NodeKind::Implies:
        if (l.is_true()) return r;
        if (l.is_false()) return ar.top();
        if (r.is_true()) return ar.top();
        if (r.is_false()) return negate(ar, l);
        break;
      case NodeKind::Iff:
        if (l.is_true()) return r;
        if (r.is_true()) return l;
        if (l.is_false()) return negate(ar, r);
        if (r.is_false()) return negate(ar, l);
        break;
      default: break;
    }
    if (l == f.lhs() && r == f.rhs()) return f;
    return ar.make_binary(f.kind(), l, r);
  }

  const Assignment& a_;
  bool extended_;
  std::unordered_map<std::uint32_t, Formula> memo_;
};

}  // namespace

Formula residual(Formula f, const Assignment& a) { return Residualizer(a, false).run(f); }

Formula residual_extended(Formula f, const Assignment& a) { return Residualizer(a, true).run(f); }

// --- extensions and cubes ---------------------------------------------------

void for_each_extension(const Assignment& a, const AtomSet& over,
                        const std::function<bool(const Assignment&)>& visit) {
  for (Literal l : a)
    if (!over.contains(l.atom)) throw std::invalid_argument("assignment maps an atom outside the extension set");
  std::vector<AtomId> free;
  for (AtomId x : over)
    if (!a.assigns(x)) free.push_back(x);
  if (free.size() >= 63) throw BoundError("too many unassigned atoms to enumerate extensions");
  const std::uint64_t n = std::uint64_t{1} << free.size();
  for (std::uint64_t code = 0; code < n; ++code) {
    Assignment ext = a;
    for (std::size_t i = 0; i < free.size(); ++i) {
      // bit for the lowest free atom is the most significant; 0 means true
      const bool bit = (code >> (free.size() - 1 - i)) & 1U;
      ext.assign(free[i], !bit);
    }
    if (!visit(ext)) return;
  }
}

std::vector<Assignment> extensions(const Assignment& a, const AtomSet& over) {
  std::vector<Assignment> out;
  for_each_extension(a, over, [&](const Assignment& e) {
    out.push_back(e);
    return true;
  });
  return out;
}

Formula cube_of(const Assignment& a, FormulaArena& arena) {
  if (a.empty()) throw std::invalid_argument("empty cube");
  std::vector<Formula> lits;
  lits.reserve(a.size());
  for (Literal l : a) lits.push_back(arena.literal(l));
  return arena.conjunction(lits);
}

Assignment parse_assignment(std::string_view text, AtomTable& table) {
  Assignment out;
  std::size_t i = 0;
  std::size_t column = 1;
  auto is_sep = [](char c) { return c == ',' || std::isspace(static_cast<unsigned char>(c)); };
  while (i < text.size()) {
    if (is_sep(text[i])) {
      ++i;
      ++column;
      continue;
    }
    const std::size_t start_col = column;
    bool positive = true;
    while (i < text.size() && (text[i] == '-' || text[i] == '!' || text[i] == '~')) {
      positive = !positive;
      ++i;
      ++column;
    }
    const std::size_t start = i;
    while (i < text.size() && !is_sep(text[i])) {
      ++i;
      ++column;
    }
    const auto name = text.substr(start, i - start);
    if (!AtomTable::valid_name(name))
      throw ParseError("invalid atom name '" + std::string(name) + "'", 1, start_col);
    const AtomId id = table.declare(name);
    if (out.value(id) == !positive)
      throw ParseError("atom '" + std::string(name) + "' assigned both ways", 1, start_col);
    out.assign(id, positive);
  }
  return out;
}

std::string to_string(const Assignment& a, const AtomTable& table) {
  std::string out;
  for (Literal l : a) {
    if (!out.empty()) out += ' ';
    if (!l.positive) out += '-';
    out += table.name(l.atom);
  }
  return out;
}

}  // namespace psat
