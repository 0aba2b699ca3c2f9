#include "psat/cnf.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "psat/assignment.hpp"

namespace psat {

namespace {

enum Polarity : std::uint8_t { kPositive = 1, kNegative = 2, kBoth = 3 };

std::uint8_t flip(std::uint8_t p) {
  return static_cast<std::uint8_t>(((p & kPositive) ? kNegative : 0) | ((p & kNegative) ? kPositive : 0));
}

class Encoder {
 public:
  Encoder(Formula f, bool polarity_aware, const AtomSet& avoid)
      : arena_(f.arena()), polarity_aware_(polarity_aware), avoid_(avoid) {
    const AtomSet in_f = atoms(f);
    avoid_.insert(in_f.begin(), in_f.end());
    out_.original_atoms = in_f;
  }

  CnfFormula run(Formula f) {
    const Formula g = residual(f, Assignment{});
    if (g.is_false()) {
      out_.clauses.emplace_back();
      return std::move(out_);
    }
    if (g.is_true()) return std::move(out_);

    std::vector<Formula> conjuncts;
    flatten(g, NodeKind::And, conjuncts);
    for (Formula c : conjuncts) {
      std::vector<Formula> disjuncts;
      flatten(c, NodeKind::Or, disjuncts);
      Clause clause;
      for (Formula d : disjuncts) push_unique(clause, literal_for(d, kPositive));
      out_.clauses.push_back(std::move(clause));
    }
    for (std::uint32_t node : label_order_) define(node);
    return std::move(out_);
  }

 private:
  struct Label {
    AtomId atom;
    NodeKind kind;
    Literal lhs;
    Literal rhs;
    std::uint8_t polarity;
  };

  static void flatten(Formula f, NodeKind k, std::vector<Formula>& out) {
    if (f.kind() == k) {
      flatten(f.lhs(), k, out);
      flatten(f.rhs(), k, out);
    } else {
      out.push_back(f);
    }
  }

  static void push_unique(Clause& c, Literal l) {
    if (std::find(c.begin(), c.end(), l) == c.end()) c.push_back(l);
  }

  AtomId next_label() {
    for (;;) {
      const AtomId a = arena_.atoms().fresh_label(pool_index_++);
      if (!avoid_.contains(a)) return a;
    }
  }

  Literal literal_for(Formula g, std::uint8_t polarity) {
    switch (g.kind()) {
      case NodeKind::Atom: return pos(g.atom());
      case NodeKind::Not: return literal_for(g.operand(), flip(polarity)).negated();
      case NodeKind::True:
      case NodeKind::False: throw std::logic_error("constant survived residual simplification");
      default: break;
    }
    auto it = labels_.find(g.id());
    if (it != labels_.end() && (it->second.polarity | polarity) == it->second.polarity)
      return pos(it->second.atom);

    std::uint8_t seen = polarity;
    if (it != labels_.end()) seen |= it->second.polarity;
    std::uint8_t pl = seen, pr = seen;
    if (g.kind() == NodeKind::Implies) pl = flip(seen);
    if (g.kind() == NodeKind::Iff) pl = pr = kBoth;
    const Literal l = literal_for(g.lhs(), pl);
    const Literal r = literal_for(g.rhs(), pr);

    it = labels_.find(g.id());
    if (it == labels_.end()) {
      // children first, so definition atoms are numbered bottom-up
      it = labels_.emplace(g.id(), Label{next_label(), g.kind(), l, r, seen}).first;
      label_order_.push_back(g.id());
      out_.fresh_atoms.insert(it->second.atom);
    } else {
      it->second.polarity |= seen;
    }
    return pos(it->second.atom);
  }

  void define(std::uint32_t node) {
    const Label& lab = labels_.at(node);
    const NodeKind kind = lab.kind;
    const Literal b = pos(lab.atom);
    const Literal nb = b.negated();
    const Literal l = lab.lhs, r = lab.rhs;
    const bool fwd = !polarity_aware_ || (lab.polarity & kPositive);
    const bool bwd = !polarity_aware_ || (lab.polarity & kNegative);
    auto emit = [&](Clause c) { out_.clauses.push_back(std::move(c)); };
    switch (kind) {
      case NodeKind::And:
        if (fwd) {
          emit({nb, l});
          emit({nb, r});
        }
        if (bwd) emit({b, l.negated(), r.negated()});
        break;
      case NodeKind::Or:
        if (fwd) emit({nb, l, r});
        if (bwd) {
          emit({b, l.negated()});
          emit({b, r.negated()});
        }
        break;
      case NodeKind::Implies:
        if (fwd) emit({nb, l.negated(), r});
        if (bwd) {
          emit({b, l});
          emit({b, r.negated()});
        }
        break;
      case NodeKind::Iff:
        if (fwd) {
          emit({nb, l.negated(), r});
          emit({nb, l, r.negated()});
        }
        if (bwd) {
          emit({b, l, r});
          emit({b, l.negated(), r.negated()});
        }
        break;
      default: throw std::logic_error("labelled a non-binary node");
    }
  }

  FormulaArena& arena_;
  bool polarity_aware_;
  AtomSet avoid_;
  CnfFormula out_;
  std::size_t pool_index_ = 0;
  std::unordered_map<std::uint32_t, Label> labels_;
  std::vector<std::uint32_t> label_order_;
};

CnfFormula encode(Formula f, bool polarity_aware, const AtomSet& avoid) {
  return Encoder(f, polarity_aware, avoid).run(f);
}

}  // namespace

CnfFormula tseitin(Formula f, const AtomSet& avoid) { return encode(f, false, avoid); }

CnfFormula plaisted_greenbaum(Formula f, const AtomSet& avoid) { return encode(f, true, avoid); }

CnfFormula pg_nnf(Formula f, const AtomSet& avoid) {
  return plaisted_greenbaum(nnf(f), avoid);
}

CnfFormula cnfize(Formula f, CnfMethod method, const AtomSet& avoid) {
  switch (method) {
    case CnfMethod::Tseitin: return tseitin(f, avoid);
    case CnfMethod::PlaistedGreenbaum: return plaisted_greenbaum(f, avoid);
    case CnfMethod::PgNnf: return pg_nnf(f, avoid);
  }
  throw std::invalid_argument("unknown CNF method");
}

}  // namespace psat
