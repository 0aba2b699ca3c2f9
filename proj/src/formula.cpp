#include "psat/formula.hpp"

#include <cctype>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "psat/error.hpp"

namespace psat {

// --- AtomTable --------------------------------------------------------------

bool AtomTable::valid_name(std::string_view name) {
  if (name.empty() || name == "true" || name == "false") return false;
  const auto c0 = static_cast<unsigned char>(name.front());
  if (!std::isalpha(c0) && c0 != '_') return false;
  for (char ch : name) {
    const auto c = static_cast<unsigned char>(ch);
    if (!std::isalnum(c) && c != '_') return false;
  }
  return true;
}

AtomId AtomTable::declare(std::string_view name) {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  if (!valid_name(name)) throw std::invalid_argument("invalid atom name '" + std::string(name) + "'");
  const auto id = static_cast<AtomId>(names_.size());
  names_.emplace_back(name);
  fresh_.push_back(false);
  ids_.emplace(std::string(name), id);
  return id;
}

std::optional<AtomId> AtomTable::find(std::string_view name) const {
  if (auto it = ids_.find(std::string(name)); it != ids_.end()) return it->second;
  return std::nullopt;
}

const std::string& AtomTable::name(AtomId id) const {
  if (id >= names_.size()) throw std::out_of_range("unknown atom id " + std::to_string(id));
  return names_[id];
}

bool AtomTable::is_fresh(AtomId id) const { return id < fresh_.size() && fresh_[id]; }

AtomId AtomTable::fresh_label(std::size_t k) {
  while (pool_.size() <= k) {
    std::string name;
    do {
      name = "_B" + std::to_string(next_label_suffix_++);
    } while (ids_.contains(name));
    const AtomId id = declare(name);
    fresh_[id] = true;
    pool_.push_back(id);
  }
  return pool_[k];
}

// --- Formula ----------------------------------------------------------------

NodeKind Formula::kind() const { return arena_->nodes_.at(id_).kind; }

AtomId Formula::atom() const {
  const auto& n = arena_->nodes_.at(id_);
  if (n.kind != NodeKind::Atom) throw std::logic_error("Formula::atom on a non-atom node");
  return n.a;
}

Formula Formula::operand() const {
  const auto& n = arena_->nodes_.at(id_);
  if (n.kind != NodeKind::Not) throw std::logic_error("Formula::operand on a non-negation");
  return {arena_, n.a};
}

Formula Formula::lhs() const {
  const auto& n = arena_->nodes_.at(id_);
  if (!is_binary(n.kind)) throw std::logic_error("Formula::lhs on a non-binary node");
  return {arena_, n.a};
}

Formula Formula::rhs() const {
  const auto& n = arena_->nodes_.at(id_);
  if (!is_binary(n.kind)) throw std::logic_error("Formula::rhs on a non-binary node");
  return {arena_, n.b};
}

bool Formula::is_literal() const {
  const auto k = kind();
  return k == NodeKind::Atom || (k == NodeKind::Not && operand().is_atom());
}

Literal Formula::as_literal() const {
  if (is_atom()) return pos(atom());
  if (kind() == NodeKind::Not && operand().is_atom()) return neg(operand().atom());
  throw std::logic_error("Formula::as_literal on a non-literal");
}

// --- FormulaArena -----------------------------------------------------------

std::size_t FormulaArena::NodeHash::operator()(const Node& n) const noexcept {
  std::size_t h = static_cast<std::size_t>(n.kind);
  h = h * 0x9E3779B97F4A7C15ULL + n.a;
  h = h * 0x9E3779B97F4A7C15ULL + n.b;
  return h ^ (h >> 29);
}

FormulaArena::FormulaArena() {
  intern({NodeKind::False, 0, 0});
  intern({NodeKind::True, 0, 0});
}

Formula FormulaArena::intern(Node n) {
  if (auto it = index_.find(n); it != index_.end()) return {this, it->second};
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(n);
  index_.emplace(n, id);
  return {this, id};
}

void FormulaArena::check_owned(Formula f) const {
  if (f.arena_ != this) throw std::invalid_argument("formula belongs to a different arena");
}

Formula FormulaArena::atom(AtomId id) {
  if (id >= atoms_.size()) throw std::out_of_range("unknown atom id");
  return intern({NodeKind::Atom, id, 0});
}

Formula FormulaArena::make_not(Formula f) {
  check_owned(f);
  return intern({NodeKind::Not, f.id_, 0});
}

Formula FormulaArena::make_binary(NodeKind kind, Formula l, Formula r) {
  if (!is_binary(kind)) throw std::invalid_argument("make_binary needs a binary connective");
  check_owned(l);
  check_owned(r);
  return intern({kind, l.id_, r.id_});
}

Formula FormulaArena::conjunction(std::span<const Formula> items) {
  if (items.empty()) return top();
  Formula acc = items.front();
  for (auto f : items.subspan(1)) acc = make_and(acc, f);
  return acc;
}

Formula FormulaArena::disjunction(std::span<const Formula> items) {
  if (items.empty()) return bottom();
  Formula acc = items.front();
  for (auto f : items.subspan(1)) acc = make_or(acc, f);
  return acc;
}

AtomSet QuantifiedFormula::free_atoms() const {
  AtomSet out;
  for (AtomId a : atoms(matrix))
    if (!bound.contains(a)) out.insert(a);
  return out;
}

// --- parser -----------------------------------------------------------------

namespace {

enum class Tok { Ident, True, False, Not, And, Or, Implies, Iff, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string_view text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  Token next() {
    skip_blank();
    const std::size_t line = line_, col = col_;
    if (pos_ >= text_.size()) return {Tok::End, {}, line, col};
    const char c = text_[pos_];
    auto single = [&](Tok t) {
      advance(1);
      return Token{t, text_.substr(pos_ - 1, 1), line, col};
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '!':
      case '~': return single(Tok::Not);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      default: break;
    }
    if (text_.substr(pos_, 2) == "->") {
      advance(2);
      return {Tok::Implies, "->", line, col};
    }
    if (text_.substr(pos_, 3) == "<->") {
      advance(3);
      return {Tok::Iff, "<->", line, col};
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        advance(1);
      const auto word = text_.substr(start, pos_ - start);
      if (word == "true") return {Tok::True, word, line, col};
      if (word == "false") return {Tok::False, word, line, col};
      return {Tok::Ident, word, line, col};
    }
    throw ParseError(std::string("unknown character '") + c + "'", line, col);
  }

 private:
  void advance(std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
      if (text_[pos_] == '\n') {
        ++line_;
        col_ = 1;
      } else {
        ++col_;
      }
      ++pos_;
    }
  }

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance(1);
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
      } else {
        break;
      }
    }
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "token";
}

class Parser {
 public:
  Parser(std::string_view text, FormulaArena& arena) : lexer_(text), arena_(arena) { shift(); }

  Formula parse_all() {
    Formula f = parse_iff();
    if (look_.kind != Tok::End) fail("unexpected " + std::string(describe(look_.kind)));
    return f;
  }

 private:
  void shift() { look_ = lexer_.next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, look_.line, look_.column); }

  Formula parse_iff() {
    Formula l = parse_implies();
    while (look_.kind == Tok::Iff) {
      shift();
      l = arena_.make_iff(l, parse_implies());
    }
    return l;
  }

  Formula parse_implies() {
    Formula l = parse_or();
    if (look_.kind == Tok::Implies) {
      shift();
      return arena_.make_implies(l, parse_implies());
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (look_.kind == Tok::Or) {
      shift();
      l = arena_.make_or(l, parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (look_.kind == Tok::And) {
      shift();
      l = arena_.make_and(l, parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    if (look_.kind == Tok::Not) {
      shift();
      return arena_.make_not(parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    switch (look_.kind) {
      case Tok::True: shift(); return arena_.top();
      case Tok::False: shift(); return arena_.bottom();
      case Tok::Ident: {
        Formula a = arena_.atom(look_.text);
        shift();
        return a;
      }
      case Tok::LParen: {
        shift();
        Formula inner = parse_iff();
        if (look_.kind != Tok::RParen) fail("expected ')' but found " + std::string(describe(look_.kind)));
        shift();
        return inner;
      }
      default: fail("expected a formula but found " + std::string(describe(look_.kind)));
    }
  }

  Lexer lexer_;
  FormulaArena& arena_;
  Token look_{Tok::End, {}, 1, 1};
};

// Binding strength used by the printer; higher binds tighter.
int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Iff: return 1;
    case NodeKind::Implies: return 2;
    case NodeKind::Or: return 3;
    case NodeKind::And: return 4;
    case NodeKind::Not: return 5;
    default: return 6;
  }
}

std::string_view symbol(NodeKind k) {
  switch (k) {
    case NodeKind::And: return " & ";
    case NodeKind::Or: return " | ";
    case NodeKind::Implies: return " -> ";
    case NodeKind::Iff: return " <-> ";
    default: return "";
  }
}

void print(Formula f, std::string& out) {
  switch (f.kind()) {
    case NodeKind::True: out += "true"; return;
    case NodeKind::False: out += "false"; return;
    case NodeKind::Atom: out += f.arena().atoms().name(f.atom()); return;
    case NodeKind::Not: {
      out += '!';
      const Formula c = f.operand();
      const bool paren = precedence(c.kind()) < precedence(NodeKind::Not);
      if (paren) out += '(';
      print(c, out);
      if (paren) out += ')';
      return;
    }
    default: break;
  }
  const NodeKind k = f.kind();
  const int p = precedence(k);
  const bool right_assoc = k == NodeKind::Implies;
  const Formula l = f.lhs(), r = f.rhs();
  const int pl = precedence(l.kind()), pr = precedence(r.kind());
  const bool paren_l = pl < p || (pl == p && right_assoc);
  const bool paren_r = pr < p || (pr == p && !right_assoc);
  if (paren_l) out += '(';
  print(l, out);
  if (paren_l) out += ')';
  out += symbol(k);
  if (paren_r) out += '(';
  print(r, out);
  if (paren_r) out += ')';
}

}  // namespace

Formula parse(std::string_view text, FormulaArena& arena) { return Parser(text, arena).parse_all(); }

std::string to_string(Formula f) {
  std::string out;
  print(f, out);
  return out;
}

// --- traversals -------------------------------------------------------------

namespace {

template <typename Visit>
void for_each_node(Formula root, Visit&& visit) {
  std::unordered_set<std::uint32_t> seen;
  std::vector<Formula> stack{root};
  while (!stack.empty()) {
    Formula f = stack.back();
    stack.pop_back();
    if (!seen.insert(f.id()).second) continue;
    visit(f);
    const NodeKind k = f.kind();
    if (k == NodeKind::Not) {
      stack.push_back(f.operand());
    } else if (is_binary(k)) {
      stack.push_back(f.rhs());
      stack.push_back(f.lhs());
    }
  }
}

}  // namespace

AtomSet atoms(Formula f) {
  AtomSet out;
  for_each_node(f, [&](Formula g) {
    if (g.is_atom()) out.insert(g.atom());
  });
  return out;
}

std::size_t count_binary_nodes(Formula f) {
  std::size_t n = 0;
  for_each_node(f, [&](Formula g) {
    if (is_binary(g.kind())) ++n;
  });
  return n;
}

namespace {

class NnfBuilder {
 public:
  explicit NnfBuilder(FormulaArena& arena) : arena_(arena) {}

  Formula build(Formula f, bool positive) {
    const std::uint64_t key = (std::uint64_t{f.id()} << 1) | (positive ? 1U : 0U);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Formula out = compute(f, positive);
    memo_.emplace(key, out);
    return out;
  }

 private:
  Formula compute(Formula f, bool positive) {
    switch (f.kind()) {
      case NodeKind::True: return arena_.constant(positive);
      case NodeKind::False: return arena_.constant(!positive);
      case NodeKind::Atom: return positive ? f : arena_.make_not(f);
      case NodeKind::Not: return build(f.operand(), !positive);
      case NodeKind::And:
        return positive ? arena_.make_and(build(f.lhs(), true), build(f.rhs(), true))
                        : arena_.make_or(build(f.lhs(), false), build(f.rhs(), false));
      case NodeKind::Or:
        return positive ? arena_.make_or(build(f.lhs(), true), build(f.rhs(), true))
                        : arena_.make_and(build(f.lhs(), false), build(f.rhs(), false));
      case NodeKind::Implies:
        return positive ? arena_.make_or(build(f.lhs(), false), build(f.rhs(), true))
                        : arena_.make_and(build(f.lhs(), true), build(f.rhs(), false));
      case NodeKind::Iff: {
        const Formula lp = build(f.lhs(), true), ln = build(f.lhs(), false);
        const Formula rp = build(f.rhs(), true), rn = build(f.rhs(), false);
        return positive ? arena_.make_or(arena_.make_and(lp, rp), arena_.make_and(ln, rn))
                        : arena_.make_or(arena_.make_and(lp, rn), arena_.make_and(ln, rp));
      }
    }
    throw std::logic_error("unreachable node kind");
  }

  FormulaArena& arena_;
  std::unordered_map<std::uint64_t, Formula> memo_;
};

}  // namespace

Formula nnf(Formula f) { return NnfBuilder(f.arena()).build(f, true); }

}  // namespace psat
