#include "wb/logic.hpp"

#include <algorithm>
#include <cctype>
#include <vector>

#include "wb/error.hpp"

namespace wb {

struct Formula::Node {
  FormulaKind kind;
  int i = 0, j = 0, p = 0, q = 0;
  std::shared_ptr<const Node> a, b;
  VarSet vars = 0, free = 0;
  int min_delta = 1;
  int nodes = 1;
};

namespace {

void check_var(int i, const Limits& lim) {
  if (i < 1 || i > lim.var_index_max)
    throw InputError("formula: variable index Z" + std::to_string(i) + " out of 1.." +
                     std::to_string(lim.var_index_max));
}

std::string vars_to_string(VarSet s) {
  std::string out;
  for (int i = 1; i <= 64; ++i)
    if (s & var_bit(i)) {
      if (!out.empty()) out += ",";
      out += "Z" + std::to_string(i);
    }
  return out;
}

} // namespace

FormulaKind Formula::kind() const { return node_->kind; }
VarSet Formula::vars() const { return node_->vars; }
VarSet Formula::free() const { return node_->free; }
int Formula::min_delta() const { return node_->min_delta; }
int Formula::node_count() const { return node_->nodes; }
int Formula::var_i() const { return node_->i; }
int Formula::var_j() const { return node_->j; }
int Formula::count_p() const { return node_->p; }
int Formula::count_q() const { return node_->q; }
int Formula::quantified() const { return node_->i; }

Formula Formula::child() const { return Formula(node_->a); }
Formula Formula::left() const { return Formula(node_->a); }
Formula Formula::right() const { return Formula(node_->b); }

Formula Formula::subset(int i, int j, const Limits& lim) {
  check_var(i, lim);
  check_var(j, lim);
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Subset;
  n->i = i;
  n->j = j;
  n->vars = n->free = var_bit(i) | var_bit(j);
  return Formula(std::move(n));
}

Formula Formula::hyp(int i, const Limits& lim) {
  check_var(i, lim);
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Hyp;
  n->i = i;
  n->vars = n->free = var_bit(i);
  return Formula(std::move(n));
}

Formula Formula::count(int i, int p, int q, const Limits& lim) {
  check_var(i, lim);
  if (q <= 1 || p < 0 || p >= q)
    throw InputError("formula: counting atom needs q > 1 and 0 <= p < q");
  if (q > lim.delta_max) throw BudgetError("formula: modulus above the confinement cap");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Count;
  n->i = i;
  n->p = p;
  n->q = q;
  n->vars = n->free = var_bit(i);
  n->min_delta = q;
  return Formula(std::move(n));
}

Formula Formula::negation(Formula f, const Limits& lim) {
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Not;
  n->vars = f.vars();
  n->free = f.free();
  n->min_delta = f.min_delta();
  n->nodes = f.node_count() + 1;
  if (n->nodes > lim.formula_nodes_max) throw BudgetError("formula: node cap exceeded");
  n->a = f.node_;
  return Formula(std::move(n));
}

Formula Formula::conjunction(Formula a, Formula b, const Limits& lim) {
  VarSet clash_a = (a.vars() & ~a.free()) & b.free();
  VarSet clash_b = (b.vars() & ~b.free()) & a.free();
  if (clash_a || clash_b) {
    VarSet clash = clash_a | clash_b;
    throw InputError("formula: conjunction clash, bound variable(s) " + vars_to_string(clash) +
                     " of one side occur free in the other; rename the bound occurrence "
                     "to an unused index");
  }
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::And;
  n->vars = a.vars() | b.vars();
  n->free = a.free() | b.free();
  n->min_delta = std::max(a.min_delta(), b.min_delta());
  n->nodes = a.node_count() + b.node_count() + 1;
  if (n->nodes > lim.formula_nodes_max) throw BudgetError("formula: node cap exceeded");
  n->a = a.node_;
  n->b = b.node_;
  return Formula(std::move(n));
}

Formula Formula::exists(int s, Formula f, const Limits& lim) {
  check_var(s, lim);
  if (!(f.free() & var_bit(s)))
    throw InputError("formula: exists Z" + std::to_string(s) + " needs Z" + std::to_string(s) +
                     " free in the body (free: " + vars_to_string(f.free()) + ")");
  auto n = std::make_shared<Node>();
  n->kind = FormulaKind::Exists;
  n->i = s;
  n->vars = f.vars();
  n->free = f.free() & ~var_bit(s);
  n->min_delta = f.min_delta();
  n->nodes = f.node_count() + 1;
  if (n->nodes > lim.formula_nodes_max) throw BudgetError("formula: node cap exceeded");
  n->a = f.node_;
  return Formula(std::move(n));
}

std::string Formula::to_string() const {
  switch (kind()) {
    case FormulaKind::Subset:
      return "Z" + std::to_string(var_i()) + " <= Z" + std::to_string(var_j());
    case FormulaKind::Hyp:
      return "hyp(Z" + std::to_string(var_i()) + ")";
    case FormulaKind::Count:
      return "|Z" + std::to_string(var_i()) + "| = " + std::to_string(count_p()) + " mod " +
             std::to_string(count_q());
    case FormulaKind::Not:
      return "~(" + Formula(node_->a).to_string() + ")";
    case FormulaKind::And:
      return "(" + Formula(node_->a).to_string() + ") & (" + Formula(node_->b).to_string() + ")";
    case FormulaKind::Exists:
      return "exists Z" + std::to_string(var_i()) + " (" + Formula(node_->a).to_string() + ")";
  }
  return {};
}

namespace {

Interpretation restrict_to(const Interpretation& theta, VarSet dom) {
  Interpretation out;
  for (auto [v, m] : theta)
    if (dom & var_bit(v)) out[v] = m;
  return out;
}

bool sat(const Hypergraph& h, const Formula& f, const Interpretation& theta) {
  switch (f.kind()) {
    case FormulaKind::Subset: {
      Mask a = theta.at(f.var_i()), b = theta.at(f.var_j());
      return (a & ~b) == 0;
    }
    case FormulaKind::Hyp:
      return h.contains(theta.at(f.var_i()));
    case FormulaKind::Count:
      return popcount(theta.at(f.var_i())) % f.count_q() == f.count_p();
    case FormulaKind::Not:
      return !sat(h, f.child(), theta);
    case FormulaKind::And: {
      Formula l = f.left(), r = f.right();
      return sat(h, l, restrict_to(theta, l.free())) && sat(h, r, restrict_to(theta, r.free()));
    }
    case FormulaKind::Exists: {
      Formula body = f.child();
      Mask full = h.full_mask();
      for (Mask x = 0;; ++x) {
        Interpretation ext = theta;
        ext[f.quantified()] = x;
        if (sat(h, body, ext)) return true;
        if (x == full) break;
      }
      return false;
    }
  }
  return false;
}

} // namespace

bool satisfies(const Hypergraph& h, const Formula& f, const Interpretation& theta) {
  VarSet dom = 0;
  for (auto [v, m] : theta) {
    dom |= var_bit(v);
    if (m & ~h.full_mask()) throw InputError("satisfies: interpretation leaves the ground set");
  }
  if (dom != f.free())
    throw InputError("satisfies: interpretation domain must be exactly the free variables");
  return sat(h, f, theta);
}

// ---------------------------------------------------------------------------
// parsing

namespace {

struct Token {
  enum Kind { Exists, Not, AndOp, LParen, RParen, Bar, SubsetOp, Eq, Mod, Hyp, Var, Number, End };
  Kind kind;
  std::string text;
  int value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  std::size_t pos = 0;
  int line = 1, col = 1;

  [[noreturn]] void fail(const std::string& msg) const {
    throw InputError("formula:" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg);
  }

  void advance(std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (pos < src.size() && src[pos] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++pos;
    }
  }

  std::vector<Token> run() {
    std::vector<Token> out;
    while (pos < src.size()) {
      char c = src[pos];
      if (c == '#') {
        while (pos < src.size() && src[pos] != '\n') advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance(1);
        continue;
      }
      int tl = line, tc = col;
      auto push = [&](Token::Kind k, std::string text, int value = 0) {
        out.push_back(Token{k, std::move(text), value, tl, tc});
      };
      if (c == '~') {
        push(Token::Not, "~");
        advance(1);
      } else if (c == '&') {
        push(Token::AndOp, "&");
        advance(1);
      } else if (c == '(') {
        push(Token::LParen, "(");
        advance(1);
      } else if (c == ')') {
        push(Token::RParen, ")");
        advance(1);
      } else if (c == '|') {
        push(Token::Bar, "|");
        advance(1);
      } else if (c == '=') {
        push(Token::Eq, "=");
        advance(1);
      } else if (c == '<') {
        if (pos + 1 >= src.size() || src[pos + 1] != '=') fail("expected <=");
        push(Token::SubsetOp, "<=");
        advance(2);
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t end = pos;
        while (end < src.size() && std::isdigit(static_cast<unsigned char>(src[end]))) ++end;
        std::string text = src.substr(pos, end - pos);
        push(Token::Number, text, std::stoi(text));
        advance(end - pos);
      } else if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t end = pos;
        while (end < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[end])) || src[end] == '_'))
          ++end;
        std::string word = src.substr(pos, end - pos);
        if (word == "exists")
          push(Token::Exists, word);
        else if (word == "mod")
          push(Token::Mod, word);
        else if (word == "hyp")
          push(Token::Hyp, word);
        else if (word.size() > 1 && word[0] == 'Z' &&
                 std::all_of(word.begin() + 1, word.end(),
                             [](char d) { return std::isdigit(static_cast<unsigned char>(d)); }))
          push(Token::Var, word, std::stoi(word.substr(1)));
        else
          fail("unknown word '" + word + "'");
        advance(end - pos);
      } else {
        fail(std::string("unexpected character '") + c + "'");
      }
    }
    out.push_back(Token{Token::End, "", 0, line, col});
    return out;
  }
};

struct Parser {
  std::vector<Token> toks;
  std::size_t at = 0;
  const Limits& lim;

  const Token& peek() const { return toks[at]; }
  Token take() { return toks[at++]; }

  [[noreturn]] void fail(const Token& t, const std::string& msg) const {
    throw InputError("formula:" + std::to_string(t.line) + ":" + std::to_string(t.col) + ": " + msg);
  }

  Token expect(Token::Kind k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what + ", found '" + peek().text + "'");
    return take();
  }

  // wraps factory errors with the position of the construct
  template <typename Fn>
  Formula build(const Token& t, Fn&& fn) {
    try {
      return fn();
    } catch (const InputError& e) {
      throw InputError("formula:" + std::to_string(t.line) + ":" + std::to_string(t.col) + ": " +
                       e.what());
    }
  }

  Formula parse_formula() {
    if (peek().kind == Token::Exists) {
      Token kw = take();
      Token var = expect(Token::Var, "a variable after exists");
      Formula body = parse_formula(); // exists scopes maximally rightward
      return build(kw, [&] { return Formula::exists(var.value, body, lim); });
    }
    Formula acc = parse_unary();
    while (peek().kind == Token::AndOp) {
      Token op = take();
      if (peek().kind == Token::Exists) {
        Formula rhs = parse_formula();
        return build(op, [&] { return Formula::conjunction(acc, rhs, lim); });
      }
      Formula rhs = parse_unary();
      acc = build(op, [&] { return Formula::conjunction(acc, rhs, lim); });
    }
    return acc;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Token::Not: {
        Token op = take();
        Formula f = parse_unary();
        return build(op, [&] { return Formula::negation(f, lim); });
      }
      case Token::LParen: {
        take();
        Formula f = parse_formula();
        expect(Token::RParen, "')'");
        return f;
      }
      case Token::Hyp: {
        Token kw = take();
        expect(Token::LParen, "'('");
        Token var = expect(Token::Var, "a variable");
        expect(Token::RParen, "')'");
        return build(kw, [&] { return Formula::hyp(var.value, lim); });
      }
      case Token::Bar: {
        Token bar = take();
        Token var = expect(Token::Var, "a variable");
        expect(Token::Bar, "'|'");
        expect(Token::Eq, "'='");
        Token p = expect(Token::Number, "a residue");
        expect(Token::Mod, "'mod'");
        Token q = expect(Token::Number, "a modulus");
        return build(bar, [&] { return Formula::count(var.value, p.value, q.value, lim); });
      }
      case Token::Var: {
        Token a = take();
        expect(Token::SubsetOp, "'<='");
        Token b = expect(Token::Var, "a variable");
        return build(a, [&] { return Formula::subset(a.value, b.value, lim); });
      }
      default:
        fail(peek(), "expected a formula, found '" + peek().text + "'");
    }
  }
};

} // namespace

Formula parse_formula(const std::string& text, const Limits& lim) {
  Lexer lexer{text};
  Parser parser{lexer.run(), 0, lim};
  Formula f = parser.parse_formula();
  if (parser.peek().kind != Token::End)
    parser.fail(parser.peek(), "trailing input '" + parser.peek().text + "'");
  return f;
}

BigInt lambda_bound(const Formula& f, int s, int t, int delta, const Limits& lim) {
  if (delta < 1 || delta > lim.delta_max) throw InputError("lambda_bound: delta out of range");
  if (!f.delta_confined(delta))
    throw InputError("lambda_bound: formula is not " + std::to_string(delta) + "-confined");
  if (s < popcount(f.vars())) throw InputError("lambda_bound: s must cover Var(formula)");
  if (t < 1) throw InputError("lambda_bound: t must be positive");

  BigInt dfact = 1;
  for (int k = 2; k <= delta; ++k) dfact *= k;

  auto rec = [&](auto&& self, const Formula& g) -> BigInt {
    switch (g.kind()) {
      case FormulaKind::Count:
        return boost::multiprecision::pow(dfact, static_cast<unsigned>(s));
      case FormulaKind::Hyp:
        return boost::multiprecision::pow(BigInt(t), static_cast<unsigned>(s));
      case FormulaKind::Subset:
        return boost::multiprecision::pow(BigInt(2), static_cast<unsigned>(s * s));
      case FormulaKind::Not:
        return self(self, g.child());
      case FormulaKind::And:
        return self(self, g.left()) * self(self, g.right());
      case FormulaKind::Exists: {
        BigInt inner = self(self, g.child());
        if (inner > BigInt(lim.lambda_bits_max))
          throw BudgetError("lambda_bound: exponent exceeds the bit cap");
        return boost::multiprecision::pow(BigInt(2), inner.convert_to<unsigned>());
      }
    }
    return BigInt(0);
  };
  return rec(rec, f);
}

} // namespace wb
