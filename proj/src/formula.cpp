#include "realiz/formula.hpp"

#include <cctype>
#include <functional>
#include <map>
#include <sstream>

#include "realiz/encodings.hpp"
#include "realiz/errors.hpp"

namespace realiz {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NumTerm make_num(decltype(NumNode::v) v) { return NumTerm(std::make_shared<const NumNode>(NumNode{std::move(v)})); }
FunTerm make_fun(decltype(FunNode::v) v) { return FunTerm(std::make_shared<const FunNode>(FunNode{std::move(v)})); }
Formula make_formula(decltype(FormulaNode::v) v) {
  return Formula(std::make_shared<const FormulaNode>(FormulaNode{std::move(v)}));
}

}  // namespace

// ---------------------------------------------------------------------------
// Builders

namespace mk {

NumTerm num_var(std::string name) { return make_num(ast::NumVar{std::move(name)}); }
NumTerm zero() {
  static const NumTerm z = make_num(ast::Zero{});
  return z;
}
NumTerm numeral(Nat k) {
  NumTerm t = zero();
  for (Nat i = 0; i < k; ++i) t = succ_of(t);
  return t;
}
NumTerm app(SymbolId symbol, std::vector<NumTerm> args) {
  const Symbol& s = SymbolTable::builtin().at(symbol);
  if (s.arity != args.size()) throw InvalidArgument("arity mismatch for symbol '" + s.name + "'");
  return make_num(ast::PrimRecApp{symbol, std::move(args)});
}
NumTerm app(std::string_view symbol, std::vector<NumTerm> args) {
  return app(SymbolTable::builtin().id(symbol), std::move(args));
}
NumTerm ev(FunTerm fun, NumTerm arg) { return make_num(ast::Eval{std::move(fun), std::move(arg)}); }
NumTerm succ_of(NumTerm t) { return ev(succ(), std::move(t)); }

FunTerm fun_var(std::string name) { return make_fun(ast::FunVar{std::move(name)}); }
FunTerm succ() {
  static const FunTerm s = make_fun(ast::Succ{});
  return s;
}
FunTerm lam(std::string var, NumTerm body) { return make_fun(ast::Lambda{std::move(var), std::move(body)}); }
FunTerm rec(NumTerm base, FunTerm step) { return make_fun(ast::Rec{std::move(base), std::move(step)}); }

Formula eq(NumTerm a, NumTerm b) { return make_formula(ast::Eq{std::move(a), std::move(b)}); }
Formula def_num(FunTerm f, FunTerm g) { return make_formula(ast::DefNum{std::move(f), std::move(g)}); }
Formula def_fun(FunTerm f, FunTerm g) { return make_formula(ast::DefFun{std::move(f), std::move(g)}); }
Formula conj(Formula a, Formula b) { return make_formula(ast::And{std::move(a), std::move(b)}); }
Formula imp(Formula a, Formula b) { return make_formula(ast::Imp{std::move(a), std::move(b)}); }
Formula disj(Formula a, Formula b) { return make_formula(ast::Or{std::move(a), std::move(b)}); }
Formula neg(Formula a) { return make_formula(ast::Not{std::move(a)}); }
Formula iff(Formula a, Formula b) { return make_formula(ast::Iff{std::move(a), std::move(b)}); }
Formula forall_num(std::string var, Formula body) { return make_formula(ast::ForallNum{std::move(var), std::move(body)}); }
Formula forall_fun(std::string var, Formula body) { return make_formula(ast::ForallFun{std::move(var), std::move(body)}); }
Formula exists_num(std::string var, Formula body) { return make_formula(ast::ExistsNum{std::move(var), std::move(body)}); }
Formula exists_fun(std::string var, Formula body) { return make_formula(ast::ExistsFun{std::move(var), std::move(body)}); }
Formula exists_num_bdd(std::string var, NumTerm bound, Formula body) {
  return make_formula(ast::ExistsNumBdd{std::move(var), std::move(bound), std::move(body)});
}
Formula exists_fun_bdd(std::string var, FunTerm bound, Formula body) {
  return make_formula(ast::ExistsFunBdd{std::move(var), std::move(bound), std::move(body)});
}

Formula falsum() { return eq(zero(), numeral(1)); }
Formula neq(NumTerm a, NumTerm b) { return imp(eq(std::move(a), std::move(b)), falsum()); }
Formula le(NumTerm a, NumTerm b) { return eq(app("sub", {std::move(a), std::move(b)}), zero()); }

}  // namespace mk

std::optional<Nat> numeral_value(const NumTerm& t) {
  Nat k = 0;
  const NumNode* n = &t.node();
  while (true) {
    if (std::holds_alternative<ast::Zero>(n->v)) return k;
    auto* e = std::get_if<ast::Eval>(&n->v);
    if (!e || !std::holds_alternative<ast::Succ>(e->fun.node().v)) return std::nullopt;
    ++k;
    n = &e->arg.node();
  }
}

// ---------------------------------------------------------------------------
// Structural and alpha equality

bool operator==(const NumTerm& a, const NumTerm& b) {
  if (a.same_node(b)) return true;
  return std::visit(
      overloaded{
          [&](const ast::NumVar& x) { auto* y = as<ast::NumVar>(b); return y && x.name == y->name; },
          [&](const ast::Zero&) { return as<ast::Zero>(b) != nullptr; },
          [&](const ast::PrimRecApp& x) {
            auto* y = as<ast::PrimRecApp>(b);
            return y && x.symbol == y->symbol && x.args == y->args;
          },
          [&](const ast::Eval& x) { auto* y = as<ast::Eval>(b); return y && x.fun == y->fun && x.arg == y->arg; },
      },
      a.node().v);
}

bool operator==(const FunTerm& a, const FunTerm& b) {
  if (a.same_node(b)) return true;
  return std::visit(
      overloaded{
          [&](const ast::FunVar& x) { auto* y = as<ast::FunVar>(b); return y && x.name == y->name; },
          [&](const ast::Succ&) { return as<ast::Succ>(b) != nullptr; },
          [&](const ast::Lambda& x) { auto* y = as<ast::Lambda>(b); return y && x.var == y->var && x.body == y->body; },
          [&](const ast::Rec& x) { auto* y = as<ast::Rec>(b); return y && x.base == y->base && x.step == y->step; },
      },
      a.node().v);
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.same_node(b)) return true;
  if (a.node().v.index() != b.node().v.index()) return false;
  return std::visit(
      overloaded{
          [&](const ast::Eq& x) { auto* y = as<ast::Eq>(b); return x.lhs == y->lhs && x.rhs == y->rhs; },
          [&](const ast::DefNum& x) { auto* y = as<ast::DefNum>(b); return x.fun == y->fun && x.arg == y->arg; },
          [&](const ast::DefFun& x) { auto* y = as<ast::DefFun>(b); return x.fun == y->fun && x.arg == y->arg; },
          [&](const ast::And& x) { auto* y = as<ast::And>(b); return x.lhs == y->lhs && x.rhs == y->rhs; },
          [&](const ast::Imp& x) { auto* y = as<ast::Imp>(b); return x.lhs == y->lhs && x.rhs == y->rhs; },
          [&](const ast::Or& x) { auto* y = as<ast::Or>(b); return x.lhs == y->lhs && x.rhs == y->rhs; },
          [&](const ast::Not& x) { return x.body == as<ast::Not>(b)->body; },
          [&](const ast::Iff& x) { auto* y = as<ast::Iff>(b); return x.lhs == y->lhs && x.rhs == y->rhs; },
          [&](const ast::ForallNum& x) { auto* y = as<ast::ForallNum>(b); return x.var == y->var && x.body == y->body; },
          [&](const ast::ForallFun& x) { auto* y = as<ast::ForallFun>(b); return x.var == y->var && x.body == y->body; },
          [&](const ast::ExistsNum& x) { auto* y = as<ast::ExistsNum>(b); return x.var == y->var && x.body == y->body; },
          [&](const ast::ExistsFun& x) { auto* y = as<ast::ExistsFun>(b); return x.var == y->var && x.body == y->body; },
          [&](const ast::ExistsNumBdd& x) {
            auto* y = as<ast::ExistsNumBdd>(b);
            return x.var == y->var && x.bound == y->bound && x.body == y->body;
          },
          [&](const ast::ExistsFunBdd& x) {
            auto* y = as<ast::ExistsFunBdd>(b);
            return x.var == y->var && x.bound == y->bound && x.body == y->body;
          },
      },
      a.node().v);
}

namespace {

// Bound variables are compared by binding depth.
class AlphaEq {
 public:
  bool num(const NumTerm& a, const NumTerm& b) {
    return std::visit(
        overloaded{
            [&](const ast::NumVar& x) {
              auto* y = as<ast::NumVar>(b);
              return y && same_var(Sort::Num, x.name, y->name);
            },
            [&](const ast::Zero&) { return as<ast::Zero>(b) != nullptr; },
            [&](const ast::PrimRecApp& x) {
              auto* y = as<ast::PrimRecApp>(b);
              if (!y || x.symbol != y->symbol || x.args.size() != y->args.size()) return false;
              for (std::size_t i = 0; i < x.args.size(); ++i)
                if (!num(x.args[i], y->args[i])) return false;
              return true;
            },
            [&](const ast::Eval& x) {
              auto* y = as<ast::Eval>(b);
              return y && fun(x.fun, y->fun) && num(x.arg, y->arg);
            },
        },
        a.node().v);
  }

  bool fun(const FunTerm& a, const FunTerm& b) {
    return std::visit(
        overloaded{
            [&](const ast::FunVar& x) {
              auto* y = as<ast::FunVar>(b);
              return y && same_var(Sort::Fun, x.name, y->name);
            },
            [&](const ast::Succ&) { return as<ast::Succ>(b) != nullptr; },
            [&](const ast::Lambda& x) {
              auto* y = as<ast::Lambda>(b);
              if (!y) return false;
              push(Sort::Num, x.var, y->var);
              bool r = num(x.body, y->body);
              pop();
              return r;
            },
            [&](const ast::Rec& x) {
              auto* y = as<ast::Rec>(b);
              return y && num(x.base, y->base) && fun(x.step, y->step);
            },
        },
        a.node().v);
  }

  bool formula(const Formula& a, const Formula& b) {
    if (a.node().v.index() != b.node().v.index()) return false;
    auto bin = [&](const Formula& l1, const Formula& r1, const Formula& l2, const Formula& r2) {
      return formula(l1, l2) && formula(r1, r2);
    };
    auto bind = [&](Sort s, const std::string& v1, const std::string& v2, const Formula& b1, const Formula& b2) {
      push(s, v1, v2);
      bool r = formula(b1, b2);
      pop();
      return r;
    };
    return std::visit(
        overloaded{
            [&](const ast::Eq& x) {
              auto* y = as<ast::Eq>(b);
              return num(x.lhs, y->lhs) && num(x.rhs, y->rhs);
            },
            [&](const ast::DefNum& x) {
              auto* y = as<ast::DefNum>(b);
              return fun(x.fun, y->fun) && fun(x.arg, y->arg);
            },
            [&](const ast::DefFun& x) {
              auto* y = as<ast::DefFun>(b);
              return fun(x.fun, y->fun) && fun(x.arg, y->arg);
            },
            [&](const ast::And& x) { auto* y = as<ast::And>(b); return bin(x.lhs, x.rhs, y->lhs, y->rhs); },
            [&](const ast::Imp& x) { auto* y = as<ast::Imp>(b); return bin(x.lhs, x.rhs, y->lhs, y->rhs); },
            [&](const ast::Or& x) { auto* y = as<ast::Or>(b); return bin(x.lhs, x.rhs, y->lhs, y->rhs); },
            [&](const ast::Not& x) { return formula(x.body, as<ast::Not>(b)->body); },
            [&](const ast::Iff& x) { auto* y = as<ast::Iff>(b); return bin(x.lhs, x.rhs, y->lhs, y->rhs); },
            [&](const ast::ForallNum& x) {
              auto* y = as<ast::ForallNum>(b);
              return bind(Sort::Num, x.var, y->var, x.body, y->body);
            },
            [&](const ast::ForallFun& x) {
              auto* y = as<ast::ForallFun>(b);
              return bind(Sort::Fun, x.var, y->var, x.body, y->body);
            },
            [&](const ast::ExistsNum& x) {
              auto* y = as<ast::ExistsNum>(b);
              return bind(Sort::Num, x.var, y->var, x.body, y->body);
            },
            [&](const ast::ExistsFun& x) {
              auto* y = as<ast::ExistsFun>(b);
              return bind(Sort::Fun, x.var, y->var, x.body, y->body);
            },
            [&](const ast::ExistsNumBdd& x) {
              auto* y = as<ast::ExistsNumBdd>(b);
              return num(x.bound, y->bound) && bind(Sort::Num, x.var, y->var, x.body, y->body);
            },
            [&](const ast::ExistsFunBdd& x) {
              auto* y = as<ast::ExistsFunBdd>(b);
              return fun(x.bound, y->bound) && bind(Sort::Fun, x.var, y->var, x.body, y->body);
            },
        },
        a.node().v);
  }

 private:
  struct Binding {
    Sort sort;
    std::string left;
    std::string right;
  };

  void push(Sort s, const std::string& l, const std::string& r) { stack_.push_back({s, l, r}); }
  void pop() { stack_.pop_back(); }

  bool same_var(Sort s, const std::string& l, const std::string& r) const {
    long li = -1, ri = -1;
    for (long i = static_cast<long>(stack_.size()) - 1; i >= 0; --i) {
      if (stack_[i].sort != s) continue;
      if (li < 0 && stack_[i].left == l) li = i;
      if (ri < 0 && stack_[i].right == r) ri = i;
    }
    if (li < 0 && ri < 0) return l == r;
    return li == ri;
  }

  std::vector<Binding> stack_;
};

}  // namespace

bool alpha_equal(const Formula& a, const Formula& b) { return AlphaEq().formula(a, b); }
bool alpha_equal(const NumTerm& a, const NumTerm& b) { return AlphaEq().num(a, b); }
bool alpha_equal(const FunTerm& a, const FunTerm& b) { return AlphaEq().fun(a, b); }

// ---------------------------------------------------------------------------
// Printer

namespace {

void print_num(std::ostream& os, const NumTerm& t);

void print_fun(std::ostream& os, const FunTerm& t) {
  std::visit(overloaded{
                 [&](const ast::FunVar& x) { os << x.name; },
                 [&](const ast::Succ&) { os << "succ"; },
                 [&](const ast::Lambda& x) {
                   os << "(lam " << x.var << ' ';
                   print_num(os, x.body);
                   os << ')';
                 },
                 [&](const ast::Rec& x) {
                   os << "(rec ";
                   print_num(os, x.base);
                   os << ' ';
                   print_fun(os, x.step);
                   os << ')';
                 },
             },
             t.node().v);
}

void print_num(std::ostream& os, const NumTerm& t) {
  if (auto k = numeral_value(t)) {
    os << *k;
    return;
  }
  std::visit(overloaded{
                 [&](const ast::NumVar& x) { os << x.name; },
                 [&](const ast::Zero&) { os << '0'; },
                 [&](const ast::PrimRecApp& x) {
                   os << "(app " << SymbolTable::builtin().at(x.symbol).name;
                   for (const auto& a : x.args) {
                     os << ' ';
                     print_num(os, a);
                   }
                   os << ')';
                 },
                 [&](const ast::Eval& x) {
                   if (as<ast::Succ>(x.fun)) {
                     os << "(succ ";
                   } else {
                     os << "(ev ";
                     print_fun(os, x.fun);
                     os << ' ';
                   }
                   print_num(os, x.arg);
                   os << ')';
                 },
             },
             t.node().v);
}

void print_formula(std::ostream& os, const Formula& f) {
  auto bin = [&](const char* op, const Formula& a, const Formula& b) {
    os << '(' << op << ' ';
    print_formula(os, a);
    os << ' ';
    print_formula(os, b);
    os << ')';
  };
  auto quant = [&](const char* op, const std::string& v, const Formula& body) {
    os << '(' << op << ' ' << v << ' ';
    print_formula(os, body);
    os << ')';
  };
  std::visit(overloaded{
                 [&](const ast::Eq& x) {
                   os << "(= ";
                   print_num(os, x.lhs);
                   os << ' ';
                   print_num(os, x.rhs);
                   os << ')';
                 },
                 [&](const ast::DefNum& x) {
                   os << "(def-num ";
                   print_fun(os, x.fun);
                   os << ' ';
                   print_fun(os, x.arg);
                   os << ')';
                 },
                 [&](const ast::DefFun& x) {
                   os << "(def-fun ";
                   print_fun(os, x.fun);
                   os << ' ';
                   print_fun(os, x.arg);
                   os << ')';
                 },
                 [&](const ast::And& x) { bin("and", x.lhs, x.rhs); },
                 [&](const ast::Imp& x) { bin("imp", x.lhs, x.rhs); },
                 [&](const ast::Or& x) { bin("or", x.lhs, x.rhs); },
                 [&](const ast::Not& x) {
                   os << "(not ";
                   print_formula(os, x.body);
                   os << ')';
                 },
                 [&](const ast::Iff& x) { bin("iff", x.lhs, x.rhs); },
                 [&](const ast::ForallNum& x) { quant("forall-num", x.var, x.body); },
                 [&](const ast::ForallFun& x) { quant("forall-fun", x.var, x.body); },
                 [&](const ast::ExistsNum& x) { quant("exists-num", x.var, x.body); },
                 [&](const ast::ExistsFun& x) { quant("exists-fun", x.var, x.body); },
                 [&](const ast::ExistsNumBdd& x) {
                   os << "(exists-num-bdd " << x.var << ' ';
                   print_num(os, x.bound);
                   os << ' ';
                   print_formula(os, x.body);
                   os << ')';
                 },
                 [&](const ast::ExistsFunBdd& x) {
                   os << "(exists-fun-bdd " << x.var << ' ';
                   print_fun(os, x.bound);
                   os << ' ';
                   print_formula(os, x.body);
                   os << ')';
                 },
             },
             f.node().v);
}

}  // namespace

std::string print(const Formula& f) {
  std::ostringstream os;
  print_formula(os, f);
  return os.str();
}
std::string print(const NumTerm& t) {
  std::ostringstream os;
  print_num(os, t);
  return os.str();
}
std::string print(const FunTerm& t) {
  std::ostringstream os;
  print_fun(os, t);
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

constexpr Nat kMaxNumeral = 10000;

struct SExpr {
  bool list = false;
  std::string atom;
  std::vector<SExpr> items;
  std::size_t line = 1;
  std::size_t col = 1;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  bool at_end() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr read() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    SExpr e;
    e.line = line_;
    e.col = col_;
    char c = text_[pos_];
    if (c == ')') fail("unexpected ')'");
    if (c == '(') {
      e.list = true;
      advance();
      while (true) {
        skip();
        if (pos_ >= text_.size()) throw ParseError(e.line, e.col, "unclosed '('");
        if (text_[pos_] == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
      }
      return e;
    }
    while (pos_ < text_.size() && !is_delim(text_[pos_])) {
      e.atom.push_back(text_[pos_]);
      advance();
    }
    return e;
  }

 private:
  static bool is_delim(char c) { return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == ';'; }

  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(const std::string& what) { throw ParseError(line_, col_, what); }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

[[noreturn]] void fail_at(const SExpr& e, const std::string& what) { throw ParseError(e.line, e.col, what); }

bool is_identifier(const std::string& s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  for (char c : s)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'')) return false;
  return true;
}

bool is_number(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

const std::set<std::string>& reserved() {
  static const std::set<std::string> r{"succ", "ev", "lam", "rec", "app", "and", "imp", "or", "not", "iff",
                                       "forall-num", "forall-fun", "exists-num", "exists-fun",
                                       "exists-num-bdd", "exists-fun-bdd", "def-num", "def-fun"};
  return r;
}

std::string variable(const SExpr& e) {
  if (e.list || !is_identifier(e.atom) || reserved().count(e.atom)) fail_at(e, "expected a variable name");
  return e.atom;
}

const std::string& head(const SExpr& e) {
  if (e.items.empty() || e.items[0].list) fail_at(e, "expected a form with an operator");
  return e.items[0].atom;
}

void expect_args(const SExpr& e, std::size_t n) {
  if (e.items.size() != n + 1)
    fail_at(e, "'" + e.items[0].atom + "' expects " + std::to_string(n) + " arguments, got " +
                   std::to_string(e.items.size() - 1));
}

FunTerm to_fun(const SExpr& e);

NumTerm to_num(const SExpr& e) {
  if (!e.list) {
    if (is_number(e.atom)) {
      if (e.atom.size() > 6 || std::stoull(e.atom) > kMaxNumeral) fail_at(e, "numeral too large");
      return mk::numeral(std::stoull(e.atom));
    }
    return mk::num_var(variable(e));
  }
  const std::string& h = head(e);
  if (h == "ev") {
    expect_args(e, 2);
    return mk::ev(to_fun(e.items[1]), to_num(e.items[2]));
  }
  if (h == "succ") {
    expect_args(e, 1);
    return mk::succ_of(to_num(e.items[1]));
  }
  if (h == "app") {
    if (e.items.size() < 2 || e.items[1].list) fail_at(e, "'app' expects a symbol name");
    auto id = SymbolTable::builtin().find(e.items[1].atom);
    if (!id) fail_at(e.items[1], "unknown symbol '" + e.items[1].atom + "'");
    const Symbol& s = SymbolTable::builtin().at(*id);
    if (e.items.size() - 2 != s.arity)
      fail_at(e, "arity mismatch: '" + s.name + "' expects " + std::to_string(s.arity) + " arguments, got " +
                     std::to_string(e.items.size() - 2));
    std::vector<NumTerm> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) args.push_back(to_num(e.items[i]));
    return mk::app(*id, std::move(args));
  }
  fail_at(e, "expected a number term, found '" + h + "'");
}

FunTerm to_fun(const SExpr& e) {
  if (!e.list) {
    if (e.atom == "succ") return mk::succ();
    return mk::fun_var(variable(e));
  }
  const std::string& h = head(e);
  if (h == "lam") {
    expect_args(e, 2);
    return mk::lam(variable(e.items[1]), to_num(e.items[2]));
  }
  if (h == "rec") {
    expect_args(e, 2);
    return mk::rec(to_num(e.items[1]), to_fun(e.items[2]));
  }
  fail_at(e, "expected a function term, found '" + h + "'");
}

Formula to_formula(const SExpr& e) {
  if (!e.list) fail_at(e, "expected a formula");
  const std::string& h = head(e);
  if (h == "=") {
    expect_args(e, 2);
    return mk::eq(to_num(e.items[1]), to_num(e.items[2]));
  }
  if (h == "def-num" || h == "def-fun") {
    expect_args(e, 2);
    auto f = to_fun(e.items[1]);
    auto g = to_fun(e.items[2]);
    return h == "def-num" ? mk::def_num(f, g) : mk::def_fun(f, g);
  }
  if (h == "and" || h == "imp" || h == "or" || h == "iff") {
    expect_args(e, 2);
    auto a = to_formula(e.items[1]);
    auto b = to_formula(e.items[2]);
    if (h == "and") return mk::conj(a, b);
    if (h == "imp") return mk::imp(a, b);
    if (h == "or") return mk::disj(a, b);
    return mk::iff(a, b);
  }
  if (h == "not") {
    expect_args(e, 1);
    return mk::neg(to_formula(e.items[1]));
  }
  if (h == "forall-num" || h == "forall-fun" || h == "exists-num" || h == "exists-fun") {
    expect_args(e, 2);
    auto v = variable(e.items[1]);
    auto body = to_formula(e.items[2]);
    if (h == "forall-num") return mk::forall_num(v, body);
    if (h == "forall-fun") return mk::forall_fun(v, body);
    if (h == "exists-num") return mk::exists_num(v, body);
    return mk::exists_fun(v, body);
  }
  if (h == "exists-num-bdd") {
    expect_args(e, 3);
    auto v = variable(e.items[1]);
    auto bound = to_num(e.items[2]);
    if (all_names(bound).count(v)) fail_at(e.items[2], "bound variable occurs in bound term");
    return mk::exists_num_bdd(v, bound, to_formula(e.items[3]));
  }
  if (h == "exists-fun-bdd") {
    expect_args(e, 3);
    auto v = variable(e.items[1]);
    auto bound = to_fun(e.items[2]);
    if (all_names(bound).count(v)) fail_at(e.items[2], "bound variable occurs in bound term");
    return mk::exists_fun_bdd(v, bound, to_formula(e.items[3]));
  }
  fail_at(e, "unknown formula operator '" + h + "'");
}

template <class T, class F>
T parse_single(std::string_view text, F convert) {
  Reader r(text);
  SExpr e = r.read();
  if (!r.at_end()) {
    SExpr extra = r.read();
    fail_at(extra, "trailing input after the first expression");
  }
  return convert(e);
}

}  // namespace

Formula parse(std::string_view text) { return parse_single<Formula>(text, to_formula); }

std::vector<Formula> parse_all(std::string_view text) {
  Reader r(text);
  std::vector<Formula> out;
  while (!r.at_end()) out.push_back(to_formula(r.read()));
  return out;
}

NumTerm parse_num_term(std::string_view text) { return parse_single<NumTerm>(text, to_num); }
FunTerm parse_fun_term(std::string_view text) { return parse_single<FunTerm>(text, to_fun); }

// ---------------------------------------------------------------------------
// Variables

namespace {

struct VarCollector {
  bool free_only;
  FreeVars out;
  std::vector<std::pair<Sort, std::string>> bound;

  bool is_bound(Sort s, const std::string& n) const {
    for (const auto& b : bound)
      if (b.first == s && b.second == n) return true;
    return false;
  }
  void see(Sort s, const std::string& n) {
    if (free_only && is_bound(s, n)) return;
    (s == Sort::Num ? out.num : out.fun).insert(n);
  }
  template <class Body>
  void under(Sort s, const std::string& v, const Body& body) {
    if (!free_only) see(s, v);
    bound.emplace_back(s, v);
    walk(body);
    bound.pop_back();
  }

  void walk(const NumTerm& t) {
    std::visit(overloaded{
                   [&](const ast::NumVar& x) { see(Sort::Num, x.name); },
                   [&](const ast::Zero&) {},
                   [&](const ast::PrimRecApp& x) {
                     for (const auto& a : x.args) walk(a);
                   },
                   [&](const ast::Eval& x) {
                     walk(x.fun);
                     walk(x.arg);
                   },
               },
               t.node().v);
  }
  void walk(const FunTerm& t) {
    std::visit(overloaded{
                   [&](const ast::FunVar& x) { see(Sort::Fun, x.name); },
                   [&](const ast::Succ&) {},
                   [&](const ast::Lambda& x) { under(Sort::Num, x.var, x.body); },
                   [&](const ast::Rec& x) {
                     walk(x.base);
                     walk(x.step);
                   },
               },
               t.node().v);
  }
  void walk(const Formula& f) {
    std::visit(overloaded{
                   [&](const ast::Eq& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const ast::DefNum& x) {
                     walk(x.fun);
                     walk(x.arg);
                   },
                   [&](const ast::DefFun& x) {
                     walk(x.fun);
                     walk(x.arg);
                   },
                   [&](const ast::And& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const ast::Imp& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const ast::Or& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const ast::Not& x) { walk(x.body); },
                   [&](const ast::Iff& x) {
                     walk(x.lhs);
                     walk(x.rhs);
                   },
                   [&](const ast::ForallNum& x) { under(Sort::Num, x.var, x.body); },
                   [&](const ast::ForallFun& x) { under(Sort::Fun, x.var, x.body); },
                   [&](const ast::ExistsNum& x) { under(Sort::Num, x.var, x.body); },
                   [&](const ast::ExistsFun& x) { under(Sort::Fun, x.var, x.body); },
                   [&](const ast::ExistsNumBdd& x) {
                     walk(x.bound);
                     under(Sort::Num, x.var, x.body);
                   },
                   [&](const ast::ExistsFunBdd& x) {
                     walk(x.bound);
                     under(Sort::Fun, x.var, x.body);
                   },
               },
               f.node().v);
  }
};

template <class T>
FreeVars collect(const T& t, bool free_only) {
  VarCollector c{free_only, {}, {}};
  c.walk(t);
  return std::move(c.out);
}

std::set<std::string> merged(FreeVars v) {
  v.num.insert(v.fun.begin(), v.fun.end());
  return std::move(v.num);
}

}  // namespace

FreeVars free_vars(const Formula& f) { return collect(f, true); }
FreeVars free_vars(const NumTerm& t) { return collect(t, true); }
FreeVars free_vars(const FunTerm& t) { return collect(t, true); }

std::set<std::string> all_names(const Formula& f) { return merged(collect(f, false)); }
std::set<std::string> all_names(const NumTerm& t) { return merged(collect(t, false)); }
std::set<std::string> all_names(const FunTerm& t) { return merged(collect(t, false)); }

std::string fresh_name(std::string_view base, const std::set<std::string>& avoid) {
  std::string b(base);
  if (!avoid.count(b)) return b;
  for (std::size_t k = 1;; ++k) {
    std::string c = b + "_" + std::to_string(k);
    if (!avoid.count(c)) return c;
  }
}

std::string NameSupply::fresh(std::string_view base) {
  std::string n = fresh_name(base, used_);
  used_.insert(n);
  return n;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

class Substituter {
 public:
  Substituter(Sort sort, std::string var, AnyTerm term)
      : sort_(sort), var_(std::move(var)), term_(std::move(term)) {
    fv_ = std::visit([](const auto& t) { return free_vars(t); }, term_);
  }

  NumTerm num(const NumTerm& t) {
    if (!occurs(t)) return t;
    return std::visit(overloaded{
                          [&](const ast::NumVar&) -> NumTerm { return std::get<NumTerm>(term_); },
                          [&](const ast::Zero&) { return t; },
                          [&](const ast::PrimRecApp& x) {
                            std::vector<NumTerm> args;
                            for (const auto& a : x.args) args.push_back(num(a));
                            return mk::app(x.symbol, std::move(args));
                          },
                          [&](const ast::Eval& x) { return mk::ev(fun(x.fun), num(x.arg)); },
                      },
                      t.node().v);
  }

  FunTerm fun(const FunTerm& t) {
    if (!occurs(t)) return t;
    return std::visit(overloaded{
                          [&](const ast::FunVar&) -> FunTerm { return std::get<FunTerm>(term_); },
                          [&](const ast::Succ&) { return t; },
                          [&](const ast::Lambda& x) {
                            auto [v, body] = binder(Sort::Num, x.var, x.body);
                            return mk::lam(v, body);
                          },
                          [&](const ast::Rec& x) { return mk::rec(num(x.base), fun(x.step)); },
                      },
                      t.node().v);
  }

  Formula formula(const Formula& f) {
    if (!occurs(f)) return f;
    return std::visit(
        overloaded{
            [&](const ast::Eq& x) { return mk::eq(num(x.lhs), num(x.rhs)); },
            [&](const ast::DefNum& x) { return mk::def_num(fun(x.fun), fun(x.arg)); },
            [&](const ast::DefFun& x) { return mk::def_fun(fun(x.fun), fun(x.arg)); },
            [&](const ast::And& x) { return mk::conj(formula(x.lhs), formula(x.rhs)); },
            [&](const ast::Imp& x) { return mk::imp(formula(x.lhs), formula(x.rhs)); },
            [&](const ast::Or& x) { return mk::disj(formula(x.lhs), formula(x.rhs)); },
            [&](const ast::Not& x) { return mk::neg(formula(x.body)); },
            [&](const ast::Iff& x) { return mk::iff(formula(x.lhs), formula(x.rhs)); },
            [&](const ast::ForallNum& x) {
              auto [v, b] = binder(Sort::Num, x.var, x.body);
              return mk::forall_num(v, b);
            },
            [&](const ast::ForallFun& x) {
              auto [v, b] = binder(Sort::Fun, x.var, x.body);
              return mk::forall_fun(v, b);
            },
            [&](const ast::ExistsNum& x) {
              auto [v, b] = binder(Sort::Num, x.var, x.body);
              return mk::exists_num(v, b);
            },
            [&](const ast::ExistsFun& x) {
              auto [v, b] = binder(Sort::Fun, x.var, x.body);
              return mk::exists_fun(v, b);
            },
            [&](const ast::ExistsNumBdd& x) {
              auto bound = num(x.bound);
              auto [v, b] = binder(Sort::Num, x.var, x.body);
              return mk::exists_num_bdd(v, bound, b);
            },
            [&](const ast::ExistsFunBdd& x) {
              auto bound = fun(x.bound);
              auto [v, b] = binder(Sort::Fun, x.var, x.body);
              return mk::exists_fun_bdd(v, bound, b);
            },
        },
        f.node().v);
  }

 private:
  template <class T>
  bool occurs(const T& t) const {
    FreeVars fv = free_vars(t);
    return (sort_ == Sort::Num ? fv.num : fv.fun).count(var_) != 0;
  }

  bool captures(Sort s, const std::string& v) const { return (s == Sort::Num ? fv_.num : fv_.fun).count(v) != 0; }

  NumTerm go(const NumTerm& t) { return num(t); }
  Formula go(const Formula& f) { return formula(f); }

  // Pushes the substitution under a binder, renaming it if it would capture.
  template <class Body>
  std::pair<std::string, Body> binder(Sort s, const std::string& v, const Body& body) {
    if (s == sort_ && v == var_) return {v, body};
    if (!occurs(body)) return {v, body};
    if (!captures(s, v)) return {v, go(body)};
    std::set<std::string> avoid = all_names(body);
    avoid.insert(fv_.num.begin(), fv_.num.end());
    avoid.insert(fv_.fun.begin(), fv_.fun.end());
    avoid.insert(var_);
    std::string nv = fresh_name(v, avoid);
    Body renamed = s == Sort::Num ? substitute(body, v, mk::num_var(nv)) : substitute(body, v, mk::fun_var(nv));
    return {nv, go(renamed)};
  }

  Sort sort_;
  std::string var_;
  AnyTerm term_;
  FreeVars fv_;
};

}  // namespace

Formula substitute(const Formula& f, const std::string& var, const NumTerm& term) {
  return Substituter(Sort::Num, var, term).formula(f);
}
Formula substitute(const Formula& f, const std::string& var, const FunTerm& term) {
  return Substituter(Sort::Fun, var, term).formula(f);
}
NumTerm substitute(const NumTerm& t, const std::string& var, const NumTerm& term) {
  return Substituter(Sort::Num, var, term).num(t);
}
NumTerm substitute(const NumTerm& t, const std::string& var, const FunTerm& term) {
  return Substituter(Sort::Fun, var, term).num(t);
}
FunTerm substitute(const FunTerm& t, const std::string& var, const NumTerm& term) {
  return Substituter(Sort::Num, var, term).fun(t);
}
FunTerm substitute(const FunTerm& t, const std::string& var, const FunTerm& term) {
  return Substituter(Sort::Fun, var, term).fun(t);
}

Formula substitute(const Formula& f, Sort sort, const std::string& var, const AnyTerm& term) {
  Sort actual = std::holds_alternative<NumTerm>(term) ? Sort::Num : Sort::Fun;
  if (actual != sort)
    throw SortError(std::string("sort mismatch: ") + (sort == Sort::Num ? "number" : "function") + " variable '" + var +
                    "' cannot be replaced by a " + (actual == Sort::Num ? "number" : "function") + " term");
  return Substituter(sort, var, term).formula(f);
}

// ---------------------------------------------------------------------------
// Desugaring

Formula desugar_step(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const ast::Or& x) {
            std::set<std::string> avoid = all_names(x.lhs);
            auto more = all_names(x.rhs);
            avoid.insert(more.begin(), more.end());
            std::string v = fresh_name("x", avoid);
            auto xv = mk::num_var(v);
            return mk::exists_num(v, mk::conj(mk::imp(mk::eq(xv, mk::zero()), x.lhs),
                                              mk::imp(mk::neq(xv, mk::zero()), x.rhs)));
          },
          [&](const ast::Not& x) { return mk::imp(x.body, mk::falsum()); },
          [&](const ast::Iff& x) { return mk::conj(mk::imp(x.lhs, x.rhs), mk::imp(x.rhs, x.lhs)); },
          [&](const ast::ExistsNumBdd& x) {
            return mk::exists_num(x.var, mk::conj(mk::le(mk::num_var(x.var), x.bound), x.body));
          },
          [&](const ast::ExistsFunBdd& x) {
            std::set<std::string> avoid = all_names(x.body);
            auto more = all_names(x.bound);
            avoid.insert(more.begin(), more.end());
            avoid.insert(x.var);
            std::string n = fresh_name("n", avoid);
            auto nv = mk::num_var(n);
            return mk::exists_fun(
                x.var, mk::conj(mk::forall_num(n, mk::le(mk::ev(mk::fun_var(x.var), nv), mk::ev(x.bound, nv))), x.body));
          },
          [&](const ast::DefNum& x) { return enc::def_num_expansion(x.fun, x.arg); },
          [&](const ast::DefFun& x) { return enc::def_fun_expansion(x.fun, x.arg); },
          [&](const auto&) { return f; },
      },
      f.node().v);
}

Formula desugar(const Formula& f) {
  Formula g = desugar_step(f);
  return std::visit(overloaded{
                        [&](const ast::And& x) { return mk::conj(desugar(x.lhs), desugar(x.rhs)); },
                        [&](const ast::Imp& x) { return mk::imp(desugar(x.lhs), desugar(x.rhs)); },
                        [&](const ast::ForallNum& x) { return mk::forall_num(x.var, desugar(x.body)); },
                        [&](const ast::ForallFun& x) { return mk::forall_fun(x.var, desugar(x.body)); },
                        [&](const ast::ExistsNum& x) { return mk::exists_num(x.var, desugar(x.body)); },
                        [&](const ast::ExistsFun& x) { return mk::exists_fun(x.var, desugar(x.body)); },
                        [&](const auto&) { return g; },
                    },
                    g.node().v);
}

bool is_sugar_free(const Formula& f) {
  return std::visit(overloaded{
                        [](const ast::Eq&) { return true; },
                        [](const ast::And& x) { return is_sugar_free(x.lhs) && is_sugar_free(x.rhs); },
                        [](const ast::Imp& x) { return is_sugar_free(x.lhs) && is_sugar_free(x.rhs); },
                        [](const ast::ForallNum& x) { return is_sugar_free(x.body); },
                        [](const ast::ForallFun& x) { return is_sugar_free(x.body); },
                        [](const ast::ExistsNum& x) { return is_sugar_free(x.body); },
                        [](const ast::ExistsFun& x) { return is_sugar_free(x.body); },
                        [](const auto&) { return false; },
                    },
                    f.node().v);
}

// ---------------------------------------------------------------------------
// Beta normalization

NumTerm beta_normalize(const NumTerm& t) {
  return std::visit(overloaded{
                        [&](const ast::PrimRecApp& x) {
                          std::vector<NumTerm> args;
                          for (const auto& a : x.args) args.push_back(beta_normalize(a));
                          return mk::app(x.symbol, std::move(args));
                        },
                        [&](const ast::Eval& x) {
                          FunTerm f = beta_normalize(x.fun);
                          NumTerm a = beta_normalize(x.arg);
                          if (auto* l = as<ast::Lambda>(f)) return beta_normalize(substitute(l->body, l->var, a));
                          return mk::ev(f, a);
                        },
                        [&](const auto&) { return t; },
                    },
                    t.node().v);
}

FunTerm beta_normalize(const FunTerm& t) {
  return std::visit(overloaded{
                        [&](const ast::Lambda& x) { return mk::lam(x.var, beta_normalize(x.body)); },
                        [&](const ast::Rec& x) { return mk::rec(beta_normalize(x.base), beta_normalize(x.step)); },
                        [&](const auto&) { return t; },
                    },
                    t.node().v);
}

Formula beta_normalize(const Formula& f) {
  return std::visit(
      overloaded{
          [&](const ast::Eq& x) { return mk::eq(beta_normalize(x.lhs), beta_normalize(x.rhs)); },
          [&](const ast::DefNum& x) { return mk::def_num(beta_normalize(x.fun), beta_normalize(x.arg)); },
          [&](const ast::DefFun& x) { return mk::def_fun(beta_normalize(x.fun), beta_normalize(x.arg)); },
          [&](const ast::And& x) { return mk::conj(beta_normalize(x.lhs), beta_normalize(x.rhs)); },
          [&](const ast::Imp& x) { return mk::imp(beta_normalize(x.lhs), beta_normalize(x.rhs)); },
          [&](const ast::Or& x) { return mk::disj(beta_normalize(x.lhs), beta_normalize(x.rhs)); },
          [&](const ast::Not& x) { return mk::neg(beta_normalize(x.body)); },
          [&](const ast::Iff& x) { return mk::iff(beta_normalize(x.lhs), beta_normalize(x.rhs)); },
          [&](const ast::ForallNum& x) { return mk::forall_num(x.var, beta_normalize(x.body)); },
          [&](const ast::ForallFun& x) { return mk::forall_fun(x.var, beta_normalize(x.body)); },
          [&](const ast::ExistsNum& x) { return mk::exists_num(x.var, beta_normalize(x.body)); },
          [&](const ast::ExistsFun& x) { return mk::exists_fun(x.var, beta_normalize(x.body)); },
          [&](const ast::ExistsNumBdd& x) {
            return mk::exists_num_bdd(x.var, beta_normalize(x.bound), beta_normalize(x.body));
          },
          [&](const ast::ExistsFunBdd& x) {
            return mk::exists_fun_bdd(x.var, beta_normalize(x.bound), beta_normalize(x.body));
          },
      },
      f.node().v);
}

// ---------------------------------------------------------------------------

namespace {

std::size_t size_of(const NumTerm& t);

std::size_t size_of(const FunTerm& t) {
  return std::visit(overloaded{
                        [](const ast::Lambda& x) { return 1 + size_of(x.body); },
                        [](const ast::Rec& x) { return 1 + size_of(x.base) + size_of(x.step); },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    t.node().v);
}

std::size_t size_of(const NumTerm& t) {
  return std::visit(overloaded{
                        [](const ast::PrimRecApp& x) {
                          std::size_t n = 1;
                          for (const auto& a : x.args) n += size_of(a);
                          return n;
                        },
                        [](const ast::Eval& x) { return 1 + size_of(x.fun) + size_of(x.arg); },
                        [](const auto&) -> std::size_t { return 1; },
                    },
                    t.node().v);
}

}  // namespace

std::size_t size(const Formula& f) {
  return std::visit(overloaded{
                        [](const ast::Eq& x) { return 1 + size_of(x.lhs) + size_of(x.rhs); },
                        [](const ast::DefNum& x) { return 1 + size_of(x.fun) + size_of(x.arg); },
                        [](const ast::DefFun& x) { return 1 + size_of(x.fun) + size_of(x.arg); },
                        [](const ast::And& x) { return 1 + size(x.lhs) + size(x.rhs); },
                        [](const ast::Imp& x) { return 1 + size(x.lhs) + size(x.rhs); },
                        [](const ast::Or& x) { return 1 + size(x.lhs) + size(x.rhs); },
                        [](const ast::Not& x) { return 1 + size(x.body); },
                        [](const ast::Iff& x) { return 1 + size(x.lhs) + size(x.rhs); },
                        [](const ast::ExistsNumBdd& x) { return 1 + size_of(x.bound) + size(x.body); },
                        [](const ast::ExistsFunBdd& x) { return 1 + size_of(x.bound) + size(x.body); },
                        [](const auto& x) { return 1 + size(x.body); },
                    },
                    f.node().v);
}

}  // namespace realiz
