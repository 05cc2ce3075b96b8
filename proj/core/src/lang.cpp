#include "lstar/lang.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

namespace lstar::lang {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::size_t hash_string(const std::string& s) {
  return std::hash<std::string>{}(s);
}

}  // namespace

int fn_arity(Fn f) {
  switch (f) {
    case Fn::Pred:
    case Fn::Log:
    case Fn::Double:
      return 1;
    default:
      return 2;
  }
}

const char* fn_name(Fn f) {
  switch (f) {
    case Fn::Sub: return "sub";
    case Fn::Div: return "div";
    case Fn::Pred: return "pred";
    case Fn::Max: return "max";
    case Fn::Log: return "log";
    case Fn::Root: return "root";
    case Fn::Count: return "count";
    case Fn::Bit: return "bit";
    case Fn::Add: return "add";
    case Fn::Double: return "double";
  }
  return "?";
}

class TermFactory {
 public:
  static Term raw() { return Term{}; }
  static TermPtr seal(Term t) { return std::shared_ptr<const Term>(new Term(std::move(t))); }
};

TermPtr Term::constant(int value) {
  if (value < 0 || value > 2) throw Error("constant index out of range");
  Term t = TermFactory::raw();
  t.kind_ = Kind::Constant;
  t.cval_ = value;
  t.hash_ = mix(1, static_cast<std::size_t>(value));
  return TermFactory::seal(std::move(t));
}

TermPtr Term::variable(std::string name) {
  if (name.empty()) throw Error("empty variable name");
  Term t = TermFactory::raw();
  t.kind_ = Kind::Variable;
  t.hash_ = mix(2, hash_string(name));
  t.name_ = std::move(name);
  return TermFactory::seal(std::move(t));
}

TermPtr Term::parameter(std::string name) {
  if (name.empty()) throw Error("empty parameter name");
  Term t = TermFactory::raw();
  t.kind_ = Kind::Parameter;
  t.hash_ = mix(3, hash_string(name));
  t.name_ = std::move(name);
  return TermFactory::seal(std::move(t));
}

TermPtr Term::apply(Fn f, std::vector<TermPtr> args) {
  if (static_cast<int>(args.size()) != fn_arity(f))
    throw ArityError(std::string(fn_name(f)) + " expects " + std::to_string(fn_arity(f)) +
                     " argument(s), got " + std::to_string(args.size()));
  for (const auto& a : args)
    if (!a) throw Error("null term argument");
  Term t = TermFactory::raw();
  t.kind_ = Kind::FunctionApp;
  t.fn_ = f;
  std::size_t h = mix(4, static_cast<std::size_t>(f));
  for (const auto& a : args) h = mix(h, a->hash());
  t.hash_ = h;
  t.args_ = std::move(args);
  return TermFactory::seal(std::move(t));
}

bool equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Term::Kind::Constant:
      return a->constant_value() == b->constant_value();
    case Term::Kind::Variable:
    case Term::Kind::Parameter:
      return a->name() == b->name();
    case Term::Kind::FunctionApp: {
      if (a->fn() != b->fn()) return false;
      for (std::size_t i = 0; i < a->args().size(); ++i)
        if (!equal(a->args()[i], b->args()[i])) return false;
      return true;
    }
  }
  return false;
}

class FormulaFactory {
 public:
  static Formula raw() { return Formula{}; }
  static FormulaPtr seal(Formula f) { return std::shared_ptr<const Formula>(new Formula(std::move(f))); }

  static FormulaPtr binary(Formula::Kind k, std::size_t tag, FormulaPtr a, FormulaPtr b) {
    if (!a || !b) throw Error("null subformula");
    Formula f = raw();
    f.kind_ = k;
    f.hash_ = mix(mix(tag, a->hash()), b->hash());
    f.a_ = std::move(a);
    f.b_ = std::move(b);
    return seal(std::move(f));
  }

  static FormulaPtr quantifier(Formula::Kind k, std::size_t tag, std::string var, TermPtr bound,
                               FormulaPtr body) {
    if (!body) throw Error("null quantifier body");
    if (var.empty()) throw Error("empty quantifier variable");
    if (bound && term_contains_var(bound, var))
      throw Error("bound term of bounded quantifier contains the bound variable '" + var + "'");
    Formula f = raw();
    f.kind_ = k;
    std::size_t h = mix(tag, hash_string(var));
    if (bound) h = mix(h, bound->hash());
    f.hash_ = mix(h, body->hash());
    f.var_ = std::move(var);
    f.bound_ = std::move(bound);
    f.a_ = std::move(body);
    return seal(std::move(f));
  }
};

FormulaPtr Formula::atom(Rel rel, TermPtr lhs, TermPtr rhs) {
  if (!lhs || !rhs) throw Error("null atom operand");
  Formula f = FormulaFactory::raw();
  f.kind_ = Kind::Atom;
  f.rel_ = rel;
  f.hash_ = mix(mix(10 + static_cast<std::size_t>(rel), lhs->hash()), rhs->hash());
  f.lhs_ = std::move(lhs);
  f.rhs_ = std::move(rhs);
  return FormulaFactory::seal(std::move(f));
}

FormulaPtr Formula::negation(FormulaPtr a) {
  if (!a) throw Error("null subformula");
  Formula f = FormulaFactory::raw();
  f.kind_ = Kind::Not;
  f.hash_ = mix(20, a->hash());
  f.a_ = std::move(a);
  return FormulaFactory::seal(std::move(f));
}

FormulaPtr Formula::conj(FormulaPtr a, FormulaPtr b) {
  return FormulaFactory::binary(Kind::And, 21, std::move(a), std::move(b));
}
FormulaPtr Formula::disj(FormulaPtr a, FormulaPtr b) {
  return FormulaFactory::binary(Kind::Or, 22, std::move(a), std::move(b));
}
FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) {
  return FormulaFactory::binary(Kind::Implies, 23, std::move(a), std::move(b));
}
FormulaPtr Formula::forall(std::string var, FormulaPtr body) {
  return FormulaFactory::quantifier(Kind::ForAll, 24, std::move(var), nullptr, std::move(body));
}
FormulaPtr Formula::exists(std::string var, FormulaPtr body) {
  return FormulaFactory::quantifier(Kind::Exists, 25, std::move(var), nullptr, std::move(body));
}
FormulaPtr Formula::bounded_forall(std::string var, TermPtr bound, FormulaPtr body) {
  if (!bound) throw Error("bounded quantifier needs a bound term");
  return FormulaFactory::quantifier(Kind::BoundedForAll, 26, std::move(var), std::move(bound),
                                    std::move(body));
}
FormulaPtr Formula::bounded_exists(std::string var, TermPtr bound, FormulaPtr body) {
  if (!bound) throw Error("bounded quantifier needs a bound term");
  return FormulaFactory::quantifier(Kind::BoundedExists, 27, std::move(var), std::move(bound),
                                    std::move(body));
}

bool equal(const FormulaPtr& a, const FormulaPtr& b) {
  if (a.get() == b.get()) return true;
  if (!a || !b) return false;
  if (a->hash() != b->hash() || a->kind() != b->kind()) return false;
  switch (a->kind()) {
    case Formula::Kind::Atom:
      return a->rel() == b->rel() && equal(a->lhs(), b->lhs()) && equal(a->rhs(), b->rhs());
    case Formula::Kind::Not:
      return equal(a->child(), b->child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return equal(a->left(), b->left()) && equal(a->right(), b->right());
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      return a->var() == b->var() && equal(a->child(), b->child());
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists:
      return a->var() == b->var() && equal(a->bound(), b->bound()) && equal(a->child(), b->child());
  }
  return false;
}

static void collect_term_vars(const TermPtr& t, std::set<std::string>& out) {
  switch (t->kind()) {
    case Term::Kind::Variable:
      out.insert(t->name());
      break;
    case Term::Kind::FunctionApp:
      for (const auto& a : t->args()) collect_term_vars(a, out);
      break;
    default:
      break;
  }
}

std::set<std::string> term_vars(const TermPtr& t) {
  std::set<std::string> out;
  collect_term_vars(t, out);
  return out;
}

static void collect_free(const FormulaPtr& f, std::set<std::string>& bound,
                         std::set<std::string>& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      for (const auto& v : term_vars(f->lhs()))
        if (!bound.count(v)) out.insert(v);
      for (const auto& v : term_vars(f->rhs()))
        if (!bound.count(v)) out.insert(v);
      break;
    }
    case Formula::Kind::Not:
      collect_free(f->child(), bound, out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_free(f->left(), bound, out);
      collect_free(f->right(), bound, out);
      break;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists: {
      if (f->bound()) {
        for (const auto& v : term_vars(f->bound()))
          if (!bound.count(v)) out.insert(v);
      }
      bool was_bound = bound.count(f->var()) > 0;
      bound.insert(f->var());
      collect_free(f->child(), bound, out);
      if (!was_bound) bound.erase(f->var());
      break;
    }
  }
}

std::set<std::string> free_vars(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out;
}

bool is_closed(const FormulaPtr& f) { return free_vars(f).empty(); }

static void collect_term_params(const TermPtr& t, std::set<std::string>& out) {
  if (t->kind() == Term::Kind::Parameter) out.insert(t->name());
  if (t->kind() == Term::Kind::FunctionApp)
    for (const auto& a : t->args()) collect_term_params(a, out);
}

static void collect_params(const FormulaPtr& f, std::set<std::string>& out) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      collect_term_params(f->lhs(), out);
      collect_term_params(f->rhs(), out);
      break;
    case Formula::Kind::Not:
      collect_params(f->child(), out);
      break;
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      collect_params(f->left(), out);
      collect_params(f->right(), out);
      break;
    default:
      if (f->bound()) collect_term_params(f->bound(), out);
      collect_params(f->child(), out);
      break;
  }
}

std::set<std::string> parameters_of(const FormulaPtr& f) {
  std::set<std::string> out;
  collect_params(f, out);
  return out;
}

bool term_contains_var(const TermPtr& t, const std::string& name) {
  switch (t->kind()) {
    case Term::Kind::Variable:
      return t->name() == name;
    case Term::Kind::FunctionApp:
      for (const auto& a : t->args())
        if (term_contains_var(a, name)) return true;
      return false;
    default:
      return false;
  }
}

bool is_u_grounded(const TermPtr& t) {
  switch (t->kind()) {
    case Term::Kind::Variable:
      return false;
    case Term::Kind::FunctionApp:
      for (const auto& a : t->args())
        if (!is_u_grounded(a)) return false;
      return true;
    default:
      return true;
  }
}

TermPtr subst_term(const TermPtr& t, const std::string& var, const TermPtr& value) {
  switch (t->kind()) {
    case Term::Kind::Variable:
      return t->name() == var ? value : t;
    case Term::Kind::FunctionApp: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) {
        auto na = subst_term(a, var, value);
        changed = changed || na.get() != a.get();
        args.push_back(std::move(na));
      }
      return changed ? Term::apply(t->fn(), std::move(args)) : t;
    }
    default:
      return t;
  }
}

FormulaPtr subst(const FormulaPtr& f, const std::string& var, const TermPtr& value) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      auto l = subst_term(f->lhs(), var, value);
      auto r = subst_term(f->rhs(), var, value);
      if (l.get() == f->lhs().get() && r.get() == f->rhs().get()) return f;
      return Formula::atom(f->rel(), std::move(l), std::move(r));
    }
    case Formula::Kind::Not: {
      auto a = subst(f->child(), var, value);
      return a.get() == f->child().get() ? f : Formula::negation(std::move(a));
    }
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies: {
      auto l = subst(f->left(), var, value);
      auto r = subst(f->right(), var, value);
      if (l.get() == f->left().get() && r.get() == f->right().get()) return f;
      if (f->kind() == Formula::Kind::And) return Formula::conj(std::move(l), std::move(r));
      if (f->kind() == Formula::Kind::Or) return Formula::disj(std::move(l), std::move(r));
      return Formula::implies(std::move(l), std::move(r));
    }
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists: {
      // The bound term lies outside the variable's scope; the body is touched
      // only when the quantifier does not shadow `var`.
      TermPtr nb = f->bound() ? subst_term(f->bound(), var, value) : nullptr;
      FormulaPtr body = (f->var() == var) ? f->child() : subst(f->child(), var, value);
      if ((!f->bound() || nb.get() == f->bound().get()) && body.get() == f->child().get()) return f;
      switch (f->kind()) {
        case Formula::Kind::ForAll: return Formula::forall(f->var(), std::move(body));
        case Formula::Kind::Exists: return Formula::exists(f->var(), std::move(body));
        case Formula::Kind::BoundedForAll:
          return Formula::bounded_forall(f->var(), std::move(nb), std::move(body));
        default:
          return Formula::bounded_exists(f->var(), std::move(nb), std::move(body));
      }
    }
  }
  return f;
}

// ---- alpha-canonical form ----

namespace {

// Names of the shape 'k are unreachable from the parser, so canonical forms
// never collide with user variables.
std::string canon_name(int depth) { return "'" + std::to_string(depth); }

TermPtr canon_term(const TermPtr& t, const std::map<std::string, std::string>& ren) {
  switch (t->kind()) {
    case Term::Kind::Variable: {
      auto it = ren.find(t->name());
      return it == ren.end() ? t : Term::variable(it->second);
    }
    case Term::Kind::FunctionApp: {
      std::vector<TermPtr> args;
      args.reserve(t->args().size());
      for (const auto& a : t->args()) args.push_back(canon_term(a, ren));
      return Term::apply(t->fn(), std::move(args));
    }
    default:
      return t;
  }
}

FormulaPtr canon_formula(const FormulaPtr& f, std::map<std::string, std::string>& ren, int depth) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      return Formula::atom(f->rel(), canon_term(f->lhs(), ren), canon_term(f->rhs(), ren));
    case Formula::Kind::Not:
      return Formula::negation(canon_formula(f->child(), ren, depth));
    case Formula::Kind::And:
      return Formula::conj(canon_formula(f->left(), ren, depth),
                           canon_formula(f->right(), ren, depth));
    case Formula::Kind::Or:
      return Formula::disj(canon_formula(f->left(), ren, depth),
                           canon_formula(f->right(), ren, depth));
    case Formula::Kind::Implies:
      return Formula::implies(canon_formula(f->left(), ren, depth),
                              canon_formula(f->right(), ren, depth));
    default: {
      TermPtr nb = f->bound() ? canon_term(f->bound(), ren) : nullptr;
      std::string fresh = canon_name(depth);
      auto it = ren.find(f->var());
      std::optional<std::string> saved;
      if (it != ren.end()) saved = it->second;
      ren[f->var()] = fresh;
      FormulaPtr body = canon_formula(f->child(), ren, depth + 1);
      if (saved)
        ren[f->var()] = *saved;
      else
        ren.erase(f->var());
      switch (f->kind()) {
        case Formula::Kind::ForAll: return Formula::forall(fresh, std::move(body));
        case Formula::Kind::Exists: return Formula::exists(fresh, std::move(body));
        case Formula::Kind::BoundedForAll:
          return Formula::bounded_forall(fresh, std::move(nb), std::move(body));
        default:
          return Formula::bounded_exists(fresh, std::move(nb), std::move(body));
      }
    }
  }
}

}  // namespace

FormulaPtr canonical(const FormulaPtr& f) {
  std::map<std::string, std::string> ren;
  return canon_formula(f, ren, 0);
}

std::string canonical_key(const FormulaPtr& f) { return print_formula(canonical(f)); }

// ---- printer ----

namespace {

// Term printing: `+` is left-associative, so a right-nested add is
// parenthesized; all other applications are prefix calls.
void print_term_rec(const TermPtr& t, std::string& out, bool paren_add) {
  switch (t->kind()) {
    case Term::Kind::Constant:
      out += 'C';
      out += static_cast<char>('0' + t->constant_value());
      break;
    case Term::Kind::Variable:
      out += t->name();
      break;
    case Term::Kind::Parameter:
      out += '#';
      out += t->name();
      break;
    case Term::Kind::FunctionApp:
      if (t->fn() == Fn::Add) {
        if (paren_add) out += '(';
        print_term_rec(t->args()[0], out, false);
        out += " + ";
        print_term_rec(t->args()[1], out, true);
        if (paren_add) out += ')';
      } else {
        out += fn_name(t->fn());
        out += '(';
        for (std::size_t i = 0; i < t->args().size(); ++i) {
          if (i) out += ", ";
          print_term_rec(t->args()[i], out, false);
        }
        out += ')';
      }
      break;
  }
}

// Precedence levels: quantifiers 0, -> 1, | 2, & 3, ~ 4, atoms 5.
// A subformula is parenthesized when its level is below the context's.
void print_formula_rec(const FormulaPtr& f, std::string& out, int context) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      print_term_rec(f->lhs(), out, false);
      out += f->rel() == Rel::Eq ? " = " : " <= ";
      print_term_rec(f->rhs(), out, false);
      break;
    case Formula::Kind::Not:
      if (context > 4) out += '(';
      out += '~';
      print_formula_rec(f->child(), out, 4);
      if (context > 4) out += ')';
      break;
    case Formula::Kind::And: {
      bool paren = context > 3;
      if (paren) out += '(';
      print_formula_rec(f->left(), out, 3);
      out += " & ";
      print_formula_rec(f->right(), out, 4);
      if (paren) out += ')';
      break;
    }
    case Formula::Kind::Or: {
      bool paren = context > 2;
      if (paren) out += '(';
      print_formula_rec(f->left(), out, 2);
      out += " | ";
      print_formula_rec(f->right(), out, 3);
      if (paren) out += ')';
      break;
    }
    case Formula::Kind::Implies: {
      bool paren = context > 1;
      if (paren) out += '(';
      print_formula_rec(f->left(), out, 2);
      out += " -> ";
      print_formula_rec(f->right(), out, 1);  // right-associative
      if (paren) out += ')';
      break;
    }
    default: {
      bool paren = context > 0;
      if (paren) out += '(';
      bool universal =
          f->kind() == Formula::Kind::ForAll || f->kind() == Formula::Kind::BoundedForAll;
      out += universal ? "A " : "E ";
      out += f->var();
      if (f->bound()) {
        out += " <= ";
        print_term_rec(f->bound(), out, false);
      }
      out += ". ";
      print_formula_rec(f->child(), out, 0);
      if (paren) out += ')';
      break;
    }
  }
}

}  // namespace

std::string print_term(const TermPtr& t) {
  std::string out;
  print_term_rec(t, out, false);
  return out;
}

std::string print_formula(const FormulaPtr& f) {
  std::string out;
  print_formula_rec(f, out, 0);
  return out;
}

// ---- parser ----

namespace {

enum class Tok : std::uint8_t {
  End, LParen, RParen, Comma, Dot, Eq, Le, Plus, Arrow, Tilde, Amp, Pipe, Hash,
  Ident, Const, KwForAll, KwExists
};

struct Token {
  Tok kind;
  std::string text;  // identifier body or constant name
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(&src) { advance(); }

  const Token& peek() const { return cur_; }
  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

 private:
  const std::string* src_;  // pointer so the lexer stays copy-assignable for backtracking
  std::size_t pos_ = 0;
  int line_ = 1, col_ = 1;
  Token cur_{};

  const std::string& src() const { return *src_; }

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, line_, col_); }

  void advance() {
    while (pos_ < src().size() && std::isspace(static_cast<unsigned char>(src()[pos_]))) bump();
    cur_.line = line_;
    cur_.col = col_;
    if (pos_ >= src().size()) {
      cur_.kind = Tok::End;
      cur_.text.clear();
      return;
    }
    char c = src()[pos_];
    switch (c) {
      case '(': bump(); cur_.kind = Tok::LParen; return;
      case ')': bump(); cur_.kind = Tok::RParen; return;
      case ',': bump(); cur_.kind = Tok::Comma; return;
      case '.': bump(); cur_.kind = Tok::Dot; return;
      case '=': bump(); cur_.kind = Tok::Eq; return;
      case '+': bump(); cur_.kind = Tok::Plus; return;
      case '~': bump(); cur_.kind = Tok::Tilde; return;
      case '&': bump(); cur_.kind = Tok::Amp; return;
      case '|': bump(); cur_.kind = Tok::Pipe; return;
      case '#': bump(); cur_.kind = Tok::Hash; return;
      case '<':
        bump();
        if (pos_ < src().size() && src()[pos_] == '=') {
          bump();
          cur_.kind = Tok::Le;
          return;
        }
        fail("expected '<='");
      case '-':
        bump();
        if (pos_ < src().size() && src()[pos_] == '>') {
          bump();
          cur_.kind = Tok::Arrow;
          return;
        }
        fail("expected '->'");
      default:
        break;
    }
    if (c == 'A' || c == 'E' || c == 'C') {
      // uppercase alphabet is reserved for quantifier keywords and constants
      if (c == 'A') { bump(); cur_.kind = Tok::KwForAll; return; }
      if (c == 'E') { bump(); cur_.kind = Tok::KwExists; return; }
      bump();
      if (pos_ < src().size() && src()[pos_] >= '0' && src()[pos_] <= '2') {
        cur_.kind = Tok::Const;
        cur_.text = std::string("C") + src()[pos_];
        bump();
        return;
      }
      fail("expected C0, C1 or C2");
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      cur_.kind = Tok::Ident;
      cur_.text.clear();
      while (pos_ < src().size() &&
             (std::islower(static_cast<unsigned char>(src()[pos_])) ||
              std::isdigit(static_cast<unsigned char>(src()[pos_])) || src()[pos_] == '_')) {
        cur_.text += src()[pos_];
        bump();
      }
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  void bump() {
    if (src()[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }
};

const std::map<std::string, Fn>& fn_table() {
  static const std::map<std::string, Fn> table = {
      {"sub", Fn::Sub}, {"div", Fn::Div},     {"pred", Fn::Pred}, {"max", Fn::Max},
      {"log", Fn::Log}, {"root", Fn::Root},   {"count", Fn::Count}, {"bit", Fn::Bit},
      {"double", Fn::Double},
      {"add", Fn::Add},  // parse-time alias; the canonical rendering is infix '+'
  };
  return table;
}

class Parser {
 public:
  Parser(const std::string& src, bool allow_params) : lex_(src), allow_params_(allow_params) {}

  TermPtr parse_term_all() {
    auto t = parse_add();
    expect_end();
    return t;
  }

  FormulaPtr parse_formula_all() {
    auto f = parse_implies();
    expect_end();
    return f;
  }

 private:
  Lexer lex_;
  bool allow_params_;

  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(msg, lex_.peek().line, lex_.peek().col);
  }

  void expect_end() {
    if (lex_.peek().kind != Tok::End) fail("trailing input");
  }

  Token expect(Tok k, const char* what) {
    if (lex_.peek().kind != k) fail(std::string("expected ") + what);
    return lex_.take();
  }

  // formula := implies
  FormulaPtr parse_implies() {
    auto lhs = parse_or();
    if (lex_.peek().kind == Tok::Arrow) {
      lex_.take();
      return Formula::implies(std::move(lhs), parse_implies());
    }
    return lhs;
  }

  FormulaPtr parse_or() {
    auto lhs = parse_and();
    while (lex_.peek().kind == Tok::Pipe) {
      lex_.take();
      lhs = Formula::disj(std::move(lhs), parse_and());
    }
    return lhs;
  }

  FormulaPtr parse_and() {
    auto lhs = parse_unary();
    while (lex_.peek().kind == Tok::Amp) {
      lex_.take();
      lhs = Formula::conj(std::move(lhs), parse_unary());
    }
    return lhs;
  }

  FormulaPtr parse_unary() {
    switch (lex_.peek().kind) {
      case Tok::Tilde:
        lex_.take();
        return Formula::negation(parse_unary());
      case Tok::KwForAll:
      case Tok::KwExists: {
        bool universal = lex_.take().kind == Tok::KwForAll;
        Token v = expect(Tok::Ident, "quantifier variable");
        if (fn_table().count(v.text))
          throw ParseError("reserved function name '" + v.text + "' used as variable", v.line, v.col);
        TermPtr bound;
        if (lex_.peek().kind == Tok::Le) {
          lex_.take();
          bound = parse_add();
        }
        expect(Tok::Dot, "'.'");
        auto body = parse_implies();
        try {
          if (bound)
            return universal ? Formula::bounded_forall(v.text, std::move(bound), std::move(body))
                             : Formula::bounded_exists(v.text, std::move(bound), std::move(body));
          return universal ? Formula::forall(v.text, std::move(body))
                           : Formula::exists(v.text, std::move(body));
        } catch (const Error& e) {
          throw ParseError(e.what(), v.line, v.col);
        }
      }
      default:
        return parse_primary();
    }
  }

  // primary := "(" formula ")" | atom. A "(" may also open a parenthesized
  // term acting as an atom operand; an atom parse is attempted first and the
  // formula reading is used only if the term reading fails to see a relation.
  FormulaPtr parse_primary() {
    if (lex_.peek().kind == Tok::LParen) {
      // Try the formula reading by scanning ahead: after a balanced ")" an
      // atom continues with '=' '<=' or '+', a formula never does.
      // We re-lex from a copy for the chosen alternative.
      return parse_paren_or_atom();
    }
    return parse_atom();
  }

  FormulaPtr parse_paren_or_atom() {
    // Save lexer state by value; Lexer is cheap to copy (holds a reference
    // and scalar cursor state).
    Lexer saved = lex_;
    lex_.take();  // '('
    try {
      auto f = parse_implies();
      expect(Tok::RParen, "')'");
      switch (lex_.peek().kind) {
        case Tok::Eq:
        case Tok::Le:
        case Tok::Plus:
          break;  // actually a term in parentheses; fall through to atom
        default:
          return f;
      }
    } catch (const ParseError&) {
      // fall through to the atom reading
    }
    lex_ = saved;
    return parse_atom();
  }

  FormulaPtr parse_atom() {
    auto l = parse_add();
    Tok k = lex_.peek().kind;
    if (k != Tok::Eq && k != Tok::Le) fail("expected '=' or '<='");
    lex_.take();
    auto r = parse_add();
    return Formula::atom(k == Tok::Eq ? Rel::Eq : Rel::Le, std::move(l), std::move(r));
  }

  TermPtr parse_add() {
    auto lhs = parse_term_primary();
    while (lex_.peek().kind == Tok::Plus) {
      lex_.take();
      lhs = Term::add(std::move(lhs), parse_term_primary());
    }
    return lhs;
  }

  TermPtr parse_term_primary() {
    switch (lex_.peek().kind) {
      case Tok::Const: {
        Token t = lex_.take();
        return Term::constant(t.text[1] - '0');
      }
      case Tok::Hash: {
        Token h = lex_.take();
        if (!allow_params_)
          throw ParseError("parameter symbols are not allowed in this input", h.line, h.col);
        Token v = expect(Tok::Ident, "parameter name");
        return Term::parameter(v.text);
      }
      case Tok::LParen: {
        lex_.take();
        auto t = parse_add();
        expect(Tok::RParen, "')'");
        return t;
      }
      case Tok::Ident: {
        Token id = lex_.take();
        auto it = fn_table().find(id.text);
        if (it != fn_table().end()) {
          if (lex_.peek().kind != Tok::LParen)
            throw ParseError("reserved function name '" + id.text + "' used as variable", id.line,
                             id.col);
          lex_.take();
          std::vector<TermPtr> args;
          args.push_back(parse_add());
          while (lex_.peek().kind == Tok::Comma) {
            lex_.take();
            args.push_back(parse_add());
          }
          Token close = expect(Tok::RParen, "')'");
          try {
            return Term::apply(it->second, std::move(args));
          } catch (const ArityError& e) {
            throw ParseError(e.what(), id.line, id.col);
          }
          (void)close;
        }
        if (lex_.peek().kind == Tok::LParen)
          throw ParseError("unknown function symbol '" + id.text + "'", id.line, id.col);
        return Term::variable(id.text);
      }
      default:
        fail("expected a term");
    }
  }
};

}  // namespace

TermPtr parse_term(const std::string& text, bool allow_parameters) {
  Parser p(text, allow_parameters);
  return p.parse_term_all();
}

FormulaPtr parse_formula(const std::string& text, bool allow_parameters) {
  Parser p(text, allow_parameters);
  return p.parse_formula_all();
}

}  // namespace lstar::lang
