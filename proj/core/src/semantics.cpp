#include "lstar/semantics.hpp"

#include <boost/multiprecision/integer.hpp>

namespace lstar::semantics {

using lang::Formula;
using lang::Term;

BigNat g_sub(const BigNat& x, const BigNat& y) { return x < y ? BigNat(0) : BigNat(x - y); }

BigNat g_div(const BigNat& x, const BigNat& y) { return y == 0 ? x : BigNat(x / y); }

BigNat g_pred(const BigNat& x) { return x == 0 ? BigNat(0) : BigNat(x - 1); }

BigNat g_max(const BigNat& x, const BigNat& y) { return x < y ? y : x; }

static std::uint64_t bit_length(const BigNat& x) {
  if (x == 0) return 0;
  return boost::multiprecision::msb(x) + 1;
}

BigNat g_log(const BigNat& x) {
  // ceil(log2(x+1)) equals the binary length of x
  return BigNat(bit_length(x));
}

BigNat g_root(const BigNat& x, const BigNat& y) {
  if (y == 0 || y == 1 || x == 0 || x == 1) return x;
  std::uint64_t bits = bit_length(x);
  if (y > bits) return 1;  // 2^y > x, so floor(x^(1/y)) = 1 for x >= 2
  unsigned e = static_cast<unsigned>(y);
  BigNat lo = 1, hi = BigNat(1) << (bits / e + 1);
  // binary search for the largest r with r^e <= x
  while (lo < hi) {
    BigNat mid = (lo + hi + 1) / 2;
    if (boost::multiprecision::pow(mid, e) <= x)
      lo = mid;
    else
      hi = mid - 1;
  }
  return lo;
}

BigNat g_count(const BigNat& x, const BigNat& j) {
  std::uint64_t bits = bit_length(x);
  std::uint64_t upto = j > bits ? bits : static_cast<std::uint64_t>(j);
  std::uint64_t ones = 0;
  for (std::uint64_t i = 0; i < upto; ++i)
    if (boost::multiprecision::bit_test(x, static_cast<unsigned>(i))) ++ones;
  return BigNat(ones);
}

BigNat g_bit(const BigNat& x, const BigNat& i) {
  if (i == 0) return 0;  // 1-based indexing; position zero carries no bit
  std::uint64_t bits = bit_length(x);
  if (i > bits) return 0;
  std::uint64_t idx = static_cast<std::uint64_t>(i) - 1;
  return boost::multiprecision::bit_test(x, static_cast<unsigned>(idx)) ? 1 : 0;
}

BigNat g_add(const BigNat& x, const BigNat& y) { return x + y; }

BigNat g_double(const BigNat& x) { return x << 1; }

void Environment::assign(const std::string& name, BigNat value) {
  values_[name] = std::move(value);
}

void Environment::unassign(const std::string& name) { values_.erase(name); }

const BigNat* Environment::lookup(const std::string& name) const {
  auto it = values_.find(name);
  return it == values_.end() ? nullptr : &it->second;
}

BigNat eval_term(const lang::TermPtr& t, const Environment& env) {
  switch (t->kind()) {
    case Term::Kind::Constant:
      return BigNat(t->constant_value());
    case Term::Kind::Variable:
    case Term::Kind::Parameter: {
      const BigNat* v = env.lookup(t->name());
      if (!v) throw EvalError("unassigned name '" + t->name() + "'");
      return *v;
    }
    case Term::Kind::FunctionApp: {
      const auto& a = t->args();
      switch (t->fn()) {
        case lang::Fn::Sub: return g_sub(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Div: return g_div(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Pred: return g_pred(eval_term(a[0], env));
        case lang::Fn::Max: return g_max(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Log: return g_log(eval_term(a[0], env));
        case lang::Fn::Root: return g_root(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Count: return g_count(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Bit: return g_bit(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Add: return g_add(eval_term(a[0], env), eval_term(a[1], env));
        case lang::Fn::Double: return g_double(eval_term(a[0], env));
      }
      throw Error("unreachable function symbol");
    }
  }
  throw Error("unreachable term kind");
}

lang::TermPtr encode_nat(const BigNat& n) {
  if (n < 0) throw Error("encode_nat of a negative value");
  if (n == 0) return Term::c0();
  if (n == 1) return Term::c1();
  BigNat half = n >> 1;
  auto inner = Term::dbl(encode_nat(half));
  if ((n & 1) != 0) return Term::add(Term::c1(), std::move(inner));
  return inner;
}

std::uint64_t function_symbol_count(const lang::TermPtr& t) {
  if (t->kind() != Term::Kind::FunctionApp) return 0;
  std::uint64_t n = 1;
  for (const auto& a : t->args()) n += function_symbol_count(a);
  return n;
}

bool is_delta0(const lang::FormulaPtr& f) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      return true;
    case Formula::Kind::Not:
      return is_delta0(f->child());
    case Formula::Kind::And:
    case Formula::Kind::Or:
    case Formula::Kind::Implies:
      return is_delta0(f->left()) && is_delta0(f->right());
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      return false;
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists:
      return is_delta0(f->child());
  }
  return false;
}

namespace {

class ScopedAssign {
 public:
  ScopedAssign(Environment& env, const std::string& name) : env_(env), name_(name) {
    if (const BigNat* old = env.lookup(name)) saved_ = *old;
  }
  ~ScopedAssign() {
    if (saved_)
      env_.assign(name_, *saved_);
    else
      env_.unassign(name_);
  }

 private:
  Environment& env_;
  std::string name_;
  std::optional<BigNat> saved_;
};

}  // namespace

bool holds(const lang::FormulaPtr& f, Environment& env, DecideLimits& limits) {
  switch (f->kind()) {
    case Formula::Kind::Atom: {
      BigNat l = eval_term(f->lhs(), env);
      BigNat r = eval_term(f->rhs(), env);
      return f->rel() == lang::Rel::Eq ? l == r : l <= r;
    }
    case Formula::Kind::Not:
      return !holds(f->child(), env, limits);
    case Formula::Kind::And:
      return holds(f->left(), env, limits) && holds(f->right(), env, limits);
    case Formula::Kind::Or:
      return holds(f->left(), env, limits) || holds(f->right(), env, limits);
    case Formula::Kind::Implies:
      return !holds(f->left(), env, limits) || holds(f->right(), env, limits);
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists:
      throw NotDelta0Error("unbounded quantifier in Δ₀* evaluation");
    case Formula::Kind::BoundedForAll:
    case Formula::Kind::BoundedExists: {
      bool universal = f->kind() == Formula::Kind::BoundedForAll;
      BigNat limit = eval_term(f->bound(), env);
      ScopedAssign guard(env, f->var());
      for (BigNat v = 0; v <= limit; ++v) {
        if (++limits.assignments_used > limits.assignment_ceiling)
          throw CeilingExceededError("enumeration ceiling of " +
                                     std::to_string(limits.assignment_ceiling) +
                                     " assignments exceeded");
        env.assign(f->var(), v);
        bool sub = holds(f->child(), env, limits);
        if (universal && !sub) return false;
        if (!universal && sub) return true;
      }
      return universal;
    }
  }
  throw Error("unreachable formula kind");
}

bool decide_delta0(const lang::FormulaPtr& sentence, std::uint64_t assignment_ceiling) {
  if (!is_delta0(sentence)) throw NotDelta0Error("sentence is not Δ₀*");
  if (!lang::is_closed(sentence)) throw NotClosedError("sentence has free variables");
  Environment env;
  DecideLimits limits;
  limits.assignment_ceiling = assignment_ceiling;
  return holds(sentence, env, limits);
}

}  // namespace lstar::semantics
