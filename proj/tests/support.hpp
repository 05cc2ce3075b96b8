#pragma once

// Shared test machinery: seeded random formula/term generators and the naive
// independent re-implementation of the Δ₀* decision used as an oracle. The
// oracle deliberately shares no code with the engine's evaluator.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "lstar/lang.hpp"
#include "lstar/semantics.hpp"

namespace testsupport {

using lstar::lang::Formula;
using lstar::lang::FormulaPtr;
using lstar::lang::Term;
using lstar::lang::TermPtr;
using Rng = std::mt19937_64;

inline int pick(Rng& rng, int n) { return static_cast<int>(rng() % n); }

// ---- random terms/formulas ----

inline TermPtr random_term(Rng& rng, const std::vector<std::string>& vars, int depth) {
  int r = pick(rng, depth > 0 ? 10 : 4);
  switch (r) {
    case 0: return Term::c0();
    case 1: return Term::c1();
    case 2: return Term::c2();
    case 3:
      if (!vars.empty()) return Term::variable(vars[pick(rng, static_cast<int>(vars.size()))]);
      return Term::c1();
    default: {
      auto fn = static_cast<lstar::lang::Fn>(pick(rng, 10));
      std::vector<TermPtr> args;
      for (int i = 0; i < lstar::lang::fn_arity(fn); ++i)
        args.push_back(random_term(rng, vars, depth - 1));
      return Term::apply(fn, std::move(args));
    }
  }
}

// Random Δ₀* formula over the given scope; bounds are small numerals or
// scope variables so enumeration stays cheap.
inline FormulaPtr random_delta0(Rng& rng, std::vector<std::string> vars, int depth,
                                int max_bound = 8) {
  if (depth <= 0) {
    auto l = random_term(rng, vars, 1);
    auto r = random_term(rng, vars, 1);
    return Formula::atom(pick(rng, 2) ? lstar::lang::Rel::Eq : lstar::lang::Rel::Le, l, r);
  }
  switch (pick(rng, 8)) {
    case 0: {
      auto l = random_term(rng, vars, 2);
      auto r = random_term(rng, vars, 2);
      return Formula::atom(pick(rng, 2) ? lstar::lang::Rel::Eq : lstar::lang::Rel::Le, l, r);
    }
    case 1:
      return Formula::negation(random_delta0(rng, vars, depth - 1, max_bound));
    case 2:
      return Formula::conj(random_delta0(rng, vars, depth - 1, max_bound),
                           random_delta0(rng, vars, depth - 1, max_bound));
    case 3:
      return Formula::disj(random_delta0(rng, vars, depth - 1, max_bound),
                           random_delta0(rng, vars, depth - 1, max_bound));
    case 4:
      return Formula::implies(random_delta0(rng, vars, depth - 1, max_bound),
                              random_delta0(rng, vars, depth - 1, max_bound));
    default: {
      std::string v = "b" + std::to_string(vars.size());
      TermPtr bound;
      if (!vars.empty() && pick(rng, 3) == 0)
        bound = Term::variable(vars[pick(rng, static_cast<int>(vars.size()))]);
      else
        bound = lstar::semantics::encode_nat(lstar::semantics::BigNat(pick(rng, max_bound + 1)));
      vars.push_back(v);
      auto body = random_delta0(rng, vars, depth - 1, max_bound);
      return pick(rng, 2) ? Formula::bounded_forall(v, bound, body)
                          : Formula::bounded_exists(v, bound, body);
    }
  }
}

// Closed Δ₀* sentence.
inline FormulaPtr random_delta0_sentence(Rng& rng, int depth = 3, int max_bound = 8) {
  return random_delta0(rng, {}, depth, max_bound);
}

// Closed sentence that may also use unbounded quantifiers (kept shallow).
inline FormulaPtr random_sentence(Rng& rng, std::vector<std::string> vars, int depth,
                                  int quantifiers_left) {
  if (depth <= 0 || (quantifiers_left == 0 && pick(rng, 2) == 0))
    return random_delta0(rng, vars, std::max(depth, 1), 6);
  switch (pick(rng, 7)) {
    case 0:
      return Formula::negation(random_sentence(rng, vars, depth - 1, quantifiers_left));
    case 1:
      return Formula::conj(random_sentence(rng, vars, depth - 1, quantifiers_left),
                           random_sentence(rng, vars, depth - 1, quantifiers_left));
    case 2:
      return Formula::disj(random_sentence(rng, vars, depth - 1, quantifiers_left),
                           random_sentence(rng, vars, depth - 1, quantifiers_left));
    case 3:
      return Formula::implies(random_sentence(rng, vars, depth - 1, quantifiers_left),
                              random_sentence(rng, vars, depth - 1, quantifiers_left));
    case 4:
    case 5: {
      if (quantifiers_left == 0) return random_delta0(rng, vars, depth - 1, 6);
      std::string v = "u" + std::to_string(vars.size());
      vars.push_back(v);
      auto body = random_sentence(rng, vars, depth - 1, quantifiers_left - 1);
      return pick(rng, 2) ? Formula::forall(v, body) : Formula::exists(v, body);
    }
    default: {
      std::string v = "w" + std::to_string(vars.size());
      TermPtr bound = lstar::semantics::encode_nat(lstar::semantics::BigNat(pick(rng, 5)));
      vars.push_back(v);
      auto body = random_sentence(rng, vars, depth - 1, quantifiers_left);
      return pick(rng, 2) ? Formula::bounded_forall(v, bound, body)
                          : Formula::bounded_exists(v, bound, body);
    }
  }
}

inline FormulaPtr random_closed_sentence(Rng& rng, int depth = 3, int quantifiers = 2) {
  return random_sentence(rng, {}, depth, quantifiers);
}

// A Δ₀* sentence true in the standard model (negates a false draw).
inline FormulaPtr random_true_delta0(Rng& rng, int depth = 3) {
  FormulaPtr f = random_delta0_sentence(rng, depth, 6);
  try {
    return lstar::semantics::decide_delta0(f) ? f : Formula::negation(f);
  } catch (const lstar::Error&) {
    return Formula::eq(Term::c0(), Term::c0());
  }
}

// ---- naive decision oracle (structural recursion written twice) ----

using Big = lstar::semantics::BigNat;

struct NaiveEnv {
  std::vector<std::pair<std::string, Big>> stack;
  const Big* find(const std::string& n) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it)
      if (it->first == n) return &it->second;
    return nullptr;
  }
};

inline Big naive_eval(const TermPtr& t, const NaiveEnv& env) {
  using lstar::lang::Fn;
  switch (t->kind()) {
    case Term::Kind::Constant:
      return Big(t->constant_value());
    case Term::Kind::Variable:
    case Term::Kind::Parameter: {
      const Big* v = env.find(t->name());
      if (!v) throw lstar::Error("naive: unassigned " + t->name());
      return *v;
    }
    case Term::Kind::FunctionApp: {
      auto arg = [&](int i) { return naive_eval(t->args()[i], env); };
      switch (t->fn()) {
        case Fn::Sub: {
          Big a = arg(0), b = arg(1);
          return a > b ? Big(a - b) : Big(0);
        }
        case Fn::Div: {
          Big a = arg(0), b = arg(1);
          if (b == 0) return a;
          Big q = 0;
          while (a >= b) {
            a -= b;
            ++q;
          }
          return q;
        }
        case Fn::Pred: {
          Big a = arg(0);
          return a > 0 ? Big(a - 1) : Big(0);
        }
        case Fn::Max: {
          Big a = arg(0), b = arg(1);
          return a > b ? a : b;
        }
        case Fn::Log: {
          Big a = arg(0), n = 0, p = 1;
          while (p < a + 1) {
            p *= 2;
            ++n;
          }
          return n;
        }
        case Fn::Root: {
          Big a = arg(0), b = arg(1);
          if (b == 0) return a;
          Big r = 0;
          while (true) {
            Big next = r + 1, pw = 1;
            for (Big i = 0; i < b; ++i) pw *= next;
            if (pw > a) break;
            r = next;
          }
          return r;
        }
        case Fn::Count: {
          Big a = arg(0), j = arg(1), ones = 0;
          for (Big i = 0; i < j && a > 0; ++i) {
            if (a % 2 == 1) ++ones;
            a /= 2;
          }
          return ones;
        }
        case Fn::Bit: {
          Big a = arg(0), i = arg(1);
          if (i == 0) return 0;
          for (Big k = 1; k < i; ++k) a /= 2;
          return a % 2;
        }
        case Fn::Add:
          return arg(0) + arg(1);
        case Fn::Double:
          return arg(0) * 2;
      }
      throw lstar::Error("naive: unreachable");
    }
  }
  throw lstar::Error("naive: unreachable");
}

inline bool naive_holds(const FormulaPtr& f, NaiveEnv& env) {
  using K = Formula::Kind;
  switch (f->kind()) {
    case K::Atom: {
      Big l = naive_eval(f->lhs(), env);
      Big r = naive_eval(f->rhs(), env);
      return f->rel() == lstar::lang::Rel::Eq ? l == r : l <= r;
    }
    case K::Not:
      return !naive_holds(f->child(), env);
    case K::And:
      return naive_holds(f->left(), env) && naive_holds(f->right(), env);
    case K::Or:
      return naive_holds(f->left(), env) || naive_holds(f->right(), env);
    case K::Implies:
      return !naive_holds(f->left(), env) || naive_holds(f->right(), env);
    case K::BoundedForAll:
    case K::BoundedExists: {
      bool universal = f->kind() == K::BoundedForAll;
      Big limit = naive_eval(f->bound(), env);
      for (Big v = 0; v <= limit; ++v) {
        env.stack.emplace_back(f->var(), v);
        bool sub = naive_holds(f->child(), env);
        env.stack.pop_back();
        if (universal && !sub) return false;
        if (!universal && sub) return true;
      }
      return universal;
    }
    default:
      throw lstar::Error("naive: unbounded quantifier");
  }
}

inline bool naive_decide(const FormulaPtr& sentence) {
  NaiveEnv env;
  return naive_holds(sentence, env);
}

}  // namespace testsupport
