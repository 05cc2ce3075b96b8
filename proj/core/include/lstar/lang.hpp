#pragma once

// Abstract and concrete syntax for the bounded-arithmetic language: terms over
// the three constants and the ten grounding/growth function symbols, formulas
// with both bounded and unbounded quantifiers, a canonical printer and a
// whitespace-insensitive parser that round-trip each other.

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "lstar/error.hpp"

namespace lstar::lang {

enum class Fn : std::uint8_t { Sub, Div, Pred, Max, Log, Root, Count, Bit, Add, Double };

int fn_arity(Fn f);
const char* fn_name(Fn f);

class Term;
using TermPtr = std::shared_ptr<const Term>;

class Term {
 public:
  enum class Kind : std::uint8_t { Constant, Variable, Parameter, FunctionApp };

  Kind kind() const { return kind_; }
  int constant_value() const { return cval_; }         // 0, 1 or 2
  const std::string& name() const { return name_; }    // Variable / Parameter
  Fn fn() const { return fn_; }
  const std::vector<TermPtr>& args() const { return args_; }
  std::size_t hash() const { return hash_; }

  static TermPtr constant(int value);                  // C0 / C1 / C2
  static TermPtr variable(std::string name);
  static TermPtr parameter(std::string name);
  static TermPtr apply(Fn f, std::vector<TermPtr> args);  // throws ArityError

  static TermPtr c0() { return constant(0); }
  static TermPtr c1() { return constant(1); }
  static TermPtr c2() { return constant(2); }
  static TermPtr add(TermPtr a, TermPtr b) { return apply(Fn::Add, {std::move(a), std::move(b)}); }
  static TermPtr dbl(TermPtr a) { return apply(Fn::Double, {std::move(a)}); }

 private:
  Kind kind_;
  int cval_ = 0;
  std::string name_;
  Fn fn_ = Fn::Sub;
  std::vector<TermPtr> args_;
  std::size_t hash_ = 0;

  Term() = default;
  friend class TermFactory;
};

bool equal(const TermPtr& a, const TermPtr& b);

enum class Rel : std::uint8_t { Eq, Le };

class Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

class Formula {
 public:
  enum class Kind : std::uint8_t {
    Atom, Not, And, Or, Implies, ForAll, Exists, BoundedForAll, BoundedExists
  };

  Kind kind() const { return kind_; }
  Rel rel() const { return rel_; }
  const TermPtr& lhs() const { return lhs_; }
  const TermPtr& rhs() const { return rhs_; }
  const FormulaPtr& child() const { return a_; }       // Not and quantifier bodies
  const FormulaPtr& left() const { return a_; }
  const FormulaPtr& right() const { return b_; }
  const std::string& var() const { return var_; }      // quantifiers
  const TermPtr& bound() const { return bound_; }      // bounded quantifiers
  std::size_t hash() const { return hash_; }

  bool is_quantifier() const {
    return kind_ == Kind::ForAll || kind_ == Kind::Exists ||
           kind_ == Kind::BoundedForAll || kind_ == Kind::BoundedExists;
  }
  bool is_bounded_quantifier() const {
    return kind_ == Kind::BoundedForAll || kind_ == Kind::BoundedExists;
  }

  static FormulaPtr atom(Rel rel, TermPtr lhs, TermPtr rhs);
  static FormulaPtr negation(FormulaPtr f);
  static FormulaPtr conj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr disj(FormulaPtr a, FormulaPtr b);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr forall(std::string var, FormulaPtr body);
  static FormulaPtr exists(std::string var, FormulaPtr body);
  // The bound term must not contain the bound variable; throws Error otherwise.
  static FormulaPtr bounded_forall(std::string var, TermPtr bound, FormulaPtr body);
  static FormulaPtr bounded_exists(std::string var, TermPtr bound, FormulaPtr body);

  static FormulaPtr eq(TermPtr l, TermPtr r) { return atom(Rel::Eq, std::move(l), std::move(r)); }
  static FormulaPtr le(TermPtr l, TermPtr r) { return atom(Rel::Le, std::move(l), std::move(r)); }

 private:
  Kind kind_;
  Rel rel_ = Rel::Eq;
  TermPtr lhs_, rhs_, bound_;
  FormulaPtr a_, b_;
  std::string var_;
  std::size_t hash_ = 0;

  Formula() = default;
  friend class FormulaFactory;
};

bool equal(const FormulaPtr& a, const FormulaPtr& b);

// Free variables; variables inside a bounded quantifier's bound term count as
// free occurrences of the enclosing scope.
std::set<std::string> free_vars(const FormulaPtr& f);
std::set<std::string> term_vars(const TermPtr& t);
bool is_closed(const FormulaPtr& f);

// Parameter symbols occurring anywhere in the formula.
std::set<std::string> parameters_of(const FormulaPtr& f);

bool term_contains_var(const TermPtr& t, const std::string& name);

// A U-grounded term: parameters, constants, and function applications only
// (no variables). These are the terms rules 7/8 may instantiate with.
bool is_u_grounded(const TermPtr& t);

// Substitution of a closed term for the free occurrences of a variable.
TermPtr subst_term(const TermPtr& t, const std::string& var, const TermPtr& value);
FormulaPtr subst(const FormulaPtr& f, const std::string& var, const TermPtr& value);

// Alpha-canonical form: bound variables renamed to positional names that
// cannot appear in parsed input. Alpha-equivalent formulas map to equal
// canonical forms; used for branch closure and axiom membership.
FormulaPtr canonical(const FormulaPtr& f);
std::string canonical_key(const FormulaPtr& f);

std::string print_term(const TermPtr& t);
std::string print_formula(const FormulaPtr& f);

// Parsing. Parameters ("#name") are accepted only when allow_parameters is
// set; user-facing input keeps them unreachable so freshness stays a
// construction-time guarantee of the proof rules.
TermPtr parse_term(const std::string& text, bool allow_parameters = false);
FormulaPtr parse_formula(const std::string& text, bool allow_parameters = false);

}  // namespace lstar::lang
