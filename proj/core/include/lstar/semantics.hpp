#pragma once

// Exact standard-model semantics: arbitrary-precision evaluation of ground
// terms and the bounded-quantifier decision procedure for Δ₀* sentences.

#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "lstar/lang.hpp"

namespace lstar::semantics {

using BigNat = boost::multiprecision::cpp_int;  // kept non-negative by every operation here

// The ten grounding/growth functions. Subtraction saturates at zero,
// division by zero returns the dividend, Root(x,0) = x, Log is the binary
// length, Bit is 1-based with bit(x,0) = 0 so that
// bit(x,i) = count(x,i) - count(x,i-1) holds verbatim.
BigNat g_sub(const BigNat& x, const BigNat& y);
BigNat g_div(const BigNat& x, const BigNat& y);
BigNat g_pred(const BigNat& x);
BigNat g_max(const BigNat& x, const BigNat& y);
BigNat g_log(const BigNat& x);
BigNat g_root(const BigNat& x, const BigNat& y);
BigNat g_count(const BigNat& x, const BigNat& j);
BigNat g_bit(const BigNat& x, const BigNat& i);
BigNat g_add(const BigNat& x, const BigNat& y);
BigNat g_double(const BigNat& x);

class Environment {
 public:
  void assign(const std::string& name, BigNat value);
  void unassign(const std::string& name);
  const BigNat* lookup(const std::string& name) const;  // nullptr when absent
  bool empty() const { return values_.empty(); }

 private:
  std::map<std::string, BigNat> values_;
};

// Evaluates a term whose variables and parameters are all assigned.
// Throws EvalError on an unassigned name.
BigNat eval_term(const lang::TermPtr& t, const Environment& env);

// Closed numeral built from C1, add and double (C0 for n = 0); the
// function-symbol count is at most 2*floor(log2(max(n,1))) + 2.
lang::TermPtr encode_nat(const BigNat& n);

// Number of function applications in a term (constants/variables excluded).
std::uint64_t function_symbol_count(const lang::TermPtr& t);

bool is_delta0(const lang::FormulaPtr& f);

struct DecideLimits {
  std::uint64_t assignment_ceiling = 1'000'000;
  std::uint64_t assignments_used = 0;
};

// Truth of a Δ₀* formula under env; every bounded quantifier enumerates
// 0..eval(bound) inclusive with short-circuiting, charging one assignment
// per tried value against the ceiling.
bool holds(const lang::FormulaPtr& f, Environment& env, DecideLimits& limits);

// Decision procedure for closed Δ₀* sentences.
bool decide_delta0(const lang::FormulaPtr& sentence,
                   std::uint64_t assignment_ceiling = 1'000'000);

}  // namespace lstar::semantics
