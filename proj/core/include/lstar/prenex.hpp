#pragma once

// Classification of sentences into Δ₀*/Π_i*/Σ_i* and the equivalence-
// preserving normalization that moves every unbounded quantifier into a
// leading prefix while bounded quantifiers stay inside the matrix.

#include <string>

#include "lstar/lang.hpp"
#include "lstar/semantics.hpp"

namespace lstar::prenex {

struct PrenexClass {
  enum class Shape { Delta0, Pi, Sigma };
  Shape shape = Shape::Delta0;
  int rank = 0;         // 0 for Delta0, >= 1 otherwise
  bool minimal = true;  // rank is the least syntactically attainable one

  std::string to_string() const;
  bool operator==(const PrenexClass&) const = default;
};

// Reads the unbounded prefix of a Prenex* sentence left to right and returns
// its minimal alternation class. Throws NotPrenexError when an unbounded
// quantifier occurs under a connective or bounded quantifier (callers should
// normalize with to_prenex first).
PrenexClass classify(const lang::FormulaPtr& sentence);

// True when the sentence counts as Π_j* (resp. Σ_j*) for the given j under
// the Def. 3.3 inclusion chain (Δ₀* is every class; Π_i ⊆ Σ_{i+1} etc.).
bool within_pi(const PrenexClass& c, int j);
bool within_sigma(const PrenexClass& c, int j);
// Sentence classifiable with rank <= k (either shape).
bool rank_at_most(const PrenexClass& c, int k);

// Prenex* normalization of a closed sentence. Bound variables are renamed
// apart; implication antecedents flip polarity; an unbounded quantifier under
// a bounded one is extracted with a fresh outer bound variable
// (A v <= s. E u. f  becomes  E z. A v <= s. E u <= z. f and dually).
lang::FormulaPtr to_prenex(const lang::FormulaPtr& sentence);

// Replaces every unbounded quantifier by a bounded one at the numeral for B.
// The result of a closed input is Δ₀*; used as the semantic-preservation
// oracle for to_prenex.
lang::FormulaPtr truncate(const lang::FormulaPtr& f, const semantics::BigNat& B);

}  // namespace lstar::prenex
