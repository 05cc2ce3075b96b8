#include "lstar/prenex.hpp"

#include <vector>

namespace lstar::prenex {

using lang::Formula;
using lang::FormulaPtr;
using lang::TermPtr;

std::string PrenexClass::to_string() const {
  switch (shape) {
    case Shape::Delta0: return "Delta0";
    case Shape::Pi: return "Pi(" + std::to_string(rank) + ")";
    case Shape::Sigma: return "Sigma(" + std::to_string(rank) + ")";
  }
  return "?";
}

PrenexClass classify(const lang::FormulaPtr& sentence) {
  FormulaPtr f = sentence;
  int blocks = 0;
  bool first_universal = false;
  bool in_block_universal = false;
  while (f->kind() == Formula::Kind::ForAll || f->kind() == Formula::Kind::Exists) {
    bool universal = f->kind() == Formula::Kind::ForAll;
    if (blocks == 0) {
      blocks = 1;
      first_universal = universal;
      in_block_universal = universal;
    } else if (universal != in_block_universal) {
      ++blocks;
      in_block_universal = universal;
    }
    f = f->child();
  }
  if (!semantics::is_delta0(f))
    throw NotPrenexError("matrix contains an unbounded quantifier; apply to_prenex first");
  PrenexClass c;
  if (blocks == 0) {
    c.shape = PrenexClass::Shape::Delta0;
    c.rank = 0;
  } else {
    c.shape = first_universal ? PrenexClass::Shape::Pi : PrenexClass::Shape::Sigma;
    c.rank = blocks;
  }
  c.minimal = true;
  return c;
}

bool within_pi(const PrenexClass& c, int j) {
  switch (c.shape) {
    case PrenexClass::Shape::Delta0: return true;
    case PrenexClass::Shape::Pi: return c.rank <= j;
    case PrenexClass::Shape::Sigma: return c.rank < j;  // Σ_i ⊆ Π_{i+1}
  }
  return false;
}

bool within_sigma(const PrenexClass& c, int j) {
  switch (c.shape) {
    case PrenexClass::Shape::Delta0: return true;
    case PrenexClass::Shape::Sigma: return c.rank <= j;
    case PrenexClass::Shape::Pi: return c.rank < j;  // Π_i ⊆ Σ_{i+1}
  }
  return false;
}

bool rank_at_most(const PrenexClass& c, int k) { return within_pi(c, k) || within_sigma(c, k); }

namespace {

struct Quant {
  bool universal;
  std::string var;
};

struct PrenexForm {
  std::vector<Quant> prefix;  // outermost first
  FormulaPtr matrix;          // Δ₀*
};

class Normalizer {
 public:
  FormulaPtr run(const FormulaPtr& f) {
    collect_names(f);
    FormulaPtr renamed = rename_apart(f);
    PrenexForm p = extract(renamed);
    FormulaPtr out = p.matrix;
    for (auto it = p.prefix.rbegin(); it != p.prefix.rend(); ++it)
      out = it->universal ? Formula::forall(it->var, out) : Formula::exists(it->var, out);
    return out;
  }

 private:
  int counter_ = 0;
  std::set<std::string> used_;

  std::string fresh() {
    std::string name;
    do {
      name = "v" + std::to_string(++counter_);
    } while (used_.count(name));
    used_.insert(name);
    return name;
  }

  void collect_names(const FormulaPtr& f) {
    switch (f->kind()) {
      case Formula::Kind::Atom:
        for (auto& v : lang::term_vars(f->lhs())) used_.insert(v);
        for (auto& v : lang::term_vars(f->rhs())) used_.insert(v);
        break;
      case Formula::Kind::Not:
        collect_names(f->child());
        break;
      case Formula::Kind::And:
      case Formula::Kind::Or:
      case Formula::Kind::Implies:
        collect_names(f->left());
        collect_names(f->right());
        break;
      default:
        used_.insert(f->var());
        if (f->bound())
          for (auto& v : lang::term_vars(f->bound())) used_.insert(v);
        collect_names(f->child());
        break;
    }
  }

  // Every bound variable gets a fresh name so prefixes can be concatenated
  // without capture.
  FormulaPtr rename_apart(const FormulaPtr& f) {
    switch (f->kind()) {
      case Formula::Kind::Atom:
        return f;
      case Formula::Kind::Not:
        return Formula::negation(rename_apart(f->child()));
      case Formula::Kind::And:
        return Formula::conj(rename_apart(f->left()), rename_apart(f->right()));
      case Formula::Kind::Or:
        return Formula::disj(rename_apart(f->left()), rename_apart(f->right()));
      case Formula::Kind::Implies:
        return Formula::implies(rename_apart(f->left()), rename_apart(f->right()));
      default: {
        std::string nv = fresh();
        FormulaPtr body = rename_apart(f->child());
        body = lang::subst(body, f->var(), lang::Term::variable(nv));
        switch (f->kind()) {
          case Formula::Kind::ForAll: return Formula::forall(nv, std::move(body));
          case Formula::Kind::Exists: return Formula::exists(nv, std::move(body));
          case Formula::Kind::BoundedForAll:
            return Formula::bounded_forall(nv, f->bound(), std::move(body));
          default:
            return Formula::bounded_exists(nv, f->bound(), std::move(body));
        }
      }
    }
  }

  PrenexForm negate(PrenexForm p) {
    for (auto& q : p.prefix) q.universal = !q.universal;
    p.matrix = Formula::negation(p.matrix);
    return p;
  }

  // Pulls an already-extracted prefix across a bounded quantifier.
  // A same-direction head commutes; an opposite-direction head is traded for
  // a fresh unbounded quantifier outside plus a bounded copy inside (finite
  // maximum / pigeonhole argument over the standard model).
  PrenexForm cross_bounded(bool universal_bq, const std::string& var, const TermPtr& bound,
                           PrenexForm inner) {
    if (inner.prefix.empty()) {
      FormulaPtr m = universal_bq ? Formula::bounded_forall(var, bound, inner.matrix)
                                  : Formula::bounded_exists(var, bound, inner.matrix);
      return {{}, m};
    }
    Quant head = inner.prefix.front();
    PrenexForm rest{std::vector<Quant>(inner.prefix.begin() + 1, inner.prefix.end()),
                    inner.matrix};
    if (head.universal == universal_bq) {
      PrenexForm crossed = cross_bounded(universal_bq, var, bound, std::move(rest));
      crossed.prefix.insert(crossed.prefix.begin(), head);
      return crossed;
    }
    std::string z = fresh();
    PrenexForm bounded_head =
        cross_bounded(head.universal, head.var, lang::Term::variable(z), std::move(rest));
    PrenexForm crossed = cross_bounded(universal_bq, var, bound, std::move(bounded_head));
    crossed.prefix.insert(crossed.prefix.begin(), Quant{!universal_bq, z});
    return crossed;
  }

  PrenexForm extract(const FormulaPtr& f) {
    switch (f->kind()) {
      case Formula::Kind::Atom:
        return {{}, f};
      case Formula::Kind::Not:
        return negate(extract(f->child()));
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        PrenexForm l = extract(f->left());
        PrenexForm r = extract(f->right());
        std::vector<Quant> prefix = std::move(l.prefix);
        prefix.insert(prefix.end(), r.prefix.begin(), r.prefix.end());
        FormulaPtr m = f->kind() == Formula::Kind::And ? Formula::conj(l.matrix, r.matrix)
                                                       : Formula::disj(l.matrix, r.matrix);
        return {std::move(prefix), std::move(m)};
      }
      case Formula::Kind::Implies: {
        PrenexForm l = extract(f->left());
        for (auto& q : l.prefix) q.universal = !q.universal;  // antecedent flips polarity
        PrenexForm r = extract(f->right());
        std::vector<Quant> prefix = std::move(l.prefix);
        prefix.insert(prefix.end(), r.prefix.begin(), r.prefix.end());
        return {std::move(prefix), Formula::implies(l.matrix, r.matrix)};
      }
      case Formula::Kind::ForAll:
      case Formula::Kind::Exists: {
        PrenexForm inner = extract(f->child());
        inner.prefix.insert(inner.prefix.begin(),
                            Quant{f->kind() == Formula::Kind::ForAll, f->var()});
        return inner;
      }
      case Formula::Kind::BoundedForAll:
      case Formula::Kind::BoundedExists: {
        PrenexForm inner = extract(f->child());
        return cross_bounded(f->kind() == Formula::Kind::BoundedForAll, f->var(), f->bound(),
                             std::move(inner));
      }
    }
    throw Error("unreachable formula kind");
  }
};

}  // namespace

lang::FormulaPtr to_prenex(const lang::FormulaPtr& sentence) {
  if (!lang::is_closed(sentence)) throw NotClosedError("to_prenex expects a closed sentence");
  Normalizer n;
  return n.run(sentence);
}

lang::FormulaPtr truncate(const lang::FormulaPtr& f, const semantics::BigNat& B) {
  switch (f->kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::negation(truncate(f->child(), B));
    case Formula::Kind::And:
      return Formula::conj(truncate(f->left(), B), truncate(f->right(), B));
    case Formula::Kind::Or:
      return Formula::disj(truncate(f->left(), B), truncate(f->right(), B));
    case Formula::Kind::Implies:
      return Formula::implies(truncate(f->left(), B), truncate(f->right(), B));
    case Formula::Kind::ForAll:
      return Formula::bounded_forall(f->var(), semantics::encode_nat(B), truncate(f->child(), B));
    case Formula::Kind::Exists:
      return Formula::bounded_exists(f->var(), semantics::encode_nat(B), truncate(f->child(), B));
    case Formula::Kind::BoundedForAll:
      return Formula::bounded_forall(f->var(), f->bound(), truncate(f->child(), B));
    case Formula::Kind::BoundedExists:
      return Formula::bounded_exists(f->var(), f->bound(), truncate(f->child(), B));
  }
  throw Error("unreachable formula kind");
}

}  // namespace lstar::prenex
