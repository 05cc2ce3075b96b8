#include "lstar/systems.hpp"

#include <algorithm>

#include "lstar/checker.hpp"
#include "lstar/prenex.hpp"
#include "lstar/semantics.hpp"

namespace lstar::systems {

using lang::Formula;
using lang::FormulaPtr;
using lang::Term;
using lang::TermPtr;
using semantics::BigNat;

namespace {

TermPtr var(const char* name) { return Term::variable(name); }

FormulaPtr neq(const TermPtr& a, const TermPtr& b) {
  return Formula::negation(Formula::eq(a, b));
}

// a < b on the naturals, rendered as ~(b <= a)
FormulaPtr lt(const TermPtr& a, const TermPtr& b) {
  return Formula::negation(Formula::le(b, a));
}

FormulaPtr forall_chain(std::vector<const char*> vars, FormulaPtr body) {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it)
    body = Formula::forall(*it, std::move(body));
  return body;
}

}  // namespace

FormulaPtr add_formula(const TermPtr& x, const TermPtr& y, const TermPtr& z) {
  // sub(z,x) = y with the true-subtraction guard x <= z
  return Formula::conj(Formula::eq(Term::apply(lang::Fn::Sub, {z, x}), y), Formula::le(x, z));
}

FormulaPtr mult_formula(const TermPtr& x, const TermPtr& y, const TermPtr& z) {
  auto zero = Term::c0();
  auto one = Term::c1();
  FormulaPtr zero_case = Formula::implies(
      Formula::disj(Formula::eq(x, zero), Formula::eq(y, zero)), Formula::eq(z, zero));
  FormulaPtr div_eq = Formula::eq(Term::apply(lang::Fn::Div, {z, x}), y);
  FormulaPtr div_lt = lt(Term::apply(lang::Fn::Div, {Term::apply(lang::Fn::Sub, {z, one}), x}), y);
  FormulaPtr pos_case = Formula::implies(Formula::conj(neq(x, zero), neq(y, zero)),
                                         Formula::conj(div_eq, div_lt));
  return Formula::conj(zero_case, pos_case);
}

FormulaPtr totality_sentence(Totality which) {
  switch (which) {
    case Totality::Successor:
      return Formula::forall(
          "x", Formula::exists("z", add_formula(var("x"), Term::c1(), var("z"))));
    case Totality::Addition:
      return Formula::forall(
          "x", Formula::forall(
                   "y", Formula::exists("z", add_formula(var("x"), var("y"), var("z")))));
    case Totality::Multiplication:
      return Formula::forall(
          "x", Formula::forall(
                   "y", Formula::exists("z", mult_formula(var("x"), var("y"), var("z")))));
  }
  throw Error("unreachable totality kind");
}

AxiomBasis relational_arith_basis() {
  AxiomBasis b("relational_arith");
  auto X = var("x"), Y = var("y"), Z = var("z"), U = var("u"), V = var("v"), W = var("w"),
       S = var("s");

  b.add("add_comm", forall_chain({"x", "y", "z"},
                                 Formula::implies(add_formula(X, Y, Z), add_formula(Y, X, Z))));
  b.add("add_assoc",
        forall_chain({"x", "y", "z", "u", "v", "w"},
                     Formula::implies(Formula::conj(Formula::conj(add_formula(X, Y, U),
                                                                  add_formula(U, Z, W)),
                                                    add_formula(Y, Z, V)),
                                      add_formula(X, V, W))));
  b.add("add_identity", forall_chain({"x"}, add_formula(X, Term::c0(), X)));
  b.add("mult_comm", forall_chain({"x", "y", "z"},
                                  Formula::implies(mult_formula(X, Y, Z), mult_formula(Y, X, Z))));
  b.add("mult_assoc",
        forall_chain({"x", "y", "z", "u", "v", "w"},
                     Formula::implies(Formula::conj(Formula::conj(mult_formula(X, Y, U),
                                                                  mult_formula(U, Z, W)),
                                                    mult_formula(Y, Z, V)),
                                      mult_formula(X, V, W))));
  b.add("mult_identity", forall_chain({"x"}, mult_formula(X, Term::c1(), X)));
  b.add("distrib",
        forall_chain({"x", "y", "z", "u", "v", "w", "s"},
                     Formula::implies(
                         Formula::conj(Formula::conj(Formula::conj(mult_formula(X, Y, U),
                                                                   mult_formula(X, Z, V)),
                                                     add_formula(Y, Z, W)),
                                       mult_formula(X, W, S)),
                         add_formula(U, V, S))));
  b.add("succ_nonzero",
        forall_chain({"x", "z"}, Formula::implies(add_formula(X, Term::c1(), Z),
                                                  neq(Z, Term::c0()))));
  b.add("succ_injective",
        forall_chain({"x", "y", "z", "w"},
                     Formula::implies(
                         Formula::conj(add_formula(X, Term::c1(), Z),
                                       add_formula(Y, Term::c1(), W)),
                         Formula::conj(Formula::implies(Formula::eq(Z, W), Formula::eq(X, Y)),
                                       Formula::implies(Formula::eq(X, Y), Formula::eq(Z, W))))));
  return b;
}

std::string TypeClass::name() const {
  switch (rank) {
    case TypeRank::NS: return "Type-NS";
    case TypeRank::S: return "Type-S";
    case TypeRank::A: return "Type-A";
    case TypeRank::M: return "Type-M";
  }
  return "?";
}

TypeClass classify_type(const GeneralizedArithmetic& g, std::uint64_t budget) {
  TypeClass out;
  bool found[3] = {false, false, false};
  const Totality order[3] = {Totality::Successor, Totality::Addition, Totality::Multiplication};
  for (int i = 0; i < 3; ++i) {
    tableaux::ProveResult r = tableaux::prove(totality_sentence(order[i]), g.basis, g.level, budget);
    TotalityEvidence ev;
    ev.which = order[i];
    ev.expansions = r.expansions;
    ev.budget = budget;
    if (r.found()) {
      found[i] = true;
      ev.proof = std::move(r.proof);
    }
    out.evidence.push_back(std::move(ev));
  }
  if (found[0] && found[1] && found[2])
    out.rank = TypeRank::M;
  else if (found[0] && found[1])
    out.rank = TypeRank::A;
  else if (found[0])
    out.rank = TypeRank::S;
  else
    out.rank = TypeRank::NS;
  return out;
}

FormulaPtr localized_mult_totality(int k, LocalizationVariant variant) {
  if (k < 0) throw Error("k must be non-negative");
  TermPtr in_bound, out_bound;
  if (variant == LocalizationVariant::Literal) {
    in_bound = Term::c2();
    for (int i = 0; i < k; ++i) in_bound = Term::dbl(in_bound);
    out_bound = Term::c2();
    for (int i = 0; i < 2 * k; ++i) out_bound = Term::dbl(out_bound);
  } else {
    BigNat two_k = BigNat(1) << k;
    in_bound = semantics::encode_nat(two_k - 1);
    out_bound = semantics::encode_nat(BigNat(1) << (2 * k));
  }
  return Formula::bounded_forall(
      "x", in_bound,
      Formula::bounded_forall(
          "y", in_bound,
          Formula::bounded_exists("z", out_bound,
                                  mult_formula(var("x"), var("y"), var("z")))));
}

GeneralizedArithmetic self_ref_extend(const GeneralizedArithmetic& g) {
  godel::SelfRefRecord rec;
  rec.system_name = g.basis.name() + "^d";
  rec.level = g.level;
  rec.basis_fingerprint = g.basis.fingerprint();
  rec.number = godel::godel_number(rec);  // the number field is not encoded: fixed point

  GeneralizedArithmetic out;
  out.level = g.level;
  out.basis = AxiomBasis(rec.system_name);
  // The marker axiom standing for the SelfRef object inside proofs: the inert
  // reflexive atom over the record's own numeral.
  TermPtr numeral = semantics::encode_nat(rec.number.value);
  std::string id = "selfref_" + std::to_string(g.basis.selfrefs().size() + 1);
  out.basis.add(id, Formula::eq(numeral, numeral));
  for (const auto& ax : g.basis.axioms()) out.basis.add(ax.id, ax.sentence);
  for (const auto& r : g.basis.selfrefs()) out.basis.attach_selfref(r);
  out.basis.attach_selfref(rec);
  for (const auto& f : g.basis.flags()) out.basis.set_flag(f);
  return out;
}

namespace {

// Deterministic size-ordered stream of small closed sentences used as the
// syntactic leg of the Level(n) candidate enumeration.
std::vector<FormulaPtr> syntactic_candidates(int count) {
  std::vector<FormulaPtr> out;
  const TermPtr consts[] = {Term::c0(), Term::c1(), Term::c2()};
  for (int i = 0; i < 3 && static_cast<int>(out.size()) < count; ++i)
    for (int j = 0; j < 3 && static_cast<int>(out.size()) < count; ++j) {
      out.push_back(Formula::eq(consts[i], consts[j]));
      out.push_back(Formula::le(consts[i], consts[j]));
    }
  for (int i = 0; i < 3 && static_cast<int>(out.size()) < count; ++i) {
    out.push_back(Formula::forall("x", Formula::eq(var("x"), var("x"))));
    out.push_back(Formula::forall("x", Formula::le(var("x"), Term::dbl(var("x")))));
    out.push_back(Formula::forall("x", Formula::le(consts[i], Term::add(var("x"), consts[i]))));
  }
  return out;
}

bool rank_within(const FormulaPtr& f, int n) {
  try {
    return prenex::rank_at_most(prenex::classify(f), n);
  } catch (const NotPrenexError&) {
    return false;
  }
}

}  // namespace

ConsistencyVerdict consistency_search(const GeneralizedArithmetic& g, ConsistencyMode mode, int n,
                                      std::uint64_t budget) {
  ConsistencyVerdict out;
  out.budget = budget;

  if (mode == ConsistencyMode::Level0Minus) {
    FormulaPtr absurd = Formula::eq(Term::c0(), Term::c1());
    tableaux::ProveResult r = tableaux::prove(absurd, g.basis, g.level, budget);
    out.expansions = r.expansions;
    if (r.found()) {
      out.refutation_found = true;
      out.proof_contradiction = std::move(r.proof);
    }
    return out;
  }

  // Level(n): fair dovetailing over candidates and budgets.
  std::vector<FormulaPtr> candidates;
  std::vector<std::string> seen;
  auto push_candidate = [&](const FormulaPtr& f) {
    if (!rank_within(f, n)) return;
    std::string key = lang::canonical_key(f);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) return;
    seen.push_back(key);
    candidates.push_back(f);
  };
  for (const auto& ax : g.basis.axioms()) push_candidate(ax.sentence);
  for (const auto& f : syntactic_candidates(32)) push_candidate(f);

  struct Partial {
    std::optional<tableaux::Proof> pos, neg;
  };
  std::vector<Partial> partial(candidates.size());

  std::uint64_t spent = 0;
  for (std::uint64_t round = 1; spent < budget; ++round) {
    std::uint64_t slice = 64 * round;
    bool progressed = false;
    std::vector<FormulaPtr> proved_this_round;
    for (std::size_t i = 0; i < candidates.size() && spent < budget; ++i) {
      std::uint64_t avail = std::min(slice, budget - spent);
      if (!partial[i].pos) {
        tableaux::ProveResult r = tableaux::prove(candidates[i], g.basis, g.level, avail);
        spent += r.expansions;
        if (r.found()) {
          partial[i].pos = std::move(r.proof);
          progressed = true;
          proved_this_round.push_back(candidates[i]);
        }
      }
      if (spent >= budget) break;
      avail = std::min(slice, budget - spent);
      if (!partial[i].neg && avail > 0) {
        tableaux::ProveResult r =
            tableaux::prove(Formula::negation(candidates[i]), g.basis, g.level, avail);
        spent += r.expansions;
        if (r.found()) {
          partial[i].neg = std::move(r.proof);
          progressed = true;
        }
      }
      if (partial[i].pos && partial[i].neg) {
        out.refutation_found = true;
        out.expansions = spent;
        out.upsilon = candidates[i];
        out.pair_x = godel::godel_number(candidates[i]);
        out.pair_y = godel::godel_number(Formula::negation(candidates[i]));
        out.proof_pos = std::move(partial[i].pos);
        out.proof_neg = std::move(partial[i].neg);
        return out;
      }
    }
    // theorems found this round join the candidate pool (fair leg (ii))
    for (const auto& f : proved_this_round) push_candidate(Formula::negation(f));
    partial.resize(candidates.size());
    if (!progressed && slice >= budget) break;  // nothing left to try at any slice size
  }
  out.expansions = spent;
  return out;
}

bool pair_meta(const godel::GodelNumber& x, const godel::GodelNumber& y) {
  FormulaPtr phi = godel::decode_formula(x);
  if (!phi) return false;
  try {
    if (!prenex::within_pi(prenex::classify(phi), 1)) return false;
  } catch (const NotPrenexError&) {
    return false;
  }
  return godel::godel_number(Formula::negation(phi)) == y;
}

bool prf_meta(const GeneralizedArithmetic& g, const godel::GodelNumber& phi,
              const tableaux::Proof& p) {
  FormulaPtr f = godel::decode_formula(phi);
  if (!f) return false;
  if (lang::canonical_key(f) != lang::canonical_key(p.goal)) return false;
  return static_cast<bool>(tableaux::check_proof(p, g.basis, g.level));
}

SchemaRecord group2_record(const lang::FormulaPtr& phi, const tableaux::Proof& proof,
                           const AxiomBasis& basis) {
  prenex::PrenexClass c = prenex::classify(phi);  // throws NotPrenexError when unclassifiable
  if (!prenex::within_pi(c, 1))
    throw Error("group2_record expects a Pi(1)-or-lower sentence, got " + c.to_string());
  tableaux::Verdict v = tableaux::check_proof(proof, basis, proof.level);
  if (!v) throw Error("group2_record expects a Valid witnessing proof: " + v.reason);
  if (lang::canonical_key(proof.goal) != lang::canonical_key(phi))
    throw Error("witnessing proof proves a different sentence");

  godel::GodelNumber num = godel::godel_number(phi);
  SchemaRecord r;
  r.kind = SchemaRecord::Kind::Group2;
  r.system_name = basis.name();
  r.display = "A p. { Prf(" + num.to_string() + ", p) -> " + lang::print_formula(phi) + " }";
  r.realization_note = "Prf realized by the native proof checker, not as an object-language formula";
  r.phi_number = num;
  r.phi = phi;
  r.witness_proof = proof;
  return r;
}

SchemaRecord group3_record(const GeneralizedArithmetic& g) {
  SchemaRecord r;
  r.kind = SchemaRecord::Kind::Group3;
  r.system_name = g.basis.name();
  r.display = "A x. A y. A p. A q. ~( Pair(x, y) & Prf(x, p) & Prf(y, q) )";
  r.realization_note =
      "Pair/Prf realized by the native checker; content checked against consistency_search "
      "witnesses";
  return r;
}

SchemaRecord selfref_record_of(const GeneralizedArithmetic& extended) {
  if (extended.basis.selfrefs().empty())
    throw Error("system has no SelfRef extension");
  const godel::SelfRefRecord& rec = extended.basis.selfrefs().back();
  SchemaRecord r;
  r.kind = SchemaRecord::Kind::SelfRef;
  r.system_name = rec.system_name;
  r.display =
      "no proof of C0 = C1 exists under this system's deductive apparatus from its axioms "
      "together with this very axiom";
  r.realization_note =
      "asserted content is meta-level, checkable up to a search bound via consistency_search; "
      "record number " + rec.number.to_string() + " is a diagonal fixed point of the numbering";
  r.selfref = rec;
  return r;
}

}  // namespace lstar::systems
