#pragma once

// Concrete axiom systems and the self-justification laboratory: relational
// arithmetic, totality sentences and their K-localizations, Type-S/A/M/NS
// classification, SelfRef extensions, bounded consistency searches, and the
// meta-level Group-2/Group-3 schema records.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lstar/basis.hpp"
#include "lstar/godel.hpp"
#include "lstar/level.hpp"
#include "lstar/proof.hpp"
#include "lstar/search.hpp"

namespace lstar::systems {

struct GeneralizedArithmetic {
  AxiomBasis basis;
  enrichment::EnrichmentLevel level;  // the deductive apparatus' enrichment
};

// Δ₀* matrices for the three-way relations: Add(x,y,z) iff x+y=z and
// Mult(x,y,z) iff x*y=z, written over the given argument terms.
lang::FormulaPtr add_formula(const lang::TermPtr& x, const lang::TermPtr& y,
                             const lang::TermPtr& z);
lang::FormulaPtr mult_formula(const lang::TermPtr& x, const lang::TermPtr& y,
                              const lang::TermPtr& z);

enum class Totality { Successor, Addition, Multiplication };

// The totality sentences: A x. E z. Add(x,C1,z) and the two-variable forms.
lang::FormulaPtr totality_sentence(Totality which);

// Finite Π₁* basis: associativity/commutativity/identity for Add,
// those plus distributivity for Mult, and the relational successor axioms.
AxiomBasis relational_arith_basis();

enum class TypeRank { NS, S, A, M };

struct TotalityEvidence {
  Totality which;
  std::optional<tableaux::Proof> proof;  // absent when unproven within budget
  std::uint64_t expansions = 0;
  std::uint64_t budget = 0;
};

struct TypeClass {
  TypeRank rank = TypeRank::NS;
  std::vector<TotalityEvidence> evidence;
  std::string name() const;
};

// Budget-relative lower-bound classification: proofs of the successor,
// addition and multiplication totality sentences are attempted in turn.
TypeClass classify_type(const GeneralizedArithmetic& g, std::uint64_t budget);

enum class LocalizationVariant { Literal, Prose };

// Δ₀* K-localized multiplication totality. Literal uses the Double^k(2) and
// Double^{2k}(2) bound terms as printed; Prose bounds inputs by 2^k - 1 and
// the output by 2^{2k}.
lang::FormulaPtr localized_mult_totality(int k, LocalizationVariant variant);

// α^d = α + SelfRef(α,d): appends the distinguished self-referential axiom
// object, whose record carries its own Gödel number (diagonal fixed point).
// The in-proof marker sentence is the inert reflexive atom over the numeral
// of that number; the consistency content is meta-level and bound-checkable
// via consistency_search.
GeneralizedArithmetic self_ref_extend(const GeneralizedArithmetic& g);

enum class ConsistencyMode { Level0Minus, LevelN };

struct ConsistencyVerdict {
  bool refutation_found = false;
  std::uint64_t budget = 0;
  std::uint64_t expansions = 0;
  // Level0Minus witness: a proof of C0=C1.
  std::optional<tableaux::Proof> proof_contradiction;
  // Level(n) witness: Υ with proofs of Υ and ¬Υ plus the Pair numbers.
  std::optional<lang::FormulaPtr> upsilon;
  std::optional<tableaux::Proof> proof_pos;
  std::optional<tableaux::Proof> proof_neg;
  std::optional<godel::GodelNumber> pair_x, pair_y;
};

// Bounded refutation search. Level0Minus attempts a proof of C0=C1. LevelN
// dovetails candidate Π_n* sentences Υ (basis axioms of rank <= n, goals
// proved during the search, and a size-ordered syntactic stream) against
// proofs of both Υ and ¬Υ. Exhaustion is NoRefutationFound, never a
// consistency claim.
ConsistencyVerdict consistency_search(const GeneralizedArithmetic& g, ConsistencyMode mode, int n,
                                      std::uint64_t budget);

// Pair(x,y): x codes a Π₁* sentence Φ and y codes ¬Φ. Undecodable input is
// simply false.
bool pair_meta(const godel::GodelNumber& x, const godel::GodelNumber& y);

// Prf(phi, p): p checks as a Valid proof of the sentence coded by phi from
// g's basis at g's level.
bool prf_meta(const GeneralizedArithmetic& g, const godel::GodelNumber& phi,
              const tableaux::Proof& p);

struct SchemaRecord {
  enum class Kind { Group2, Group3, SelfRef };
  Kind kind;
  std::string system_name;
  std::string display;           // rendered shape mirroring the schema
  std::string realization_note;  // Prf/Pair are realized by the native checker
  std::optional<godel::GodelNumber> phi_number;      // Group2
  std::optional<lang::FormulaPtr> phi;               // Group2
  std::optional<tableaux::Proof> witness_proof;      // Group2
  std::optional<godel::SelfRefRecord> selfref;       // SelfRef
};

// Group-2 record for a Π₁* sentence with a Valid witnessing proof.
SchemaRecord group2_record(const lang::FormulaPtr& phi, const tableaux::Proof& proof,
                           const AxiomBasis& basis);

// Group-3 record; its content is checked operationally against
// consistency_search witnesses via pair_meta/prf_meta.
SchemaRecord group3_record(const GeneralizedArithmetic& g);

SchemaRecord selfref_record_of(const GeneralizedArithmetic& extended);

}  // namespace lstar::systems
