#pragma once

// Excluded-middle enrichment: the logical-axiom gate for each level and the
// executable cut construction that splices a proof of Ψ and a proof of Ψ→Φ
// into a proof of Φ below a Ψ ∨ ¬Ψ logical axiom.

#include "lstar/basis.hpp"
#include "lstar/lang.hpp"
#include "lstar/level.hpp"
#include "lstar/proof.hpp"

namespace lstar::enrichment {

// Ψ ∨ ¬Ψ for a closed Ψ.
lang::FormulaPtr lem_axiom(const lang::FormulaPtr& psi);

// ∀v1...∀vm (ψ ∨ ¬ψ) closing every free variable of a Δ₀* formula ψ with at
// least one free variable (variables closed in lexicographic order).
lang::FormulaPtr lem_plus_axiom(const lang::FormulaPtr& psi);

// Whether `candidate` may justify a LogicalAxiom node at `level`. Permission
// is monotone in the level: lem instances by the rank of Ψ, lem_plus
// (universally closed Δ₀* matrices) from RankZeroPlus upward.
bool permits(const EnrichmentLevel& level, const lang::FormulaPtr& candidate);

// "lem" / "lem_plus" / "" (not a permitted shape at any level below Infinite).
std::string lem_shape_tag(const lang::FormulaPtr& candidate);

// Least level whose gate admits lem_axiom(psi); used to label cut outputs.
EnrichmentLevel min_level_for_lem(const lang::FormulaPtr& psi);

// Lemma-style cut: from Valid proofs of Ψ and Ψ→Φ over one basis, a proof of
// Φ with root ¬Φ, a Ψ ∨ ¬Ψ logical axiom, rule-3 siblings and the two input
// bodies grafted beneath them. proof_size(result) <=
// proof_size(psi) + proof_size(impl) + 4. Throws CutError on goal mismatch,
// invalid inputs, or an impl proof whose top cannot be normalized.
tableaux::Proof cut_combine(const tableaux::Proof& proof_psi, const tableaux::Proof& proof_impl,
                            const systems::AxiomBasis& basis);

}  // namespace lstar::enrichment
