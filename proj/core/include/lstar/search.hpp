#pragma once

// Budgeted systematic proof search: iterative deepening over tree size, with
// decompositions (rules 1-6) tried before axiom/logical-axiom insertions and
// those before rule-7/8 instantiations from a growing U-grounded term pool.

#include <cstdint>
#include <optional>

#include "lstar/basis.hpp"
#include "lstar/checker.hpp"
#include "lstar/proof.hpp"

namespace lstar::tableaux {

struct ProveResult {
  std::optional<Proof> proof;       // present on success
  std::uint64_t expansions = 0;     // node expansions consumed
  bool space_exhausted = false;     // every candidate tree tried, none closed
  bool found() const { return proof.has_value(); }
};

// Searches for a proof of `goal` from `basis` at `level`, spending at most
// `budget` node expansions. Failure is NotFoundWithinBudget, never a
// refutation claim. Deterministic for fixed inputs.
ProveResult prove(const lang::FormulaPtr& goal, const systems::AxiomBasis& basis,
                  const enrichment::EnrichmentLevel& level, std::uint64_t budget);

}  // namespace lstar::tableaux
