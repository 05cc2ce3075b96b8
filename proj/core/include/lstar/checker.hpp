#pragma once

// The independent proof checker: total, structural, and the sole authority on
// proof validity. Verifies tree shape, every justification against its rule
// schema, parameter freshness, axiom membership, the logical-axiom gate, and
// closure of every branch.

#include <string>

#include "lstar/basis.hpp"
#include "lstar/level.hpp"
#include "lstar/proof.hpp"

namespace lstar::tableaux {

struct Verdict {
  bool valid = false;
  std::string reason;  // empty when valid
  NodeId node = -1;    // first offending node when invalid

  static Verdict ok() { return {true, "", -1}; }
  static Verdict bad(std::string reason, NodeId node) { return {false, std::move(reason), node}; }
  explicit operator bool() const { return valid; }
};

Verdict check_proof(const Proof& p, const systems::AxiomBasis& basis,
                    const enrichment::EnrichmentLevel& level);

}  // namespace lstar::tableaux
