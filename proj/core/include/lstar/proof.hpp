#pragma once

// Candidate trees: the proof object checked and searched by the tableaux
// engine. Nodes are stored parent-linked in topological order (parent index
// strictly below the node's own index, root at index 0 holding ¬goal).

#include <cstdint>
#include <string>
#include <vector>

#include "lstar/lang.hpp"
#include "lstar/level.hpp"

namespace lstar::tableaux {

using NodeId = int;

enum class JustKind : std::uint8_t { Root, ProperAxiom, LogicalAxiom, RuleApp };

struct Justification {
  JustKind kind = JustKind::Root;
  std::string axiom_id;   // ProperAxiom
  std::string lem_tag;    // LogicalAxiom: "lem" or "lem_plus"
  int rule = 0;           // RuleApp: 1..8
  NodeId ancestor = -1;   // RuleApp
  lang::TermPtr term;     // rules 7/8: the instantiating U-grounded term
  std::string param;      // rules 5/6: the fresh parameter name

  static Justification root() { return {}; }
  static Justification proper_axiom(std::string id) {
    Justification j;
    j.kind = JustKind::ProperAxiom;
    j.axiom_id = std::move(id);
    return j;
  }
  static Justification logical_axiom(std::string tag) {
    Justification j;
    j.kind = JustKind::LogicalAxiom;
    j.lem_tag = std::move(tag);
    return j;
  }
  static Justification rule_app(int rule, NodeId ancestor) {
    Justification j;
    j.kind = JustKind::RuleApp;
    j.rule = rule;
    j.ancestor = ancestor;
    return j;
  }
};

struct ProofNode {
  NodeId id = 0;
  NodeId parent = -1;  // -1 for the root
  lang::FormulaPtr sentence;
  Justification just;
};

struct Proof {
  lang::FormulaPtr goal;
  std::string basis_id;
  enrichment::EnrichmentLevel level;
  std::vector<ProofNode> nodes;
};

// Node count: the length measure used by every size bound.
inline std::size_t proof_size(const Proof& p) { return p.nodes.size(); }

}  // namespace lstar::tableaux
