#include "lstar/checker.hpp"

#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lstar/enrichment.hpp"

namespace lstar::tableaux {

using lang::Formula;
using lang::FormulaPtr;

namespace {

struct CheckContext {
  const Proof& p;
  std::vector<std::vector<NodeId>> children;
  std::unordered_map<const Formula*, std::string> keys;

  explicit CheckContext(const Proof& proof) : p(proof) {}

  const std::string& key(const FormulaPtr& f) {
    auto it = keys.find(f.get());
    if (it != keys.end()) return it->second;
    return keys.emplace(f.get(), lang::canonical_key(f)).first->second;
  }

  bool is_strict_ancestor(NodeId anc, NodeId node) const {
    NodeId cur = p.nodes[node].parent;
    while (cur >= 0) {
      if (cur == anc) return true;
      cur = p.nodes[cur].parent;
    }
    return false;
  }
};

// The single-conclusion rewriting patterns of rule 2.
FormulaPtr rule2_conclusion(const FormulaPtr& anc) {
  if (anc->kind() != Formula::Kind::Not) return nullptr;
  const FormulaPtr& g = anc->child();
  switch (g->kind()) {
    case Formula::Kind::Not:
      return g->child();
    case Formula::Kind::Or:
      return Formula::conj(Formula::negation(g->left()), Formula::negation(g->right()));
    case Formula::Kind::Implies:
      return Formula::conj(g->left(), Formula::negation(g->right()));
    case Formula::Kind::And:
      return Formula::disj(Formula::negation(g->left()), Formula::negation(g->right()));
    case Formula::Kind::Exists:
      return Formula::forall(g->var(), Formula::negation(g->child()));
    case Formula::Kind::ForAll:
      return Formula::exists(g->var(), Formula::negation(g->child()));
    default:
      return nullptr;
  }
}

Verdict check_rule_app(CheckContext& ctx, const ProofNode& n) {
  const auto& j = n.just;
  if (j.rule < 1 || j.rule > 8) return Verdict::bad("rule out of range", n.id);
  if (j.ancestor < 0 || j.ancestor >= static_cast<NodeId>(ctx.p.nodes.size()))
    return Verdict::bad("rule ancestor out of range", n.id);
  if (!ctx.is_strict_ancestor(j.ancestor, n.id))
    return Verdict::bad("rule ancestor is not strictly above the node", n.id);
  const FormulaPtr& anc = ctx.p.nodes[j.ancestor].sentence;

  switch (j.rule) {
    case 1: {
      if (anc->kind() != Formula::Kind::And)
        return Verdict::bad("rule 1 ancestor is not a conjunction", n.id);
      if (!lang::equal(n.sentence, anc->left()) && !lang::equal(n.sentence, anc->right()))
        return Verdict::bad("rule 1 conclusion is neither conjunct", n.id);
      return Verdict::ok();
    }
    case 2: {
      FormulaPtr want = rule2_conclusion(anc);
      if (!want) return Verdict::bad("rule 2 ancestor has no matching negation pattern", n.id);
      if (!lang::equal(n.sentence, want))
        return Verdict::bad("rule 2 conclusion does not match the pattern", n.id);
      return Verdict::ok();
    }
    case 3:
    case 4:
      // Sibling pairing is validated tree-wide; here only the local shape.
      if (j.rule == 3 && anc->kind() != Formula::Kind::Or)
        return Verdict::bad("rule 3 ancestor is not a disjunction", n.id);
      if (j.rule == 4 && anc->kind() != Formula::Kind::Implies)
        return Verdict::bad("rule 4 ancestor is not an implication", n.id);
      return Verdict::ok();
    case 5: {
      if (anc->kind() != Formula::Kind::Exists)
        return Verdict::bad("rule 5 ancestor is not an unbounded existential", n.id);
      if (j.param.empty()) return Verdict::bad("rule 5 records no parameter", n.id);
      FormulaPtr want = lang::subst(anc->child(), anc->var(), lang::Term::parameter(j.param));
      if (!lang::equal(n.sentence, want))
        return Verdict::bad("rule 5 conclusion is not the parameter instance", n.id);
      return Verdict::ok();
    }
    case 6: {
      if (anc->kind() != Formula::Kind::BoundedExists)
        return Verdict::bad("rule 6 ancestor is not a bounded existential", n.id);
      if (j.param.empty()) return Verdict::bad("rule 6 records no parameter", n.id);
      auto u = lang::Term::parameter(j.param);
      FormulaPtr want = Formula::conj(Formula::le(u, anc->bound()),
                                      lang::subst(anc->child(), anc->var(), u));
      if (!lang::equal(n.sentence, want))
        return Verdict::bad("rule 6 conclusion must be the conjunction 'u <= s & body(u)'", n.id);
      return Verdict::ok();
    }
    case 7: {
      if (anc->kind() != Formula::Kind::ForAll)
        return Verdict::bad("rule 7 ancestor is not an unbounded universal", n.id);
      if (!j.term) return Verdict::bad("rule 7 records no term", n.id);
      if (!lang::is_u_grounded(j.term))
        return Verdict::bad("rule 7 term is not U-grounded", n.id);
      FormulaPtr want = lang::subst(anc->child(), anc->var(), j.term);
      if (!lang::equal(n.sentence, want))
        return Verdict::bad("rule 7 conclusion is not the recorded instance", n.id);
      return Verdict::ok();
    }
    case 8: {
      if (anc->kind() != Formula::Kind::BoundedForAll)
        return Verdict::bad("rule 8 ancestor is not a bounded universal", n.id);
      if (!j.term) return Verdict::bad("rule 8 records no term", n.id);
      if (!lang::is_u_grounded(j.term))
        return Verdict::bad("rule 8 term is not U-grounded", n.id);
      FormulaPtr want = Formula::implies(Formula::le(j.term, anc->bound()),
                                         lang::subst(anc->child(), anc->var(), j.term));
      if (!lang::equal(n.sentence, want))
        return Verdict::bad("rule 8 conclusion must be the implication 't <= s -> body(t)'", n.id);
      return Verdict::ok();
    }
  }
  return Verdict::bad("unreachable rule", n.id);
}

}  // namespace

Verdict check_proof(const Proof& p, const systems::AxiomBasis& basis,
                    const enrichment::EnrichmentLevel& level) {
  if (!p.goal) return Verdict::bad("missing goal", -1);
  if (p.nodes.empty()) return Verdict::bad("empty proof", -1);

  CheckContext ctx(p);
  ctx.children.resize(p.nodes.size());

  // shape: ids sequential, parents earlier in the vector
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const ProofNode& n = p.nodes[i];
    if (n.id != static_cast<NodeId>(i)) return Verdict::bad("node ids must be sequential", n.id);
    if (i == 0) {
      if (n.parent != -1) return Verdict::bad("root must have no parent", n.id);
    } else {
      if (n.parent < 0 || n.parent >= static_cast<NodeId>(i))
        return Verdict::bad("parent must precede the node", n.id);
      ctx.children[n.parent].push_back(n.id);
    }
    if (!n.sentence) return Verdict::bad("node without sentence", n.id);
    if (!lang::free_vars(n.sentence).empty())
      return Verdict::bad("node sentence has free variables", n.id);
  }

  // root stores ¬goal with the Root justification, exactly once
  if (p.nodes[0].just.kind != JustKind::Root)
    return Verdict::bad("node 0 must carry the Root justification", 0);
  if (!lang::equal(p.nodes[0].sentence, Formula::negation(p.goal)))
    return Verdict::bad("root sentence is not the negated goal", 0);
  for (std::size_t i = 1; i < p.nodes.size(); ++i)
    if (p.nodes[i].just.kind == JustKind::Root)
      return Verdict::bad("non-root node with Root justification", p.nodes[i].id);

  // sibling discipline: two children only as a rule-3/4 pair over one ancestor
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    const auto& ch = ctx.children[i];
    if (ch.size() > 2) return Verdict::bad("node has more than two children", static_cast<NodeId>(i));
    if (ch.size() == 2) {
      const ProofNode& a = p.nodes[ch[0]];
      const ProofNode& b = p.nodes[ch[1]];
      bool pair_ok = a.just.kind == JustKind::RuleApp && b.just.kind == JustKind::RuleApp &&
                     a.just.rule == b.just.rule && (a.just.rule == 3 || a.just.rule == 4) &&
                     a.just.ancestor == b.just.ancestor;
      if (!pair_ok) return Verdict::bad("two children must form a rule-3/4 sibling pair", b.id);
      const FormulaPtr& anc = p.nodes[a.just.ancestor].sentence;
      FormulaPtr want_l, want_r;
      if (a.just.rule == 3) {
        if (anc->kind() != Formula::Kind::Or)
          return Verdict::bad("rule 3 ancestor is not a disjunction", a.id);
        want_l = anc->left();
        want_r = anc->right();
      } else {
        if (anc->kind() != Formula::Kind::Implies)
          return Verdict::bad("rule 4 ancestor is not an implication", a.id);
        want_l = Formula::negation(anc->left());
        want_r = anc->right();
      }
      bool direct = lang::equal(a.sentence, want_l) && lang::equal(b.sentence, want_r);
      bool swapped = lang::equal(a.sentence, want_r) && lang::equal(b.sentence, want_l);
      if (!direct && !swapped)
        return Verdict::bad("sibling sentences do not match the ancestor's pair", a.id);
    }
    if (ch.size() == 1) {
      const ProofNode& c = p.nodes[ch[0]];
      if (c.just.kind == JustKind::RuleApp && (c.just.rule == 3 || c.just.rule == 4))
        return Verdict::bad("rule-3/4 deduction without its sibling", c.id);
    }
  }

  // per-node justification checks and rule-5/6 parameter freshness
  std::set<std::string> introduced;
  for (const ProofNode& n : p.nodes) {
    switch (n.just.kind) {
      case JustKind::Root:
        break;
      case JustKind::ProperAxiom: {
        if (!n.just.axiom_id.empty()) {
          const systems::Axiom* ax = basis.find(n.just.axiom_id);
          if (!ax) return Verdict::bad("unknown axiom id '" + n.just.axiom_id + "'", n.id);
          if (lang::canonical_key(ax->sentence) != ctx.key(n.sentence))
            return Verdict::bad("sentence differs from axiom '" + n.just.axiom_id + "'", n.id);
        } else if (!basis.contains(n.sentence)) {
          return Verdict::bad("sentence is not produced by the basis", n.id);
        }
        break;
      }
      case JustKind::LogicalAxiom: {
        if (!enrichment::permits(level, n.sentence))
          return Verdict::bad("logical axiom not permitted at level " + level.to_string(), n.id);
        break;
      }
      case JustKind::RuleApp: {
        Verdict v = check_rule_app(ctx, n);
        if (!v) return v;
        if (n.just.rule == 5 || n.just.rule == 6) {
          if (!introduced.insert(n.just.param).second)
            return Verdict::bad("parameter '" + n.just.param + "' introduced twice", n.id);
          for (NodeId cur = n.parent; cur >= 0; cur = p.nodes[cur].parent)
            if (lang::parameters_of(p.nodes[cur].sentence).count(n.just.param))
              return Verdict::bad("parameter '" + n.just.param + "' occurs above its introduction",
                                  n.id);
        }
        break;
      }
    }
  }

  // closure: every leaf-to-root branch holds some sentence and its negation
  for (std::size_t i = 0; i < p.nodes.size(); ++i) {
    if (!ctx.children[i].empty()) continue;  // not a leaf
    std::unordered_set<std::string> pos;
    for (NodeId cur = static_cast<NodeId>(i); cur >= 0; cur = p.nodes[cur].parent)
      pos.insert(ctx.key(p.nodes[cur].sentence));
    bool closed = false;
    for (NodeId cur = static_cast<NodeId>(i); cur >= 0 && !closed; cur = p.nodes[cur].parent) {
      const FormulaPtr& s = p.nodes[cur].sentence;
      // the negation key is computed fresh: a pointer-keyed cache must only
      // ever see sentences owned by the proof
      if (pos.count(lang::canonical_key(Formula::negation(s)))) closed = true;
    }
    if (!closed)
      return Verdict::bad("open branch at leaf", static_cast<NodeId>(i));
  }

  return Verdict::ok();
}

}  // namespace lstar::tableaux
