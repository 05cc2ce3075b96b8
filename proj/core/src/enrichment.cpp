#include "lstar/enrichment.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "lstar/checker.hpp"
#include "lstar/prenex.hpp"
#include "lstar/semantics.hpp"

namespace lstar::enrichment {

using lang::Formula;
using lang::FormulaPtr;
using tableaux::Justification;
using tableaux::JustKind;
using tableaux::NodeId;
using tableaux::Proof;
using tableaux::ProofNode;

lang::FormulaPtr lem_axiom(const lang::FormulaPtr& psi) {
  if (!lang::is_closed(psi)) throw NotClosedError("lem_axiom expects a closed sentence");
  return Formula::disj(psi, Formula::negation(psi));
}

lang::FormulaPtr lem_plus_axiom(const lang::FormulaPtr& psi) {
  if (!semantics::is_delta0(psi)) throw NotDelta0Error("lem_plus_axiom expects a Δ₀* formula");
  auto fv = lang::free_vars(psi);
  if (fv.empty())
    throw Error("lem_plus_axiom expects at least one free variable (use lem_axiom)");
  FormulaPtr body = Formula::disj(psi, Formula::negation(psi));
  for (auto it = fv.rbegin(); it != fv.rend(); ++it) body = Formula::forall(*it, body);
  return body;
}

namespace {

// X ∨ ¬X with the right disjunct the exact negation of the left (up to
// alpha-renaming); returns X.
FormulaPtr match_lem(const FormulaPtr& f) {
  if (f->kind() != Formula::Kind::Or) return nullptr;
  if (f->right()->kind() != Formula::Kind::Not) return nullptr;
  if (lang::canonical_key(f->right()->child()) != lang::canonical_key(f->left())) return nullptr;
  return f->left();
}

// ∀v1..∀vm (ψ ∨ ¬ψ) with Δ₀* matrix, m >= 1; returns ψ.
FormulaPtr match_lem_plus(const FormulaPtr& f) {
  FormulaPtr g = f;
  int stripped = 0;
  while (g->kind() == Formula::Kind::ForAll) {
    g = g->child();
    ++stripped;
  }
  if (stripped == 0) return nullptr;
  FormulaPtr psi = match_lem(g);
  if (!psi || !semantics::is_delta0(psi)) return nullptr;
  return psi;
}

}  // namespace

std::string lem_shape_tag(const lang::FormulaPtr& candidate) {
  if (match_lem(candidate)) return "lem";
  if (match_lem_plus(candidate)) return "lem_plus";
  return "";
}

bool permits(const EnrichmentLevel& level, const lang::FormulaPtr& candidate) {
  if (!candidate || !lang::is_closed(candidate)) return false;
  if (level.tag == EnrichmentLevel::Tag::None) return false;

  if (FormulaPtr psi = match_lem(candidate)) {
    switch (level.tag) {
      case EnrichmentLevel::Tag::Infinite:
        return true;
      case EnrichmentLevel::Tag::RankK: {
        try {
          return prenex::rank_at_most(prenex::classify(psi), level.k);
        } catch (const NotPrenexError&) {
          return false;
        }
      }
      case EnrichmentLevel::Tag::RankZero:
      case EnrichmentLevel::Tag::RankZeroPlus:
        return semantics::is_delta0(psi);
      default:
        return false;
    }
  }

  // Eq.-(14)-shaped axioms: admitted from RankZeroPlus upward so that
  // permission stays monotone along the level chain.
  if (match_lem_plus(candidate))
    return level >= EnrichmentLevel::rank_zero_plus();

  return false;
}

EnrichmentLevel min_level_for_lem(const lang::FormulaPtr& psi) {
  if (semantics::is_delta0(psi)) return EnrichmentLevel::rank_zero();
  try {
    prenex::PrenexClass c = prenex::classify(psi);
    if (c.shape == prenex::PrenexClass::Shape::Delta0) return EnrichmentLevel::rank_zero();
    return EnrichmentLevel::rank_k(c.rank);
  } catch (const NotPrenexError&) {
    return EnrichmentLevel::infinite();
  }
}

// ---- cut construction ----

namespace {

struct TNode {
  FormulaPtr sentence;
  Justification just;     // ancestors refer to T-node indices
  int parent = -1;
  std::vector<int> children;
};

class TreeBuilder {
 public:
  std::vector<TNode> nodes;

  int add(FormulaPtr s, Justification j, int parent) {
    int id = static_cast<int>(nodes.size());
    nodes.push_back(TNode{std::move(s), std::move(j), parent, {}});
    if (parent >= 0) nodes[parent].children.push_back(id);
    return id;
  }
};

// Copies src's nodes into t, except those marked in `mapped`:
//   mapped[i] == -2  copy the node;
//   mapped[i] >= 0   the node is identified with an existing t-node
//                    (references redirect there, its subtree re-hangs at the
//                    graft parent);
//   mapped[i] == -1  the node is erased; any reference to it is an error.
void graft_proof(TreeBuilder& t, const Proof& src, int graft_parent,
                 const std::vector<int>& mapped) {
  std::unordered_map<int, int> copy_map;
  for (std::size_t i = 0; i < src.nodes.size(); ++i) {
    if (mapped[i] != -2) continue;
    const ProofNode& n = src.nodes[i];
    int parent;
    if (n.parent < 0 || mapped[n.parent] != -2)
      parent = graft_parent;  // hung off a context node: re-hang at the graft point
    else
      parent = copy_map.at(n.parent);
    Justification j = n.just;
    if (j.kind == JustKind::RuleApp) {
      int m = mapped[j.ancestor];
      if (m == -2)
        j.ancestor = copy_map.at(j.ancestor);
      else if (m >= 0)
        j.ancestor = m;
      else
        throw CutError("root chain not in the expected strippable shape: erased node referenced");
    }
    copy_map[static_cast<int>(i)] = t.add(n.sentence, std::move(j), parent);
  }
}

std::vector<int> branch_to_root(const std::vector<TNode>& nodes, int leaf) {
  std::vector<int> path;
  for (int cur = leaf; cur >= 0; cur = nodes[cur].parent) path.push_back(cur);
  return path;
}

bool branch_closed(const std::vector<TNode>& nodes, int leaf,
                   std::unordered_map<const Formula*, std::string>& keys) {
  auto key = [&keys](const FormulaPtr& f) -> const std::string& {
    auto it = keys.find(f.get());
    if (it != keys.end()) return it->second;
    return keys.emplace(f.get(), lang::canonical_key(f)).first->second;
  };
  std::unordered_set<std::string> present;
  auto path = branch_to_root(nodes, leaf);
  for (int id : path) present.insert(key(nodes[id].sentence));
  for (int id : path) {
    const FormulaPtr& s = nodes[id].sentence;
    std::string negkey = lang::canonical_key(Formula::negation(s));
    if (present.count(negkey)) return true;
  }
  return false;
}

Proof renumber(const TreeBuilder& t, FormulaPtr goal, std::string basis_id,
               EnrichmentLevel level) {
  // preorder numbering keeps parents before children
  std::vector<int> order;
  std::vector<int> new_id(t.nodes.size(), -1);
  std::vector<int> stack{0};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    new_id[cur] = static_cast<int>(order.size());
    order.push_back(cur);
    const auto& ch = t.nodes[cur].children;
    for (auto it = ch.rbegin(); it != ch.rend(); ++it) stack.push_back(*it);
  }
  Proof p;
  p.goal = std::move(goal);
  p.basis_id = std::move(basis_id);
  p.level = level;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const TNode& n = t.nodes[order[i]];
    ProofNode out;
    out.id = static_cast<int>(i);
    out.parent = n.parent < 0 ? -1 : new_id[n.parent];
    out.sentence = n.sentence;
    out.just = n.just;
    if (out.just.kind == JustKind::RuleApp) out.just.ancestor = new_id[out.just.ancestor];
    p.nodes.push_back(std::move(out));
  }
  return p;
}

}  // namespace

tableaux::Proof cut_combine(const tableaux::Proof& proof_psi, const tableaux::Proof& proof_impl,
                            const systems::AxiomBasis& basis) {
  if (!proof_impl.goal || proof_impl.goal->kind() != Formula::Kind::Implies)
    throw CutError("second proof's goal is not an implication");
  FormulaPtr psi = proof_impl.goal->left();
  FormulaPtr phi = proof_impl.goal->right();
  if (!lang::equal(proof_psi.goal, psi))
    throw CutError("goal mismatch: first proof does not prove the implication's antecedent");
  if (proof_psi.basis_id != proof_impl.basis_id)
    throw CutError("input proofs come from different bases");
  if (auto v = tableaux::check_proof(proof_psi, basis, proof_psi.level); !v)
    throw CutError("proof of the antecedent is invalid: " + v.reason);
  if (auto v = tableaux::check_proof(proof_impl, basis, proof_impl.level); !v)
    throw CutError("proof of the implication is invalid: " + v.reason);

  EnrichmentLevel level = std::max({proof_psi.level, proof_impl.level, min_level_for_lem(psi)});

  TreeBuilder t;
  FormulaPtr not_phi = Formula::negation(phi);
  FormulaPtr not_psi = Formula::negation(psi);
  int root = t.add(not_phi, Justification::root(), -1);
  int lem = t.add(Formula::disj(psi, not_psi), Justification::logical_axiom("lem"), root);
  int sib_psi = t.add(psi, Justification::rule_app(3, lem), lem);
  int sib_not_psi = t.add(not_psi, Justification::rule_app(3, lem), lem);

  // Graft the Ψ proof: its root ¬Ψ is identified with the right sibling.
  {
    std::vector<int> mapped(proof_psi.nodes.size(), -2);
    mapped[0] = sib_not_psi;
    graft_proof(t, proof_psi, sib_not_psi, mapped);
  }

  // Strip the canonical prefix chain of the implication proof:
  // root ¬(Ψ→Φ), then optionally its rule-2 conjunction child Ψ∧¬Φ, then
  // optionally that node's rule-1 links Ψ and/or ¬Φ, as far as the chain runs
  // as a single path.
  std::vector<int> mapped(proof_impl.nodes.size(), -2);
  {
    std::vector<std::vector<int>> children(proof_impl.nodes.size());
    for (std::size_t i = 1; i < proof_impl.nodes.size(); ++i)
      children[proof_impl.nodes[i].parent].push_back(static_cast<int>(i));

    FormulaPtr conj_form = Formula::conj(psi, not_phi);
    mapped[0] = -1;  // the old root vanishes; nothing may reference it
    int chain_end = 0;
    // rule-2 conjunction link
    if (children[0].size() == 1) {
      int c = children[0][0];
      const ProofNode& n = proof_impl.nodes[c];
      if (n.just.kind == JustKind::RuleApp && n.just.rule == 2 && n.just.ancestor == 0 &&
          lang::equal(n.sentence, conj_form)) {
        mapped[c] = -1;
        chain_end = c;
        // rule-1 links off the conjunction, in either order
        for (int step = 0; step < 2; ++step) {
          if (children[chain_end].size() != 1) break;
          int d = children[chain_end][0];
          const ProofNode& m = proof_impl.nodes[d];
          bool is_link = m.just.kind == JustKind::RuleApp && m.just.rule == 1 &&
                         m.just.ancestor == c &&
                         (lang::equal(m.sentence, psi) || lang::equal(m.sentence, not_phi));
          if (!is_link) break;
          mapped[d] = lang::equal(m.sentence, psi) ? sib_psi : root;
          chain_end = d;
        }
      }
    }
    graft_proof(t, proof_impl, sib_psi, mapped);
  }

  // Close any branch that used to close against the stripped root sentence:
  // splice a rule-4 sibling pair under the topmost Ψ→Φ node on it.
  std::unordered_map<const Formula*, std::string> keys;
  std::string impl_key = lang::canonical_key(proof_impl.goal);
  for (int guard = 0; guard < 1024; ++guard) {
    int open_leaf = -1;
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      if (!t.nodes[i].children.empty()) continue;
      if (!branch_closed(t.nodes, static_cast<int>(i), keys)) {
        open_leaf = static_cast<int>(i);
        break;
      }
    }
    if (open_leaf < 0) break;
    auto path = branch_to_root(t.nodes, open_leaf);  // leaf..root
    int impl_node = -1;
    for (auto it = path.rbegin(); it != path.rend(); ++it)
      if (lang::canonical_key(t.nodes[*it].sentence) == impl_key) {
        impl_node = *it;
        break;
      }
    if (impl_node < 0)
      throw CutError("root chain not in the expected strippable shape: open branch after graft");
    // re-hang impl_node's children below the Φ side of a fresh rule-4 pair
    std::vector<int> old_children = t.nodes[impl_node].children;
    t.nodes[impl_node].children.clear();
    int left = t.add(not_psi, Justification::rule_app(4, impl_node), impl_node);
    int right = t.add(phi, Justification::rule_app(4, impl_node), impl_node);
    (void)left;
    for (int c : old_children) {
      t.nodes[c].parent = right;
      t.nodes[right].children.push_back(c);
    }
  }

  Proof out = renumber(t, phi, proof_psi.basis_id, level);
  if (auto v = tableaux::check_proof(out, basis, level); !v)
    throw CutError("internal cut construction failed validation: " + v.reason);
  return out;
}

}  // namespace lstar::enrichment
