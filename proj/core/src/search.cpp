#include "lstar/search.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "lstar/enrichment.hpp"

namespace lstar::tableaux {

using lang::Formula;
using lang::FormulaPtr;
using lang::Term;
using lang::TermPtr;

namespace {

struct BudgetExhausted {};

struct SNode {
  FormulaPtr sentence;
  Justification just;
  int parent;
  std::string key;  // canonical form, for closure and duplicate checks
};

struct Candidate {
  FormulaPtr s1;
  Justification j1;
  FormulaPtr s2;  // second sibling for rules 3/4, null otherwise
  Justification j2;
  int cost() const { return s2 ? 2 : 1; }
};

struct BranchView {
  std::vector<int> node_ids;                 // root..leaf
  std::unordered_set<std::string> keys;      // canonical keys on the branch
  std::vector<std::string> params;           // parameters introduced, in order
  std::unordered_set<long long> delta_done;  // (rule, ancestor) packed, rules 5/6
};

long long pack(int rule, int ancestor) { return static_cast<long long>(rule) << 32 | ancestor; }

class Searcher {
 public:
  Searcher(const lang::FormulaPtr& goal, const systems::AxiomBasis& basis,
           const enrichment::EnrichmentLevel& level, std::uint64_t budget)
      : goal_(goal), basis_(basis), level_(level), budget_(budget) {
    // parameters already present in the goal or an axiom are never fresh
    for (const auto& p : lang::parameters_of(goal)) reserved_params_.insert(p);
    for (const auto& ax : basis.axioms())
      for (const auto& p : lang::parameters_of(ax.sentence)) reserved_params_.insert(p);
  }

  ProveResult run() {
    ProveResult result;
    FormulaPtr root_sentence = Formula::negation(goal_);
    try {
      for (int limit = 1; limit <= 1'000'000; ++limit) {
        nodes_.clear();
        open_.clear();
        pruned_ = false;
        limit_ = limit;
        charge();
        nodes_.push_back(
          SNode{root_sentence, Justification::root(), -1, lang::canonical_key(root_sentence)});
        open_.push_back(0);
        if (dfs()) {
          result.proof = extract();
          result.expansions = expansions_;
          return result;
        }
        if (!pruned_) {
          result.space_exhausted = true;
          break;
        }
      }
    } catch (const BudgetExhausted&) {
    }
    result.expansions = expansions_;
    return result;
  }

 private:
  lang::FormulaPtr goal_;
  const systems::AxiomBasis& basis_;
  enrichment::EnrichmentLevel level_;
  std::uint64_t budget_;
  std::uint64_t expansions_ = 0;
  bool pruned_ = false;
  int limit_ = 0;
  int param_counter_ = 0;
  std::unordered_set<std::string> reserved_params_;
  std::vector<SNode> nodes_;
  std::vector<int> open_;

  void charge() {
    if (expansions_ >= budget_) throw BudgetExhausted{};
    ++expansions_;
  }

  BranchView view(int leaf) {
    BranchView v;
    for (int cur = leaf; cur >= 0; cur = nodes_[cur].parent) v.node_ids.push_back(cur);
    std::reverse(v.node_ids.begin(), v.node_ids.end());
    for (int id : v.node_ids) {
      const SNode& n = nodes_[id];
      v.keys.insert(n.key);
      if (n.just.kind == JustKind::RuleApp && (n.just.rule == 5 || n.just.rule == 6)) {
        v.delta_done.insert(pack(n.just.rule, n.just.ancestor));
        v.params.push_back(n.just.param);
      }
    }
    return v;
  }

  bool closes(const BranchView& v, const FormulaPtr& s) {
    if (v.keys.count(lang::canonical_key(Formula::negation(s)))) return true;
    if (s->kind() == Formula::Kind::Not && v.keys.count(lang::canonical_key(s->child())))
      return true;
    return false;
  }

  std::string fresh_param() {
    std::string name;
    do {
      name = "p" + std::to_string(++param_counter_);
    } while (reserved_params_.count(name));
    return name;
  }

  // The fair instantiation pool: branch parameters, the three constants, then
  // function applications of earlier pool members, breadth-first.
  std::vector<TermPtr> term_pool(const BranchView& v, std::size_t cap) {
    std::vector<TermPtr> pool;
    for (const auto& p : v.params) pool.push_back(Term::parameter(p));
    pool.push_back(Term::c0());
    pool.push_back(Term::c1());
    pool.push_back(Term::c2());
    static const lang::Fn unary[] = {lang::Fn::Pred, lang::Fn::Log, lang::Fn::Double};
    static const lang::Fn binary[] = {lang::Fn::Sub, lang::Fn::Div,  lang::Fn::Max, lang::Fn::Root,
                                      lang::Fn::Count, lang::Fn::Bit, lang::Fn::Add};
    for (std::size_t i = 0; pool.size() < cap && i < pool.size(); ++i) {
      for (lang::Fn f : unary) {
        if (pool.size() >= cap) break;
        pool.push_back(Term::apply(f, {pool[i]}));
      }
      for (lang::Fn f : binary) {
        if (pool.size() >= cap) break;
        for (std::size_t j = 0; j <= i && pool.size() < cap; ++j)
          pool.push_back(Term::apply(f, {pool[i], pool[j]}));
      }
    }
    if (pool.size() > cap) pool.resize(cap);
    return pool;
  }

  void push_unary(std::vector<Candidate>& out, const BranchView& v, FormulaPtr s,
                  Justification j) {
    if (v.keys.count(lang::canonical_key(s))) return;
    Candidate c;
    c.s1 = std::move(s);
    c.j1 = std::move(j);
    out.push_back(std::move(c));
  }

  std::vector<Candidate> candidates(int leaf) {
    BranchView v = view(leaf);
    std::vector<Candidate> out;
    std::vector<int> gammas;        // ForAll nodes on the branch
    std::vector<int> gammas_bound;  // BoundedForAll nodes

    // stage 1: decompositions, rules 1-6, top of the branch first
    for (int id : v.node_ids) {
      const FormulaPtr& s = nodes_[id].sentence;
      switch (s->kind()) {
        case Formula::Kind::And:
          push_unary(out, v, s->left(), Justification::rule_app(1, id));
          push_unary(out, v, s->right(), Justification::rule_app(1, id));
          break;
        case Formula::Kind::Not: {
          const FormulaPtr& g = s->child();
          switch (g->kind()) {
            case Formula::Kind::Not:
              push_unary(out, v, g->child(), Justification::rule_app(2, id));
              break;
            case Formula::Kind::Or:
              push_unary(out, v,
                         Formula::conj(Formula::negation(g->left()),
                                       Formula::negation(g->right())),
                         Justification::rule_app(2, id));
              break;
            case Formula::Kind::Implies:
              push_unary(out, v, Formula::conj(g->left(), Formula::negation(g->right())),
                         Justification::rule_app(2, id));
              break;
            case Formula::Kind::And:
              push_unary(out, v,
                         Formula::disj(Formula::negation(g->left()),
                                       Formula::negation(g->right())),
                         Justification::rule_app(2, id));
              break;
            case Formula::Kind::Exists:
              push_unary(out, v, Formula::forall(g->var(), Formula::negation(g->child())),
                         Justification::rule_app(2, id));
              break;
            case Formula::Kind::ForAll:
              push_unary(out, v, Formula::exists(g->var(), Formula::negation(g->child())),
                         Justification::rule_app(2, id));
              break;
            default:
              break;
          }
          break;
        }
        case Formula::Kind::Or:
        case Formula::Kind::Implies: {
          bool is_or = s->kind() == Formula::Kind::Or;
          FormulaPtr l = is_or ? s->left() : Formula::negation(s->left());
          FormulaPtr r = s->right();
          if (v.keys.count(lang::canonical_key(l)) && v.keys.count(lang::canonical_key(r)))
            break;  // nothing new
          Candidate c;
          c.s1 = std::move(l);
          c.j1 = Justification::rule_app(is_or ? 3 : 4, id);
          c.s2 = std::move(r);
          c.j2 = Justification::rule_app(is_or ? 3 : 4, id);
          out.push_back(std::move(c));
          break;
        }
        case Formula::Kind::Exists: {
          if (v.delta_done.count(pack(5, id))) break;
          std::string p = fresh_param();
          Justification j = Justification::rule_app(5, id);
          j.param = p;
          Candidate c;
          c.s1 = lang::subst(s->child(), s->var(), Term::parameter(p));
          c.j1 = std::move(j);
          out.push_back(std::move(c));
          break;
        }
        case Formula::Kind::BoundedExists: {
          if (v.delta_done.count(pack(6, id))) break;
          std::string p = fresh_param();
          auto u = Term::parameter(p);
          Justification j = Justification::rule_app(6, id);
          j.param = p;
          Candidate c;
          c.s1 = Formula::conj(Formula::le(u, s->bound()),
                               lang::subst(s->child(), s->var(), u));
          c.j1 = std::move(j);
          out.push_back(std::move(c));
          break;
        }
        case Formula::Kind::ForAll:
          gammas.push_back(id);
          break;
        case Formula::Kind::BoundedForAll:
          gammas_bound.push_back(id);
          break;
        default:
          break;
      }
    }

    // stage 2: proper axioms, then permitted excluded-middle instances
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      const auto& ax = basis_.at(i);
      push_unary(out, v, ax.sentence, Justification::proper_axiom(ax.id));
    }
    if (level_ > enrichment::EnrichmentLevel::none()) {
      std::vector<FormulaPtr> lem_candidates;
      for (int id : v.node_ids) {
        const FormulaPtr& s = nodes_[id].sentence;
        lem_candidates.push_back(s);
        if (s->kind() == Formula::Kind::Not) lem_candidates.push_back(s->child());
      }
      std::unordered_set<std::string> seen;
      for (const auto& psi : lem_candidates) {
        if (!lang::is_closed(psi)) continue;
        FormulaPtr ax = Formula::disj(psi, Formula::negation(psi));
        if (!seen.insert(lang::canonical_key(ax)).second) continue;
        if (!enrichment::permits(level_, ax)) continue;
        push_unary(out, v, std::move(ax), Justification::logical_axiom("lem"));
      }
    }

    // stage 3: instantiations, rules 7/8, fair pool growing with the deepening
    std::size_t cap = 3 + static_cast<std::size_t>(limit_);
    std::vector<TermPtr> pool = term_pool(v, cap);
    for (int id : gammas) {
      const FormulaPtr& s = nodes_[id].sentence;
      for (const auto& t : pool) {
        Justification j = Justification::rule_app(7, id);
        j.term = t;
        push_unary(out, v, lang::subst(s->child(), s->var(), t), std::move(j));
      }
    }
    for (int id : gammas_bound) {
      const FormulaPtr& s = nodes_[id].sentence;
      for (const auto& t : pool) {
        Justification j = Justification::rule_app(8, id);
        j.term = t;
        push_unary(out, v,
                   Formula::implies(Formula::le(t, s->bound()),
                                    lang::subst(s->child(), s->var(), t)),
                   std::move(j));
      }
    }
    return out;
  }

  bool dfs() {
    if (open_.empty()) return true;
    int leaf = open_.back();
    if (static_cast<int>(nodes_.size()) >= limit_) {
      pruned_ = true;
      return false;
    }
    std::vector<Candidate> cands = candidates(leaf);
    BranchView v = view(leaf);
    for (auto& c : cands) {
      if (static_cast<int>(nodes_.size()) + c.cost() > limit_) {
        pruned_ = true;
        continue;
      }
      charge();
      std::vector<int> saved_open = open_;
      open_.pop_back();  // leaf is no longer a leaf
      std::size_t saved_nodes = nodes_.size();

      int id1 = static_cast<int>(nodes_.size());
      nodes_.push_back(SNode{c.s1, c.j1, leaf, lang::canonical_key(c.s1)});
      if (c.s2) {
        int id2 = static_cast<int>(nodes_.size());
        nodes_.push_back(SNode{c.s2, c.j2, leaf, lang::canonical_key(c.s2)});
        if (!closes(v, c.s2)) open_.push_back(id2);
      }
      if (!closes(v, c.s1)) open_.push_back(id1);

      if (dfs()) return true;

      nodes_.resize(saved_nodes);
      open_ = std::move(saved_open);
    }
    return false;
  }

  Proof extract() {
    Proof p;
    p.goal = goal_;
    p.basis_id = basis_.name();
    p.level = level_;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      ProofNode n;
      n.id = static_cast<int>(i);
      n.parent = nodes_[i].parent;
      n.sentence = nodes_[i].sentence;
      n.just = nodes_[i].just;
      p.nodes.push_back(std::move(n));
    }
    return p;
  }
};

}  // namespace

ProveResult prove(const lang::FormulaPtr& goal, const systems::AxiomBasis& basis,
                  const enrichment::EnrichmentLevel& level, std::uint64_t budget) {
  if (!goal) throw Error("null goal");
  if (!lang::is_closed(goal)) throw NotClosedError("prove expects a closed goal");
  Searcher s(goal, basis, level, budget);
  ProveResult r = s.run();
  if (r.proof) {
    Verdict v = check_proof(*r.proof, basis, level);
    if (!v) {
      std::string dump;
      for (const auto& n : r.proof->nodes)
        dump += "\n  [" + std::to_string(n.id) + " <- " + std::to_string(n.parent) + "] " +
                lang::print_formula(n.sentence);
      throw Error("internal search error: produced proof fails the checker: " + v.reason +
                  " (node " + std::to_string(v.node) + ")" + dump);
    }
  }
  return r;
}

}  // namespace lstar::tableaux
