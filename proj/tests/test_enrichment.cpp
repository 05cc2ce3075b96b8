#include <doctest.h>

#include "lstar/enrichment.hpp"

#include "lstar/checker.hpp"
#include "lstar/prenex.hpp"
#include "lstar/search.hpp"
#include "lstar/semantics.hpp"
#include "lstar/systems.hpp"
#include "support.hpp"

using namespace lstar;
using enrichment::EnrichmentLevel;
using lang::Formula;
using lang::FormulaPtr;
using lang::Term;

namespace {

const std::vector<EnrichmentLevel> kLevels = {
    EnrichmentLevel::none(),        EnrichmentLevel::rank_zero(),
    EnrichmentLevel::rank_zero_plus(), EnrichmentLevel::rank_k(1),
    EnrichmentLevel::rank_k(2),     EnrichmentLevel::infinite(),
};

}  // namespace

TEST_CASE("lem_axiom") {
  FormulaPtr x = lang::parse_formula("C0 = C0");
  FormulaPtr lem = enrichment::lem_axiom(x);
  CHECK(lang::print_formula(lem) == "C0 = C0 | ~C0 = C0");
  CHECK_THROWS_AS(enrichment::lem_axiom(lang::parse_formula("x = C0")), NotClosedError);

  FormulaPtr psi = systems::totality_sentence(systems::Totality::Multiplication);
  FormulaPtr lem2 = enrichment::lem_axiom(psi);
  REQUIRE(lem2->kind() == Formula::Kind::Or);
  CHECK(lang::equal(lem2->left(), psi));
  CHECK(lang::equal(lem2->right()->child(), psi));

  CHECK_FALSE(lang::equal(lem, lem2));
}

TEST_CASE("lem_plus_axiom closes every free variable") {
  FormulaPtr psi = lang::parse_formula("x = C0");
  FormulaPtr ax = enrichment::lem_plus_axiom(psi);
  CHECK(lang::print_formula(ax) == "A x. x = C0 | ~x = C0");

  FormulaPtr psi2 = lang::parse_formula("x <= y");
  FormulaPtr ax2 = enrichment::lem_plus_axiom(psi2);
  CHECK(lang::is_closed(ax2));
  REQUIRE(ax2->kind() == Formula::Kind::ForAll);
  CHECK(ax2->child()->kind() == Formula::Kind::ForAll);
  CHECK(semantics::is_delta0(ax2->child()->child()->left()));

  // the matrix classifies as Δ₀* once closed, via the prenex module
  CHECK(prenex::classify(ax2).shape == prenex::PrenexClass::Shape::Pi);

  CHECK_THROWS_AS(enrichment::lem_plus_axiom(lang::parse_formula("A x. x = x")), NotDelta0Error);
  CHECK_THROWS_AS(enrichment::lem_plus_axiom(lang::parse_formula("E y. y = x")), NotDelta0Error);
  CHECK_THROWS_AS(enrichment::lem_plus_axiom(lang::parse_formula("C0 = C0")), Error);
}

TEST_CASE("permits: the Def. 3.11 gate across all levels") {
  FormulaPtr delta = lang::parse_formula("C0 = C0");
  FormulaPtr pi1 = lang::parse_formula("A x. x = x");
  FormulaPtr sigma1 = lang::parse_formula("E x. x = x");
  FormulaPtr pi2 = lang::parse_formula("A x. E y. y = x");

  auto lem = [](const FormulaPtr& f) { return enrichment::lem_axiom(f); };

  // level None permits nothing
  for (const auto& f : {delta, pi1, sigma1, pi2})
    CHECK_FALSE(enrichment::permits(EnrichmentLevel::none(), lem(f)));

  // RankZero: Δ₀* sentences only
  CHECK(enrichment::permits(EnrichmentLevel::rank_zero(), lem(delta)));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::rank_zero(), lem(pi1)));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::rank_zero(), lem(sigma1)));

  // RankK(k): rank at most k, either shape
  CHECK(enrichment::permits(EnrichmentLevel::rank_k(1), lem(delta)));
  CHECK(enrichment::permits(EnrichmentLevel::rank_k(1), lem(pi1)));
  CHECK(enrichment::permits(EnrichmentLevel::rank_k(1), lem(sigma1)));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::rank_k(1), lem(pi2)));
  CHECK(enrichment::permits(EnrichmentLevel::rank_k(2), lem(pi2)));

  // Infinite: everything, including non-prenex Ψ
  FormulaPtr nonprenex = Formula::negation(pi1);
  CHECK(enrichment::permits(EnrichmentLevel::infinite(), lem(nonprenex)));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::rank_k(5), lem(nonprenex)));

  // lem_plus shapes appear at RankZeroPlus, not below
  FormulaPtr plus = enrichment::lem_plus_axiom(lang::parse_formula("x = C0"));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::rank_zero(), plus));
  CHECK(enrichment::permits(EnrichmentLevel::rank_zero_plus(), plus));
  CHECK(enrichment::permits(EnrichmentLevel::rank_k(1), plus));
  CHECK(enrichment::permits(EnrichmentLevel::infinite(), plus));

  // RankZeroPlus otherwise behaves like RankZero on plain lem instances
  CHECK(enrichment::permits(EnrichmentLevel::rank_zero_plus(), lem(delta)));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::rank_zero_plus(), lem(pi1)));

  // non-lem shapes never pass
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::infinite(), delta));
  CHECK_FALSE(enrichment::permits(EnrichmentLevel::infinite(),
                                  Formula::disj(delta, Formula::negation(pi1))));
}

TEST_CASE("permits is monotone along the level chain") {
  testsupport::Rng rng(20240815);
  std::vector<FormulaPtr> candidates;
  for (int i = 0; i < 40; ++i) {
    FormulaPtr psi = testsupport::random_closed_sentence(rng, 3, 2);
    candidates.push_back(Formula::disj(psi, Formula::negation(psi)));
  }
  candidates.push_back(enrichment::lem_plus_axiom(lang::parse_formula("x = C0")));
  candidates.push_back(enrichment::lem_plus_axiom(lang::parse_formula("x <= y")));
  candidates.push_back(lang::parse_formula("C0 = C0"));
  for (const auto& c : candidates)
    for (std::size_t i = 0; i + 1 < kLevels.size(); ++i) {
      CAPTURE(lang::print_formula(c));
      CHECK(kLevels[i] < kLevels[i + 1]);
      if (enrichment::permits(kLevels[i], c)) CHECK(enrichment::permits(kLevels[i + 1], c));
    }
}

TEST_CASE("gate soundness: low-level permitted axioms are true excluded middles") {
  testsupport::Rng rng(20240818);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    FormulaPtr psi = testsupport::random_delta0_sentence(rng, 2, 6);
    FormulaPtr ax = enrichment::lem_axiom(psi);
    if (!enrichment::permits(EnrichmentLevel::rank_zero(), ax)) continue;
    CHECK(semantics::decide_delta0(ax, 50'000'000));
    ++checked;
  }
  for (int i = 0; i < 30; ++i) {
    FormulaPtr body = testsupport::random_delta0(rng, {"x"}, 1, 6);
    FormulaPtr ax;
    try {
      ax = enrichment::lem_plus_axiom(body);
    } catch (const Error&) {
      continue;
    }
    REQUIRE(enrichment::permits(EnrichmentLevel::rank_zero_plus(), ax));
    // spot-verify the Δ₀* instantiations at sampled points
    for (int val : {0, 1, 5}) {
      FormulaPtr inst = ax;
      while (inst->kind() == Formula::Kind::ForAll)
        inst = lang::subst(inst->child(), inst->var(),
                           semantics::encode_nat(semantics::BigNat(val)));
      CHECK(semantics::decide_delta0(inst, 50'000'000));
    }
    ++checked;
  }
  CHECK(checked >= 50);
}

TEST_CASE("cut_combine on the worked pair") {
  systems::AxiomBasis empty("empty");
  FormulaPtr X = lang::parse_formula("C0 = C0");
  FormulaPtr psi = Formula::disj(X, Formula::negation(X));

  auto p_psi = tableaux::prove(psi, empty, EnrichmentLevel::none(), 100'000);
  REQUIRE(p_psi.found());
  auto p_impl = tableaux::prove(Formula::implies(psi, psi), empty, EnrichmentLevel::none(),
                                100'000);
  REQUIRE(p_impl.found());

  tableaux::Proof cut = enrichment::cut_combine(*p_psi.proof, *p_impl.proof, empty);
  CHECK(lang::equal(cut.goal, psi));
  CHECK(tableaux::proof_size(cut) <=
        tableaux::proof_size(*p_psi.proof) + tableaux::proof_size(*p_impl.proof) + 4);

  // Ψ is Δ₀* here, so RankZero suffices, and RankK(1) also accepts
  CHECK(tableaux::check_proof(cut, empty, EnrichmentLevel::rank_zero()).valid);
  CHECK(tableaux::check_proof(cut, empty, EnrichmentLevel::rank_k(1)).valid);

  // rejected at level None: the logical axiom node is unpermitted
  tableaux::Verdict none = tableaux::check_proof(cut, empty, EnrichmentLevel::none());
  CHECK_FALSE(none.valid);
  CHECK(none.reason.find("not permitted") != std::string::npos);
}

TEST_CASE("cut_combine error cases") {
  systems::AxiomBasis basis("b");
  FormulaPtr psi = lang::parse_formula("C0 = C0");
  FormulaPtr phi = lang::parse_formula("C1 = C1");
  basis.add("psi", psi);
  basis.add("impl", Formula::implies(psi, phi));
  basis.add("other", lang::parse_formula("C2 = C2"));

  auto p_psi = tableaux::prove(psi, basis, EnrichmentLevel::none(), 10'000);
  auto p_impl = tableaux::prove(Formula::implies(psi, phi), basis, EnrichmentLevel::none(), 10'000);
  auto p_other = tableaux::prove(lang::parse_formula("C2 = C2"), basis,
                                 EnrichmentLevel::none(), 10'000);
  REQUIRE(p_psi.found());
  REQUIRE(p_impl.found());
  REQUIRE(p_other.found());

  // goal mismatch
  CHECK_THROWS_AS(enrichment::cut_combine(*p_other.proof, *p_impl.proof, basis), CutError);
  // second argument not an implication proof
  CHECK_THROWS_AS(enrichment::cut_combine(*p_psi.proof, *p_psi.proof, basis), CutError);
  // invalid input proof
  tableaux::Proof corrupt = *p_impl.proof;
  corrupt.nodes.back().sentence = lang::parse_formula("C2 = C1");
  CHECK_THROWS_AS(enrichment::cut_combine(*p_psi.proof, corrupt, basis), CutError);
}

TEST_CASE("cut size bound and validity over prove()-generated pairs") {
  testsupport::Rng rng(20240816);
  int done = 0;
  while (done < 40) {
    FormulaPtr psi = testsupport::random_true_delta0(rng, 2);
    FormulaPtr phi = testsupport::random_true_delta0(rng, 2);
    systems::AxiomBasis basis("gen");
    basis.add("psi", psi);
    basis.add("impl", Formula::implies(psi, phi));
    auto p_psi = tableaux::prove(psi, basis, EnrichmentLevel::none(), 20'000);
    auto p_impl = tableaux::prove(Formula::implies(psi, phi), basis,
                                  EnrichmentLevel::none(), 20'000);
    if (!p_psi.found() || !p_impl.found()) continue;
    tableaux::Proof cut = enrichment::cut_combine(*p_psi.proof, *p_impl.proof, basis);
    CHECK(tableaux::proof_size(cut) <=
          tableaux::proof_size(*p_psi.proof) + tableaux::proof_size(*p_impl.proof) + 4);
    CHECK(tableaux::check_proof(cut, basis, EnrichmentLevel::rank_zero()).valid);
    CHECK_FALSE(tableaux::check_proof(cut, basis, EnrichmentLevel::none()).valid);
    ++done;
  }
}

TEST_CASE("min_level_for_lem") {
  CHECK(enrichment::min_level_for_lem(lang::parse_formula("C0 = C0")) ==
        EnrichmentLevel::rank_zero());
  CHECK(enrichment::min_level_for_lem(lang::parse_formula("A x. x = x")) ==
        EnrichmentLevel::rank_k(1));
  CHECK(enrichment::min_level_for_lem(lang::parse_formula("A x. E y. y = x")) ==
        EnrichmentLevel::rank_k(2));
  CHECK(enrichment::min_level_for_lem(
            Formula::negation(lang::parse_formula("A x. x = x"))) ==
        EnrichmentLevel::infinite());
}
