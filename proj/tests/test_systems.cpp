#include <doctest.h>

#include "lstar/checker.hpp"
#include "lstar/prenex.hpp"
#include "lstar/systems.hpp"
#include "support.hpp"

using namespace lstar;
using enrichment::EnrichmentLevel;
using lang::Formula;
using lang::FormulaPtr;
using lang::Term;
using semantics::BigNat;

TEST_CASE("totality sentences have their stated shapes") {
  auto succ = systems::totality_sentence(systems::Totality::Successor);
  REQUIRE(succ->kind() == Formula::Kind::ForAll);
  CHECK(succ->child()->kind() == Formula::Kind::Exists);

  auto addt = systems::totality_sentence(systems::Totality::Addition);
  CHECK(prenex::classify(addt) == prenex::PrenexClass{prenex::PrenexClass::Shape::Pi, 2, true});
  auto multt = systems::totality_sentence(systems::Totality::Multiplication);
  CHECK(prenex::classify(multt) == prenex::PrenexClass{prenex::PrenexClass::Shape::Pi, 2, true});

  // the Δ₀* matrices agree with native arithmetic at a sampled point:
  // Add(4,1,5) holds, Add(4,1,6) does not
  semantics::Environment env;
  semantics::DecideLimits lim;
  auto matrix = systems::add_formula(Term::variable("x"), Term::c1(), Term::variable("z"));
  env.assign("x", 4);
  env.assign("z", 5);
  CHECK(semantics::holds(matrix, env, lim));
  env.assign("z", 6);
  CHECK_FALSE(semantics::holds(matrix, env, lim));
}

TEST_CASE("relational basis: every axiom is Pi(1) and true at sampled points") {
  systems::AxiomBasis basis = systems::relational_arith_basis();
  CHECK(basis.size() == 9);
  CHECK(basis.find("add_comm") != nullptr);

  testsupport::Rng rng(20240817);
  for (const auto& ax : basis.axioms()) {
    CAPTURE(ax.id);
    auto c = prenex::classify(ax.sentence);
    CHECK(prenex::within_pi(c, 1));

    // sample Δ₀* instantiations and decide them
    for (int trial = 0; trial < 12; ++trial) {
      FormulaPtr inst = ax.sentence;
      while (inst->kind() == Formula::Kind::ForAll) {
        auto value = semantics::encode_nat(BigNat(testsupport::pick(rng, 11)));
        inst = lang::subst(inst->child(), inst->var(), value);
      }
      CAPTURE(trial);
      CHECK(semantics::decide_delta0(inst, 10'000'000));
    }
  }
}

TEST_CASE("commutativity rendering is present") {
  systems::AxiomBasis basis = systems::relational_arith_basis();
  auto X = Term::variable("x"), Y = Term::variable("y"), Z = Term::variable("z");
  FormulaPtr want = Formula::forall(
      "x", Formula::forall(
               "y", Formula::forall("z", Formula::implies(systems::add_formula(X, Y, Z),
                                                          systems::add_formula(Y, X, Z)))));
  CHECK(basis.contains(want));
}

TEST_CASE("classify_type") {
  auto lvl = EnrichmentLevel::none();
  SUBCASE("verbatim totality axioms give Type-M with tiny proofs") {
    systems::AxiomBasis b("m");
    b.add("succ", systems::totality_sentence(systems::Totality::Successor));
    b.add("add", systems::totality_sentence(systems::Totality::Addition));
    b.add("mult", systems::totality_sentence(systems::Totality::Multiplication));
    auto tc = systems::classify_type({b, lvl}, 5'000);
    CHECK(tc.rank == systems::TypeRank::M);
    CHECK(tc.name() == "Type-M");
    for (const auto& ev : tc.evidence) {
      REQUIRE(ev.proof.has_value());
      CHECK(tableaux::proof_size(*ev.proof) <= 3);
    }
  }
  SUBCASE("empty basis is Type-NS") {
    systems::AxiomBasis b("empty");
    auto tc = systems::classify_type({b, lvl}, 2'000);
    CHECK(tc.rank == systems::TypeRank::NS);
    for (const auto& ev : tc.evidence) CHECK_FALSE(ev.proof.has_value());
  }
  SUBCASE("successor and addition only give Type-A") {
    systems::AxiomBasis b("a");
    b.add("succ", systems::totality_sentence(systems::Totality::Successor));
    b.add("add", systems::totality_sentence(systems::Totality::Addition));
    auto tc = systems::classify_type({b, lvl}, 2'000);
    CHECK(tc.rank == systems::TypeRank::A);
  }
  SUBCASE("successor only gives Type-S") {
    systems::AxiomBasis b("s");
    b.add("succ", systems::totality_sentence(systems::Totality::Successor));
    auto tc = systems::classify_type({b, lvl}, 2'000);
    CHECK(tc.rank == systems::TypeRank::S);
  }
}

TEST_CASE("classify_type is monotone in the budget") {
  systems::AxiomBasis b("mono");
  b.add("succ", systems::totality_sentence(systems::Totality::Successor));
  b.add("add", systems::totality_sentence(systems::Totality::Addition));
  systems::GeneralizedArithmetic g{b, EnrichmentLevel::none()};
  auto starved = systems::classify_type(g, 1);
  auto fed = systems::classify_type(g, 2'000);
  CHECK(static_cast<int>(starved.rank) <= static_cast<int>(fed.rank));
  CHECK(fed.rank == systems::TypeRank::A);
}

TEST_CASE("K-localizations: literal false, prose true") {
  using systems::LocalizationVariant;
  for (int k = 0; k <= 4; ++k) {
    CAPTURE(k);
    CHECK_FALSE(semantics::decide_delta0(
        systems::localized_mult_totality(k, LocalizationVariant::Literal), 10'000'000));
  }
  for (int k = 0; k <= 4; ++k) {
    CAPTURE(k);
    CHECK(semantics::decide_delta0(
        systems::localized_mult_totality(k, LocalizationVariant::Prose), 10'000'000));
  }
}

TEST_CASE("self_ref_extend: diagonal identity, single emission, distinct extensions") {
  systems::GeneralizedArithmetic g{systems::relational_arith_basis(),
                                   EnrichmentLevel::rank_zero()};
  auto ext = systems::self_ref_extend(g);
  REQUIRE(ext.basis.selfrefs().size() == 1);
  const godel::SelfRefRecord& rec = ext.basis.selfrefs().back();

  // fixed point: the stored number decodes to a record carrying that number
  auto decoded = godel::godel_decode(rec.number);
  auto* back = std::get_if<godel::SelfRefRecord>(&decoded);
  REQUIRE(back != nullptr);
  CHECK(back->number == rec.number);
  CHECK(back->system_name == rec.system_name);
  CHECK(godel::godel_number(*back) == rec.number);

  // the enumerator emits the marker exactly once plus all of the base axioms
  CHECK(ext.basis.size() == g.basis.size() + 1);
  int markers = 0;
  for (const auto& ax : ext.basis.axioms())
    if (ax.id.rfind("selfref", 0) == 0) ++markers;
  CHECK(markers == 1);
  for (const auto& ax : g.basis.axioms()) CHECK(ext.basis.contains(ax.sentence));

  // extending twice yields a distinct SelfRef with a distinct number
  auto ext2 = systems::self_ref_extend(ext);
  REQUIRE(ext2.basis.selfrefs().size() == 2);
  CHECK(ext2.basis.selfrefs().back().number != rec.number);
  CHECK(ext2.basis.size() == ext.basis.size() + 1);

  auto srec = systems::selfref_record_of(ext);
  CHECK(srec.kind == systems::SchemaRecord::Kind::SelfRef);
  CHECK(srec.display.find("no proof of C0 = C1") != std::string::npos);
}

TEST_CASE("consistency_search: Level(0-) refutations") {
  auto lvl = EnrichmentLevel::none();
  SUBCASE("inconsistent basis yields the 2-node refutation") {
    systems::AxiomBasis b("bad");
    b.add("absurd", lang::parse_formula("C0 = C1"));
    auto v = systems::consistency_search({b, lvl}, systems::ConsistencyMode::Level0Minus, 0,
                                         10'000);
    REQUIRE(v.refutation_found);
    REQUIRE(v.proof_contradiction.has_value());
    CHECK(tableaux::proof_size(*v.proof_contradiction) == 2);
  }
  SUBCASE("a true basis reports NoRefutationFound") {
    systems::GeneralizedArithmetic g{systems::relational_arith_basis(), lvl};
    auto v = systems::consistency_search(g, systems::ConsistencyMode::Level0Minus, 0, 20'000);
    CHECK_FALSE(v.refutation_found);
    CHECK(v.budget == 20'000);
  }
}

TEST_CASE("consistency_search: Level(1) finds a certified pair witness") {
  systems::AxiomBasis b("contradictory");
  b.add("pos", lang::parse_formula("C0 = C1"));
  b.add("neg", lang::parse_formula("~(C0 = C1)"));
  systems::GeneralizedArithmetic g{b, EnrichmentLevel::none()};
  auto v = systems::consistency_search(g, systems::ConsistencyMode::LevelN, 1, 50'000);
  REQUIRE(v.refutation_found);
  REQUIRE(v.upsilon.has_value());
  REQUIRE(v.proof_pos.has_value());
  REQUIRE(v.proof_neg.has_value());
  CHECK(lang::equal(*v.upsilon, lang::parse_formula("C0 = C1")));

  // witness certification
  CHECK(systems::pair_meta(*v.pair_x, *v.pair_y));
  CHECK(systems::prf_meta(g, *v.pair_x, *v.proof_pos));
  CHECK(systems::prf_meta(g, *v.pair_y, *v.proof_neg));
}

TEST_CASE("pair_meta") {
  auto f = lang::parse_formula("A v. v = v");
  auto x = godel::godel_number(f);
  auto y = godel::godel_number(Formula::negation(f));
  CHECK(systems::pair_meta(x, y));
  CHECK_FALSE(systems::pair_meta(x, x));

  // a Σ₂*-only sentence is rejected for any y
  auto sigma2 = lang::parse_formula("E x. A y. y = x");
  CHECK(prenex::classify(sigma2).shape == prenex::PrenexClass::Shape::Sigma);
  auto sx = godel::godel_number(sigma2);
  CHECK_FALSE(systems::pair_meta(sx, godel::godel_number(Formula::negation(sigma2))));

  // undecodable input is false, not an error
  CHECK_FALSE(systems::pair_meta(godel::GodelNumber{BigNat(6)}, y));
}

TEST_CASE("prf_meta") {
  systems::AxiomBasis b("bad");
  b.add("absurd", lang::parse_formula("C0 = C1"));
  systems::GeneralizedArithmetic g{b, EnrichmentLevel::none()};
  auto r = tableaux::prove(lang::parse_formula("C0 = C1"), b, g.level, 1'000);
  REQUIRE(r.found());
  CHECK(systems::prf_meta(g, godel::godel_number(lang::parse_formula("C0 = C1")), *r.proof));
  CHECK_FALSE(systems::prf_meta(g, godel::godel_number(lang::parse_formula("C0 = C0")), *r.proof));
  tableaux::Proof corrupt = *r.proof;
  corrupt.nodes[1].sentence = lang::parse_formula("C1 = C1");
  CHECK_FALSE(systems::prf_meta(g, godel::godel_number(lang::parse_formula("C0 = C1")), corrupt));
}

TEST_CASE("group2_record") {
  systems::AxiomBasis b("g2");
  FormulaPtr phi = lang::parse_formula("A x. x <= double(x)");
  b.add("phi", phi);
  auto r = tableaux::prove(phi, b, EnrichmentLevel::none(), 5'000);
  REQUIRE(r.found());
  auto rec = systems::group2_record(phi, *r.proof, b);
  CHECK(rec.kind == systems::SchemaRecord::Kind::Group2);
  REQUIRE(rec.phi_number.has_value());
  CHECK(*rec.phi_number == godel::godel_number(phi));
  CHECK(rec.display.find("Prf(") != std::string::npos);

  // classification gate: a Sigma(2) sentence is rejected
  FormulaPtr sigma2 = lang::parse_formula("E x. A y. y = x");
  CHECK_THROWS_AS(systems::group2_record(sigma2, *r.proof, b), Error);
}

TEST_CASE("group3_record content is violated exactly by certified witnesses") {
  systems::AxiomBasis bad("bad");
  bad.add("pos", lang::parse_formula("C0 = C1"));
  bad.add("neg", lang::parse_formula("~(C0 = C1)"));
  systems::GeneralizedArithmetic g{bad, EnrichmentLevel::none()};
  auto rec = systems::group3_record(g);
  CHECK(rec.display.find("Pair(x, y)") != std::string::npos);

  auto v = systems::consistency_search(g, systems::ConsistencyMode::LevelN, 1, 50'000);
  REQUIRE(v.refutation_found);
  bool violated = systems::pair_meta(*v.pair_x, *v.pair_y) &&
                  systems::prf_meta(g, *v.pair_x, *v.proof_pos) &&
                  systems::prf_meta(g, *v.pair_y, *v.proof_neg);
  CHECK(violated);

  systems::AxiomBasis fine("fine");
  fine.add("triv", lang::parse_formula("C0 = C0"));
  auto v2 = systems::consistency_search({fine, EnrichmentLevel::none()},
                                        systems::ConsistencyMode::LevelN, 1, 5'000);
  CHECK_FALSE(v2.refutation_found);
}
