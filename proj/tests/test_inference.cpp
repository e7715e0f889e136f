#include <doctest.h>

#include <functional>

#include "gpforge/errors.hpp"
#include "gpforge/expr_file.hpp"
#include "gpforge/inference.hpp"
#include "gpforge/meier.hpp"
#include "oracles.hpp"

using namespace gpforge;

namespace {

FactBase derive_fixture(const std::string& name, DeriveOptions opts = {}) {
  return FactBase::derive(load_expr_file(oracle::fixture_path(name)), {}, opts);
}

std::size_t depth(const Certificate& c) {
  std::size_t d = 0;
  for (const auto& p : c.premises) d = std::max(d, depth(*p));
  return d + 1;
}

}  // namespace

TEST_CASE("predicate names round trip") {
  for (const auto& info : predicate_table()) {
    auto back = pred_by_name(info.name);
    REQUIRE(back.has_value());
    CHECK(back->pred == info.pred);
    CHECK(pred_info(info.pred).name == info.name);
  }
  CHECK_FALSE(pred_by_name("nonsense").has_value());
  CHECK(parse_query("large-hb 4") == std::make_pair(Pred::LargeHb, 4LL));
  CHECK(parse_query("boundedly-acyclic").first == Pred::BoundedlyAcyclic);
  CHECK_THROWS_AS(parse_query("large-hb"), InputError);
  CHECK_THROWS_AS(parse_query("amenable 3"), InputError);
  CHECK(format_fact(Fact{2, Pred::LargeHb, 4}) == "large-hb 4 @2");
}

TEST_CASE("thompson times hyperbolic three-manifold") {
  FactBase fb = derive_fixture("tl.gx");
  for (long long n = 2; n <= 8; ++n) {
    CertPtr c = fb.query(0, Pred::LargeHb, n);
    REQUIRE(c);
    CHECK(c->rule == 17);
    CHECK(replay_certificate(*c, fb));
  }
  CHECK(rule_chain(*fb.query(0, Pred::LargeHb, 6)) == "R17 <- R16");
  CHECK_FALSE(fb.query(0, Pred::LargeHb, 14));
  FactBase wide = derive_fixture("tl.gx", {.horizon = 16});
  CHECK(wide.query(0, Pred::LargeHb, 14));
}

TEST_CASE("meier group large in even degrees") {
  FactBase fb = FactBase::derive(build_meier().gamma_expr);
  CertPtr two = fb.query(0, Pred::LargeHb, 2);
  REQUIRE(two);
  CHECK(two->rule == 9);
  for (long long d = 2; d <= 5; ++d) {
    CertPtr c = fb.query(0, Pred::LargeHb, 2 * d);
    REQUIRE(c);
    CHECK(c->rule == 12);
    CHECK(replay_certificate(*c, fb));
  }
  CHECK(format_certificate(*two, fb).find("R9") != std::string::npos);
}

TEST_CASE("mu over an abstract group") {
  FactBase fb = derive_fixture("mu_abstract.gx");
  for (Pred p : {Pred::BoundedlyAcyclic, Pred::ContainsF2, Pred::NotFinPres}) {
    CertPtr c = fb.query(0, p);
    REQUIRE(c);
    CHECK(c->rule == 6);
  }
  CHECK(fb.query(0, Pred::FinGen, 5));
  CHECK(check_consistency(fb).empty());
}

TEST_CASE("structural facts of free groups") {
  FactBase fb = FactBase::derive(atom("F", oracle::load("free2.grp")));
  CHECK(fb.query(0, Pred::ContainsF2));
  CHECK(fb.query(0, Pred::FinPres)->basis == "structure");
  CHECK(fb.query(0, Pred::AcylHyp)->rule == 19);
  CHECK(fb.query(0, Pred::NotAmenable)->rule == 21);
  CHECK_FALSE(fb.query(0, Pred::Amenable));
}

TEST_CASE("contradictions are flagged") {
  FactBase bad = derive_fixture("adversarial.gx");
  CHECK(check_consistency(bad).size() == 1);
  for (const char* name : {"mu2.gx", "mu_abstract.gx", "meier.gx", "tl.gx", "witness.gx", "pi5.gx",
                           "gamma_trivial.gx", "bs12.gx"}) {
    CAPTURE(name);
    CHECK(check_consistency(derive_fixture(name)).empty());
  }
}

TEST_CASE("every certificate replays and respects rounds") {
  for (const char* name : {"mu2.gx", "meier.gx", "tl.gx", "witness.gx", "pi5.gx", "bs12.gx"}) {
    CAPTURE(name);
    FactBase fb = derive_fixture(name);
    for (const Fact& f : fb.facts()) {
      CertPtr c = fb.certificate(f);
      REQUIRE(c);
      CHECK(c->conclusion == f);
      CHECK(replay_certificate(*c, fb));
      CHECK(depth(*c) <= fb.rounds() + 1);
    }
  }
}

TEST_CASE("degree-indexed facts stay within the horizon") {
  FactBase fb = derive_fixture("pi5.gx", {.horizon = 7});
  for (const Fact& f : fb.facts()) {
    if (pred_info(f.pred).has_degree && f.pred != Pred::FinGen) CHECK(f.degree <= 7);
  }
  CHECK(fb.query(0, Pred::LargeHb, 5));
}

TEST_CASE("extra facts and unknown nodes") {
  ExprPtr e = load_expr_file(oracle::fixture_path("tl.gx"));
  CHECK_THROWS_AS(FactBase::derive(e, {Fact{0, Pred::Amenable}}), InputError);
  FactBase fb = FactBase::derive(e, {Fact{1, Pred::Amenable}});
  CHECK(fb.query(1, Pred::BoundedlyAcyclic));
  CHECK_THROWS_AS(fb.query(99, Pred::Amenable), UnknownNodeError);
  CHECK(fb.nodes().size() == 3);
  CHECK(fb.nodes()[1].parent == 0);
}

TEST_CASE("ascending hnn and amenable atoms are boundedly acyclic") {
  CHECK(derive_fixture("bs12.gx").query(0, Pred::BoundedlyAcyclic)->rule == 3);
  CHECK(derive_fixture("gamma_trivial.gx").query(0, Pred::BoundedlyAcyclic)->rule == 1);
  CHECK(derive_fixture("witness.gx").query(0, Pred::LargeHb, 2)->rule == 18);
}
