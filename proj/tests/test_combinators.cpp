#include <doctest.h>

#include "gpforge/combinators.hpp"
#include "gpforge/errors.hpp"
#include "gpforge/homology.hpp"
#include "oracles.hpp"

using namespace gpforge;

namespace {

ExprPtr load_atom(const std::string& name) { return atom(name, oracle::load(name + ".grp")); }

}  // namespace

TEST_CASE("free product renames clashing generators") {
  ExprPtr fp = free_product(load_atom("c2"), load_atom("c3"));
  CHECK(fp->kind == ExprKind::FreeProduct);
  CHECK(fp->presentation().alphabet.symbols() == std::vector<std::string>{"g", "g_2"});
  CHECK(abelianization(fp->presentation()).format() == "rank=0 torsion=[6]");
  CHECK(fp->children.size() == 2);
}

TEST_CASE("direct products commute the factors") {
  ExprPtr z2 = direct_product(load_atom("free1"), load_atom("free1"));
  CHECK(abelianization(z2->presentation()).format() == "rank=2 torsion=[]");
  CHECK(z2->presentation().relator_count() == 1);
  ExprPtr c6 = direct_product(load_atom("c2"), load_atom("c3"));
  CHECK(abelianization(c6->presentation()).format() == "rank=0 torsion=[6]");
}

TEST_CASE("products over unrealized atoms have no presentation") {
  ExprPtr p = direct_product(atom("T", std::nullopt, {{"thompson-t", std::nullopt}}), load_atom("free1"));
  CHECK_FALSE(p->realized.has_value());
  CHECK_THROWS_AS(p->presentation(), InputError);
}

TEST_CASE("amalgam and hnn") {
  ExprPtr trefoil = amalgamated_product(load_atom("free1"), load_atom("free1"), {{parse_word("g^2"), parse_word("g^3")}});
  CHECK(serialize(trefoil->presentation()) == "gens g g_2\nrel g^2 g_2^-3\n");
  CHECK(abelianization(trefoil->presentation()).format() == "rank=1 torsion=[]");
  CHECK_THROWS_AS(amalgamated_product(load_atom("free1"), load_atom("free1"), {{Word{}, parse_word("g")}}),
                  DegenerateEdgeError);

  ExprPtr bs = hnn_extension(load_atom("free1"), "t", {{parse_word("g^2"), parse_word("g^3")}});
  CHECK(serialize(bs->presentation()) == "gens g t\nrel t^-1 g^2 t g^-3\n");
  CHECK_THROWS_AS(hnn_extension(load_atom("free1"), "g", {}), StableLetterClash);
}

TEST_CASE("standard mitosis") {
  ExprPtr m = standard_mitosis(load_atom("free1"));
  const Presentation& p = m->presentation();
  CHECK(p.alphabet.symbols() == std::vector<std::string>{"g", "s", "d"});
  // One conjugation relator and one commutator per generator pair.
  CHECK(p.relator_count() == 2);
  CHECK(abelianization(p).format() == "rank=2 torsion=[]");
  REQUIRE(m->morphism.has_value());
  CHECK(m->morphism->verified);

  ExprPtr m2 = standard_mitosis(load_atom("free2"));
  CHECK(m2->presentation().relator_count() == 2 + 4);
  CHECK(m2->morphism->verified);
}

TEST_CASE("mu stages") {
  Presentation g = oracle::load("free1.grp");
  for (std::size_t k = 1; k <= 4; ++k) {
    Presentation p = mu_stage_presentation(g, k);
    CHECK(p.generator_count() == 1 + 2 * k + 1);
    // At k = 1 nothing shifts the new letters, so they stay free.
    CHECK(abelianization(p).format() == (k == 1 ? "rank=3 torsion=[]" : "rank=1 torsion=[]"));
  }
  CHECK_THROWS_AS(mu_stage_presentation(g, 0), DomainError);

  StagedPresentation mu = mu_staged(g);
  CHECK(mu.first_stage() == 1);
  // Stage k+1 contains the generators of stage k; relators shift so only
  // generator containment is checked here.
  for (std::size_t k = 1; k <= 3; ++k) {
    for (const auto& s : mu.stage(k).alphabet.symbols()) CHECK(mu.stage(k + 1).alphabet.contains(s));
  }
  ExprPtr node = mu_stage(load_atom("c2"), 2);
  CHECK(node->kind == ExprKind::MuStage);
  CHECK(node->stage == 2);
}

TEST_CASE("ascending hnn obligations") {
  ExprPtr z = load_atom("free1");
  PresentationMorphism doubling = make_morphism(z->presentation(), z->presentation(), {{"g", parse_word("g^2")}});
  ExprPtr bs12 = bac_hnn(z, doubling);
  CHECK(bs12->ascending);
  CHECK_FALSE(bs12->pending);
  CHECK(serialize(bs12->presentation()) == "gens g t\nrel t^-1 g t g^-2\n");

  ExprPtr c2 = load_atom("c2");
  PresentationMorphism cube = make_morphism(c2->presentation(), c2->presentation(), {{"g", parse_word("g^3")}});
  CHECK(bac_hnn(c2, cube)->pending);
  ExprPtr checked = bac_hnn(c2, cube, [](const Word& w) { return w.exponent_sum("g") % 2 == 0; });
  CHECK_FALSE(checked->pending);
}
