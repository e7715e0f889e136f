#include <doctest.h>

#include "gpforge/errors.hpp"
#include "gpforge/homology.hpp"
#include "gpforge/inference.hpp"
#include "gpforge/reductions.hpp"
#include "oracles.hpp"

using namespace gpforge;

TEST_CASE("oracle selection") {
  Presentation f2 = oracle::load("free2.grp");
  Presentation bs = oracle::load("bs23.grp");
  CHECK(WordProblemSource::from_spec(f2, "").describe() == "free");
  CHECK(WordProblemSource::from_spec(bs, "").describe() == "bs:2,3");
  CHECK(WordProblemSource::from_spec(bs, "bs:2,3").describe() == "bs:2,3");
  CHECK_THROWS_AS(WordProblemSource::from_spec(bs, "bs:3,2"), ConfigurationError);
  CHECK_THROWS_AS(WordProblemSource::from_spec(bs, "free"), ConfigurationError);
  CHECK_THROWS_AS(WordProblemSource::from_spec(f2, "magic"), ConfigurationError);
  CHECK_THROWS_AS(WordProblemSource::from_spec(oracle::load("c2.grp"), ""), ConfigurationError);

  auto ext = WordProblemSource::external_oracle(oracle::load("c2.grp"),
                                                [](const Word& w) { return w.exponent_sum("g") % 2 == 0; });
  CHECK(ext.is_trivial(parse_word("g^4")));
  CHECK_FALSE(ext.is_trivial(parse_word("g^3")));
  CHECK_THROWS_AS(ext.is_trivial(parse_word("h")), AlphabetMismatch);
}

TEST_CASE("lambda_w branches") {
  auto src = WordProblemSource::from_spec(oracle::load("free2.grp"), "free");
  WitnessOutput triv = lambda_w(src, parse_word("a b b^-1 a^-1"));
  REQUIRE(triv.presentation.has_value());
  CHECK(triv.presentation->generator_count() == 0);
  CHECK_FALSE(triv.wbar.has_value());
  CHECK(*triv.expr->word_trivial);

  WitnessOutput non = lambda_w(src, parse_word("a b"));
  CHECK(non.presentation->alphabet.symbols() == std::vector<std::string>{"a", "b", "z"});
  CHECK(format_word(*non.wbar) == "z");
  CHECK_FALSE(*non.expr->word_trivial);
}

TEST_CASE("gamma_w adds a free letter") {
  auto src = WordProblemSource::baumslag_solitar(2, 3);
  WitnessOutput triv = gamma_w(src, parse_word("t^-1 a^2 t a^-3"));
  CHECK(serialize(tietze_simplify(*triv.presentation)) == "gens t\n");
  WitnessOutput non = gamma_w(src, parse_word("a"));
  CHECK(abelianization(*non.presentation).format() == "rank=3 torsion=[]");
}

TEST_CASE("witness_W collapses exactly on the trivial branch") {
  auto src = WordProblemSource::free_group(oracle::load("free2.grp"));
  ExprPtr f2 = free_group_f2_atom();
  WitnessOutput triv = witness_W(f2, src, parse_word("b a a^-1 b^-1"));
  CHECK(serialize(tietze_simplify(*triv.presentation)) == "gens\n");
  CHECK(triv.expr->pending);

  WitnessOutput non = witness_W(f2, src, parse_word("a b a^-1 b^-1"));
  Presentation simplified = tietze_simplify(*non.presentation);
  CHECK(simplified.generator_count() > 0);
  // Two copies of Lambda * <z>, each witness z_j glued to a generator of F2.
  CHECK(non.presentation->alphabet.symbols() ==
        std::vector<std::string>{"a", "b", "a_1", "b_1", "z_1", "a_2", "b_2", "z_2"});
  CHECK(format_word(non.presentation->relators.back()) == "b z_2^-1");
  CHECK(abelianization(*non.presentation).rank == 6);

  CHECK_THROWS_AS(witness_W(f2, src, parse_word("a"), {"q"}), AlphabetMismatch);
  WitnessOutput one = witness_W(f2, src, parse_word("a"), {"b"});
  CHECK(one.presentation->generator_count() == 2 + 3);
}

TEST_CASE("pi_w and delta_w") {
  auto src = WordProblemSource::free_group(oracle::load("free2.grp"));
  CHECK_THROWS_AS(pi_w(src, parse_word("a"), 3), DomainError);
  WitnessOutput p4 = pi_w(src, parse_word("a"), 4);
  CHECK(p4.presentation.has_value());
  CHECK(p4.expr->kind == ExprKind::PiW);
  WitnessOutput p5 = pi_w(src, parse_word("a"), 5);
  CHECK_FALSE(p5.presentation.has_value());
  CHECK_THROWS_AS(pi_w(src, parse_word("a"), 5, hyperbolic_manifold_atom(2)), InputError);

  WitnessOutput d3 = delta_w(src, parse_word("a"), 3);
  CHECK(d3.expr->children.size() == 3);
  CHECK(abelianization(*d3.presentation).rank == 4 + 2 + 2);
  WitnessOutput d1 = delta_w(src, parse_word("a a^-1"), 1);
  CHECK(serialize(tietze_simplify(*d1.presentation)) == "gens t\n");
}

TEST_CASE("genus two surface") {
  CHECK(abelianization(genus2_surface()).format() == "rank=4 torsion=[]");
  CHECK(genus2_surface() == oracle::load("genus2.grp"));
}
