#include <doctest.h>

#include <sstream>

#include "gpforge/errors.hpp"
#include "gpforge/homology.hpp"
#include "gpforge/meier.hpp"
#include "gpforge/rewriting.hpp"
#include "oracles.hpp"

using namespace gpforge;

TEST_CASE("meier data") {
  MeierData m = build_meier();
  CHECK(m.phi.verified);
  CHECK(m.T.generator_count() == 4);
  CHECK(m.T.relator_count() == 4);
  CHECK(abelianization(m.T).format() == "rank=0 torsion=[]");
  CHECK(m.t_expr->kind == ExprKind::MeierT);
  CHECK(m.t_expr->double_coset_condition);
  CHECK(m.gamma_expr->kind == ExprKind::MeierGamma);
  CHECK_FALSE(m.gamma_expr->realized.has_value());
}

TEST_CASE("phi identities") {
  Word c = commutator(parse_word("a"), parse_word("t^-1 a t"));
  CHECK(phi_apply(c).empty());
  CHECK(phi_apply(commutator(parse_word("t"), parse_word("a^-1"))) == parse_word("a"));
  CHECK(phi_apply(parse_word("t")) == parse_word("t"));
  CHECK_THROWS_AS(phi_apply(parse_word("b")), AlphabetMismatch);
}

TEST_CASE("phi is a homomorphism of BS(2,3)") {
  oracle::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    Word x = oracle::random_word(rng, {"a", "t"}, 8);
    Word y = oracle::random_word(rng, {"a", "t"}, 8);
    CHECK(bs_equal(2, 3, phi_apply(x * y), phi_apply(x) * phi_apply(y)));
    // Well defined on the group: equal inputs give equal outputs.
    Word z = x * parse_word("t^-1 a^2 t a^-3") * y;
    CHECK(bs_equal(2, 3, phi_apply(z), phi_apply(x * y)));
  }
}

TEST_CASE("coordinate evaluation") {
  CHECK(meier_eval(parse_word("D"), 3) == parse_word("a^3"));
  CHECK(meier_eval(parse_word("D"), 0).empty());
  CHECK(meier_eval(parse_word("A Tt Abar^-1"), 5) == parse_word("a t abar^-1"));
}

TEST_CASE("double coset probe matches the recorded run") {
  auto found = double_coset_probe(8, 100000);
  std::ostringstream out;
  for (const auto& c : found) out << format_word(c.word) << '\t' << c.status << '\n';
  CHECK(out.str() == oracle::read_fixture("meier_probe_8_100000.txt"));

  // Every witness satisfies phi(x) = phi(f) for some F-word f, checked here
  // by phi(x) lying in <t, c>'s image <t>: phi(x) is a power of t.
  for (const auto& c : found) {
    Word img = phi_apply(c.word);
    CHECK(img.runs() <= 1);
    if (!img.empty()) CHECK(img.letters()[0].symbol == "t");
  }
}

TEST_CASE("double coset probe budget") {
  auto tiny = double_coset_probe(8, 10);
  REQUIRE_FALSE(tiny.empty());
  CHECK(tiny.back().status == kExhausted);
  for (std::size_t i = 0; i + 1 < tiny.size(); ++i) CHECK(tiny[i].status == kUnknownMembership);
}
