#include <doctest.h>

#include "gpforge/errors.hpp"
#include "gpforge/rewriting.hpp"
#include "oracles.hpp"

using namespace gpforge;

namespace {

oracle::Perm to_oracle(const Permutation& p) { return oracle::Perm(p.begin(), p.end()); }

// Every homomorphism BS(2,3) -> S_5, each relator image re-checked by the
// oracle evaluator.
std::vector<std::map<std::string, oracle::Perm, std::less<>>> bs23_quotients() {
  Presentation p = oracle::load("bs23.grp");
  std::vector<std::map<std::string, oracle::Perm, std::less<>>> out;
  enumerate_quotients(p, 5, [&](const FiniteQuotient& q) {
    std::map<std::string, oracle::Perm, std::less<>> images;
    for (const auto& [s, perm] : q.images) images[s] = to_oracle(perm);
    for (const auto& r : p.relators) REQUIRE(oracle::is_identity(oracle::evaluate(images, 5, r)));
    out.push_back(std::move(images));
    return true;
  });
  return out;
}

}  // namespace

TEST_CASE("permutation conventions") {
  Permutation p{1, 2, 0};
  Permutation q{1, 0, 2};
  CHECK(compose(p, q) == Permutation{0, 2, 1});
  CHECK(is_identity(compose(p, invert(p))));
  CHECK(format_cycles(p) == "(1 2 3)");
  CHECK(format_cycles(Permutation{0, 1}) == "()");
}

TEST_CASE("cyclic exponent") {
  CHECK(cyclic_exponent(parse_word("a^6"), parse_word("a^2")) == BigInt(3));
  CHECK(cyclic_exponent(parse_word("a b a b"), parse_word("a b")) == BigInt(2));
  CHECK(cyclic_exponent(parse_word("b^-1 a^-1"), parse_word("a b")) == BigInt(-1));
  CHECK(cyclic_exponent(Word{}, parse_word("a")) == BigInt(0));
  CHECK_FALSE(cyclic_exponent(parse_word("a^3"), parse_word("a^2")).has_value());
}

TEST_CASE("hnn systems validate their edge") {
  CHECK_THROWS_AS(HnnRewriteSystem::make(Alphabet({"a"}), "t", {{Word{}, parse_word("a")}}), DegenerateEdgeError);
  CHECK_THROWS_AS(HnnRewriteSystem::make(Alphabet({"a", "b"}), "t",
                                         {{parse_word("a"), parse_word("b")}, {parse_word("b"), parse_word("a")}}),
                  UnsupportedEdgeError);
}

TEST_CASE("britton reduction on BS(2,3)") {
  auto sys = HnnRewriteSystem::baumslag_solitar(2, 3);
  Word c = commutator(parse_word("a"), parse_word("t^-1 a t"));
  Word nf = britton_normal_form(sys, c);
  CHECK_FALSE(nf.empty());
  CHECK_FALSE(has_pinch(sys, nf));

  CHECK(britton_normal_form(sys, parse_word("t^-1 a^2 t")) == parse_word("a^3"));
  CHECK(britton_normal_form(sys, parse_word("t a^3 t^-1")) == parse_word("a^2"));
  CHECK(has_pinch(sys, parse_word("t^-1 a^4 t")));
  CHECK_FALSE(has_pinch(sys, parse_word("t^-1 a t")));

  CHECK(bs_equal(2, 3, parse_word("t^-1 a^2 t"), parse_word("a^3")));
  CHECK(bs_reduce(2, 3, parse_word("t^-1 a^4 t a^-6")).empty());
  CHECK_FALSE(bs_reduce(2, 3, c).empty());
}

TEST_CASE("bs_reduce is a canonical form consistent with finite quotients") {
  auto quotients = bs23_quotients();
  REQUIRE(quotients.size() > 1);
  oracle::Rng rng(99);
  for (int i = 0; i < 300; ++i) {
    Word w = oracle::random_word(rng, {"a", "t"}, 12);
    Word nf = bs_reduce(2, 3, w);
    CHECK(bs_reduce(2, 3, nf) == nf);
    CHECK(bs_reduce(2, 3, w * w.inverse()).empty());
    for (const auto& q : quotients) CHECK(oracle::evaluate(q, 5, w) == oracle::evaluate(q, 5, nf));
    // Inserting a relator conjugate does not change the normal form.
    Word x = oracle::random_word(rng, {"a", "t"}, 4);
    Word padded = w * x * parse_word("t^-1 a^2 t a^-3") * x.inverse();
    CHECK(bs_reduce(2, 3, padded) == nf);
  }
}

TEST_CASE("free triviality") {
  CHECK(free_triviality(parse_word("a b b^-1 a^-1")));
  CHECK_FALSE(free_triviality(parse_word("a b a^-1 b^-1")));
  TrivialityCertificate c = certify_free(parse_word("a a^-1"));
  CHECK(c.trivial);
  CHECK(verify_certificate(c, Presentation::free({"a"})));
}

TEST_CASE("finite quotient certificates") {
  Presentation bs = oracle::load("bs23.grp");
  QuotientSearchResult r = finite_quotient_search(bs, 5, parse_word("a"));
  REQUIRE(r.certificate.has_value());
  CHECK_FALSE(r.certificate->trivial);
  CHECK(verify_certificate(*r.certificate, bs));
  CHECK(format_certificate(*r.certificate) == "hom a: (1 2 3 4 5) t: (2 5)(3 4)");

  // The commutator [a, t^-1 a t] dies in every finite quotient.
  Word c = commutator(parse_word("a"), parse_word("t^-1 a t"));
  CHECK_FALSE(finite_quotient_search(bs, 5, c).certificate.has_value());

  Presentation c3 = oracle::load("c3.grp");
  QuotientSearchResult all = finite_quotient_search(c3, 3);
  // Homomorphisms Z/3 -> S_1, S_2, S_3: 1 + 1 + 3.
  CHECK(all.homomorphisms.size() == 5);
  CHECK_THROWS(finite_quotient_search(c3, 7));
}

TEST_CASE("quotient counts match a brute force oracle") {
  // Homomorphisms from the free group on two letters to S_3: 36.
  std::size_t count = 0;
  enumerate_quotients(Presentation::free({"a", "b"}), 3, [&](const FiniteQuotient&) {
    ++count;
    return true;
  });
  CHECK(count == 36);
  // Z/2 x Z/2 = <a, b | a^2, b^2, [a,b]> -> S_3: pairs of commuting involutions or identity: 1 + 3 + 3 + 3.
  count = 0;
  enumerate_quotients(parse_presentation("gens a b\nrel a^2\nrel b^2\nrel a^-1 b^-1 a b\n"), 3,
                      [&](const FiniteQuotient&) {
                        ++count;
                        return true;
                      });
  CHECK(count == 10);
}

TEST_CASE("tietze collapse certificate") {
  Presentation trivial = parse_presentation("gens a b\nrel a b\nrel a^2 b\n");
  auto cert = certify_tietze_collapse(trivial);
  REQUIRE(cert.has_value());
  CHECK(cert->trivial);
  CHECK(verify_certificate(*cert, trivial));
  CHECK_FALSE(certify_tietze_collapse(oracle::load("c2.grp")).has_value());
}
