#include <doctest.h>

#include "gpforge/errors.hpp"
#include "gpforge/words.hpp"
#include "oracles.hpp"

using namespace gpforge;

TEST_CASE("parse and format round trip") {
  CHECK(format_word(parse_word("a b^-1 a^3")) == "a b^-1 a^3");
  CHECK(format_word(parse_word("1")) == "1");
  CHECK(format_word(parse_word("a a^-1")) == "1");
  CHECK(format_word(parse_word("  t^-1   a^2 t ")) == "t^-1 a^2 t");
}

TEST_CASE("parse rejects malformed words") {
  CHECK_THROWS_AS(parse_word("a^"), ParseError);
  CHECK_THROWS_AS(parse_word("2a"), ParseError);
  CHECK_THROWS_AS(parse_word("a^-"), ParseError);
  CHECK_THROWS_AS(parse_word("a^0"), ParseError);
}

TEST_CASE("huge exponents stay exact") {
  Word w = parse_word("a^123456789012345678901234567890");
  CHECK(w.length() == BigInt("123456789012345678901234567890"));
  CHECK((w * w.inverse()).empty());
  CHECK(format_word(w.pow(2)) == "a^246913578024691357802469135780");
}

TEST_CASE("free reduction agrees with a stack oracle") {
  oracle::Rng rng(7);
  for (int i = 0; i < 500; ++i) {
    Word raw = oracle::random_word(rng, {"a", "b", "c"}, 20);
    Word reduced = free_reduce(raw);
    CHECK(reduced.is_reduced());
    CHECK(oracle::flatten(reduced) == oracle::stack_reduce(oracle::flatten(raw)));
  }
}

TEST_CASE("product is associative and inverse cancels") {
  oracle::Rng rng(11);
  for (int i = 0; i < 200; ++i) {
    Word x = free_reduce(oracle::random_word(rng, {"a", "b"}, 8));
    Word y = free_reduce(oracle::random_word(rng, {"a", "b"}, 8));
    Word z = free_reduce(oracle::random_word(rng, {"a", "b"}, 8));
    CHECK((x * y) * z == x * (y * z));
    CHECK((x * x.inverse()).empty());
    CHECK((x * y).inverse() == y.inverse() * x.inverse());
  }
}

TEST_CASE("cyclic reduction splits conjugator and core") {
  Word w = parse_word("b a^2 c a^-1 b^-1");
  CyclicReduction cr = cyclically_reduce(w);
  CHECK(cr.core.length() == 2);
  CHECK(cr.conjugator * cr.core * cr.conjugator.inverse() == w);

  oracle::Rng rng(3);
  for (int i = 0; i < 300; ++i) {
    Word x = oracle::random_word(rng, {"a", "b"}, 14);
    CyclicReduction r = cyclically_reduce(x);
    CHECK(r.conjugator * r.core * r.conjugator.inverse() == free_reduce(x));
    const auto& ls = r.core.letters();
    if (ls.size() >= 2) CHECK(ls.front().symbol != ls.back().symbol);
  }
}

TEST_CASE("canonical cyclic form is invariant under rotation and inversion") {
  oracle::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    Word x = free_reduce(oracle::random_word(rng, {"a", "b"}, 10));
    oracle::Flat f = oracle::flatten(cyclically_reduce(x).core);
    if (f.empty()) continue;
    std::size_t k = rng.below(f.size());
    oracle::Flat rotated(f.begin() + static_cast<long>(k), f.end());
    rotated.insert(rotated.end(), f.begin(), f.begin() + static_cast<long>(k));
    Word rot = oracle::unflatten(rotated);
    CHECK(canonical_cyclic_form(rot) == canonical_cyclic_form(x));
    CHECK(canonical_cyclic_form(x.inverse()) == canonical_cyclic_form(x));
  }
}

TEST_CASE("substitution is a homomorphism") {
  Substitution phi{{"a", parse_word("a^2")}, {"b", parse_word("b a")}};
  Word x = parse_word("a b^-1");
  Word y = parse_word("b a^3");
  CHECK(substitute(x * y, phi) == substitute(x, phi) * substitute(y, phi));
  CHECK_THROWS_AS(substitute(parse_word("c"), phi), PartialMapError);
}

TEST_CASE("commutator convention") {
  CHECK(format_word(commutator(parse_word("a"), parse_word("b"))) == "a^-1 b^-1 a b");
}

TEST_CASE("alphabet and fresh names") {
  Alphabet a({"x", "x_2"});
  CHECK(fresh_name("y", a) == "y");
  CHECK(fresh_name("x", a) == "x_3");
  CHECK_THROWS_AS(a.add("x"), InputError);
  CHECK_THROWS_AS(a.add("9z"), InputError);
  CHECK_THROWS_AS(free_reduce(parse_word("q"), a), AlphabetMismatch);
}

TEST_CASE("exponent sums and occurrences") {
  Word w = parse_word("a^3 b a^-5");
  CHECK(w.exponent_sum("a") == -2);
  CHECK(w.occurrences("a") == 8);
  CHECK(w.length() == 9);
  CHECK_FALSE(w.contains("c"));
}
