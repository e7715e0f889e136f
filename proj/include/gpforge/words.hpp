#pragma once

// Free-group words over named generators.
//
// A Word is stored in run-length form: a sequence of (symbol, exponent)
// letters. Exponents are arbitrary precision. The group product `*`
// always returns a freely reduced word, in which adjacent letters carry
// distinct symbols and no exponent is zero. Raw, unreduced words can be
// built with Word::from_letters and normalized with free_reduce.

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gpforge/bigint.hpp"

namespace gpforge {

/// True iff `name` matches `[A-Za-z][A-Za-z0-9_]*`.
bool is_identifier(std::string_view name);

/// Ordered list of distinct generator names.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> symbols);

  const std::vector<std::string>& symbols() const { return symbols_; }
  std::size_t size() const { return symbols_.size(); }
  bool empty() const { return symbols_.empty(); }
  bool contains(std::string_view symbol) const;
  std::optional<std::size_t> index_of(std::string_view symbol) const;

  /// Appends a symbol; throws InputError on duplicates or invalid names.
  void add(std::string symbol);

  friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.symbols_ == b.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

/// Returns `base` if unused, otherwise the first of `base_2`, `base_3`, ...
/// that is not taken.
std::string fresh_name(const std::string& base, const Alphabet& taken);

struct Letter {
  std::string symbol;
  BigInt exponent;

  friend bool operator==(const Letter&, const Letter&) = default;
};

/// A single signed generator occurrence, as produced by Word::expand.
struct SignedSymbol {
  std::string symbol;
  int sign;  // +1 or -1

  friend bool operator==(const SignedSymbol&, const SignedSymbol&) = default;
};

class Word {
 public:
  Word() = default;

  /// The one-letter word `symbol^exponent` (empty when exponent is zero).
  static Word letter(std::string symbol, BigInt exponent = 1);

  /// Wraps a raw letter list without reducing it. Zero exponents are rejected.
  static Word from_letters(std::vector<Letter> letters);

  /// Rebuilds a word from single signed symbols, freely reducing.
  static Word from_symbols(const std::vector<SignedSymbol>& symbols);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t runs() const { return letters_.size(); }

  /// Total number of generator occurrences, sum of |exponent|.
  BigInt length() const;

  bool is_reduced() const;

  Word inverse() const;
  Word pow(const BigInt& exponent) const;

  BigInt exponent_sum(std::string_view symbol) const;

  /// Number of occurrences of `symbol`, sum of |exponent| over its letters.
  BigInt occurrences(std::string_view symbol) const;
  bool contains(std::string_view symbol) const;

  /// Letter-by-letter expansion. Throws DomainError beyond `limit` letters.
  std::vector<SignedSymbol> expand(std::size_t limit = 10'000'000) const;

  friend Word operator*(const Word& a, const Word& b);
  Word& operator*=(const Word& other);

  friend bool operator==(const Word&, const Word&) = default;

  /// Total order used for deterministic containers (by runs, then letters).
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::vector<Letter> letters_;
};

/// Unique freely reduced run-length form.
Word free_reduce(const Word& w);

/// As above, but first checks that every symbol lies in `alphabet`
/// (AlphabetMismatch otherwise).
Word free_reduce(const Word& w, const Alphabet& alphabet);

void check_alphabet(const Word& w, const Alphabet& alphabet);

struct CyclicReduction {
  Word core;
  Word conjugator;
};

/// Splits a word as `conjugator * core * conjugator^-1` with `core`
/// cyclically reduced. The input is freely reduced first.
CyclicReduction cyclically_reduce(const Word& w);

using Substitution = std::map<std::string, Word, std::less<>>;

/// Homomorphic image of `w`; throws PartialMapError for unmapped symbols.
Word substitute(const Word& w, const Substitution& images);

/// `[x, y] = x^-1 y^-1 x y`.
Word commutator(const Word& x, const Word& y);

/// Parses the word syntax `1 | atom (WS atom)*`, `atom := ident ('^' integer)?`.
Word parse_word(std::string_view text);

/// Canonical text form; the empty word prints as `1`.
std::string format_word(const Word& w);

/// Cyclic rotation class representative: the least rotation of the core of
/// `w` or of its inverse. Two relators generate the same normal closure
/// when their canonical forms agree.
Word canonical_cyclic_form(const Word& w);

}  // namespace gpforge
