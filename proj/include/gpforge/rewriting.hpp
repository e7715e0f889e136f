#pragma once

// Word-problem engines: Britton normal forms for HNN extensions of free
// groups along cyclic subgroups, Baumslag-Solitar canonical forms, and
// nontriviality certificates from finite permutation quotients.
//
// Britton reduction scans the word left to right with a stack of
// alternating base segments and stable letters. Appending a stable letter
// that closes a pinch t^-1 u^k t or t v^k t^-1 replaces it by v^k or u^k
// and merges the result into the segment below. Each replacement removes two
// stable letters, so the scan terminates after at most one pass over the
// input plus the number of pinches. Only the top segment ever changes, so
// the stack never contains a pinch.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gpforge/presentations.hpp"
#include "gpforge/words.hpp"

namespace gpforge {

/// HNN extension of the free group on `base` with one stable letter and a
/// cyclic edge group: t^-1 u t = v.
struct HnnRewriteSystem {
  Alphabet base;
  std::string stable;
  Word u;
  Word v;

  /// Validates an edge description. More than one associated pair gives
  /// UnsupportedEdgeError; an empty edge word gives DegenerateEdgeError.
  static HnnRewriteSystem make(Alphabet base, std::string stable,
                               const std::vector<std::pair<Word, Word>>& assoc);
  /// BS(m,n) = <a, t | t^-1 a^m t = a^n>.
  static HnnRewriteSystem baumslag_solitar(const BigInt& m, const BigInt& n);
};

/// If g = h^k in the free group for some integer k, returns k.
std::optional<BigInt> cyclic_exponent(const Word& g, const Word& h);

Word britton_normal_form(const HnnRewriteSystem& sys, const Word& w);

/// True iff `w` contains a subword t^-1 g t with g in <u> or t g t^-1 with
/// g in <v>, g being a maximal stable-letter-free segment.
bool has_pinch(const HnnRewriteSystem& sys, const Word& w);

/// Canonical form in BS(m,n): the Britton normal form with each base
/// segment before a t reduced modulo |m| and before a t^-1 modulo |n|,
/// the quotient being pushed to the right. u = v in BS(m,n) iff
/// bs_reduce(u v^-1) is empty.
Word bs_reduce(const BigInt& m, const BigInt& n, const Word& w);
bool bs_equal(const BigInt& m, const BigInt& n, const Word& u, const Word& v);

bool free_triviality(const Word& w);

/// A permutation of {0, ..., n-1}; p[i] is the image of i. Products act on
/// the right: (p*q)[i] = q[p[i]].
using Permutation = std::vector<std::uint8_t>;

Permutation compose(const Permutation& p, const Permutation& q);
Permutation invert(const Permutation& p);
bool is_identity(const Permutation& p);
/// Cycle notation with 1-based points, e.g. `(1 2 3)(4 5)`; identity is `()`.
std::string format_cycles(const Permutation& p);

struct FiniteQuotient {
  std::size_t degree = 0;
  std::map<std::string, Permutation, std::less<>> images;

  Permutation evaluate(const Word& w) const;
};

/// Calls `visit` on every homomorphism p -> S_degree, generators assigned
/// in alphabet order, each ranging over S_degree in lexicographic order.
/// Returning false from `visit` stops the enumeration.
void enumerate_quotients(const Presentation& p, std::size_t degree,
                         const std::function<bool(const FiniteQuotient&)>& visit);

struct TrivialityCertificate {
  enum class Kind { FreeReduction, BrittonNormalForm, FiniteQuotient, TietzeCollapse };
  Kind kind;
  Word word;
  // True when the certificate shows the word (or, for TietzeCollapse, the
  // whole group) is trivial; false when it shows nontriviality.
  bool trivial = false;
  Word normal_form;                       // FreeReduction, BrittonNormalForm
  std::optional<HnnRewriteSystem> system;  // BrittonNormalForm
  std::optional<FiniteQuotient> quotient;  // FiniteQuotient
  std::vector<TietzeStep> trace;           // TietzeCollapse
};

struct QuotientSearchResult {
  std::vector<FiniteQuotient> homomorphisms;  // filled only without a target
  std::optional<TrivialityCertificate> certificate;
};

/// Searches degrees 1..degree_max (at most 6). With a target, stops at the
/// first homomorphism mapping the target to a nontrivial permutation.
/// Without one, lists every homomorphism found.
QuotientSearchResult finite_quotient_search(const Presentation& p, std::size_t degree_max,
                                            const std::optional<Word>& target = std::nullopt);

TrivialityCertificate certify_free(const Word& w);
TrivialityCertificate certify_britton(const HnnRewriteSystem& sys, const Word& w);
/// Certificate that `p` presents the trivial group, if greedy Tietze
/// simplification collapses it.
std::optional<TrivialityCertificate> certify_tietze_collapse(const Presentation& p,
                                                             std::size_t budget = 100'000);

/// Re-checks a certificate against `p` without repeating any search.
bool verify_certificate(const TrivialityCertificate& cert, const Presentation& p);

/// One-line text form; FiniteQuotient certificates print as
/// `hom a: (1 2 3 4 5) t: (2 5 3)`.
std::string format_certificate(const TrivialityCertificate& cert);

}  // namespace gpforge
