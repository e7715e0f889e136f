#pragma once

// Meier's self-square group and the Baumslag-Solitar group behind it.
//
// B = BS(2,3) = <a, t | t^-1 a^2 t = a^3> contains the free subgroup
// F = <t, c> with c = [a, t^-1 a t]. The endomorphism phi (a -> a^2,
// t -> t) is surjective and kills c, so phi(F) = <t>. T is the amalgam of
// B with a barred copy along F, identifying t with cbar and c with tbar.
// Meier's group is the subgroup of T^N generated by the diagonal copies of
// a, abar, t and the element D = (1, a, a^2, ...); it is handled here only
// through evaluation at a coordinate.

#include <cstddef>
#include <string>
#include <vector>

#include "gpforge/combinators.hpp"
#include "gpforge/presentations.hpp"

namespace gpforge {

struct MeierData {
  Presentation B;
  Presentation Bbar;
  Word f_t;  // t
  Word f_c;  // [a, t^-1 a t]
  Presentation T;
  PresentationMorphism phi;
  ExprPtr t_expr;
  ExprPtr gamma_expr;
};

/// Builds and checks everything; throws InternalError if phi fails to
/// respect the BS(2,3) relator.
MeierData build_meier();

/// BS(2,3) normal form of phi(w), for w over {a, t}.
Word phi_apply(const Word& w);

/// Evaluates a word over {A, Abar, Tt, D} at coordinate `index`, giving a
/// freely reduced word over T's generators.
Word meier_eval(const Word& e, std::size_t index);

struct ProbeCandidate {
  Word word;
  std::string status;
};

inline constexpr const char* kConfirmedWitness = "confirmed-witness";
inline constexpr const char* kUnknownMembership = "confirmed-in-preimage-unknown-membership";
inline constexpr const char* kExhausted = "exhausted";

/// Searches reduced words x over {a, t} with |x| <= max_len, in
/// length-lexicographic order (a < a^-1 < t < t^-1), for elements of
/// phi^-1(F) outside F.
///
/// Membership in F is tested against a table of BS(2,3) normal forms of all
/// reduced words in t, c of length <= max_len; building the table may use
/// at most half the budget, one step per F-word. Scanning costs one step per
/// x. A candidate x has phi(x) in the table and x not in it. Its status is
/// `confirmed-witness` when the table is complete, meaning x differs from
/// every F-word up to the bound, and
/// `confirmed-in-preimage-unknown-membership` otherwise. If the budget runs
/// out while scanning, the next unscanned word is reported as `exhausted`
/// and the search stops.
std::vector<ProbeCandidate> double_coset_probe(std::size_t max_len, std::size_t budget);

}  // namespace gpforge
