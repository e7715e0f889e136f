#pragma once

// Witness constructions for word problems. Given a group Lambda with a
// decidable word problem and a word w, each construction produces a
// presentation whose isomorphism type depends only on whether w = 1 in
// Lambda, together with the GroupExpr the inference engine reasons about.
//
// Lambda_w is realised through the source's word-problem oracle: the trivial
// group when w = 1, and Lambda * <z> with witness z otherwise. Either way
// Lambda_w is trivial iff w is, and the witness has infinite order in the
// nontrivial case, which is all the later constructions rely on.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "gpforge/combinators.hpp"
#include "gpforge/presentations.hpp"

namespace gpforge {

struct WordProblemSource {
  enum class Kind { FreeGroup, BaumslagSolitar, External };

  Presentation lambda;
  Kind kind = Kind::FreeGroup;
  BigInt m = 0;
  BigInt n = 0;
  std::function<bool(const Word&)> external;  // true iff the word is trivial

  static WordProblemSource free_group(Presentation lambda);
  static WordProblemSource baumslag_solitar(const BigInt& m, const BigInt& n);
  static WordProblemSource external_oracle(Presentation lambda, std::function<bool(const Word&)> is_trivial);

  /// Chooses an oracle from an explicit spec (`free`, `bs:m,n`) or, when
  /// `spec` is empty, from the shape of the presentation: relator-free means
  /// free, a single relator t^-1 a^m t a^-n over {a, t} means BS(m,n).
  /// Throws ConfigurationError otherwise.
  static WordProblemSource from_spec(Presentation lambda, const std::string& spec);

  bool is_trivial(const Word& w) const;
  std::string describe() const;
};

struct WitnessOutput {
  std::optional<Presentation> presentation;
  ExprPtr expr;
  std::optional<Word> wbar;
};

WitnessOutput lambda_w(const WordProblemSource& src, const Word& w);

/// Lambda_w * <t>.
WitnessOutput gamma_w(const WordProblemSource& src, const Word& w);

/// Gamma amalgamated with k = |distinguished| copies of Lambda_w, the j-th
/// distinguished generator identified with the witness of the j-th copy. On
/// the trivial branch the witness is 1, so each distinguished generator is
/// killed. An empty `distinguished` list means all generators of gamma.
WitnessOutput witness_W(const ExprPtr& gamma, const WordProblemSource& src, const Word& w,
                        std::vector<std::string> distinguished = {});

/// <a, b, c, d | [a,b][c,d]>, the fundamental group of the closed genus-2
/// surface.
Presentation genus2_surface();

/// Atom for the fundamental group of a closed hyperbolic n-manifold. For
/// n = 2 it carries the genus-2 surface presentation; otherwise it has no
/// presentation and stands for the group through its facts only.
ExprPtr hyperbolic_manifold_atom(std::size_t n);

/// W(F2, Lambda, w) x W(hyp, Lambda, w) with hyp a closed hyperbolic
/// (d-2)-manifold group; d >= 4. `hyp` defaults to hyperbolic_manifold_atom.
WitnessOutput pi_w(const WordProblemSource& src, const Word& w, std::size_t d, ExprPtr hyp = nullptr);

/// Gamma_w x F2^(d-1); d >= 1.
WitnessOutput delta_w(const WordProblemSource& src, const Word& w, std::size_t d);

/// The free group on a, b as an atom with its standard facts.
ExprPtr free_group_f2_atom();

}  // namespace gpforge
