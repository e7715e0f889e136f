#pragma once

// Presentation-level group constructions. Every constructor returns a
// GroupExpr node that records how the group was built, so the inference
// engine can reason about the construction rather than the relators.
//
// Mitosis relators are imposed on generators only: d^-1 g d = g s^-1 g s
// and [g, s^-1 h s] for generators g, h. The element-level relations follow.
// The commutator relators make s^-1 <S> s commute with <S>, so the map
// h -> h s^-1 h s is a homomorphism on <S>; conjugation by d is one as well,
// and two homomorphisms agreeing on generators agree everywhere.

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gpforge/presentations.hpp"

namespace gpforge {

enum class ExprKind {
  Atom,
  FreeProduct,
  DirectProduct,
  Amalgam,
  Hnn,
  Mitosis,
  MuStage,
  MeierT,
  MeierGamma,
  LambdaW,
  GammaW,
  WitnessW,
  PiW,
  DeltaW,
};

std::string_view kind_name(ExprKind kind);

/// An asserted property of an atom, by its file-format name, e.g.
/// `amenable` or `fin-gen 2`.
struct AtomFact {
  std::string name;
  std::optional<long long> degree;

  friend bool operator==(const AtomFact&, const AtomFact&) = default;
};

struct GroupExpr;
using ExprPtr = std::shared_ptr<const GroupExpr>;

struct GroupExpr {
  ExprKind kind = ExprKind::Atom;
  std::string label;
  std::vector<ExprPtr> children;
  // Absent for groups without a finite presentation in this toolkit
  // (Meier's group, atoms standing for groups only named by their facts).
  std::optional<Presentation> realized;

  // Atom
  std::vector<AtomFact> facts;
  std::string source_file;

  // Amalgam pairs / HNN associated pairs, over the realized alphabet.
  std::vector<std::pair<Word, Word>> pairs;
  std::string stable;
  bool ascending = false;
  std::optional<PresentationMorphism> morphism;  // Hnn: the endomorphism; Mitosis: quotient onto F2
  bool amenable_edge = false;                   // Amalgam over an amenable edge group
  bool double_coset_condition = false;          // Amalgam with |C\G/C| >= 3 and C != G asserted

  // Proof obligations that were recorded rather than checked.
  std::vector<std::string> obligations;
  bool pending = false;

  std::size_t stage = 0;  // MuStage
  std::size_t dim = 0;    // PiW, DeltaW

  // Witness constructions
  std::optional<Word> word;
  std::optional<bool> word_trivial;
  std::optional<Word> wbar;

  const Presentation& presentation() const;
};

ExprPtr atom(std::string name, std::optional<Presentation> p, std::vector<AtomFact> facts = {});

/// Renames the symbols of `q` that clash with `taken` to `x_2`, `x_3`, ...
/// Returns the substitution applied (identity on untouched symbols).
Substitution disjoint_renaming(const Alphabet& taken, const Alphabet& q);

ExprPtr free_product(ExprPtr p, ExprPtr q);
ExprPtr free_product(const Presentation& p, const Presentation& q);

ExprPtr direct_product(ExprPtr p, ExprPtr q);
ExprPtr direct_product(const Presentation& p, const Presentation& q);

struct AmalgamOptions {
  bool amenable_edge = false;
  bool double_coset_condition = false;
};

/// Free product plus relators u_i v_i^-1. Pair words are written over the
/// original alphabets of p and q; words over q are renamed along with q.
ExprPtr amalgamated_product(ExprPtr p, ExprPtr q, const std::vector<std::pair<Word, Word>>& pairs,
                            AmalgamOptions options = {});

/// Adds the stable letter and relators t^-1 u_i t v_i^-1. With an ascending
/// endomorphism, the pairs are (x, phi(x)) over the generators x of p.
ExprPtr hnn_extension(ExprPtr p, const std::string& stable, std::vector<std::pair<Word, Word>> assoc,
                      std::optional<PresentationMorphism> ascending = std::nullopt);

ExprPtr standard_mitosis(ExprPtr p);

/// The presentation of the k-th truncation of the ascending HNN extension of
/// the iterated standard mitosis: generators S, s_1, d_1, ..., s_k, d_k, t.
Presentation mu_stage_presentation(const Presentation& p, std::size_t k);
ExprPtr mu_stage(ExprPtr p, std::size_t k);

/// All truncations of mu(p), built on demand from stage 1.
StagedPresentation mu_staged(const Presentation& p);

/// Ascending HNN extension along a self-map of p. Relator obligations are
/// discharged when the image of a relator reduces freely to 1 or is a cyclic
/// conjugate of a relator (or its inverse); `is_trivial` may discharge more.
/// Anything left marks the node pending.
ExprPtr bac_hnn(ExprPtr p, PresentationMorphism embed,
                const std::function<bool(const Word&)>& is_trivial = {});

/// Builds a node of arbitrary kind over existing children; used by the
/// construction modules that own the remaining kinds.
std::shared_ptr<GroupExpr> make_node(ExprKind kind, std::string label, std::vector<ExprPtr> children,
                                     std::optional<Presentation> realized);

}  // namespace gpforge
