#pragma once

// Forward-chaining derivation of bounded-cohomology properties over a
// GroupExpr tree.
//
// Nodes are numbered in pre-order from the root (id 0). Facts come from
// three sources: assertions on atoms, the shape of the construction
// ("structure"), and the rules R1-R22 applied to earlier facts. Derivation
// runs in rounds; a rule application in round r only sees facts from rounds
// before r, and a fact keeps the derivations of the round in which it first
// appeared. This makes every certificate acyclic and of minimal depth. Among
// those derivations the certificate uses the lowest rule number, then the
// smallest tree.
//
// Degree-indexed predicates (large-hb n, ...) are generated up to a fixed
// horizon; queries above the horizon need a larger one.
//
// Absence of a fact means "not derivable", never "false".

#include <compare>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpforge/combinators.hpp"

namespace gpforge {

enum class Pred {
  Amenable,
  Finite,
  Mitotic,
  BoundedlyAcyclic,
  NonvanishingHb,
  LargeHb,
  LonebPositive,
  LonebLarge,
  ContainsF2,
  AcylHyp,
  NonelemFreeProduct,
  TorsionFree,
  FinGen,
  FinPres,
  RecPres,
  HypManifoldGroup,
  ThompsonT,
  IsoToSelfTimesSelf,
  CoAmenableIn,
  AscendingHnn,
  CdbAtLeast,
  CdbEquals0,
  HdbEquals0,
  SurjectsOnto,
  RetractOf,
  NotAmenable,
  NotFinPres,
  DoubleCosetCondition,
  AmenableAmalgamFactorOf,
  SubgroupOf,
};

struct PredInfo {
  Pred pred;
  std::string_view name;
  bool has_degree;
  bool has_target;  // relational: the fact relates its subject to another node
  bool assertable;  // may appear in an atom's :facts; relational ones then refer to the parent
};

const std::vector<PredInfo>& predicate_table();
const PredInfo& pred_info(Pred p);
std::optional<PredInfo> pred_by_name(std::string_view name);

inline constexpr std::size_t kNoNode = std::numeric_limits<std::size_t>::max();

struct Fact {
  std::size_t node = 0;
  Pred pred = Pred::Amenable;
  long long degree = 0;         // meaningful only for degree-indexed predicates
  std::size_t target = kNoNode;  // meaningful only for relational predicates

  friend auto operator<=>(const Fact&, const Fact&) = default;
};

/// "large-hb 4 @2"; relational facts read "subgroup-of @3 @0".
std::string format_fact(const Fact& f);

/// Parses "large-hb 4", "boundedly-acyclic", ... into a predicate and degree.
std::pair<Pred, long long> parse_query(std::string_view text);

struct Certificate {
  Fact conclusion;
  int rule = 0;        // 0 for asserted and structural facts
  std::string basis;   // "asserted", "structure" or "R<n>"
  std::string citation;
  std::vector<std::shared_ptr<const Certificate>> premises;

  std::size_t size() const;
};

using CertPtr = std::shared_ptr<const Certificate>;

std::string_view rule_citation(int rule);

struct DeriveOptions {
  long long horizon = 12;
};

struct NodeInfo {
  ExprPtr expr;
  std::size_t parent = kNoNode;
  std::vector<std::size_t> children;
};

class FactBase {
 public:
  /// Runs the fixpoint. `extra` facts must attach to atoms (InputError
  /// otherwise) and are treated like :facts assertions.
  static FactBase derive(const ExprPtr& root, const std::vector<Fact>& extra = {}, DeriveOptions options = {});

  const std::vector<NodeInfo>& nodes() const { return nodes_; }
  long long horizon() const { return horizon_; }
  std::size_t rounds() const { return rounds_; }

  bool holds(const Fact& f) const { return records_.count(f) > 0; }

  /// All facts, sorted.
  std::vector<Fact> facts() const;

  /// Best certificate for the fact, or nullptr. Throws UnknownNodeError.
  CertPtr certificate(const Fact& f) const;
  CertPtr query(std::size_t node, Pred pred, long long degree = 0) const;

 private:
  struct Derivation {
    int rule;
    std::string basis;
    std::vector<Fact> premises;
  };
  struct Record {
    std::size_t round;
    std::vector<Derivation> derivations;
    mutable CertPtr best;
  };

  std::vector<NodeInfo> nodes_;
  long long horizon_ = 12;
  std::size_t rounds_ = 0;
  std::map<Fact, Record> records_;

  friend class Deriver;
  friend bool replay_certificate(const Certificate& cert, const FactBase& base);
};

/// Human-readable descriptions of definitional clashes (bounded acyclicity
/// against nonvanishing bounded cohomology, amenable against containing F2,
/// ...). Empty for sound inputs.
std::vector<std::string> check_consistency(const FactBase& base);

/// Re-applies each rule of the certificate to exactly its premises and
/// checks that the conclusion comes out again. Leaves must be atom
/// assertions or structural facts of the tree.
bool replay_certificate(const Certificate& cert, const FactBase& base);

/// Indented tree, one rule application per line with its citation.
std::string format_certificate(const Certificate& cert, const FactBase& base);

/// Distinct rules in pre-order, e.g. "R12 <- R9 <- R8".
std::string rule_chain(const Certificate& cert);

}  // namespace gpforge
