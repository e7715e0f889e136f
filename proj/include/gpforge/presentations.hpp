#pragma once

// Finite presentations <S | R>, their text format, Tietze simplification,
// morphisms between presentations, and lazily staged presentations.

#include <cstddef>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gpforge/words.hpp"

namespace gpforge {

struct Presentation {
  Alphabet alphabet;
  std::vector<Word> relators;
  std::optional<std::string> name;

  Presentation() = default;
  Presentation(Alphabet a, std::vector<Word> r, std::optional<std::string> n = std::nullopt)
      : alphabet(std::move(a)), relators(std::move(r)), name(std::move(n)) {}

  std::size_t generator_count() const { return alphabet.size(); }
  std::size_t relator_count() const { return relators.size(); }

  /// Free group on the given names.
  static Presentation free(std::vector<std::string> generators);

  // The name is a label only; it does not take part in equality.
  friend bool operator==(const Presentation& a, const Presentation& b) {
    return a.alphabet == b.alphabet && a.relators == b.relators;
  }
};

/// Parses the line-based presentation format:
///
///     # comment
///     gens a t
///     rel t^-1 a^2 t = a^3
///
/// Relators are stored freely reduced; `u = v` is stored as `u v^-1`.
/// A relator that reduces to the identity is kept as the empty word.
Presentation parse_presentation(std::string_view text);

/// Canonical text: a `gens` line, then one `rel` line per relator. Every
/// line, including the last, ends with LF.
std::string serialize(const Presentation& p);

/// Human-readable descriptions of invariant violations; empty iff valid.
std::vector<std::string> validate(const Presentation& p);

struct TietzeStep {
  enum class Kind { DeleteRelator, Eliminate };
  Kind kind;
  std::string generator;  // Eliminate only
  Word replacement;       // Eliminate only: the word substituted for `generator`
  Word relator;           // the relator consumed by the step
};

struct TietzeResult {
  Presentation presentation;
  std::vector<TietzeStep> trace;
  bool reached_fixpoint = false;
};

/// Greedy simplification. Each step either deletes a relator (trivial or a
/// cyclic duplicate of an earlier one) or eliminates a generator x that
/// occurs exactly once in some cyclically reduced relator, substituting the
/// rest of that relator for x everywhere. Generators are scanned from the end
/// of the alphabet backwards, relators in stored order. Free and cyclic
/// reduction of relators is free of charge; every deletion or elimination
/// costs one step of `budget`.
/// If `relator` contains `x` exactly once, with exponent +-1, returns the word
/// that x equals modulo the relator.
std::optional<Word> solve_for_generator(const Word& relator, const std::string& x);

/// Replaces every occurrence of `x` in `w` by `image`, freely reducing.
Word substitute_generator(const Word& w, const std::string& x, const Word& image);

TietzeResult tietze_simplify_traced(const Presentation& p, std::size_t budget);
Presentation tietze_simplify(const Presentation& p, std::size_t budget = 100'000);

/// A homomorphism given by generator images. `verified` means every source
/// relator has been shown to map to the identity of the target.
struct PresentationMorphism {
  Presentation source;
  Presentation target;
  Substitution images;
  bool verified = false;
  std::vector<std::size_t> pending_relators;  // source relator indices not yet certified

  Word apply(const Word& w) const { return substitute(w, images); }
};

/// Checks that every source generator has an image over the target alphabet
/// (PartialMapError / AlphabetMismatch otherwise). Returns an unverified
/// morphism with every relator pending.
PresentationMorphism make_morphism(Presentation source, Presentation target, Substitution images);

/// Marks relator obligations discharged by `is_trivial` (a word-problem
/// procedure for the target). Relators whose image reduces freely to 1 are
/// always discharged.
void discharge_obligations(PresentationMorphism& m,
                           const std::function<bool(const Word&)>& is_trivial = {});

/// A recursively presented group given by an increasing chain of finite
/// presentations. Stages are built on first request and cached; the cache is
/// safe to query from several threads.
class StagedPresentation {
 public:
  using Builder = std::function<Presentation(std::size_t)>;

  explicit StagedPresentation(Builder builder, std::size_t first_stage = 0);

  std::size_t first_stage() const { return first_stage_; }
  const Presentation& stage(std::size_t k) const;

  /// True iff every generator and every relator of stage k also occurs in
  /// stage k+1.
  bool monotone_at(std::size_t k) const;

 private:
  struct Cache {
    std::mutex mutex;
    std::map<std::size_t, std::unique_ptr<Presentation>> stages;
  };
  Builder builder_;
  std::size_t first_stage_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace gpforge
