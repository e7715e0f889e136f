#include "gpforge/reductions.hpp"

#include <algorithm>
#include <regex>

#include "gpforge/errors.hpp"
#include "gpforge/rewriting.hpp"

namespace gpforge {

WordProblemSource WordProblemSource::free_group(Presentation lambda) {
  if (!lambda.relators.empty()) throw ConfigurationError("the free-group oracle needs a relator-free presentation");
  WordProblemSource s;
  s.lambda = std::move(lambda);
  s.kind = Kind::FreeGroup;
  return s;
}

WordProblemSource WordProblemSource::baumslag_solitar(const BigInt& m, const BigInt& n) {
  if (m == 0 || n == 0) throw ConfigurationError("Baumslag-Solitar parameters must be nonzero");
  WordProblemSource s;
  Word a = Word::letter("a");
  Word t = Word::letter("t");
  s.lambda = Presentation(Alphabet({"a", "t"}), {t.inverse() * a.pow(m) * t * a.pow(-n)});
  s.kind = Kind::BaumslagSolitar;
  s.m = m;
  s.n = n;
  return s;
}

WordProblemSource WordProblemSource::external_oracle(Presentation lambda, std::function<bool(const Word&)> is_trivial) {
  if (!is_trivial) throw ConfigurationError("external word-problem source without a decision procedure");
  WordProblemSource s;
  s.lambda = std::move(lambda);
  s.kind = Kind::External;
  s.external = std::move(is_trivial);
  return s;
}

namespace {

// Recognises the relator t^-1 a^m t a^-n up to rotation and inversion.
std::optional<std::pair<BigInt, BigInt>> bs_parameters(const Presentation& p) {
  if (!(p.alphabet == Alphabet({"a", "t"})) || p.relators.size() != 1) return std::nullopt;
  Word core = cyclically_reduce(p.relators[0]).core;
  for (const Word& candidate : {core, core.inverse()}) {
    const auto& runs = candidate.letters();
    if (runs.size() != 4) continue;
    for (std::size_t r = 0; r < 4; ++r) {
      const Letter& x0 = runs[r];
      const Letter& x1 = runs[(r + 1) % 4];
      const Letter& x2 = runs[(r + 2) % 4];
      const Letter& x3 = runs[(r + 3) % 4];
      if (x0.symbol == "t" && x0.exponent == -1 && x1.symbol == "a" && x2.symbol == "t" && x2.exponent == 1 &&
          x3.symbol == "a") {
        return std::make_pair(x1.exponent, BigInt(-x3.exponent));
      }
    }
  }
  return std::nullopt;
}

}  // namespace

WordProblemSource WordProblemSource::from_spec(Presentation lambda, const std::string& spec) {
  if (spec == "free") return free_group(std::move(lambda));
  static const std::regex bs_pattern(R"(bs:(-?[1-9][0-9]*),(-?[1-9][0-9]*))");
  std::smatch match;
  if (std::regex_match(spec, match, bs_pattern)) {
    BigInt m(match[1].str());
    BigInt n(match[2].str());
    WordProblemSource s = baumslag_solitar(m, n);
    auto found = bs_parameters(lambda);
    if (!found || found->first != m || found->second != n) {
      throw ConfigurationError("presentation is not BS(" + match[1].str() + "," + match[2].str() +
                               ") over generators a, t");
    }
    s.lambda = std::move(lambda);
    return s;
  }
  if (!spec.empty()) throw ConfigurationError("unknown oracle '" + spec + "' (expected free or bs:m,n)");
  if (lambda.relators.empty()) return free_group(std::move(lambda));
  if (auto found = bs_parameters(lambda)) {
    WordProblemSource s = baumslag_solitar(found->first, found->second);
    s.lambda = std::move(lambda);
    return s;
  }
  throw ConfigurationError("no word-problem oracle known for this presentation; pass one explicitly");
}

bool WordProblemSource::is_trivial(const Word& w) const {
  check_alphabet(w, lambda.alphabet);
  switch (kind) {
    case Kind::FreeGroup: return free_triviality(w);
    case Kind::BaumslagSolitar: return bs_reduce(m, n, w).empty();
    case Kind::External:
      if (!external) throw ConfigurationError("external word-problem source without a decision procedure");
      return external(w);
  }
  return false;
}

std::string WordProblemSource::describe() const {
  switch (kind) {
    case Kind::FreeGroup: return "free";
    case Kind::BaumslagSolitar: return "bs:" + m.str() + "," + n.str();
    case Kind::External: return "external";
  }
  return "?";
}

namespace {

ExprPtr lambda_atom(const WordProblemSource& src) {
  Presentation p = src.lambda;
  std::string name = p.name.value_or("Lambda");
  std::vector<AtomFact> facts;
  // Free groups and Baumslag-Solitar groups are torsion-free.
  if (src.kind != WordProblemSource::Kind::External) facts.push_back({"torsion-free", std::nullopt});
  return atom(std::move(name), std::move(p), std::move(facts));
}

std::shared_ptr<GroupExpr> witness_node(ExprKind kind, std::string label, std::vector<ExprPtr> children,
                                        std::optional<Presentation> realized, const Word& w, bool trivial) {
  auto node = make_node(kind, std::move(label), std::move(children), std::move(realized));
  node->word = w;
  node->word_trivial = trivial;
  return node;
}

}  // namespace

WitnessOutput lambda_w(const WordProblemSource& src, const Word& w) {
  bool trivial = src.is_trivial(w);
  Presentation p;
  std::optional<Word> wbar;
  if (!trivial) {
    p = src.lambda;
    std::string z = fresh_name("z", p.alphabet);
    p.alphabet.add(z);
    wbar = Word::letter(z);
  }
  p.name = "Lambda_w";
  auto node = witness_node(ExprKind::LambdaW, "Lambda_w", {lambda_atom(src)}, p, w, trivial);
  node->wbar = wbar;
  return {std::move(p), node, std::move(wbar)};
}

WitnessOutput gamma_w(const WordProblemSource& src, const Word& w) {
  WitnessOutput lam = lambda_w(src, w);
  Presentation p = *lam.presentation;
  std::string t = fresh_name("t", p.alphabet);
  Presentation z(Alphabet({t}), {}, "Z");
  p.alphabet.add(t);
  p.name = "Gamma_w";
  bool trivial = *lam.expr->word_trivial;
  auto node = witness_node(ExprKind::GammaW, "Gamma_w", {lam.expr, atom("Z", z, {{"amenable", std::nullopt}})}, p, w,
                           trivial);
  node->wbar = lam.wbar;
  return {std::move(p), node, lam.wbar};
}

WitnessOutput witness_W(const ExprPtr& gamma, const WordProblemSource& src, const Word& w,
                        std::vector<std::string> distinguished) {
  const Presentation& g = gamma->presentation();
  if (distinguished.empty()) distinguished = g.alphabet.symbols();
  for (const auto& s : distinguished) {
    if (!g.alphabet.contains(s)) throw AlphabetMismatch("distinguished generator '" + s + "' is not in the group");
  }
  WitnessOutput lam = lambda_w(src, w);
  bool trivial = *lam.expr->word_trivial;
  if (!trivial && !lam.wbar) throw InternalError("nontrivial witness group without a witness element");
  const Presentation& lw = *lam.presentation;

  Presentation out = g;
  out.name = "W";
  std::vector<Word> copies_relators;
  std::vector<Word> identifications;
  for (std::size_t j = 1; j <= distinguished.size(); ++j) {
    Substitution rename;
    for (const auto& x : lw.alphabet.symbols()) {
      std::string name = fresh_name(x + "_" + std::to_string(j), out.alphabet);
      out.alphabet.add(name);
      rename[x] = Word::letter(name);
    }
    for (const auto& r : lw.relators) copies_relators.push_back(substitute(r, rename));
    Word wbar_j = lam.wbar ? substitute(*lam.wbar, rename) : Word{};
    identifications.push_back(Word::letter(distinguished[j - 1]) * wbar_j.inverse());
  }
  out.relators.insert(out.relators.end(), copies_relators.begin(), copies_relators.end());
  out.relators.insert(out.relators.end(), identifications.begin(), identifications.end());

  auto node = witness_node(ExprKind::WitnessW, "W(" + gamma->label + ")", {gamma, lam.expr}, out, w, trivial);
  node->wbar = lam.wbar;
  node->amenable_edge = true;
  node->obligations.push_back("the group is torsion-free and every distinguished generator is nontrivial");
  node->pending = true;
  return {std::move(out), node, lam.wbar};
}

Presentation genus2_surface() {
  Word a = Word::letter("a"), b = Word::letter("b"), c = Word::letter("c"), d = Word::letter("d");
  return Presentation(Alphabet({"a", "b", "c", "d"}), {commutator(a, b) * commutator(c, d)}, "Sigma2");
}

ExprPtr hyperbolic_manifold_atom(std::size_t n) {
  std::vector<AtomFact> facts{{"hyp-manifold", static_cast<long long>(n)}, {"torsion-free", std::nullopt}};
  if (n == 2) return atom("Sigma2", genus2_surface(), std::move(facts));
  return atom("M" + std::to_string(n), std::nullopt, std::move(facts));
}

ExprPtr free_group_f2_atom() {
  return atom("F2", Presentation::free({"a", "b"}),
              {{"nonelem-free-product", std::nullopt}, {"torsion-free", std::nullopt}, {"fin-pres", std::nullopt}});
}

namespace {

bool asserts(const ExprPtr& e, const std::string& name, long long degree) {
  return std::any_of(e->facts.begin(), e->facts.end(),
                     [&](const AtomFact& f) { return f.name == name && f.degree == degree; });
}

}  // namespace

WitnessOutput pi_w(const WordProblemSource& src, const Word& w, std::size_t d, ExprPtr hyp) {
  if (d < 4) throw DomainError("pi_w needs degree d >= 4");
  if (!hyp) hyp = hyperbolic_manifold_atom(d - 2);
  if (hyp->kind != ExprKind::Atom || !asserts(hyp, "hyp-manifold", static_cast<long long>(d - 2))) {
    throw InputError("the hyperbolic factor must be an atom asserting hyp-manifold " + std::to_string(d - 2));
  }
  WitnessOutput left = witness_W(free_group_f2_atom(), src, w);
  // Without a presentation of the manifold group there is no finite
  // presentation of its witness group either; record the node alone.
  WitnessOutput right;
  if (hyp->realized) {
    right = witness_W(hyp, src, w);
  } else {
    WitnessOutput lam = lambda_w(src, w);
    auto node = witness_node(ExprKind::WitnessW, "W(" + hyp->label + ")", {hyp, lam.expr}, std::nullopt, w,
                             *lam.expr->word_trivial);
    node->wbar = lam.wbar;
    node->amenable_edge = true;
    right = {std::nullopt, node, lam.wbar};
  }
  ExprPtr product = direct_product(left.expr, right.expr);
  bool trivial = *left.expr->word_trivial;
  auto node = witness_node(ExprKind::PiW, "Pi_w", {left.expr, right.expr}, product->realized, w, trivial);
  node->dim = d;
  node->wbar = left.wbar;
  if (node->realized) node->realized->name = "Pi_w";
  return {node->realized, node, left.wbar};
}

WitnessOutput delta_w(const WordProblemSource& src, const Word& w, std::size_t d) {
  if (d < 1) throw DomainError("delta_w needs d >= 1");
  WitnessOutput g = gamma_w(src, w);
  std::vector<ExprPtr> children{g.expr};
  ExprPtr acc = g.expr;
  for (std::size_t i = 1; i < d; ++i) {
    ExprPtr f2 = free_group_f2_atom();
    children.push_back(f2);
    acc = direct_product(acc, f2);
  }
  auto node = witness_node(ExprKind::DeltaW, "Delta_w", std::move(children), acc->realized, w, *g.expr->word_trivial);
  node->dim = d;
  node->wbar = g.wbar;
  if (node->realized) node->realized->name = "Delta_w";
  return {node->realized, node, g.wbar};
}

}  // namespace gpforge
