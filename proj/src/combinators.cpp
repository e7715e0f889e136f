#include "gpforge/combinators.hpp"

#include <set>

#include "gpforge/errors.hpp"

namespace gpforge {

std::string_view kind_name(ExprKind kind) {
  switch (kind) {
    case ExprKind::Atom: return "atom";
    case ExprKind::FreeProduct: return "free-product";
    case ExprKind::DirectProduct: return "direct";
    case ExprKind::Amalgam: return "amalgam";
    case ExprKind::Hnn: return "hnn";
    case ExprKind::Mitosis: return "mitosis";
    case ExprKind::MuStage: return "mu";
    case ExprKind::MeierT: return "meier-T";
    case ExprKind::MeierGamma: return "meier-gamma";
    case ExprKind::LambdaW: return "lambda-w";
    case ExprKind::GammaW: return "gamma-w";
    case ExprKind::WitnessW: return "witness-w";
    case ExprKind::PiW: return "pi-w";
    case ExprKind::DeltaW: return "delta-w";
  }
  return "?";
}

const Presentation& GroupExpr::presentation() const {
  if (!realized) {
    throw InputError("'" + label + "' (" + std::string(kind_name(kind)) + ") has no finite presentation");
  }
  return *realized;
}

std::shared_ptr<GroupExpr> make_node(ExprKind kind, std::string label, std::vector<ExprPtr> children,
                                     std::optional<Presentation> realized) {
  auto node = std::make_shared<GroupExpr>();
  node->kind = kind;
  node->label = std::move(label);
  node->children = std::move(children);
  node->realized = std::move(realized);
  return node;
}

ExprPtr atom(std::string name, std::optional<Presentation> p, std::vector<AtomFact> facts) {
  if (p && !p->name) p->name = name;
  auto node = make_node(ExprKind::Atom, std::move(name), {}, std::move(p));
  node->facts = std::move(facts);
  return node;
}

Substitution disjoint_renaming(const Alphabet& taken, const Alphabet& q) {
  std::set<std::string> used(taken.symbols().begin(), taken.symbols().end());
  used.insert(q.symbols().begin(), q.symbols().end());
  Substitution renaming;
  for (const auto& s : q.symbols()) {
    std::string name = s;
    if (taken.contains(s)) {
      for (std::size_t i = 2;; ++i) {
        name = s + "_" + std::to_string(i);
        if (!used.count(name)) break;
      }
      used.insert(name);
    }
    renaming[s] = Word::letter(name);
  }
  return renaming;
}

namespace {

struct Juxtaposed {
  Presentation presentation;
  Substitution renaming;  // applied to q
};

// Disjoint union of generators and concatenation of relators.
Juxtaposed juxtapose(const Presentation& p, const Presentation& q) {
  Juxtaposed j;
  j.renaming = disjoint_renaming(p.alphabet, q.alphabet);
  j.presentation.alphabet = p.alphabet;
  for (const auto& s : q.alphabet.symbols()) j.presentation.alphabet.add(j.renaming.at(s).letters()[0].symbol);
  j.presentation.relators = p.relators;
  for (const auto& r : q.relators) j.presentation.relators.push_back(substitute(r, j.renaming));
  return j;
}

std::optional<Presentation> both_realized(const ExprPtr& p, const ExprPtr& q) {
  if (!p->realized || !q->realized) return std::nullopt;
  return juxtapose(*p->realized, *q->realized).presentation;
}

std::string binary_label(const ExprPtr& p, const char* op, const ExprPtr& q) {
  return "(" + p->label + " " + op + " " + q->label + ")";
}

}  // namespace

ExprPtr free_product(ExprPtr p, ExprPtr q) {
  auto realized = both_realized(p, q);
  std::string label = binary_label(p, "*", q);
  return make_node(ExprKind::FreeProduct, std::move(label), {std::move(p), std::move(q)}, std::move(realized));
}

ExprPtr free_product(const Presentation& p, const Presentation& q) {
  return free_product(atom(p.name.value_or("P"), p), atom(q.name.value_or("Q"), q));
}

ExprPtr direct_product(ExprPtr p, ExprPtr q) {
  std::optional<Presentation> realized;
  if (p->realized && q->realized) {
    Juxtaposed j = juxtapose(*p->realized, *q->realized);
    for (const auto& x : p->realized->alphabet.symbols()) {
      for (const auto& y : q->realized->alphabet.symbols()) {
        j.presentation.relators.push_back(commutator(Word::letter(x), j.renaming.at(y)));
      }
    }
    realized = std::move(j.presentation);
  }
  std::string label = binary_label(p, "x", q);
  return make_node(ExprKind::DirectProduct, std::move(label), {std::move(p), std::move(q)}, std::move(realized));
}

ExprPtr direct_product(const Presentation& p, const Presentation& q) {
  return direct_product(atom(p.name.value_or("P"), p), atom(q.name.value_or("Q"), q));
}

ExprPtr amalgamated_product(ExprPtr p, ExprPtr q, const std::vector<std::pair<Word, Word>>& pairs,
                            AmalgamOptions options) {
  const Presentation& pp = p->presentation();
  const Presentation& qq = q->presentation();
  Juxtaposed j = juxtapose(pp, qq);
  std::vector<std::pair<Word, Word>> renamed;
  for (const auto& [u, v] : pairs) {
    Word ur = free_reduce(u, pp.alphabet);
    Word vr = substitute(free_reduce(v, qq.alphabet), j.renaming);
    if (ur.empty() || vr.empty()) throw DegenerateEdgeError("amalgam identification word is trivial");
    j.presentation.relators.push_back(ur * vr.inverse());
    renamed.emplace_back(std::move(ur), std::move(vr));
  }
  std::string label = binary_label(p, "*_C", q);
  auto node = make_node(ExprKind::Amalgam, std::move(label), {std::move(p), std::move(q)}, std::move(j.presentation));
  node->pairs = std::move(renamed);
  node->amenable_edge = options.amenable_edge;
  node->double_coset_condition = options.double_coset_condition;
  if (!node->pairs.empty()) {
    node->obligations.push_back("the paired words generate isomorphic subgroups under u_i -> v_i");
    node->pending = true;
  }
  return node;
}

ExprPtr hnn_extension(ExprPtr p, const std::string& stable, std::vector<std::pair<Word, Word>> assoc,
                      std::optional<PresentationMorphism> ascending) {
  const Presentation& base = p->presentation();
  if (!is_identifier(stable)) throw InputError("invalid stable letter '" + stable + "'");
  if (base.alphabet.contains(stable)) throw StableLetterClash("stable letter '" + stable + "' is already a generator");
  bool pending = false;
  if (ascending) {
    if (!(ascending->source == base) || !(ascending->target == base)) {
      throw InputError("ascending HNN needs an endomorphism of the base presentation");
    }
    assoc.clear();
    for (const auto& x : base.alphabet.symbols()) {
      assoc.emplace_back(Word::letter(x), ascending->apply(Word::letter(x)));
    }
    pending = !ascending->verified;
  }
  Presentation out = base;
  out.alphabet.add(stable);
  const Word t = Word::letter(stable);
  for (auto& [u, v] : assoc) {
    u = free_reduce(u, base.alphabet);
    v = free_reduce(v, base.alphabet);
    out.relators.push_back(t.inverse() * u * t * v.inverse());
  }
  out.name.reset();
  std::string label = "hnn(" + p->label + ", " + stable + ")";
  auto node = make_node(ExprKind::Hnn, std::move(label), {std::move(p)}, std::move(out));
  node->stable = stable;
  node->pairs = std::move(assoc);
  node->ascending = ascending.has_value();
  node->morphism = std::move(ascending);
  node->pending = pending;
  if (pending) node->obligations.push_back("the endomorphism kills every base relator");
  return node;
}

namespace {

// Appends the mitosis relators for letters s, d over `gens`.
void add_mitosis_relators(std::vector<Word>& rels, const std::vector<std::string>& gens, const std::string& s,
                          const std::string& d) {
  const Word sw = Word::letter(s);
  const Word dw = Word::letter(d);
  for (const auto& g : gens) {
    const Word gw = Word::letter(g);
    rels.push_back(dw.inverse() * gw * dw * (gw * sw.inverse() * gw * sw).inverse());
  }
  for (const auto& g : gens) {
    for (const auto& h : gens) {
      rels.push_back(commutator(Word::letter(g), sw.inverse() * Word::letter(h) * sw));
    }
  }
}

}  // namespace

ExprPtr standard_mitosis(ExprPtr p) {
  const Presentation& base = p->presentation();
  Presentation out = base;
  out.name.reset();
  std::string s = fresh_name("s", out.alphabet);
  out.alphabet.add(s);
  std::string d = fresh_name("d", out.alphabet);
  out.alphabet.add(d);
  add_mitosis_relators(out.relators, base.alphabet.symbols(), s, d);

  Substitution quotient;
  for (const auto& g : base.alphabet.symbols()) quotient[g] = Word{};
  quotient[s] = Word::letter("x");
  quotient[d] = Word::letter("y");
  PresentationMorphism onto_free = make_morphism(out, Presentation::free({"x", "y"}), std::move(quotient));
  discharge_obligations(onto_free);

  std::string label = "m(" + p->label + ")";
  auto node = make_node(ExprKind::Mitosis, std::move(label), {std::move(p)}, std::move(out));
  node->morphism = std::move(onto_free);
  return node;
}

Presentation mu_stage_presentation(const Presentation& p, std::size_t k) {
  if (k == 0) throw DomainError("mu stages start at k = 1");
  Presentation out;
  out.alphabet = p.alphabet;
  out.relators = p.relators;
  std::vector<std::string> s_names;
  std::vector<std::string> d_names;
  for (std::size_t i = 1; i <= k; ++i) {
    std::vector<std::string> level = out.alphabet.symbols();
    std::string s = fresh_name("s_" + std::to_string(i), out.alphabet);
    out.alphabet.add(s);
    std::string d = fresh_name("d_" + std::to_string(i), out.alphabet);
    out.alphabet.add(d);
    add_mitosis_relators(out.relators, level, s, d);
    s_names.push_back(s);
    d_names.push_back(d);
  }
  std::string t = fresh_name("t", out.alphabet);
  out.alphabet.add(t);
  const Word tw = Word::letter(t);
  auto shift = [&](const std::string& from, const std::string& to) {
    out.relators.push_back(tw.inverse() * Word::letter(from) * tw * Word::letter(to, -1));
  };
  for (const auto& g : p.alphabet.symbols()) shift(g, g);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    shift(s_names[i], s_names[i + 1]);
    shift(d_names[i], d_names[i + 1]);
  }
  return out;
}

ExprPtr mu_stage(ExprPtr p, std::size_t k) {
  Presentation out = mu_stage_presentation(p->presentation(), k);
  std::string label = "mu_" + std::to_string(k) + "(" + p->label + ")";
  auto node = make_node(ExprKind::MuStage, std::move(label), {std::move(p)}, std::move(out));
  node->stage = k;
  return node;
}

StagedPresentation mu_staged(const Presentation& p) {
  return StagedPresentation([p](std::size_t k) { return mu_stage_presentation(p, k); }, 1);
}

ExprPtr bac_hnn(ExprPtr p, PresentationMorphism embed, const std::function<bool(const Word&)>& is_trivial) {
  const Presentation& base = p->presentation();
  if (!(embed.source == base) || !(embed.target == base)) {
    throw InputError("embedding must map the base presentation to itself");
  }
  std::set<Word> relator_forms;
  for (const auto& r : base.relators) relator_forms.insert(canonical_cyclic_form(r));
  discharge_obligations(embed, [&](const Word& image) {
    if (relator_forms.count(canonical_cyclic_form(image))) return true;
    return is_trivial && is_trivial(image);
  });
  std::string stable = fresh_name("t", base.alphabet);
  return hnn_extension(std::move(p), stable, {}, std::move(embed));
}

}  // namespace gpforge
