#include "gpforge/expr_file.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gpforge/errors.hpp"
#include "gpforge/inference.hpp"
#include "gpforge/meier.hpp"
#include "gpforge/reductions.hpp"

namespace gpforge {

namespace {

[[noreturn]] void fail(const Sexpr& at, const std::string& message) { throw ParseError(message, at.line, at.column); }

// Positional arguments and keyword options of a form. Flag keywords take no
// value; every other keyword takes exactly one.
struct Args {
  std::vector<const Sexpr*> positional;
  std::map<std::string, const Sexpr*> options;
  std::set<std::string> flags;
};

Args split_args(const Sexpr& form, const std::set<std::string>& allowed_options,
                const std::set<std::string>& allowed_flags) {
  Args a;
  for (std::size_t i = 1; i < form.items.size(); ++i) {
    const Sexpr& item = form.items[i];
    if (!item.is_keyword()) {
      a.positional.push_back(&item);
      continue;
    }
    if (allowed_flags.count(item.text)) {
      a.flags.insert(item.text);
      continue;
    }
    if (!allowed_options.count(item.text)) fail(item, "unknown keyword :" + item.text);
    if (i + 1 >= form.items.size()) fail(item, "keyword :" + item.text + " needs a value");
    if (!a.options.emplace(item.text, &form.items[++i]).second) fail(item, "duplicate keyword :" + item.text);
  }
  return a;
}

void expect_positional(const Sexpr& form, const Args& a, std::size_t n) {
  if (a.positional.size() != n) {
    fail(form, form.items[0].text + " takes " + std::to_string(n) + " argument" + (n == 1 ? "" : "s") + ", got " +
                   std::to_string(a.positional.size()));
  }
}

const std::string& string_value(const Sexpr& e, const char* what) {
  if (e.kind != Sexpr::Kind::String) fail(e, std::string("expected a string for ") + what);
  return e.text;
}

long long integer_value(const Sexpr& e, const char* what) {
  if (e.kind != Sexpr::Kind::Integer) fail(e, std::string("expected an integer for ") + what);
  try {
    return std::stoll(e.text);
  } catch (const std::exception&) {
    fail(e, std::string("integer out of range for ") + what);
  }
}

std::size_t positive_value(const Sexpr& e, const char* what) {
  long long v = integer_value(e, what);
  if (v < 1) fail(e, std::string(what) + " must be positive");
  return static_cast<std::size_t>(v);
}

Word word_value(const Sexpr& e) {
  const std::string& text = string_value(e, "a word");
  try {
    return parse_word(text);
  } catch (const ParseError& err) {
    fail(e, std::string("bad word: ") + err.what());
  }
}

std::vector<std::pair<Word, Word>> pairs_value(const Sexpr& e) {
  if (!e.is_list()) fail(e, "expected a list of (\"u\" \"v\") pairs");
  std::vector<std::pair<Word, Word>> out;
  for (const auto& pair : e.items) {
    if (!pair.is_list() || pair.items.size() != 2) fail(pair, "expected a (\"u\" \"v\") pair");
    out.emplace_back(word_value(pair.items[0]), word_value(pair.items[1]));
  }
  return out;
}

// `(amenable fin-gen 2 (hyp-manifold 3))`: names, each optionally followed
// by an integer, or parenthesized (name degree) groups.
std::vector<AtomFact> facts_value(const Sexpr& e) {
  if (!e.is_list()) fail(e, "expected a list of facts");
  std::vector<AtomFact> out;
  auto check = [&](const Sexpr& at, const AtomFact& f) {
    auto info = pred_by_name(f.name);
    if (!info || !info->assertable) fail(at, "unknown fact '" + f.name + "'");
    if (info->has_degree != f.degree.has_value()) {
      fail(at, "fact '" + f.name + (info->has_degree ? "' needs a degree" : "' takes no degree"));
    }
    if (f.degree && *f.degree < 0) fail(at, "negative degree");
  };
  for (std::size_t i = 0; i < e.items.size(); ++i) {
    const Sexpr& item = e.items[i];
    AtomFact f;
    if (item.is_list()) {
      if (item.items.empty() || item.items.size() > 2 || item.items[0].kind != Sexpr::Kind::Symbol) {
        fail(item, "expected (name [degree])");
      }
      f.name = item.items[0].text;
      if (item.items.size() == 2) f.degree = integer_value(item.items[1], "a fact degree");
    } else if (item.kind == Sexpr::Kind::Symbol) {
      f.name = item.text;
      if (i + 1 < e.items.size() && e.items[i + 1].kind == Sexpr::Kind::Integer) {
        f.degree = integer_value(e.items[++i], "a fact degree");
      }
    } else {
      fail(item, "expected a fact name");
    }
    check(item, f);
    out.push_back(std::move(f));
  }
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

WordProblemSource oracle_for(const ExprPtr& lambda, const Args& a) {
  std::string spec = a.options.count("oracle") ? string_value(*a.options.at("oracle"), ":oracle") : "";
  return WordProblemSource::from_spec(lambda->presentation(), spec);
}

class Evaluator {
 public:
  explicit Evaluator(std::filesystem::path base) : base_(std::move(base)) {}

  ExprPtr eval(const Sexpr& form) {
    if (!form.is_list() || form.items.empty() || form.items[0].kind != Sexpr::Kind::Symbol) {
      fail(form, "expected a form like (atom ...)");
    }
    const std::string& head = form.items[0].text;
    if (head == "atom") return eval_atom(form);
    if (head == "free-product" || head == "direct") {
      Args a = split_args(form, {}, {});
      expect_positional(form, a, 2);
      ExprPtr p = eval(*a.positional[0]);
      ExprPtr q = eval(*a.positional[1]);
      return head == "direct" ? direct_product(p, q) : free_product(p, q);
    }
    if (head == "amalgam") {
      Args a = split_args(form, {"pairs"}, {"amenable-edge", "double-coset"});
      expect_positional(form, a, 2);
      if (!a.options.count("pairs")) fail(form, "amalgam needs :pairs");
      ExprPtr p = eval(*a.positional[0]);
      ExprPtr q = eval(*a.positional[1]);
      AmalgamOptions opts{a.flags.count("amenable-edge") > 0, a.flags.count("double-coset") > 0};
      return amalgamated_product(p, q, pairs_value(*a.options.at("pairs")), opts);
    }
    if (head == "hnn") return eval_hnn(form);
    if (head == "mitosis") {
      Args a = split_args(form, {}, {});
      expect_positional(form, a, 1);
      ExprPtr p = eval(*a.positional[0]);
      if (!p->realized) return make_node(ExprKind::Mitosis, "m(" + p->label + ")", {p}, std::nullopt);
      return standard_mitosis(p);
    }
    if (head == "mu") {
      Args a = split_args(form, {"k"}, {});
      expect_positional(form, a, 1);
      std::size_t k = a.options.count("k") ? positive_value(*a.options.at("k"), ":k") : 1;
      ExprPtr p = eval(*a.positional[0]);
      if (p->realized) return mu_stage(p, k);
      auto node = make_node(ExprKind::MuStage, "mu_" + std::to_string(k) + "(" + p->label + ")", {p}, std::nullopt);
      node->stage = k;
      return node;
    }
    if (head == "meier-T" || head == "meier-gamma") {
      Args a = split_args(form, {}, {});
      expect_positional(form, a, 0);
      MeierData m = build_meier();
      return head == "meier-T" ? m.t_expr : m.gamma_expr;
    }
    if (head == "lambda-w" || head == "gamma-w") {
      Args a = split_args(form, {"oracle"}, {});
      expect_positional(form, a, 2);
      ExprPtr lambda = eval(*a.positional[0]);
      WordProblemSource src = oracle_for(lambda, a);
      Word w = word_value(*a.positional[1]);
      return head == "lambda-w" ? lambda_w(src, w).expr : gamma_w(src, w).expr;
    }
    if (head == "witness-w") {
      Args a = split_args(form, {"oracle"}, {});
      expect_positional(form, a, 3);
      ExprPtr gamma = eval(*a.positional[0]);
      ExprPtr lambda = eval(*a.positional[1]);
      WordProblemSource src = oracle_for(lambda, a);
      return witness_W(gamma, src, word_value(*a.positional[2])).expr;
    }
    if (head == "pi-w") {
      Args a = split_args(form, {"oracle", "dim", "hyp"}, {});
      expect_positional(form, a, 2);
      if (!a.options.count("dim")) fail(form, "pi-w needs :dim");
      ExprPtr lambda = eval(*a.positional[0]);
      WordProblemSource src = oracle_for(lambda, a);
      ExprPtr hyp = a.options.count("hyp") ? eval(*a.options.at("hyp")) : nullptr;
      return pi_w(src, word_value(*a.positional[1]), positive_value(*a.options.at("dim"), ":dim"), hyp).expr;
    }
    if (head == "delta-w") {
      Args a = split_args(form, {"oracle", "dim"}, {});
      expect_positional(form, a, 2);
      std::size_t d = a.options.count("dim") ? positive_value(*a.options.at("dim"), ":dim") : 1;
      ExprPtr lambda = eval(*a.positional[0]);
      WordProblemSource src = oracle_for(lambda, a);
      return delta_w(src, word_value(*a.positional[1]), d).expr;
    }
    fail(form.items[0], "unknown form '" + head + "'");
  }

 private:
  std::filesystem::path base_;

  ExprPtr eval_atom(const Sexpr& form) {
    Args a = split_args(form, {"file", "pres", "facts"}, {});
    expect_positional(form, a, 1);
    const std::string& name = string_value(*a.positional[0], "the atom name");
    if (a.options.count("file") && a.options.count("pres")) fail(form, "atom takes :file or :pres, not both");
    std::optional<Presentation> p;
    std::string source;
    if (a.options.count("file")) {
      source = string_value(*a.options.at("file"), ":file");
      std::filesystem::path path = std::filesystem::path(source).is_absolute() ? std::filesystem::path(source) : base_ / source;
      p = parse_presentation(read_text_file(path));
    } else if (a.options.count("pres")) {
      p = parse_presentation(string_value(*a.options.at("pres"), ":pres"));
    }
    if (p) p->name = name;
    std::vector<AtomFact> facts;
    if (a.options.count("facts")) facts = facts_value(*a.options.at("facts"));
    ExprPtr e = atom(name, std::move(p), std::move(facts));
    if (source.empty()) return e;
    auto with_source = std::make_shared<GroupExpr>(*e);
    with_source->source_file = source;
    return with_source;
  }

  ExprPtr eval_hnn(const Sexpr& form) {
    Args a = split_args(form, {"stable", "assoc"}, {"ascending?", "ascending"});
    expect_positional(form, a, 1);
    ExprPtr p = eval(*a.positional[0]);
    std::string stable = a.options.count("stable") ? string_value(*a.options.at("stable"), ":stable")
                                                   : fresh_name("t", p->presentation().alphabet);
    std::vector<std::pair<Word, Word>> assoc;
    if (a.options.count("assoc")) assoc = pairs_value(*a.options.at("assoc"));
    if (a.flags.empty()) return hnn_extension(p, stable, std::move(assoc));

    // Ascending: the pairs give the endomorphism on generators; unlisted
    // generators are fixed.
    const Presentation& base = p->presentation();
    Substitution images;
    for (const auto& x : base.alphabet.symbols()) images[x] = Word::letter(x);
    for (const auto& [u, v] : assoc) {
      if (u.runs() != 1 || u.letters()[0].exponent != 1) {
        fail(*a.options.at("assoc"), "ascending :assoc pairs must start with a generator");
      }
      images[u.letters()[0].symbol] = v;
    }
    PresentationMorphism phi = make_morphism(base, base, std::move(images));
    std::set<Word> relator_forms;
    for (const auto& r : base.relators) relator_forms.insert(canonical_cyclic_form(r));
    discharge_obligations(phi, [&](const Word& image) { return relator_forms.count(canonical_cyclic_form(image)) > 0; });
    return hnn_extension(p, stable, {}, std::move(phi));
  }
};

}  // namespace

ExprPtr evaluate_expr(const Sexpr& form, const std::filesystem::path& base_dir) {
  return Evaluator(base_dir).eval(form);
}

ExprPtr parse_expr(std::string_view text, const std::filesystem::path& base_dir) {
  std::vector<Sexpr> forms = parse_sexprs(text);
  if (forms.empty()) throw ParseError("empty expression file", 1, 1);
  if (forms.size() > 1) throw ParseError("expected a single expression", forms[1].line, forms[1].column);
  return evaluate_expr(forms[0], base_dir);
}

ExprPtr load_expr_file(const std::filesystem::path& path) {
  return parse_expr(read_text_file(path), path.parent_path());
}

std::string inline_atom_form(const std::string& name, const Presentation& p, std::string_view facts) {
  Presentation unnamed = p;
  unnamed.name.reset();
  std::string out = "(atom " + quote_string(name) + " :pres " + quote_string(serialize(unnamed));
  if (!facts.empty()) out += " :facts (" + std::string(facts) + ")";
  return out + ")";
}

}  // namespace gpforge
