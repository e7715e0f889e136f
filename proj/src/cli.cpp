#include "gpforge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gpforge/errors.hpp"
#include "gpforge/expr_file.hpp"
#include "gpforge/homology.hpp"
#include "gpforge/inference.hpp"
#include "gpforge/meier.hpp"
#include "gpforge/reductions.hpp"
#include "gpforge/rewriting.hpp"
#include "gpforge/sexpr.hpp"
#include "gpforge/topology.hpp"

namespace gpforge {

namespace {

std::string read_input(const std::string& path, std::istream& in) {
  std::ostringstream buf;
  if (path == "-") {
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot read " + path);
  buf << file.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot write " + path);
  file << text;
}

Presentation load_presentation(const std::string& path, std::istream& in) {
  return parse_presentation(read_input(path, in));
}

ExprPtr load_expr(const std::string& path, std::istream& in) {
  if (path == "-") return parse_expr(read_input(path, in), std::filesystem::current_path());
  return load_expr_file(path);
}

std::pair<BigInt, BigInt> parse_bs(const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw InputError("expected m,n, got '" + text + "'");
  try {
    BigInt m(text.substr(0, comma));
    BigInt n(text.substr(comma + 1));
    if (m == 0 || n == 0) throw InputError("Baumslag-Solitar parameters must be nonzero");
    return {m, n};
  } catch (const std::runtime_error&) {
    throw InputError("expected integers m,n, got '" + text + "'");
  }
}

std::uint64_t effective_seed(std::uint64_t flag_seed) {
  if (const char* env = std::getenv("GPFORGE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InputError(std::string("GPFORGE_SEED is not an unsigned integer: ") + env);
    }
  }
  return flag_seed;
}

// Random word over {a, b} of length at most max_len, not necessarily
// reduced. Uses raw engine output so the corpus is the same on every
// standard library.
Word random_word(std::mt19937_64& rng, std::size_t max_len) {
  std::size_t len = rng() % (max_len + 1);
  std::vector<SignedSymbol> symbols;
  for (std::size_t i = 0; i < len; ++i) {
    std::uint64_t r = rng() % 4;
    symbols.push_back({r < 2 ? "a" : "b", (r % 2) ? -1 : 1});
  }
  return Word::from_symbols(symbols);
}

bool length_lex_less(const Word& u, const Word& v) {
  std::string su = format_word(u);
  std::string sv = format_word(v);
  BigInt lu = u.length();
  BigInt lv = v.length();
  if (lu != lv) return lu < lv;
  return su < sv;
}

std::string oracle_keyword(const std::string& oracle) {
  return oracle.empty() ? "" : " :oracle " + quote_string(oracle);
}

struct Options {
  std::string file;
  std::string output;
  std::string word;
  std::string bs;
  std::size_t degree = 5;
  std::string query;
  bool cert = false;
  bool consistency = false;
  bool list = false;
  std::size_t node = 0;
  long long horizon = 12;
  bool simplify = false;
  std::string construction;
  std::string lambda_file;
  std::string gamma_file;
  std::string oracle;
  std::size_t dim = 4;
  std::string expr_out;
  std::size_t max_len = 8;
  std::size_t budget = 100000;
  std::string family;
  std::size_t depth = 3;
  std::size_t words = 20;
  std::uint64_t seed = 1;
};

int cmd_abelianize(const Options& o, std::istream& in, std::ostream& out) {
  out << abelianization(load_presentation(o.file, in)).format() << '\n';
  return 0;
}

int cmd_normalize(const Options& o, std::ostream& out) {
  auto [m, n] = parse_bs(o.bs);
  Word w = parse_word(o.word);
  check_alphabet(w, Alphabet({"a", "t"}));
  out << format_word(bs_reduce(m, n, w)) << '\n';
  return 0;
}

int cmd_certify(const Options& o, std::istream& in, std::ostream& out) {
  Presentation p = load_presentation(o.file, in);
  Word w = free_reduce(parse_word(o.word), p.alphabet);
  if (o.degree < 1 || o.degree > 6) throw DomainError("--degree must be between 1 and 6");
  QuotientSearchResult r = finite_quotient_search(p, o.degree, w);
  if (!r.certificate) {
    out << "no certificate up to degree " << o.degree << '\n';
    return 0;
  }
  if (!verify_certificate(*r.certificate, p)) throw InternalError("certificate failed its own check");
  out << format_certificate(*r.certificate) << '\n';
  return 0;
}

int cmd_triangulate(const Options& o, std::istream& in, std::ostream& out) {
  SimplicialComplex x = triangulate(load_presentation(o.file, in));
  write_output(o.output, format_simplicial(x), out);
  return 0;
}

int cmd_build(const Options& o, std::istream& in, std::ostream& out) {
  ExprPtr e = load_expr(o.file, in);
  if (!e->realized) throw InputError(e->label + " has no finite presentation");
  Presentation p = *e->realized;
  if (o.simplify) p = tietze_simplify(p);
  write_output(o.output, serialize(p), out);
  return 0;
}

int cmd_infer(const Options& o, std::istream& in, std::ostream& out) {
  ExprPtr e = load_expr(o.file, in);
  std::optional<std::pair<Pred, long long>> q;
  if (!o.query.empty()) q = parse_query(o.query);
  long long horizon = std::max(o.horizon, q ? q->second : 0);
  FactBase base = FactBase::derive(e, {}, {horizon});
  if (o.node >= base.nodes().size()) throw UnknownNodeError("no node @" + std::to_string(o.node));
  if (o.list) {
    for (const Fact& f : base.facts()) {
      if (f.node == o.node) out << format_fact(f) << '\n';
    }
  }
  if (o.consistency) {
    auto clashes = check_consistency(base);
    for (const auto& c : clashes) out << "CONTRADICTION " << c << '\n';
    if (clashes.empty()) out << "CONSISTENT\n";
  }
  if (q) {
    CertPtr cert = base.query(o.node, q->first, q->second);
    if (!cert) {
      out << "NOT DERIVABLE\n";
    } else {
      out << "DERIVED via " << cert->basis;
      std::string chain = rule_chain(*cert);
      if (!chain.empty()) out << " [" << chain << "]";
      out << '\n';
      if (o.cert) out << format_certificate(*cert, base);
    }
  }
  return 0;
}

int cmd_reduce(const Options& o, std::istream& in, std::ostream& out) {
  Presentation lambda = load_presentation(o.lambda_file, in);
  WordProblemSource src = WordProblemSource::from_spec(lambda, o.oracle);
  Word w = free_reduce(parse_word(o.word), lambda.alphabet);
  std::string lambda_form = inline_atom_form(lambda.name.value_or("Lambda"), lambda);
  std::string word_form = quote_string(format_word(w));
  std::string oracle = oracle_keyword(src.describe());

  WitnessOutput result;
  std::string form;
  if (o.construction == "lambda") {
    result = lambda_w(src, w);
    form = "(lambda-w " + lambda_form + " " + word_form + oracle + ")";
  } else if (o.construction == "gamma") {
    result = gamma_w(src, w);
    form = "(gamma-w " + lambda_form + " " + word_form + oracle + ")";
  } else if (o.construction == "witness-w") {
    ExprPtr gamma;
    std::string gamma_form;
    if (o.gamma_file.empty()) {
      gamma = free_group_f2_atom();
      gamma_form = inline_atom_form("F2", gamma->presentation(), "nonelem-free-product torsion-free");
    } else {
      Presentation g = load_presentation(o.gamma_file, in);
      gamma = atom("Gamma", g, {{"torsion-free", std::nullopt}});
      gamma_form = inline_atom_form("Gamma", g, "torsion-free");
    }
    result = witness_W(gamma, src, w);
    form = "(witness-w " + gamma_form + " " + lambda_form + " " + word_form + oracle + ")";
  } else if (o.construction == "pi") {
    result = pi_w(src, w, o.dim);
    form = "(pi-w " + lambda_form + " " + word_form + " :dim " + std::to_string(o.dim) + oracle + ")";
  } else if (o.construction == "delta") {
    result = delta_w(src, w, o.dim);
    form = "(delta-w " + lambda_form + " " + word_form + " :dim " + std::to_string(o.dim) + oracle + ")";
  } else {
    throw InputError("unknown construction '" + o.construction + "'");
  }

  if (!o.expr_out.empty()) write_output(o.expr_out, form + "\n", out);
  if (o.expr_out.empty() || !o.output.empty()) {
    if (!result.presentation) {
      throw InputError("this construction has no finite presentation here; use --expr to write the expression");
    }
    Presentation p = *result.presentation;
    if (o.simplify) p = tietze_simplify(p);
    write_output(o.output, serialize(p), out);
  }
  return 0;
}

int cmd_meier_probe(const Options& o, std::ostream& out) {
  for (const auto& c : double_coset_probe(o.max_len, o.budget)) out << format_word(c.word) << '\t' << c.status << '\n';
  return 0;
}

// Labeled families, one `label<TAB>expression` line per member. Labels name
// the property the member is expected to have (or lack).
int cmd_corpus(const Options& o, std::ostream& out) {
  std::ostringstream text;
  if (o.family == "mu") {
    const std::vector<std::pair<std::string, Presentation>> bases{
        {"F1", Presentation::free({"g"})},
        {"F2", Presentation::free({"a", "b"})},
        {"C2", Presentation(Alphabet({"g"}), {Word::letter("g", 2)})},
    };
    for (const auto& [name, p] : bases) {
      std::string facts = "fin-gen " + std::to_string(p.generator_count());
      for (std::size_t k = 1; k <= o.depth; ++k) {
        text << "boundedly-acyclic\t(mu " << inline_atom_form(name, p, facts) << " :k " << k << ")\n";
      }
    }
  } else if (o.family == "witness") {
    std::mt19937_64 rng(effective_seed(o.seed));
    std::vector<Word> ws;
    for (std::size_t i = 0; i < o.words; ++i) ws.push_back(random_word(rng, o.max_len));
    std::stable_sort(ws.begin(), ws.end(), length_lex_less);
    Presentation f2 = Presentation::free({"a", "b"});
    std::string f2_form = inline_atom_form("F2", f2, "nonelem-free-product torsion-free");
    std::string lambda_form = inline_atom_form("Lambda", f2);
    for (const Word& w : ws) {
      const char* label = free_triviality(w) ? "trivial" : "nontrivial";
      text << label << "\t(witness-w " << f2_form << " " << lambda_form << " " << quote_string(format_word(w))
           << " :oracle \"free\")\n";
    }
  } else if (o.family == "meier") {
    for (std::size_t d = 1; d <= o.depth; ++d) text << "large-hb " << 2 * d << "\t(meier-gamma)\n";
  } else if (o.family == "large") {
    for (std::size_t n = 2; n <= o.depth + 1; ++n) {
      text << "large-hb " << n
           << "\t(direct (atom \"T\" :facts (thompson-t)) (atom \"L\" :facts (hyp-manifold 3)))\n";
    }
    Presentation f2 = Presentation::free({"a", "b"});
    for (std::size_t d = 4; d <= o.depth + 3; ++d) {
      text << "large-hb " << d << "\t(pi-w " << inline_atom_form("Lambda", f2) << " \"a b a^-1 b^-1\" :dim " << d
           << " :oracle \"free\")\n";
    }
  } else {
    throw InputError("unknown family '" + o.family + "' (expected mu, witness, meier or large)");
  }
  write_output(o.output, text.str(), out);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"gpforge: computations with finitely presented groups"};
  app.require_subcommand(1);
  Options o;

  auto* abel = app.add_subcommand("abelianize", "Abelianization of a presentation");
  abel->add_option("file", o.file, "Presentation file or -")->required();

  auto* norm = app.add_subcommand("normalize", "Canonical form of a word in BS(m,n)");
  norm->add_option("--bs", o.bs, "m,n")->required();
  norm->add_option("word", o.word, "Word over a, t")->required();

  auto* cert = app.add_subcommand("certify-nontrivial", "Finite-quotient certificate that a word is nontrivial");
  cert->add_option("file", o.file, "Presentation file or -")->required();
  cert->add_option("--word", o.word)->required();
  cert->add_option("--degree", o.degree, "Largest permutation degree (at most 6)");

  auto* tri = app.add_subcommand("triangulate", "Simplicial complex with the presentation's fundamental group");
  tri->add_option("file", o.file)->required();
  tri->add_option("-o,--output", o.output);

  auto* build = app.add_subcommand("build", "Evaluate a group expression to a presentation");
  build->add_option("file", o.file, "Expression file or -")->required();
  build->add_option("-o,--output", o.output);
  build->add_flag("--simplify", o.simplify, "Apply Tietze simplification");

  auto* infer = app.add_subcommand("infer", "Derive bounded-cohomology facts");
  infer->add_option("file", o.file, "Expression file or -")->required();
  infer->add_option("--query", o.query, "e.g. \"large-hb 4\"");
  infer->add_flag("--cert", o.cert, "Print the certificate tree");
  infer->add_option("--node", o.node, "Node id (pre-order, root is 0)");
  infer->add_option("--horizon", o.horizon, "Largest degree generated");
  infer->add_flag("--consistency", o.consistency, "Report contradictions");
  infer->add_flag("--list", o.list, "List all facts of the node");

  auto* reduce = app.add_subcommand("reduce", "Witness constructions for a word problem");
  reduce->add_option("--construction", o.construction)
      ->required()
      ->check(CLI::IsMember({"lambda", "gamma", "witness-w", "pi", "delta"}));
  reduce->add_option("--lambda", o.lambda_file, "Presentation of the source group")->required();
  reduce->add_option("--gamma", o.gamma_file, "Group for witness-w (default F2)");
  reduce->add_option("--oracle", o.oracle, "free or bs:m,n (default: inferred)");
  reduce->add_option("--word", o.word)->required();
  reduce->add_option("--dim", o.dim);
  reduce->add_option("-o,--output", o.output);
  reduce->add_option("--expr", o.expr_out, "Write the expression file here");
  reduce->add_flag("--simplify", o.simplify);

  auto* probe = app.add_subcommand("meier-probe", "Search for words in phi^-1(F) outside F");
  probe->add_option("--max-len", o.max_len);
  probe->add_option("--budget", o.budget);

  auto* corpus = app.add_subcommand("corpus", "Emit labeled families of expressions");
  corpus->add_option("--family", o.family)->required();
  corpus->add_option("--depth", o.depth);
  corpus->add_option("--words", o.words);
  corpus->add_option("--max-len", o.max_len);
  corpus->add_option("--seed", o.seed, "Overridden by GPFORGE_SEED");
  corpus->add_option("-o,--output", o.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (abel->parsed()) return cmd_abelianize(o, in, out);
    if (norm->parsed()) return cmd_normalize(o, out);
    if (cert->parsed()) return cmd_certify(o, in, out);
    if (tri->parsed()) return cmd_triangulate(o, in, out);
    if (build->parsed()) return cmd_build(o, in, out);
    if (infer->parsed()) return cmd_infer(o, in, out);
    if (reduce->parsed()) return cmd_reduce(o, in, out);
    if (probe->parsed()) return cmd_meier_probe(o, out);
    if (corpus->parsed()) return cmd_corpus(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 3;
  }
  return 1;
}

}  // namespace gpforge
