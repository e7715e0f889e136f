// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gpforge/combinators.hpp"
#include "gpforge/homology.hpp"
#include "gpforge/inference.hpp"
#include "gpforge/expr_file.hpp"
#include "gpforge/meier.hpp"
#include "gpforge/reductions.hpp"
#include "gpforge/rewriting.hpp"
#include "gpforge/topology.hpp"
#include "oracles.hpp"

using namespace gpforge;

namespace {

// Collects failed checks for one criterion.
struct Checker {
  std::vector<std::string> failures;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

bool report(int number, const std::string& title, double limit, const std::function<void(Checker&)>& body) {
  Checker c;
  auto start = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  double elapsed = seconds_since(start);
  if (limit > 0 && elapsed >= limit) {
    c.failures.push_back("took " + std::to_string(elapsed) + " s, limit " + std::to_string(limit) + " s");
  }
  bool pass = c.failures.empty();
  char timing[32];
  std::snprintf(timing, sizeof timing, "%.3f", elapsed);
  std::cout << "criterion " << number << ": " << (pass ? "PASS" : "FAIL") << "  " << title << "  (" << timing
            << " s)\n";
  std::size_t shown = 0;
  for (const auto& f : c.failures) {
    if (++shown > 10) {
      std::cout << "    ... " << c.failures.size() - 10 << " more\n";
      break;
    }
    std::cout << "    " << f << '\n';
  }
  return pass;
}

Presentation free1() { return oracle::load("free1.grp"); }

// The presentations whose abelianizations are pinned down exactly.
struct Pinned {
  std::string name;
  Presentation p;
  std::string abelian;
};

std::vector<Pinned> pinned_presentations() {
  return {
      {"BS(2,3)", oracle::load("bs23.grp"), "rank=1 torsion=[]"},
      {"torus", oracle::load("torus.grp"), "rank=2 torsion=[]"},
      {"m(<g>)", standard_mitosis(atom("G", free1()))->presentation(), "rank=2 torsion=[]"},
      {"mu_2(<g>)", mu_stage_presentation(free1(), 2), "rank=1 torsion=[]"},
      {"mu_3(<g>)", mu_stage_presentation(free1(), 3), "rank=1 torsion=[]"},
      {"genus 2", oracle::load("genus2.grp"), "rank=4 torsion=[]"},
  };
}

void abelianizations(Checker& c) {
  for (const auto& [name, p, expected] : pinned_presentations()) {
    auto start = Clock::now();
    std::string got = abelianization(p).format();
    double t = seconds_since(start);
    c.expect(got == expected, name + ": got " + got + ", expected " + expected);
    c.expect(t < 1.0, name + ": abelianization took " + std::to_string(t) + " s");
  }
}

void britton_suite(Checker& c) {
  auto sys = HnnRewriteSystem::baumslag_solitar(2, 3);
  Word a = parse_word("a");
  Word t = parse_word("t");
  Word comm = commutator(a, t.inverse() * a * t);
  Presentation bs = oracle::load("bs23.grp");

  TrivialityCertificate cert = certify_britton(sys, comm);
  c.expect(!cert.trivial, "[a, t^-1 a t] certified trivial");
  c.expect(!cert.normal_form.empty(), "[a, t^-1 a t] has an empty normal form");
  c.expect(!has_pinch(sys, cert.normal_form), "normal form of [a, t^-1 a t] contains a pinch");
  c.expect(verify_certificate(cert, bs), "Britton certificate does not verify");

  c.expect(phi_apply(comm).empty(), "phi([a, t^-1 a t]) != 1: " + format_word(phi_apply(comm)));
  Word ta = commutator(t, a.inverse());
  c.expect(phi_apply(ta) == a, "phi([t, a^-1]) != a: " + format_word(phi_apply(ta)));

  Word image = substitute(bs.relators[0], {{"a", parse_word("a^2")}, {"t", t}});
  c.expect(image == parse_word("t^-1 a^4 t a^-6"), "phi(relator) is " + format_word(image));
  c.expect(bs_reduce(2, 3, image).empty(), "t^-1 a^4 t a^-6 does not reduce to 1");
}

void mitosis_elements(Checker& c) {
  for (const char* name : {"c2.grp", "c3.grp"}) {
    ExprPtr m = standard_mitosis(atom(name, oracle::load(name)));
    const Presentation& p = m->presentation();
    QuotientSearchResult found = finite_quotient_search(p, 5);
    c.expect(!found.homomorphisms.empty(), std::string(name) + ": no quotients found");
    for (const auto& q : found.homomorphisms) {
      std::map<std::string, oracle::Perm, std::less<>> images;
      for (const auto& [s, perm] : q.images) images[s] = oracle::Perm(perm.begin(), perm.end());
      std::size_t n = q.degree;
      for (const auto& r : p.relators) {
        c.expect(oracle::is_identity(oracle::evaluate(images, n, r)), std::string(name) + ": quotient is not a homomorphism");
      }
      const oracle::Perm& s = images.at("s");
      const oracle::Perm& d = images.at("d");
      oracle::Perm s_inv = oracle::perm_inverse(s);
      oracle::Perm d_inv = oracle::perm_inverse(d);
      std::vector<oracle::Perm> group = oracle::generated_subgroup({images.at("g")}, n);
      for (const auto& h : group) {
        // d^-1 h d = h s^-1 h s
        oracle::Perm lhs = oracle::compose(oracle::compose(d_inv, h), d);
        oracle::Perm rhs = oracle::compose(oracle::compose(oracle::compose(h, s_inv), h), s);
        c.expect(lhs == rhs, std::string(name) + ": conjugation condition fails on an element");
        for (const auto& k : group) {
          // [h, s^-1 k s] = 1
          oracle::Perm conj = oracle::compose(oracle::compose(s_inv, k), s);
          oracle::Perm comm = oracle::compose(
              oracle::compose(oracle::compose(oracle::perm_inverse(h), oracle::perm_inverse(conj)), h), conj);
          c.expect(oracle::is_identity(comm), std::string(name) + ": commutation condition fails on a pair");
        }
      }
    }
    // g -> 1, s -> x, d -> y kills every relator in the free group.
    Substitution onto_free{{"g", Word{}}, {"s", parse_word("x")}, {"d", parse_word("y")}};
    for (const auto& r : p.relators) {
      c.expect(oracle::stack_reduce(oracle::flatten(substitute(r, onto_free))).empty(),
               std::string(name) + ": relator " + format_word(r) + " survives in F2");
    }
    c.expect(m->morphism && m->morphism->verified, std::string(name) + ": quotient onto F2 not verified");
  }
}

void mu_generators(Checker& c) {
  std::vector<std::pair<std::string, Presentation>> bases{
      {"F1", free1()}, {"F2", oracle::load("free2.grp")}, {"<g|g^2>", oracle::load("c2.grp")}};
  for (const auto& [name, p] : bases) {
    for (std::size_t k : {2u, 3u, 4u}) {
      Presentation q = tietze_simplify(mu_stage_presentation(p, k));
      std::size_t want = p.generator_count() + 3;
      c.expect(q.generator_count() == want, name + " k=" + std::to_string(k) + ": " +
                                                std::to_string(q.generator_count()) + " generators, expected " +
                                                std::to_string(want));
    }
  }
}

void witness_pipeline(Checker& c) {
  oracle::Rng rng(20240611);
  auto src = WordProblemSource::free_group(oracle::load("free2.grp"));
  std::size_t trivial_count = 0;
  for (int i = 0; i < 100; ++i) {
    Word w;
    if (i % 3 == 0) {
      // u u^-1 written out letter by letter, so the word is trivial but not
      // visibly so before reduction.
      Word u = oracle::random_word(rng, {"a", "b"}, 6);
      std::vector<Letter> letters = u.letters();
      for (auto it = u.letters().rbegin(); it != u.letters().rend(); ++it) letters.push_back({it->symbol, -it->exponent});
      w = letters.empty() ? Word{} : Word::from_letters(letters);
    } else {
      w = oracle::random_word(rng, {"a", "b"}, 12);
    }
    bool trivial = oracle::stack_reduce(oracle::flatten(w)).empty();
    trivial_count += trivial;
    std::string tag = "word '" + format_word(w) + "'";

    Presentation lam = tietze_simplify(*lambda_w(src, w).presentation);
    Presentation gam = tietze_simplify(*gamma_w(src, w).presentation);
    WitnessOutput wit = witness_W(free_group_f2_atom(), src, w);
    Presentation wq = tietze_simplify(*wit.presentation);

    bool lam_empty = lam.generator_count() == 0 && lam.relator_count() == 0;
    bool wit_empty = wq.generator_count() == 0 && wq.relator_count() == 0;
    bool gam_cyclic = gam.generator_count() == 1 && gam.relator_count() == 0;
    c.expect(lam_empty == trivial, tag + ": lambda_w collapse disagrees with free reduction");
    c.expect(wit_empty == trivial, tag + ": witness_W collapse disagrees with free reduction");
    c.expect(gam_cyclic == trivial, tag + ": gamma_w collapse to <t> disagrees with free reduction");
    if (trivial) continue;

    FactBase g = FactBase::derive(gamma_w(src, w).expr);
    c.expect(g.query(0, Pred::AcylHyp) != nullptr, tag + ": Gamma_w not acylindrically hyperbolic");
    c.expect(g.query(0, Pred::LargeHb, 2) != nullptr, tag + ": Gamma_w lacks large-hb 2");
    c.expect(g.query(0, Pred::LargeHb, 3) != nullptr, tag + ": Gamma_w lacks large-hb 3");
    for (std::size_t d : {4u, 5u, 6u}) {
      FactBase p = FactBase::derive(pi_w(src, w, d).expr);
      c.expect(p.query(0, Pred::LargeHb, static_cast<long long>(d)) != nullptr,
               tag + ": Pi_w lacks large-hb " + std::to_string(d));
    }
  }
  c.expect(trivial_count > 0 && trivial_count < 100, "sample does not cover both branches");
}

void triangulation(Checker& c) {
  std::vector<Pinned> cases = pinned_presentations();
  cases.push_back({"<a|a^2>", oracle::load("rp2.grp"), "rank=0 torsion=[2]"});
  for (const auto& [name, p, expected] : cases) {
    SimplicialComplex x = triangulate(p);
    long long chi = 1 - static_cast<long long>(p.generator_count()) + static_cast<long long>(p.relator_count());
    c.expect(x.euler_characteristic() == chi, name + ": euler characteristic " +
                                                  std::to_string(x.euler_characteristic()) + ", expected " +
                                                  std::to_string(chi));
    auto h = complex_homology(chain_complex(x));
    c.expect(h[1] == abelianization(p), name + ": H1 is " + h[1].format());
    c.expect(h[1].format() == expected, name + ": H1 is not " + expected);

    DeltaComplex d0 = presentation_complex(p);
    DeltaComplex d1 = barycentric_subdivide(d0);
    DeltaComplex d2 = barycentric_subdivide(d1);
    c.expect(d1.triangles.size() == 6 * d0.triangles.size(), name + ": first subdivision is not x6");
    c.expect(d2.triangles.size() == 6 * d1.triangles.size(), name + ": second subdivision is not x6");
    c.expect(x.triangles().size() == d2.triangles.size(), name + ": simplicial complex lost triangles");
    c.expect(format_simplicial(x) == format_simplicial(triangulate(p)), name + ": output differs between runs");
  }
}

void inference_regression(Checker& c) {
  auto fixture = [](const char* name) { return FactBase::derive(load_expr_file(oracle::fixture_path(name))); };

  for (const char* name : {"mu_abstract.gx", "mu2.gx"}) {
    FactBase fb = fixture(name);
    for (Pred p : {Pred::BoundedlyAcyclic, Pred::ContainsF2, Pred::NotFinPres}) {
      CertPtr cert = fb.query(0, p);
      c.expect(cert && replay_certificate(*cert, fb),
               std::string(name) + ": no replayable certificate for " + std::string(pred_info(p).name));
    }
  }

  FactBase meier = FactBase::derive(build_meier().gamma_expr);
  for (long long d = 1; d <= 5; ++d) {
    CertPtr cert = meier.query(0, Pred::LargeHb, 2 * d);
    bool ok = cert && replay_certificate(*cert, meier) && (d == 1 || cert->rule == 12);
    c.expect(ok, "Meier group: large-hb " + std::to_string(2 * d) + " not derived as required");
  }

  FactBase tl = fixture("tl.gx");
  for (long long n = 2; n <= 8; ++n) {
    CertPtr cert = tl.query(0, Pred::LargeHb, n);
    bool ok = cert && replay_certificate(*cert, tl) && (cert->rule == 16 || cert->rule == 17);
    c.expect(ok, "T x Lambda: large-hb " + std::to_string(n) + " not derived via R16/R17");
  }

  for (const char* name : {"mu2.gx", "mu_abstract.gx", "meier.gx", "tl.gx", "witness.gx", "pi5.gx",
                           "gamma_trivial.gx", "bs12.gx"}) {
    auto clashes = check_consistency(fixture(name));
    c.expect(clashes.empty(), std::string(name) + ": " + std::to_string(clashes.size()) + " contradictions");
  }
  c.expect(!check_consistency(fixture("adversarial.gx")).empty(), "adversarial atom not flagged");
}

void snf_oracle(Checker& c) {
  oracle::Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    std::size_t rows = 1 + rng.below(4);
    std::size_t cols = 1 + rng.below(4);
    IntegerMatrix a(rows, cols);
    std::vector<std::vector<BigInt>> plain(rows, std::vector<BigInt>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t k = 0; k < cols; ++k) {
        a.at(r, k) = rng.between(-5, 5);
        plain[r][k] = a.at(r, k);
      }
    }
    SnfResult s = smith_normal_form(a);
    c.expect(s.U * a * s.V == s.D, "U*A*V != D on matrix " + std::to_string(i));
    c.expect(s.invariant_factors == oracle::invariant_factors_by_minors(plain),
             "invariant factors disagree on matrix " + std::to_string(i));
  }
}

}  // namespace

int main() {
  bool ok = true;
  ok &= report(1, "abelianization fixtures", 0, abelianizations);
  ok &= report(2, "Britton suite", 0, britton_suite);
  ok &= report(3, "mitosis element-level conditions", 60, mitosis_elements);
  ok &= report(4, "mu-stage generator count", 10, mu_generators);
  ok &= report(5, "witness pipeline", 60, witness_pipeline);
  ok &= report(6, "triangulation", 120, triangulation);
  ok &= report(7, "inference regression", 10, inference_regression);
  ok &= report(8, "Smith normal form oracle", 30, snf_oracle);
  std::cout << (ok ? "ALL PASS" : "SOME FAILED") << '\n';
  return ok ? 0 : 1;
}
