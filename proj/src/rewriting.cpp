#include "gpforge/rewriting.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "gpforge/errors.hpp"

namespace gpforge {

HnnRewriteSystem HnnRewriteSystem::make(Alphabet base, std::string stable,
                                        const std::vector<std::pair<Word, Word>>& assoc) {
  if (assoc.size() != 1) {
    throw UnsupportedEdgeError("only a single cyclic edge pair is supported, got " +
                               std::to_string(assoc.size()));
  }
  if (base.contains(stable)) throw StableLetterClash("stable letter '" + stable + "' is a base generator");
  Word u = free_reduce(assoc[0].first, base);
  Word v = free_reduce(assoc[0].second, base);
  if (u.empty() || v.empty()) throw DegenerateEdgeError("edge word reduces to the identity");
  return {std::move(base), std::move(stable), std::move(u), std::move(v)};
}

HnnRewriteSystem HnnRewriteSystem::baumslag_solitar(const BigInt& m, const BigInt& n) {
  if (m == 0 || n == 0) throw DomainError("Baumslag-Solitar parameters must be nonzero");
  return make(Alphabet({"a"}), "t", {{Word::letter("a", m), Word::letter("a", n)}});
}

std::optional<BigInt> cyclic_exponent(const Word& g, const Word& h) {
  Word hr = free_reduce(h);
  Word gr = free_reduce(g);
  if (gr.empty()) return BigInt(0);
  if (hr.empty()) return std::nullopt;
  auto [core, conj] = cyclically_reduce(hr);
  Word x = conj.inverse() * gr * conj;
  if (core.runs() == 1) {
    if (x.runs() != 1 || x.letters()[0].symbol != core.letters()[0].symbol) return std::nullopt;
    const BigInt& e = core.letters()[0].exponent;
    const BigInt& f = x.letters()[0].exponent;
    if (f % e != 0) return std::nullopt;
    return BigInt(f / e);
  }
  BigInt len_x = x.length();
  BigInt len_c = core.length();
  if (len_x % len_c != 0) return std::nullopt;
  BigInt k = len_x / len_c;
  if (core.pow(k) == x) return k;
  if (core.pow(-k) == x) return BigInt(-k);
  return std::nullopt;
}

namespace {

constexpr std::size_t kMaxStableRun = 10'000'000;

struct Frame {
  int sign;  // the stable letter opening this frame
  Word segment;
};

// Splits a word into base segments g_0 t^e_1 g_1 ... t^e_r g_r with single
// stable letters.
struct Syllables {
  std::vector<Word> segments;
  std::vector<int> signs;
};

Syllables syllables(const HnnRewriteSystem& sys, const Word& w) {
  Syllables out;
  out.segments.emplace_back();
  const Word reduced = free_reduce(w);
  for (const auto& l : reduced.letters()) {
    if (l.symbol == sys.stable) {
      if (abs(l.exponent) > kMaxStableRun) throw DomainError("stable-letter power too large");
      int sign = l.exponent > 0 ? 1 : -1;
      auto count = static_cast<std::size_t>(abs(l.exponent));
      for (std::size_t i = 0; i < count; ++i) {
        out.signs.push_back(sign);
        out.segments.emplace_back();
      }
    } else {
      out.segments.back() *= Word::letter(l.symbol, l.exponent);
    }
  }
  return out;
}

Word join(const std::string& stable, const Word& head, const std::vector<Frame>& frames) {
  Word out = head;
  for (const auto& f : frames) {
    out *= Word::letter(stable, f.sign);
    out *= f.segment;
  }
  return out;
}

// Exponent k with g = u^k (closing sign +1 after -1) or g = v^k (closing
// sign -1 after +1), if the pair forms a pinch.
std::optional<BigInt> pinch_exponent(const HnnRewriteSystem& sys, int open, int close, const Word& g) {
  if (open == -1 && close == 1) return cyclic_exponent(g, sys.u);
  if (open == 1 && close == -1) return cyclic_exponent(g, sys.v);
  return std::nullopt;
}

}  // namespace

Word britton_normal_form(const HnnRewriteSystem& sys, const Word& w) {
  Word head;
  std::vector<Frame> stack;
  auto top = [&]() -> Word& { return stack.empty() ? head : stack.back().segment; };

  const Word reduced = free_reduce(w);
  for (const auto& l : reduced.letters()) {
    if (l.symbol != sys.stable) {
      if (!sys.base.contains(l.symbol)) {
        throw AlphabetMismatch("symbol '" + l.symbol + "' is neither a base generator nor the stable letter");
      }
      top() *= Word::letter(l.symbol, l.exponent);
      continue;
    }
    if (abs(l.exponent) > kMaxStableRun) throw DomainError("stable-letter power too large");
    int sign = l.exponent > 0 ? 1 : -1;
    auto count = static_cast<std::size_t>(abs(l.exponent));
    for (std::size_t i = 0; i < count; ++i) {
      if (!stack.empty()) {
        if (auto k = pinch_exponent(sys, stack.back().sign, sign, stack.back().segment)) {
          Word replacement = sign == 1 ? sys.v.pow(*k) : sys.u.pow(*k);
          stack.pop_back();
          top() *= replacement;
          continue;
        }
      }
      stack.push_back({sign, Word{}});
    }
  }
  return join(sys.stable, head, stack);
}

bool has_pinch(const HnnRewriteSystem& sys, const Word& w) {
  Syllables s = syllables(sys, w);
  for (std::size_t i = 0; i + 1 < s.signs.size(); ++i) {
    if (pinch_exponent(sys, s.signs[i], s.signs[i + 1], s.segments[i + 1])) return true;
  }
  return false;
}

Word bs_reduce(const BigInt& m, const BigInt& n, const Word& w) {
  auto sys = HnnRewriteSystem::baumslag_solitar(m, n);
  Syllables s = syllables(sys, britton_normal_form(sys, w));
  std::vector<BigInt> exps;
  for (const auto& seg : s.segments) exps.push_back(seg.exponent_sum("a"));
  // a^(qm) t = t a^(qn) and a^(qn) t^-1 = t^-1 a^(qm).
  for (std::size_t i = 0; i < s.signs.size(); ++i) {
    const BigInt& before = s.signs[i] == 1 ? m : n;
    const BigInt& after = s.signs[i] == 1 ? n : m;
    BigInt rem = floor_mod(exps[i], before);
    BigInt q = (exps[i] - rem) / before;
    exps[i] = rem;
    exps[i + 1] += q * after;
  }
  Word out = Word::letter("a", exps[0]);
  for (std::size_t i = 0; i < s.signs.size(); ++i) {
    out *= Word::letter("t", s.signs[i]);
    out *= Word::letter("a", exps[i + 1]);
  }
  return out;
}

bool bs_equal(const BigInt& m, const BigInt& n, const Word& u, const Word& v) {
  return bs_reduce(m, n, u * v.inverse()).empty();
}

bool free_triviality(const Word& w) { return free_reduce(w).empty(); }

Permutation compose(const Permutation& p, const Permutation& q) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = q[p[i]];
  return r;
}

Permutation invert(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[p[i]] = static_cast<std::uint8_t>(i);
  return r;
}

bool is_identity(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != i) return false;
  }
  return true;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ' ';
      first = false;
      out += std::to_string(j + 1);
      j = p[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

namespace {

// The order of every permutation of degree <= 6 divides 60.
constexpr int kExponentPeriod = 60;

int exponent_mod_period(const BigInt& e) {
  return static_cast<int>(floor_mod(e, BigInt(kExponentPeriod)));
}

Permutation power(const Permutation& p, int e) {
  Permutation r(p.size());
  std::iota(r.begin(), r.end(), 0);
  for (int i = 0; i < e; ++i) r = compose(r, p);
  return r;
}

// All permutations of one degree with a multiplication table and power table.
struct SymmetricGroup {
  std::size_t degree;
  std::vector<Permutation> elements;
  std::vector<std::uint16_t> product;  // product[i * size + j] = elements[i] * elements[j]
  std::vector<std::uint16_t> powers;   // powers[i * period + e] = elements[i]^e
  std::uint16_t identity = 0;

  explicit SymmetricGroup(std::size_t n) : degree(n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    do {
      elements.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::map<Permutation, std::uint16_t> index;
    for (std::size_t i = 0; i < elements.size(); ++i) index[elements[i]] = static_cast<std::uint16_t>(i);
    std::size_t size = elements.size();
    product.resize(size * size);
    for (std::size_t i = 0; i < size; ++i) {
      for (std::size_t j = 0; j < size; ++j) product[i * size + j] = index[compose(elements[i], elements[j])];
    }
    powers.resize(size * kExponentPeriod);
    for (std::size_t i = 0; i < size; ++i) {
      for (int e = 0; e < kExponentPeriod; ++e) powers[i * kExponentPeriod + e] = index[power(elements[i], e)];
    }
  }

  std::uint16_t mul(std::uint16_t a, std::uint16_t b) const { return product[a * elements.size() + b]; }
  std::uint16_t pow(std::uint16_t a, int e) const { return powers[a * kExponentPeriod + e]; }
};

struct CompiledRelator {
  std::vector<std::pair<std::size_t, int>> letters;  // generator index, exponent mod period
};

}  // namespace

Permutation FiniteQuotient::evaluate(const Word& w) const {
  Permutation r(degree);
  std::iota(r.begin(), r.end(), 0);
  for (const auto& l : w.letters()) {
    auto it = images.find(l.symbol);
    if (it == images.end()) throw PartialMapError("no image for symbol '" + l.symbol + "'");
    BigInt e = l.exponent;
    const Permutation& base = e > 0 ? it->second : invert(it->second);
    // Reduce the exponent modulo the order of the image.
    int order = 1;
    for (Permutation q = base; !is_identity(q); q = compose(q, base)) ++order;
    int k = static_cast<int>(floor_mod(abs(e), BigInt(order)));
    for (int i = 0; i < k; ++i) r = compose(r, base);
  }
  return r;
}

void enumerate_quotients(const Presentation& p, std::size_t degree,
                         const std::function<bool(const FiniteQuotient&)>& visit) {
  if (degree == 0 || degree > 6) throw DomainError("quotient degree must lie in 1..6");
  const auto& gens = p.alphabet.symbols();
  SymmetricGroup group(degree);

  // Relators are checked as soon as their last generator is assigned.
  std::vector<std::vector<CompiledRelator>> due(gens.size());
  for (const auto& r : p.relators) {
    CompiledRelator c;
    std::size_t last = 0;
    const Word reduced = free_reduce(r, p.alphabet);
    for (const auto& l : reduced.letters()) {
      std::size_t g = *p.alphabet.index_of(l.symbol);
      last = std::max(last, g);
      c.letters.emplace_back(g, exponent_mod_period(l.exponent));
    }
    if (!c.letters.empty()) due[last].push_back(std::move(c));
  }

  std::vector<std::uint16_t> assignment(gens.size(), 0);
  auto holds = [&](const CompiledRelator& c) {
    std::uint16_t acc = group.identity;
    for (const auto& [g, e] : c.letters) acc = group.mul(acc, group.pow(assignment[g], e));
    return acc == group.identity;
  };

  bool stop = false;
  std::function<void(std::size_t)> assign = [&](std::size_t i) {
    if (stop) return;
    if (i == gens.size()) {
      FiniteQuotient q;
      q.degree = degree;
      for (std::size_t g = 0; g < gens.size(); ++g) q.images[gens[g]] = group.elements[assignment[g]];
      if (!visit(q)) stop = true;
      return;
    }
    for (std::size_t e = 0; e < group.elements.size() && !stop; ++e) {
      assignment[i] = static_cast<std::uint16_t>(e);
      if (std::all_of(due[i].begin(), due[i].end(), holds)) assign(i + 1);
    }
  };
  assign(0);
}

QuotientSearchResult finite_quotient_search(const Presentation& p, std::size_t degree_max,
                                            const std::optional<Word>& target) {
  if (degree_max > 6) throw DomainError("quotient search degree is bounded by 6");
  if (target) check_alphabet(*target, p.alphabet);
  QuotientSearchResult result;
  for (std::size_t n = 1; n <= degree_max && !result.certificate; ++n) {
    enumerate_quotients(p, n, [&](const FiniteQuotient& q) {
      if (!target) {
        result.homomorphisms.push_back(q);
        return true;
      }
      if (is_identity(q.evaluate(*target))) return true;
      TrivialityCertificate cert{TrivialityCertificate::Kind::FiniteQuotient, *target, false, {}, {}, q, {}};
      result.certificate = std::move(cert);
      return false;
    });
  }
  return result;
}

TrivialityCertificate certify_free(const Word& w) {
  Word nf = free_reduce(w);
  bool trivial = nf.empty();
  return {TrivialityCertificate::Kind::FreeReduction, w, trivial, std::move(nf), {}, {}, {}};
}

TrivialityCertificate certify_britton(const HnnRewriteSystem& sys, const Word& w) {
  Word nf = britton_normal_form(sys, w);
  bool trivial = nf.empty();
  return {TrivialityCertificate::Kind::BrittonNormalForm, w, trivial, std::move(nf), sys, {}, {}};
}

std::optional<TrivialityCertificate> certify_tietze_collapse(const Presentation& p, std::size_t budget) {
  TietzeResult r = tietze_simplify_traced(p, budget);
  if (r.presentation.generator_count() != 0 || r.presentation.relator_count() != 0) return std::nullopt;
  return TrivialityCertificate{TrivialityCertificate::Kind::TietzeCollapse, {}, true, {}, {}, {}, std::move(r.trace)};
}

namespace {

bool presents_hnn(const Presentation& p, const HnnRewriteSystem& sys) {
  Alphabet expected = sys.base;
  expected.add(sys.stable);
  if (!(p.alphabet == expected) || p.relators.size() != 1) return false;
  Word relator = Word::letter(sys.stable, -1) * sys.u * Word::letter(sys.stable, 1) * sys.v.inverse();
  return canonical_cyclic_form(p.relators[0]) == canonical_cyclic_form(relator);
}

bool replay_tietze(const Presentation& p, const std::vector<TietzeStep>& trace) {
  std::vector<std::string> gens = p.alphabet.symbols();
  std::vector<Word> rels;
  for (const auto& r : p.relators) rels.push_back(cyclically_reduce(r).core);
  for (const auto& step : trace) {
    if (step.kind == TietzeStep::Kind::DeleteRelator) {
      if (step.relator.empty()) {
        auto it = std::find_if(rels.begin(), rels.end(), [](const Word& r) { return r.empty(); });
        if (it == rels.end()) return false;
        rels.erase(it);
        continue;
      }
      Word key = canonical_cyclic_form(step.relator);
      std::vector<std::size_t> matches;
      for (std::size_t i = 0; i < rels.size(); ++i) {
        if (canonical_cyclic_form(rels[i]) == key) matches.push_back(i);
      }
      if (matches.size() < 2) return false;
      rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(matches.back()));
      continue;
    }
    auto git = std::find(gens.begin(), gens.end(), step.generator);
    auto rit = std::find(rels.begin(), rels.end(), step.relator);
    if (git == gens.end() || rit == rels.end()) return false;
    auto solution = solve_for_generator(*rit, step.generator);
    if (!solution || !(*solution == step.replacement)) return false;
    rels.erase(rit);
    gens.erase(git);
    for (auto& r : rels) r = cyclically_reduce(substitute_generator(r, step.generator, step.replacement)).core;
  }
  return gens.empty() && rels.empty();
}

}  // namespace

bool verify_certificate(const TrivialityCertificate& cert, const Presentation& p) {
  using Kind = TrivialityCertificate::Kind;
  switch (cert.kind) {
    case Kind::FreeReduction: {
      if (!(free_reduce(cert.word) == cert.normal_form) || cert.trivial != cert.normal_form.empty()) return false;
      // Nontriviality by free reduction is only meaningful in a free group.
      return cert.trivial || p.relators.empty();
    }
    case Kind::BrittonNormalForm: {
      if (!cert.system || !presents_hnn(p, *cert.system)) return false;
      if (has_pinch(*cert.system, cert.normal_form)) return false;
      if (!(britton_normal_form(*cert.system, cert.word) == cert.normal_form)) return false;
      return cert.trivial == cert.normal_form.empty();
    }
    case Kind::FiniteQuotient: {
      if (!cert.quotient || cert.trivial) return false;
      const FiniteQuotient& q = *cert.quotient;
      for (const auto& g : p.alphabet.symbols()) {
        auto it = q.images.find(g);
        if (it == q.images.end() || it->second.size() != q.degree) return false;
        std::set<std::uint8_t> points(it->second.begin(), it->second.end());
        if (points.size() != q.degree || (q.degree > 0 && *points.rbegin() >= q.degree)) return false;
      }
      for (const auto& r : p.relators) {
        if (!is_identity(q.evaluate(r))) return false;
      }
      return !is_identity(q.evaluate(cert.word));
    }
    case Kind::TietzeCollapse:
      return cert.trivial && replay_tietze(p, cert.trace);
  }
  return false;
}

std::string format_certificate(const TrivialityCertificate& cert) {
  using Kind = TrivialityCertificate::Kind;
  std::ostringstream out;
  switch (cert.kind) {
    case Kind::FiniteQuotient: {
      out << "hom";
      for (const auto& [g, perm] : cert.quotient->images) out << ' ' << g << ": " << format_cycles(perm);
      break;
    }
    case Kind::FreeReduction:
      out << "free-reduction " << format_word(cert.normal_form);
      break;
    case Kind::BrittonNormalForm:
      out << "britton " << format_word(cert.normal_form);
      break;
    case Kind::TietzeCollapse:
      out << "tietze-collapse steps=" << cert.trace.size();
      break;
  }
  return out.str();
}

}  // namespace gpforge
