#include "gpforge/meier.hpp"

#include <map>

#include "gpforge/errors.hpp"
#include "gpforge/rewriting.hpp"

namespace gpforge {

namespace {

Presentation bs23(const std::string& a, const std::string& t) {
  Word aw = Word::letter(a);
  Word tw = Word::letter(t);
  return Presentation(Alphabet({a, t}), {tw.inverse() * aw.pow(2) * tw * aw.pow(-3)});
}

Word c_word(const std::string& a, const std::string& t) {
  Word aw = Word::letter(a);
  Word tw = Word::letter(t);
  return commutator(aw, tw.inverse() * aw * tw);
}

const Substitution& phi_images() {
  static const Substitution images{{"a", Word::letter("a", 2)}, {"t", Word::letter("t")}};
  return images;
}

}  // namespace

Word phi_apply(const Word& w) {
  check_alphabet(w, Alphabet({"a", "t"}));
  return bs_reduce(2, 3, substitute(w, phi_images()));
}

MeierData build_meier() {
  MeierData m;
  m.B = bs23("a", "t");
  m.B.name = "B";
  m.Bbar = bs23("abar", "tbar");
  m.Bbar.name = "Bbar";
  m.f_t = Word::letter("t");
  m.f_c = c_word("a", "t");

  m.phi = make_morphism(m.B, m.B, phi_images());
  discharge_obligations(m.phi, [](const Word& w) { return bs_reduce(2, 3, w).empty(); });
  if (!m.phi.verified) throw InternalError("phi does not respect the BS(2,3) relator");
  // phi(F) = <t>: phi fixes t and kills c, while c itself is nontrivial.
  if (phi_apply(m.f_t) != m.f_t || !phi_apply(m.f_c).empty() || bs_reduce(2, 3, m.f_c).empty()) {
    throw InternalError("phi does not map F onto <t>");
  }

  ExprPtr b = atom("B", m.B);
  ExprPtr bbar = atom("Bbar", m.Bbar);
  ExprPtr amalgam = amalgamated_product(b, bbar,
                                        {{m.f_t, c_word("abar", "tbar")}, {m.f_c, Word::letter("tbar")}},
                                        {.amenable_edge = false, .double_coset_condition = true});
  auto t_node = std::make_shared<GroupExpr>(*amalgam);
  t_node->kind = ExprKind::MeierT;
  t_node->label = "T";
  t_node->realized->name = "T";
  m.T = *t_node->realized;
  m.t_expr = t_node;

  auto gamma = make_node(ExprKind::MeierGamma, "Gamma_Meier", {m.t_expr}, std::nullopt);
  m.gamma_expr = gamma;
  return m;
}

Word meier_eval(const Word& e, std::size_t index) {
  Substitution images{{"A", Word::letter("a")},
                      {"Abar", Word::letter("abar")},
                      {"Tt", Word::letter("t")},
                      {"D", Word::letter("a", BigInt(index))}};
  return substitute(e, images);
}

namespace {

struct SignedLetter {
  const char* symbol;
  int sign;
};

// Calls `visit` on each freely reduced word of exactly `length` letters, in
// lexicographic order of the letter list. Returns false if `visit` stopped.
bool for_each_reduced_word(const std::vector<SignedLetter>& letters, std::size_t length,
                           const std::function<bool(const Word&)>& visit) {
  std::vector<std::size_t> picks;
  std::function<bool()> rec = [&]() -> bool {
    if (picks.size() == length) {
      Word w;
      for (std::size_t i : picks) w *= Word::letter(letters[i].symbol, letters[i].sign);
      return visit(w);
    }
    for (std::size_t i = 0; i < letters.size(); ++i) {
      if (!picks.empty()) {
        const auto& prev = letters[picks.back()];
        if (std::string_view(prev.symbol) == letters[i].symbol && prev.sign == -letters[i].sign) continue;
      }
      picks.push_back(i);
      bool go_on = rec();
      picks.pop_back();
      if (!go_on) return false;
    }
    return true;
  };
  return rec();
}

}  // namespace

std::vector<ProbeCandidate> double_coset_probe(std::size_t max_len, std::size_t budget) {
  const Word c = c_word("a", "t");
  const Substitution f_images{{"T", Word::letter("t")}, {"C", c}};

  // Normal forms of F-words; the value is unused beyond membership.
  std::map<Word, Word> f_table;
  std::size_t table_budget = budget / 2;
  std::size_t steps = 0;
  bool table_complete = true;
  const std::vector<SignedLetter> f_letters{{"T", 1}, {"T", -1}, {"C", 1}, {"C", -1}};
  for (std::size_t len = 0; len <= max_len && table_complete; ++len) {
    table_complete = for_each_reduced_word(f_letters, len, [&](const Word& fw) {
      if (steps >= table_budget) return false;
      ++steps;
      f_table.emplace(bs_reduce(2, 3, substitute(fw, f_images)), fw);
      return true;
    });
  }

  std::vector<ProbeCandidate> out;
  const std::vector<SignedLetter> x_letters{{"a", 1}, {"a", -1}, {"t", 1}, {"t", -1}};
  for (std::size_t len = 1; len <= max_len; ++len) {
    bool go_on = for_each_reduced_word(x_letters, len, [&](const Word& x) {
      if (steps >= budget) {
        out.push_back({x, kExhausted});
        return false;
      }
      ++steps;
      if (!f_table.count(phi_apply(x))) return true;
      if (f_table.count(bs_reduce(2, 3, x))) return true;
      out.push_back({x, table_complete ? kConfirmedWitness : kUnknownMembership});
      return true;
    });
    if (!go_on) break;
  }
  return out;
}

}  // namespace gpforge
