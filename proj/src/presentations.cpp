#include "gpforge/presentations.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gpforge/errors.hpp"

namespace gpforge {

Presentation Presentation::free(std::vector<std::string> generators) {
  return Presentation(Alphabet(std::move(generators)), {});
}

namespace {

bool is_ws(char c) { return c == ' ' || c == '\t'; }

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && (is_ws(s.back()) || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Reparses a word that lives at `column` (1-based) of `line`, rewriting
// parse error positions to file coordinates.
Word parse_word_at(std::string_view text, std::size_t line, std::size_t column) {
  try {
    return parse_word(text);
  } catch (const ParseError& e) {
    std::string msg = e.what();
    auto colon = msg.find(": ");
    throw ParseError(colon == std::string::npos ? msg : msg.substr(colon + 2), line,
                     column + e.column() - 1);
  }
}

}  // namespace

Presentation parse_presentation(std::string_view text) {
  Presentation p;
  bool seen_gens = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = trim_right(text.substr(pos, eol - pos));
    pos = eol + 1;
    ++line_no;

    std::size_t start = 0;
    while (start < line.size() && is_ws(line[start])) ++start;
    std::string_view body = line.substr(start);
    if (body.empty() || body.front() == '#') continue;

    std::size_t kw_end = 0;
    while (kw_end < body.size() && !is_ws(body[kw_end])) ++kw_end;
    std::string_view keyword = body.substr(0, kw_end);

    if (keyword == "gens") {
      if (seen_gens) throw ParseError("second 'gens' line", line_no, start + 1);
      seen_gens = true;
      std::size_t i = kw_end;
      while (i < body.size()) {
        while (i < body.size() && is_ws(body[i])) ++i;
        if (i >= body.size()) break;
        std::size_t j = i;
        while (j < body.size() && !is_ws(body[j])) ++j;
        std::string name(body.substr(i, j - i));
        std::size_t column = start + i + 1;
        if (!is_identifier(name)) throw ParseError("invalid generator name '" + name + "'", line_no, column);
        if (p.alphabet.contains(name)) throw ParseError("duplicate generator '" + name + "'", line_no, column);
        p.alphabet.add(std::move(name));
        i = j;
      }
    } else if (keyword == "rel") {
      if (kw_end >= body.size()) throw ParseError("'rel' needs a word", line_no, start + kw_end + 1);
      std::string_view rest = body.substr(kw_end);
      std::size_t rest_col = start + kw_end + 1;
      std::size_t eq = rest.find('=');
      Word relator;
      if (eq == std::string_view::npos) {
        relator = parse_word_at(rest, line_no, rest_col);
      } else {
        if (rest.find('=', eq + 1) != std::string_view::npos) {
          throw ParseError("more than one '='", line_no, rest_col + rest.find('=', eq + 1));
        }
        if (eq == 0 || !is_ws(rest[eq - 1]) || eq + 1 >= rest.size() || !is_ws(rest[eq + 1])) {
          throw ParseError("'=' must be surrounded by whitespace", line_no, rest_col + eq);
        }
        Word lhs = parse_word_at(rest.substr(0, eq), line_no, rest_col);
        Word rhs = parse_word_at(rest.substr(eq + 1), line_no, rest_col + eq + 1);
        relator = lhs * rhs.inverse();
      }
      for (const auto& l : relator.letters()) {
        if (!p.alphabet.contains(l.symbol)) {
          throw ParseError("undeclared generator '" + l.symbol + "'", line_no, start + 1);
        }
      }
      p.relators.push_back(std::move(relator));
    } else {
      throw ParseError("expected 'gens', 'rel' or a comment", line_no, start + 1);
    }
  }
  return p;
}

std::string serialize(const Presentation& p) {
  std::ostringstream out;
  out << "gens";
  for (const auto& s : p.alphabet.symbols()) out << ' ' << s;
  out << '\n';
  for (const auto& r : p.relators) out << "rel " << format_word(r) << '\n';
  return out.str();
}

std::vector<std::string> validate(const Presentation& p) {
  std::vector<std::string> problems;
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    const Word& r = p.relators[i];
    std::set<std::string> reported;
    for (const auto& l : r.letters()) {
      if (!p.alphabet.contains(l.symbol) && reported.insert(l.symbol).second) {
        problems.push_back("relator " + std::to_string(i + 1) + " uses undeclared generator '" + l.symbol + "'");
      }
    }
    if (!r.is_reduced()) {
      problems.push_back("relator " + std::to_string(i + 1) + " is not freely reduced (normal form: " +
                         format_word(free_reduce(r)) + ")");
    }
  }
  return problems;
}

Word substitute_generator(const Word& w, const std::string& symbol, const Word& image) {
  if (!w.contains(symbol)) return w;
  Word out;
  for (const auto& l : w.letters()) {
    if (l.symbol == symbol) {
      out *= image.pow(l.exponent);
    } else {
      out *= Word::letter(l.symbol, l.exponent);
    }
  }
  return out;
}

std::optional<Word> solve_for_generator(const Word& r, const std::string& x) {
  if (r.occurrences(x) != 1) return std::nullopt;
  const auto& runs = r.letters();
  std::size_t j = 0;
  while (runs[j].symbol != x) ++j;
  std::vector<Letter> rest(runs.begin() + static_cast<std::ptrdiff_t>(j) + 1, runs.end());
  rest.insert(rest.end(), runs.begin(), runs.begin() + static_cast<std::ptrdiff_t>(j));
  Word tail = free_reduce(Word::from_letters(std::move(rest)));
  // r is a rotation of x^e * tail.
  return runs[j].exponent > 0 ? tail.inverse() : tail;
}

TietzeResult tietze_simplify_traced(const Presentation& p, std::size_t budget) {
  TietzeResult result;
  std::vector<std::string> gens = p.alphabet.symbols();
  std::vector<Word> rels;
  rels.reserve(p.relators.size());
  for (const auto& r : p.relators) rels.push_back(cyclically_reduce(r).core);

  std::size_t steps = 0;
  while (steps < budget) {
    auto empty = std::find_if(rels.begin(), rels.end(), [](const Word& r) { return r.empty(); });
    if (empty != rels.end()) {
      result.trace.push_back({TietzeStep::Kind::DeleteRelator, {}, {}, {}});
      rels.erase(empty);
      ++steps;
      continue;
    }

    std::set<Word> seen;
    auto dup = rels.end();
    for (auto it = rels.begin(); it != rels.end(); ++it) {
      if (!seen.insert(canonical_cyclic_form(*it)).second) {
        dup = it;
        break;
      }
    }
    if (dup != rels.end()) {
      result.trace.push_back({TietzeStep::Kind::DeleteRelator, {}, {}, *dup});
      rels.erase(dup);
      ++steps;
      continue;
    }

    bool eliminated = false;
    for (std::size_t gi = gens.size(); gi-- > 0 && !eliminated;) {
      const std::string x = gens[gi];
      for (std::size_t ri = 0; ri < rels.size(); ++ri) {
        auto solution = solve_for_generator(rels[ri], x);
        if (!solution) continue;
        result.trace.push_back({TietzeStep::Kind::Eliminate, x, *solution, rels[ri]});
        rels.erase(rels.begin() + static_cast<std::ptrdiff_t>(ri));
        for (auto& r : rels) r = cyclically_reduce(substitute_generator(r, x, *solution)).core;
        gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(gi));
        eliminated = true;
        break;
      }
    }
    if (!eliminated) {
      result.reached_fixpoint = true;
      break;
    }
    ++steps;
  }

  result.presentation = Presentation(Alphabet(std::move(gens)), std::move(rels), p.name);
  return result;
}

Presentation tietze_simplify(const Presentation& p, std::size_t budget) {
  return tietze_simplify_traced(p, budget).presentation;
}

PresentationMorphism make_morphism(Presentation source, Presentation target, Substitution images) {
  for (const auto& g : source.alphabet.symbols()) {
    auto it = images.find(g);
    if (it == images.end()) throw PartialMapError("no image for generator '" + g + "'");
    check_alphabet(it->second, target.alphabet);
    it->second = free_reduce(it->second);
  }
  for (const auto& [symbol, image] : images) {
    if (!source.alphabet.contains(symbol)) {
      throw AlphabetMismatch("image given for '" + symbol + "', which is not a source generator");
    }
  }
  PresentationMorphism m{std::move(source), std::move(target), std::move(images), false, {}};
  for (std::size_t i = 0; i < m.source.relators.size(); ++i) m.pending_relators.push_back(i);
  m.verified = m.pending_relators.empty();
  return m;
}

void discharge_obligations(PresentationMorphism& m, const std::function<bool(const Word&)>& is_trivial) {
  std::vector<std::size_t> still_pending;
  for (std::size_t i : m.pending_relators) {
    Word image = m.apply(m.source.relators[i]);
    bool done = image.empty() || (is_trivial && is_trivial(image));
    if (!done) still_pending.push_back(i);
  }
  m.pending_relators = std::move(still_pending);
  m.verified = m.pending_relators.empty();
}

StagedPresentation::StagedPresentation(Builder builder, std::size_t first_stage)
    : builder_(std::move(builder)), first_stage_(first_stage), cache_(std::make_shared<Cache>()) {}

const Presentation& StagedPresentation::stage(std::size_t k) const {
  if (k < first_stage_) throw DomainError("stage " + std::to_string(k) + " precedes the first stage");
  std::lock_guard lock(cache_->mutex);
  auto& slot = cache_->stages[k];
  if (!slot) slot = std::make_unique<Presentation>(builder_(k));
  return *slot;
}

bool StagedPresentation::monotone_at(std::size_t k) const {
  const Presentation& lower = stage(k);
  const Presentation& upper = stage(k + 1);
  for (const auto& g : lower.alphabet.symbols()) {
    if (!upper.alphabet.contains(g)) return false;
  }
  std::set<Word> upper_rels(upper.relators.begin(), upper.relators.end());
  return std::all_of(lower.relators.begin(), lower.relators.end(),
                     [&](const Word& r) { return upper_rels.count(r) > 0; });
}

}  // namespace gpforge
