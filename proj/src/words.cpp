#include "gpforge/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "gpforge/errors.hpp"

namespace gpforge {

bool is_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

Alphabet::Alphabet(std::vector<std::string> symbols) {
  for (auto& s : symbols) add(std::move(s));
}

bool Alphabet::contains(std::string_view symbol) const { return index_.find(symbol) != index_.end(); }

std::optional<std::size_t> Alphabet::index_of(std::string_view symbol) const {
  auto it = index_.find(symbol);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

void Alphabet::add(std::string symbol) {
  if (!is_identifier(symbol)) throw InputError("invalid generator name '" + symbol + "'");
  if (contains(symbol)) throw InputError("duplicate generator '" + symbol + "'");
  index_.emplace(symbol, symbols_.size());
  symbols_.push_back(std::move(symbol));
}

std::string fresh_name(const std::string& base, const Alphabet& taken) {
  if (!taken.contains(base)) return base;
  for (std::size_t i = 2;; ++i) {
    std::string candidate = base + "_" + std::to_string(i);
    if (!taken.contains(candidate)) return candidate;
  }
}

Word Word::letter(std::string symbol, BigInt exponent) {
  Word w;
  if (exponent != 0) w.letters_.push_back({std::move(symbol), std::move(exponent)});
  return w;
}

Word Word::from_letters(std::vector<Letter> letters) {
  for (const auto& l : letters) {
    if (l.exponent == 0) throw InputError("zero exponent on '" + l.symbol + "'");
  }
  Word w;
  w.letters_ = std::move(letters);
  return w;
}

Word Word::from_symbols(const std::vector<SignedSymbol>& symbols) {
  Word w;
  for (const auto& s : symbols) w *= Word::letter(s.symbol, s.sign);
  return w;
}

BigInt Word::length() const {
  BigInt total = 0;
  for (const auto& l : letters_) total += abs(l.exponent);
  return total;
}

bool Word::is_reduced() const {
  for (std::size_t i = 0; i < letters_.size(); ++i) {
    if (letters_[i].exponent == 0) return false;
    if (i > 0 && letters_[i].symbol == letters_[i - 1].symbol) return false;
  }
  return true;
}

Word Word::inverse() const {
  Word w;
  w.letters_.reserve(letters_.size());
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) {
    w.letters_.push_back({it->symbol, -it->exponent});
  }
  return w;
}

Word Word::pow(const BigInt& exponent) const {
  Word base = free_reduce(*this);
  if (exponent == 0 || base.empty()) return {};
  if (exponent < 0) return base.inverse().pow(-exponent);
  if (base.runs() == 1) return Word::letter(base.letters_[0].symbol, base.letters_[0].exponent * exponent);
  auto [core, conj] = cyclically_reduce(base);
  if (exponent > BigInt(10'000'000)) throw DomainError("word power too large to expand");
  Word power;
  if (core.runs() == 1) {
    power = Word::letter(core.letters_[0].symbol, core.letters_[0].exponent * exponent);
  } else {
    // A cyclically reduced core has distinct first and last symbols, so its
    // powers are reduced by plain concatenation.
    std::size_t n = static_cast<std::size_t>(exponent);
    power.letters_.reserve(core.runs() * n);
    for (std::size_t i = 0; i < n; ++i) {
      power.letters_.insert(power.letters_.end(), core.letters_.begin(), core.letters_.end());
    }
  }
  return conj * power * conj.inverse();
}

BigInt Word::exponent_sum(std::string_view symbol) const {
  BigInt total = 0;
  for (const auto& l : letters_) {
    if (l.symbol == symbol) total += l.exponent;
  }
  return total;
}

BigInt Word::occurrences(std::string_view symbol) const {
  BigInt total = 0;
  for (const auto& l : letters_) {
    if (l.symbol == symbol) total += abs(l.exponent);
  }
  return total;
}

bool Word::contains(std::string_view symbol) const {
  return std::any_of(letters_.begin(), letters_.end(),
                     [&](const Letter& l) { return l.symbol == symbol; });
}

std::vector<SignedSymbol> Word::expand(std::size_t limit) const {
  if (length() > limit) throw DomainError("word too long to expand letter by letter");
  std::vector<SignedSymbol> out;
  for (const auto& l : letters_) {
    int sign = l.exponent > 0 ? 1 : -1;
    auto count = static_cast<std::size_t>(abs(l.exponent));
    for (std::size_t i = 0; i < count; ++i) out.push_back({l.symbol, sign});
  }
  return out;
}

namespace {

void push_reduced(std::vector<Letter>& stack, const Letter& l) {
  if (l.exponent == 0) return;
  if (!stack.empty() && stack.back().symbol == l.symbol) {
    stack.back().exponent += l.exponent;
    if (stack.back().exponent == 0) stack.pop_back();
  } else {
    stack.push_back(l);
  }
}

}  // namespace

Word operator*(const Word& a, const Word& b) {
  Word out = free_reduce(a);
  for (const auto& l : b.letters_) push_reduced(out.letters_, l);
  return out;
}

Word& Word::operator*=(const Word& other) {
  *this = *this * other;
  return *this;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.letters_.size() <=> b.letters_.size(); c != 0) return c;
  for (std::size_t i = 0; i < a.letters_.size(); ++i) {
    if (auto c = a.letters_[i].symbol <=> b.letters_[i].symbol; c != 0) return c;
    const auto& x = a.letters_[i].exponent;
    const auto& y = b.letters_[i].exponent;
    if (x < y) return std::strong_ordering::less;
    if (y < x) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

Word free_reduce(const Word& w) {
  std::vector<Letter> stack;
  stack.reserve(w.runs());
  for (const auto& l : w.letters()) push_reduced(stack, l);
  return Word::from_letters(std::move(stack));
}

void check_alphabet(const Word& w, const Alphabet& alphabet) {
  for (const auto& l : w.letters()) {
    if (!alphabet.contains(l.symbol)) {
      throw AlphabetMismatch("symbol '" + l.symbol + "' is not in the alphabet");
    }
  }
}

Word free_reduce(const Word& w, const Alphabet& alphabet) {
  check_alphabet(w, alphabet);
  return free_reduce(w);
}

CyclicReduction cyclically_reduce(const Word& w) {
  std::vector<Letter> core = free_reduce(w).letters();
  std::vector<Letter> conj;
  std::size_t lo = 0;
  std::size_t hi = core.size();  // core is [lo, hi)
  while (hi - lo >= 2 && core[lo].symbol == core[hi - 1].symbol) {
    // x^p m x^q = x^p (m x^(p+q)) x^-p
    const Letter first = core[lo];
    BigInt merged = first.exponent + core[hi - 1].exponent;
    conj.push_back(first);
    ++lo;
    if (merged == 0) {
      --hi;
    } else {
      core[hi - 1].exponent = merged;
      break;
    }
  }
  std::vector<Letter> rest(core.begin() + static_cast<std::ptrdiff_t>(lo),
                           core.begin() + static_cast<std::ptrdiff_t>(hi));
  return {free_reduce(Word::from_letters(std::move(rest))), free_reduce(Word::from_letters(std::move(conj)))};
}

Word substitute(const Word& w, const Substitution& images) {
  Word out;
  for (const auto& l : w.letters()) {
    auto it = images.find(l.symbol);
    if (it == images.end()) throw PartialMapError("no image for symbol '" + l.symbol + "'");
    out *= it->second.pow(l.exponent);
  }
  return out;
}

Word commutator(const Word& x, const Word& y) { return x.inverse() * y.inverse() * x * y; }

namespace {

class WordParser {
 public:
  explicit WordParser(std::string_view text) : text_(text) {}

  Word parse() {
    skip_ws();
    if (at_end()) fail("empty word (use '1' for the identity)");
    if (peek() == '1') {
      ++pos_;
      skip_ws();
      if (!at_end()) fail("'1' must stand alone");
      return {};
    }
    std::vector<Letter> letters;
    while (!at_end()) {
      std::string name = ident();
      BigInt exponent = 1;
      if (!at_end() && peek() == '^') {
        ++pos_;
        exponent = integer();
      }
      letters.push_back({std::move(name), std::move(exponent)});
      if (!at_end() && !is_ws(peek())) fail("expected whitespace between atoms");
      skip_ws();
    }
    return free_reduce(Word::from_letters(std::move(letters)));
  }

 private:
  static bool is_ws(char c) { return c == ' ' || c == '\t'; }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }
  void skip_ws() {
    while (!at_end() && is_ws(peek())) ++pos_;
  }
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(message, 1, pos_ + 1); }

  std::string ident() {
    std::size_t start = pos_;
    if (at_end() || !std::isalpha(static_cast<unsigned char>(peek()))) fail("expected generator name");
    while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  BigInt integer() {
    std::size_t start = pos_;
    if (!at_end() && peek() == '-') ++pos_;
    if (at_end() || peek() < '1' || peek() > '9') fail("expected nonzero integer exponent");
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    return BigInt(std::string(text_.substr(start, pos_ - start)));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text) { return WordParser(text).parse(); }

std::string format_word(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first) out << ' ';
    first = false;
    out << l.symbol;
    if (l.exponent != 1) out << '^' << l.exponent;
  }
  return out.str();
}

Word canonical_cyclic_form(const Word& w) {
  // The runs of a cyclically reduced word are well defined cyclically, so
  // rotating at run boundaries enumerates the whole rotation class.
  Word core = cyclically_reduce(w).core;
  if (core.empty()) return core;
  std::optional<Word> best;
  for (const Word& candidate : {core, core.inverse()}) {
    const auto& runs = candidate.letters();
    for (std::size_t r = 0; r < runs.size(); ++r) {
      std::vector<Letter> rotated(runs.begin() + static_cast<std::ptrdiff_t>(r), runs.end());
      rotated.insert(rotated.end(), runs.begin(), runs.begin() + static_cast<std::ptrdiff_t>(r));
      Word rot = Word::from_letters(std::move(rotated));
      if (!best || rot < *best) best = std::move(rot);
    }
  }
  return *best;
}

}  // namespace gpforge
