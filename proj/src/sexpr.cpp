#include "gpforge/sexpr.hpp"

#include <cctype>

#include "gpforge/errors.hpp"

namespace gpforge {

namespace {

class Reader {
 public:
  explicit Reader(std::string_view text) : text_(text) {}

  std::vector<Sexpr> read_all() {
    std::vector<Sexpr> out;
    skip_space();
    while (pos_ < text_.size()) {
      out.push_back(read());
      skip_space();
    }
    return out;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;

  char peek() const { return text_[pos_]; }

  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }

  void skip_space() {
    while (pos_ < text_.size()) {
      char c = peek();
      if (c == ';') {
        while (pos_ < text_.size() && peek() != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  static bool is_delimiter(char c) {
    return std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '"' || c == ';';
  }

  Sexpr read() {
    Sexpr e;
    e.line = line_;
    e.column = col_;
    char c = peek();
    if (c == '(') {
      advance();
      e.kind = Sexpr::Kind::List;
      skip_space();
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated list", e.line, e.column);
        if (peek() == ')') {
          advance();
          break;
        }
        e.items.push_back(read());
        skip_space();
      }
      return e;
    }
    if (c == ')') throw ParseError("unexpected ')'", line_, col_);
    if (c == '"') {
      advance();
      e.kind = Sexpr::Kind::String;
      while (true) {
        if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
        char d = advance();
        if (d == '"') break;
        if (d == '\\') {
          if (pos_ >= text_.size()) throw ParseError("unterminated string", e.line, e.column);
          char esc = advance();
          if (esc == 'n') {
            e.text += '\n';
          } else if (esc == '"' || esc == '\\') {
            e.text += esc;
          } else {
            throw ParseError(std::string("unknown escape \\") + esc, line_, col_ - 1);
          }
          continue;
        }
        e.text += d;
      }
      return e;
    }
    std::string token;
    while (pos_ < text_.size() && !is_delimiter(peek())) token += advance();
    if (token.front() == ':') {
      if (token.size() == 1) throw ParseError("empty keyword", e.line, e.column);
      e.kind = Sexpr::Kind::Keyword;
      e.text = token.substr(1);
      return e;
    }
    std::size_t digits_from = (token[0] == '-' || token[0] == '+') ? 1 : 0;
    bool numeric = token.size() > digits_from;
    for (std::size_t i = digits_from; i < token.size() && numeric; ++i) {
      numeric = std::isdigit(static_cast<unsigned char>(token[i])) != 0;
    }
    e.kind = numeric ? Sexpr::Kind::Integer : Sexpr::Kind::Symbol;
    e.text = token;
    return e;
  }
};

}  // namespace

std::vector<Sexpr> parse_sexprs(std::string_view text) { return Reader(text).read_all(); }

std::string quote_string(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out += c;
  }
  out += '"';
  return out;
}

std::string Sexpr::to_string() const {
  switch (kind) {
    case Kind::Symbol:
    case Kind::Integer: return text;
    case Kind::Keyword: return ":" + text;
    case Kind::String: return quote_string(text);
    case Kind::List: {
      std::string out = "(";
      for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ' ';
        out += items[i].to_string();
      }
      return out + ")";
    }
  }
  return {};
}

}  // namespace gpforge
