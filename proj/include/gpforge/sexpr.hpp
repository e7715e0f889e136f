#pragma once

// Minimal S-expression reader used by the group-expression file format.
// Atoms are symbols (`mu`, `ascending?`), keywords (`:file`), double-quoted
// strings with `\"` and `\\` escapes, and integers. `;` starts a comment.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace gpforge {

struct Sexpr {
  enum class Kind { List, Symbol, Keyword, String, Integer };

  Kind kind = Kind::List;
  std::string text;  // symbol or keyword name (without ':'), string contents, integer digits
  std::vector<Sexpr> items;
  std::size_t line = 1;
  std::size_t column = 1;

  bool is_list() const { return kind == Kind::List; }
  bool is_symbol(std::string_view name) const { return kind == Kind::Symbol && text == name; }
  bool is_keyword() const { return kind == Kind::Keyword; }

  std::string to_string() const;
};

/// Parses a whole document into its top-level forms. Throws ParseError.
std::vector<Sexpr> parse_sexprs(std::string_view text);

/// Quotes a string for output, escaping `"` and `\`.
std::string quote_string(std::string_view s);

}  // namespace gpforge
