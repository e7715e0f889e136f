#pragma once

// The group-expression file format (`.gx`): one S-expression describing a
// construction tree, e.g.
//
//     (mu (atom "G" :file "g.grp" :facts (fin-gen 1)) :k 2)
//
// Forms: atom, free-product, direct, amalgam, hnn, mitosis, mu, meier-T,
// meier-gamma, lambda-w, gamma-w, witness-w, pi-w, delta-w. Words are
// strings in the word syntax. `:file` paths are relative to the directory of
// the expression file. An atom may carry its presentation inline with
// `:pres "gens a b\nrel ..."`. The witness forms accept `:oracle` with
// `free` or `bs:m,n`; without it the oracle is inferred from the source.

#include <filesystem>
#include <string>
#include <string_view>

#include "gpforge/combinators.hpp"
#include "gpforge/sexpr.hpp"

namespace gpforge {

/// Evaluates a single top-level form. Throws ParseError for malformed forms
/// and InputError subclasses for semantic problems.
ExprPtr evaluate_expr(const Sexpr& form, const std::filesystem::path& base_dir = {});

/// Parses and evaluates a document holding exactly one form.
ExprPtr parse_expr(std::string_view text, const std::filesystem::path& base_dir = {});

ExprPtr load_expr_file(const std::filesystem::path& path);

/// `(atom "name" :pres "...")` with the presentation inlined, so the form is
/// self-contained.
std::string inline_atom_form(const std::string& name, const Presentation& p, std::string_view facts = {});

}  // namespace gpforge
