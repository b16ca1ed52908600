#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "mixdist/tree.hpp"

namespace mixdist {

// Dialect:
//   tree    := subtree ";"
//   subtree := leaf | "(" subtree "," subtree ")" time
//   leaf    := [A-Za-z0-9_.|-]+
//   time    := digits ["." 1-6 digits]
// Whitespace may separate tokens. The time of an internal node sits in the
// label position, e.g. "((A,B)1.5,C)3;".

/// Syntax-level parse without tree validation. Errors carry byte offsets that
/// lie inside `text`.
std::vector<RawNode> parse_newick_records(std::string_view text);

MixtureTree parse_newick(std::string_view text, Strictness strictness = Strictness::strict);

/// Canonical form: no whitespace, shortest decimal times, stored child order.
std::string write_newick(const MixtureTree& tree);

struct TreeLine {
  std::size_t line_number;  // 1-based
  std::string text;
};

/// One tree per line; blank lines are skipped.
std::vector<TreeLine> split_tree_lines(std::string_view contents);

}  // namespace mixdist
