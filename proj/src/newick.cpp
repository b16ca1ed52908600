#include "mixdist/newick.hpp"

#include <algorithm>

namespace mixdist {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_name_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || is_digit(c) || c == '_' || c == '.' || c == '|' ||
         c == '-';
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::vector<RawNode> run() {
    skip_space();
    if (at_end()) throw Error(ErrorCode::EmptyInput, "no tree in input");

    while (true) {
      parse_subtree_start();
      if (close_groups()) break;
    }

    skip_space();
    expect(';');
    skip_space();
    if (!at_end()) fail("end of input after ';'");
    return std::move(records_);
  }

 private:
  // Consumes either "(" (opening a group) repeatedly, then one leaf name.
  void parse_subtree_start() {
    while (true) {
      skip_space();
      if (at_end()) fail("'(' or leaf name");
      if (peek() == '(') {
        const std::size_t id = add_record();
        open_.push_back(id);
        ++pos_;
        continue;
      }
      if (!is_name_char(peek())) fail("'(' or leaf name");
      const std::size_t start = pos_;
      while (!at_end() && is_name_char(peek())) ++pos_;
      const std::size_t id = add_record();
      records_[id].label = std::string(text_.substr(start, pos_ - start));
      return;
    }
  }

  // After a complete subtree: consume "," to start a sibling (returns false) or
  // ")" time to close groups. Returns true once the outermost group closed.
  bool close_groups() {
    while (!open_.empty()) {
      skip_space();
      auto& top = records_[open_.back()];
      if (!top.right) {
        expect(',');
        return false;
      }
      expect(')');
      top.time = parse_time_token();
      open_.pop_back();
    }
    return true;
  }

  TimeTicks parse_time_token() {
    skip_space();
    if (at_end() || (!is_digit(peek()) && peek() != '-')) {
      throw Error(ErrorCode::MissingTime, "internal node needs a mutation time", clamp(pos_));
    }
    if (peek() == '-') throw Error(ErrorCode::NegativeTime, "mutation times must be nonnegative", pos_);
    const std::size_t start = pos_;
    while (!at_end() && (is_digit(peek()) || peek() == '.')) ++pos_;
    try {
      return parse_time(text_.substr(start, pos_ - start));
    } catch (const Error& e) {
      throw Error(e.code(), "invalid time '" + std::string(text_.substr(start, pos_ - start)) + "'",
                  clamp(start + e.offset().value_or(0)));
    }
  }

  std::size_t add_record() {
    const std::size_t id = records_.size();
    records_.emplace_back();
    if (!open_.empty()) {
      auto& parent = records_[open_.back()];
      if (!parent.left) {
        parent.left = id;
      } else {
        parent.right = id;
      }
    }
    return id;
  }

  void expect(char c) {
    if (at_end() || peek() != c) fail(std::string("'") + c + "'");
    ++pos_;
  }

  [[noreturn]] void fail(const std::string& expected) const {
    std::string found = at_end() ? "end of input" : std::string("'") + peek() + "'";
    throw Error(ErrorCode::SyntaxError, "expected " + expected + ", found " + found, clamp(pos_));
  }

  std::size_t clamp(std::size_t offset) const { return std::min(offset, text_.size() - 1); }
  void skip_space() {
    while (!at_end() && is_space(peek())) ++pos_;
  }
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return text_[pos_]; }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::vector<RawNode> records_;
  std::vector<std::size_t> open_;
};

}  // namespace

std::vector<RawNode> parse_newick_records(std::string_view text) { return Parser(text).run(); }

MixtureTree parse_newick(std::string_view text, Strictness strictness) {
  const auto records = parse_newick_records(text);
  return build_tree(records, strictness);
}

std::string write_newick(const MixtureTree& tree) {
  std::string out;
  out.reserve(tree.node_count() * 6);
  // stage 0: open, 1: between children, 2: close
  std::vector<std::pair<NodeId, int>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto& [id, stage] = stack.back();
    const auto& rec = tree.node(id);
    if (rec.is_leaf()) {
      out += *rec.label;
      stack.pop_back();
      continue;
    }
    if (stage == 0) {
      out += '(';
      stage = 1;
      stack.emplace_back(*rec.left, 0);
    } else if (stage == 1) {
      out += ',';
      stage = 2;
      stack.emplace_back(*rec.right, 0);
    } else {
      out += ')';
      out += format_time(*rec.time);
      stack.pop_back();
    }
  }
  out += ';';
  return out;
}

std::vector<TreeLine> split_tree_lines(std::string_view contents) {
  std::vector<TreeLine> lines;
  std::size_t number = 0;
  while (!contents.empty()) {
    ++number;
    const auto end = contents.find('\n');
    auto line = contents.substr(0, end);
    contents = end == std::string_view::npos ? std::string_view{} : contents.substr(end + 1);
    if (std::all_of(line.begin(), line.end(), is_space)) continue;
    lines.push_back({number, std::string(line)});
  }
  return lines;
}

}  // namespace mixdist
