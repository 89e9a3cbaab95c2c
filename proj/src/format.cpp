#include "wbag/format.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_map>

namespace wbag {

ParseError::ParseError(std::size_t line, std::size_t column, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column),
      detail_(message) {}

namespace {

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

struct Token {
  std::string_view text;
  Position pos;
};

struct PendingEdge {
  bool attack;
  Token source;
  Token target;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  Bag run() {
    skip_blank();
    while (!at_end()) {
      statement();
      skip_blank();
    }
    return finish();
  }

 private:
  bool at_end() const { return offset_ >= text_.size(); }
  char peek() const { return text_[offset_]; }
  bool comment_ahead() const {
    return offset_ + 1 < text_.size() && text_[offset_] == '/' && text_[offset_ + 1] == '/';
  }

  void advance() {
    if (text_[offset_] == '\n') {
      ++pos_.line;
      pos_.column = 1;
    } else {
      ++pos_.column;
    }
    ++offset_;
  }

  void skip_blank() {
    while (!at_end()) {
      if (std::isspace(static_cast<unsigned char>(peek()))) {
        advance();
      } else if (comment_ahead()) {
        while (!at_end() && peek() != '\n') advance();
      } else {
        break;
      }
    }
  }

  [[noreturn]] void fail(Position at, const std::string& message) const {
    throw ParseError(at.line, at.column, message);
  }

  void expect(char c) {
    skip_blank();
    if (at_end()) fail(pos_, std::string("expected '") + c + "' before end of input");
    if (peek() != c) fail(pos_, std::string("expected '") + c + "', found '" + peek() + "'");
    advance();
  }

  Token keyword() {
    Token tok{{}, pos_};
    const std::size_t start = offset_;
    while (!at_end() && std::isalpha(static_cast<unsigned char>(peek()))) advance();
    tok.text = text_.substr(start, offset_ - start);
    if (tok.text.empty()) fail(tok.pos, std::string("unexpected character '") + peek() + "'");
    return tok;
  }

  // Maximal run of characters that may appear in a name or number.
  Token word() {
    skip_blank();
    Token tok{{}, pos_};
    const std::size_t start = offset_;
    while (!at_end()) {
      const char c = peek();
      if (std::isspace(static_cast<unsigned char>(c)) || c == ',' || c == '(' || c == ')' ||
          comment_ahead()) {
        break;
      }
      advance();
    }
    tok.text = text_.substr(start, offset_ - start);
    if (tok.text.empty()) {
      if (at_end()) fail(tok.pos, "expected a name before end of input");
      fail(tok.pos, std::string("expected a name, found '") + peek() + "'");
    }
    return tok;
  }

  double weight(const Token& tok) const {
    double value = 0.0;
    const char* first = tok.text.data();
    const char* last = first + tok.text.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
      fail(tok.pos, "invalid weight '" + std::string(tok.text) + "'");
    }
    if (value < 0.0 || value > 1.0) {
      fail(tok.pos, "weight " + std::string(tok.text) + " outside [0,1]");
    }
    return value;
  }

  void statement() {
    const Token kw = keyword();
    const bool is_arg = kw.text == "arg";
    const bool is_att = kw.text == "att";
    const bool is_sup = kw.text == "sup";
    if (!is_arg && !is_att && !is_sup) {
      fail(kw.pos, "unknown keyword '" + std::string(kw.text) + "'");
    }
    expect('(');
    const Token first = word();
    if (is_arg) {
      double w = 0.5;
      skip_blank();
      if (!at_end() && peek() == ',') {
        advance();
        w = weight(word());
      }
      expect(')');
      declare(first, w);
    } else {
      expect(',');
      const Token second = word();
      expect(')');
      edges_.push_back({is_att, first, second});
    }
    skip_blank();
    if (!at_end() && peek() == '.') advance();
  }

  void declare(const Token& name, double w) {
    if (!is_valid_name(name.text)) {
      fail(name.pos, "invalid argument name '" + std::string(name.text) + "'");
    }
    auto [it, inserted] =
        ids_.emplace(std::string(name.text), static_cast<ArgId>(arguments_.size()));
    if (!inserted) fail(name.pos, "duplicate argument '" + std::string(name.text) + "'");
    arguments_.push_back({std::string(name.text), w});
  }

  ArgId resolve(const Token& name) const {
    auto it = ids_.find(std::string(name.text));
    if (it == ids_.end()) {
      fail(name.pos, "undeclared argument '" + std::string(name.text) + "'");
    }
    return it->second;
  }

  Bag finish() {
    std::vector<Edge> attacks;
    std::vector<Edge> supports;
    std::vector<std::pair<Edge, Position>> seen_att;
    std::vector<std::pair<Edge, Position>> seen_sup;
    for (const PendingEdge& pe : edges_) {
      const Edge e{resolve(pe.source), resolve(pe.target)};
      (pe.attack ? seen_att : seen_sup).push_back({e, pe.source.pos});
      (pe.attack ? attacks : supports).push_back(e);
    }
    for (auto* seen : {&seen_att, &seen_sup}) {
      std::stable_sort(seen->begin(), seen->end(),
                       [](const auto& x, const auto& y) { return x.first < y.first; });
      for (std::size_t i = 1; i < seen->size(); ++i) {
        if ((*seen)[i].first == (*seen)[i - 1].first) {
          const Edge& e = (*seen)[i].first;
          fail((*seen)[i].second, std::string("duplicate ") +
                                      (seen == &seen_att ? "attack " : "support ") +
                                      arguments_[e.source].name + " -> " +
                                      arguments_[e.target].name);
        }
      }
    }
    return Bag(std::move(arguments_), std::move(attacks), std::move(supports));
  }

  std::string_view text_;
  std::size_t offset_ = 0;
  Position pos_;
  std::vector<Argument> arguments_;
  std::unordered_map<std::string, ArgId> ids_;
  std::vector<PendingEdge> edges_;
};

std::string format_weight(double w) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", w);
  return buf;
}

}  // namespace

Bag parse_bag(std::string_view text) { return Parser(text).run(); }

Bag parse_bag(std::istream& in) {
  std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return parse_bag(std::string_view(text));
}

Bag read_bag_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return parse_bag(in);
}

std::string serialize_bag(const Bag& bag) {
  std::string out;
  for (const Argument& a : bag.arguments()) {
    out += "arg(" + a.name + "," + format_weight(a.weight) + ").\n";
  }
  for (const Edge& e : bag.attacks()) {
    out += "att(" + bag.name(e.source) + "," + bag.name(e.target) + ").\n";
  }
  for (const Edge& e : bag.supports()) {
    out += "sup(" + bag.name(e.source) + "," + bag.name(e.target) + ").\n";
  }
  return out;
}

void write_bag_file(const std::filesystem::path& path, const Bag& bag,
                    std::string_view header_comment) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (!header_comment.empty()) out << "// " << header_comment << '\n';
  out << serialize_bag(bag);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace wbag
