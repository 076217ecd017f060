#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <istream>
#include <iterator>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "gradarg/attack_graph.hpp"
#include "gradarg/errors.hpp"

namespace gradarg {

namespace detail {

class FrameworkLexer {
public:
  explicit FrameworkLexer(std::string_view text) : text_(text) {}

  void skip_blank() {
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '%') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  bool at_end() {
    skip_blank();
    return pos_ >= text_.size();
  }

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

  std::string identifier() {
    skip_blank();
    std::string out;
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) break;
      out.push_back(c);
      advance();
    }
    if (out.empty()) fail("expected identifier");
    return out;
  }

  void expect(char c) {
    skip_blank();
    if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
    advance();
  }

  [[noreturn]] void fail(const std::string& what) const {
    if (pos_ >= text_.size()) throw parse_error(what + " but reached end of input", line_, column_);
    throw parse_error(what + " near '" + std::string(1, text_[pos_]) + "'", line_, column_);
  }

private:
  void advance() {
    if (text_[pos_] == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    ++pos_;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

}  // namespace detail

/// Parses the `arg(x).` / `att(x,y).` format. Attacks may refer to
/// arguments declared later in the file; unresolved names are reported at
/// the position of the offending attack.
inline AttackGraph parse_framework(std::string_view text) {
  detail::FrameworkLexer lex(text);
  AttackGraph g;
  struct PendingAttack {
    std::string from, to;
    std::size_t line, column;
  };
  std::vector<PendingAttack> attacks;

  while (!lex.at_end()) {
    const std::size_t line = lex.line(), column = lex.column();
    const std::string keyword = lex.identifier();
    if (keyword == "arg") {
      lex.expect('(');
      g.add_argument(lex.identifier());
      lex.expect(')');
      lex.expect('.');
    } else if (keyword == "att") {
      lex.expect('(');
      std::string from = lex.identifier();
      lex.expect(',');
      std::string to = lex.identifier();
      lex.expect(')');
      lex.expect('.');
      attacks.push_back({std::move(from), std::move(to), line, column});
    } else {
      throw parse_error("unknown fact '" + keyword + "'", line, column);
    }
  }
  for (const auto& att : attacks) {
    for (const auto* name : {&att.from, &att.to}) {
      if (!g.find(*name)) throw parse_error("attack references undeclared argument '" + *name + "'", att.line, att.column);
    }
    g.add_attack(att.from, att.to);
  }
  return g;
}

inline AttackGraph parse_framework(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_framework(text);
}

/// Attacks sorted by (attacker name, target name).
inline std::vector<Attack> attacks_by_name(const AttackGraph& g) {
  auto list = g.attack_list();
  std::sort(list.begin(), list.end(), [&](const Attack& x, const Attack& y) {
    if (g.name(x.first) != g.name(y.first)) return g.name(x.first) < g.name(y.first);
    return g.name(x.second) < g.name(y.second);
  });
  return list;
}

/// Canonical text: arguments in declaration order, then attacks sorted by name.
inline std::string serialize_framework(const AttackGraph& g) {
  std::ostringstream out;
  for (const auto& name : g.names()) out << "arg(" << name << ").\n";
  for (auto [from, to] : attacks_by_name(g)) out << "att(" << g.name(from) << ',' << g.name(to) << ").\n";
  return out.str();
}

inline std::string export_dot(const AttackGraph& g, std::string_view graph_name = "af") {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n";
  for (const auto& name : g.names()) out << "  \"" << name << "\";\n";
  for (auto [from, to] : attacks_by_name(g)) out << "  \"" << g.name(from) << "\" -> \"" << g.name(to) << "\";\n";
  out << "}\n";
  return out.str();
}

}  // namespace gradarg
