#include "omega/sexpr.hpp"

#include <cctype>

#include "omega/natural.hpp"

namespace omega {

std::string_view SExpr::head() const {
  if (!isList || items.empty() || items.front().isList) return {};
  return items.front().atom;
}

std::string SExpr::str() const {
  if (!isList) return atom;
  std::string out = "(";
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ' ';
    out += items[i].str();
  }
  return out + ")";
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view t) : text_(t) {}

  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  bool done() {
    skip();
    return pos_ >= text_.size();
  }

  SExpr parse() {
    skip();
    if (pos_ >= text_.size()) throw MalformedCode("unexpected end of input");
    char c = text_[pos_];
    if (c == ')') throw MalformedCode("unexpected ')'");
    if (c == '(') {
      ++pos_;
      std::vector<SExpr> items;
      for (;;) {
        skip();
        if (pos_ >= text_.size()) throw MalformedCode("unterminated list");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        items.push_back(parse());
      }
      return SExpr::makeList(std::move(items));
    }
    std::size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      ++pos_;
    }
    return SExpr::makeAtom(std::string(text_.substr(start, pos_ - start)));
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::vector<SExpr> parseSExprs(std::string_view text) {
  Parser p(text);
  std::vector<SExpr> out;
  while (!p.done()) out.push_back(p.parse());
  return out;
}

SExpr parseSExpr(std::string_view text) {
  auto all = parseSExprs(text);
  if (all.size() != 1) throw MalformedCode("expected exactly one expression");
  return std::move(all.front());
}

}  // namespace omega
