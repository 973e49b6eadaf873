#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace omega {

/// Minimal s-expression tree: an atom or a parenthesised list.
struct SExpr {
  bool isList = false;
  std::string atom;
  std::vector<SExpr> items;

  static SExpr makeAtom(std::string a) { return SExpr{false, std::move(a), {}}; }
  static SExpr makeList(std::vector<SExpr> xs) { return SExpr{true, {}, std::move(xs)}; }

  bool isAtom(std::string_view a) const { return !isList && atom == a; }
  /// Head atom of a non-empty list, or empty.
  std::string_view head() const;
  std::string str() const;
};

/// Parses every top-level expression; ';' starts a comment. Throws MalformedCode.
std::vector<SExpr> parseSExprs(std::string_view text);
SExpr parseSExpr(std::string_view text);

}  // namespace omega
