#pragma once

#include <functional>
#include <memory>
#include <string_view>
#include <vector>

#include "omega/program.hpp"

namespace omega::dsl {

// Expression layer compiled down to programs. Variables are bound by function
// parameters, let, iterate and search, and become projections.

class Expr {
 public:
  struct Node;
  explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  const Node& node() const { return *node_; }

 private:
  std::shared_ptr<const Node> node_;
};

using Exprs = std::vector<Expr>;

Expr lit(const Natural& v);
Expr op(std::string_view name, Exprs args);
/// Inline composition with a program.
Expr call(ProgramPtr f, Exprs args);
/// Application of a fixed index.
Expr callIndex(const Natural& index, Exprs args);
/// Application of a computed index.
Expr app(Expr target, Exprs args);
/// Branch min(sel, n-1); only the chosen branch is evaluated.
Expr cases(Expr sel, Exprs branches);
/// Nonzero cond selects then.
Expr ite(Expr cond, Expr then, Expr otherwise);
/// Re-entry of the enclosing recursive() function.
Expr self(Exprs args);
Expr let(Expr value, std::function<Expr(Expr)> body);
/// acc_0 = init, acc_{i+1} = step(i, acc_i), result acc_count.
Expr iterate(Expr count, Expr init, std::function<Expr(Expr, Expr)> step);
/// Least z with pred(z) = 0.
Expr search(std::function<Expr(Expr)> pred);

ProgramPtr function(std::uint32_t arity, const std::function<Expr(const Exprs&)>& body);
/// Course-of-values recursive function; self() calls must shrink the first argument
/// through an extractor primitive.
ProgramPtr recursive(std::uint32_t arity, const std::function<Expr(const Exprs&)>& body);

// Shorthands for common primitives.
Expr nth(Expr s, unsigned i);
Expr nthE(Expr s, Expr i);
Expr seq(Exprs xs);
Expr eq(Expr a, Expr b);
Expr add(Expr a, Expr b);

}  // namespace omega::dsl
