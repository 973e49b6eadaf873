#include "omega/transforms.hpp"

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"

namespace omega {

namespace {

using namespace dsl;

// (a, sigma) -> node of pi(a) at sigma.
ProgramPtr walkCode() {
  static const ProgramPtr p = function(2, [](const Exprs& x) {
    Expr a = x[0], sigma = x[1];
    Expr final = iterate(op("len", {sigma}), a, [=](Expr i, Expr acc) {
      Expr j = nthE(sigma, i);
      Expr next = ite(eq(nth(acc, 0), lit(3)), app(nth(acc, 3), {j}), nthE(acc, add(lit(3), j)));
      return ite(acc, next, lit(0));
    });
    return op("node_of", {final});
  });
  return p;
}

// (self, sigma, n) -> <self>(sigma + n)
ProgramPtr childWrap() {
  static const ProgramPtr p = function(3, [](const Exprs& x) { return app(x[0], {op("snoc", {x[1], x[2]})}); });
  return p;
}

// (p, self, sigma) -> code of <p> above sigma, children built eagerly.
ProgramPtr exactBody() {
  static const ProgramPtr p = function(3, [](const Exprs& x) {
    Expr pi = x[0], self = x[1], sigma = x[2];
    return let(app(pi, {sigma}), [=](Expr node) {
      Expr tag = nth(node, 0);
      auto kid = [=](unsigned i) { return app(self, {op("snoc", {sigma, lit(i)})}); };
      Expr head1 = seq({tag, nth(node, 1), nth(node, 2), kid(0)});
      Expr head2 = seq({tag, nth(node, 1), nth(node, 2), kid(0), kid(1)});
      Expr omegaC = seq({lit(3), nth(node, 1), nth(node, 2), op("smn", {lit(childWrap()->encode()), seq({self, sigma})})});
      Expr ok = eq(op("len", {node}), ite(tag, lit(3), lit(2)));
      return ite(ok, cases(tag, {node, head2, head1, omegaC, head1, head2, lit(0)}), lit(0));
    });
  });
  return p;
}

Formula neverEqual() {
  return Formula::all(Formula::neq(Term::var(0), Term::var(0)));
}

// (self, sigma, i, n) -> weak(<self>(sigma + i), {n != n})
ProgramPtr gadgetWrap() {
  static const ProgramPtr p = function(4, [](const Exprs& x) {
    Expr t = op("numeral", {x[3]});
    Expr delta = op("sq_insert", {lit(1), seq({lit(1), t, t})});
    return callIndex(weakSimpleIndex(), {app(x[0], {op("snoc", {x[1], x[2]})}), delta});
  });
  return p;
}

// (p, self, sigma) -> cut translation above sigma. self is only passed on as data.
ProgramPtr cutBody() {
  static const ProgramPtr p = function(3, [](const Exprs& x) {
    Expr pi = x[0], self = x[1], sigma = x[2];
    const Natural allNeq = neverEqual().code();
    const Natural exEq = negate(neverEqual()).code();
    const Natural zeroEq = Formula::eq(Term::zero(), Term::zero()).code();
    return let(app(pi, {sigma}), [=](Expr node) {
      Expr tag = nth(node, 0);
      auto gadget = [=](unsigned i) {
        return let(op("code_end", {app(pi, {op("snoc", {sigma, lit(i)})})}), [=](Expr gi) {
          Expr b0 = seq({lit(3), gi, lit(allNeq), op("smn", {lit(gadgetWrap()->encode()), seq({self, sigma, lit(i)})})});
          Expr b1 = seq({lit(4), gi, lit(exEq), seq({lit(0), op("sq_insert", {gi, lit(zeroEq)})})});
          return seq({lit(5), gi, lit(allNeq), b0, b1});
        });
      };
      Expr head1 = seq({tag, nth(node, 1), nth(node, 2), gadget(0)});
      Expr head2 = seq({tag, nth(node, 1), nth(node, 2), gadget(0), gadget(1)});
      Expr omegaC = seq({lit(3), nth(node, 1), nth(node, 2), op("smn", {lit(childWrap()->encode()), seq({self, sigma})})});
      Expr ok = eq(op("len", {node}), ite(tag, lit(3), lit(2)));
      return ite(ok, cases(tag, {node, head2, head1, omegaC, head1, head2, lit(0)}), lit(0));
    });
  });
  return p;
}

Natural specialisedFix(const ProgramPtr& body, const Natural& p) {
  return fixProgram(lambdaProgram(body, std::span<const Natural>(&p, 1)))->encode();
}

// Walks the finitary prefix; throws on a non-node.
void validatePrefix(const Natural& a) {
  if (a == 0) throw TransformError("MalformedNode");
  Code c;
  try {
    c = Code::decode(a);
  } catch (const MalformedCode&) {
    throw TransformError("MalformedNode");
  }
  if (c.rule == Rule::Omega) return;
  for (const auto& s : c.subs) validatePrefix(s);
}

}  // namespace

const Formula& cutGadgetFormula() {
  static const Formula f = neverEqual();
  return f;
}

Natural codeToIndex(const Natural& a) {
  return lambdaProgram(walkCode(), std::span<const Natural>(&a, 1))->encode();
}

std::optional<Natural> indexToCodeExact(const Natural& p, std::uint64_t fuel) {
  auto r = evalIndex(specialisedFix(exactBody(), p), {encodeSeq({})}, fuel);
  if (r.status == EvalStatus::Diverged) return std::nullopt;
  if (!r.ok()) throw TransformError("MalformedNode");
  validatePrefix(r.value);
  return r.value;
}

Natural cutTranslationIndex(const Natural& p) { return specialisedFix(cutBody(), p); }

std::optional<Natural> indexToCodeCut(const Natural& p, std::uint64_t fuel) {
  bool pr = false;
  try {
    pr = isPR(p);
  } catch (const MalformedCode&) {
  }
  if (!pr) throw TransformError("NotPR");
  Natural e = cutTranslationIndex(p);
  auto r = evalIndex(e, {encodeSeq({})}, fuel);
  if (r.status == EvalStatus::Diverged) return std::nullopt;
  if (!r.ok()) throw TransformError("MalformedNode");
  validatePrefix(r.value);
  return r.value;
}

}  // namespace omega
