#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"
#include "omega/transforms.hpp"

namespace omega {

namespace {

using namespace dsl;

// G_sigma for F with body exists y A.
Expr gammaOf(const Formula& f, Expr sigma) {
  const Natural fc = f.code(), body = f.body().code();
  return iterate(op("len", {sigma}), op("sq_insert", {lit(1), lit(fc)}),
                 [=](Expr i, Expr acc) { return op("sq_insert", {acc, op("fm_inst", {lit(body), nthE(sigma, i)})}); });
}

// (self, sigma) -> node at sigma
ProgramPtr pi2Body(const Formula& f, const Natural& leaves) {
  const Natural fc = f.code(), body = f.body().code();
  const Natural childWrap = function(3, [](const Exprs& x) { return app(x[0], {op("snoc", {x[1], x[2]})}); })->encode();
  return function(2, [=](const Exprs& x) {
    Expr self = x[0], sigma = x[1];
    return let(gammaOf(f, sigma), [=](Expr g) {
      Expr omegaC = seq({lit(3), g, lit(fc), op("smn", {lit(childWrap), seq({self, sigma})})});
      Expr exA = op("fm_inst", {lit(body), nth(sigma, 0)});
      // least m < |sigma| with A(n0, m), plus one; 0 if none
      Expr found = iterate(op("len", {sigma}), lit(0), [=](Expr i, Expr acc) {
        Expr holds = op("qf_true", {op("fm_inst", {nth(exA, 1), i})});
        return ite(acc, acc, ite(holds, add(i, lit(1)), lit(0)));
      });
      Expr withSigma = let(found, [=](Expr m1) {
        Expr m = op("sub", {m1, lit(1)});
        return ite(m1, seq({lit(4), g, exA, callIndex(leaves, {sigma, m})}), omegaC);
      });
      return ite(op("isseq", {sigma}), ite(op("len", {sigma}), withSigma, omegaC), lit(0));
    });
  });
}

bool quantifierFree(const Formula& a) {
  if (a.isLiteral()) return true;
  if (a.isQuantifier()) return false;
  return quantifierFree(a.left()) && quantifierFree(a.right());
}

bool certified(const Natural& e) {
  try {
    return isPR(e);
  } catch (const MalformedCode&) {
    return false;
  }
}

}  // namespace

Natural pi2AxiomLeaves(const Formula& f) {
  const Natural body = f.body().code();
  auto p = function(2, [&](const Exprs& x) {
    Expr sigma = x[0], m = x[1];
    Expr a = op("fm_inst", {nth(op("fm_inst", {lit(body), nth(sigma, 0)}), 1), m});
    return seq({lit(0), op("sq_insert", {gammaOf(f, sigma), a})});
  });
  Natural e = p->encode();
  PrRegistry::global().certify(e);
  return e;
}

Natural pi2Index(const Formula& f, const Natural& leafBuilder) {
  Natural e = fixProgram(pi2Body(f, leafBuilder))->encode();
  PrRegistry::global().certify(e);
  return e;
}

Natural pi2Code(const Formula& f, const Natural& witness, const Natural& leafBuilder) {
  if (f.kind() != FormulaKind::All || f.body().kind() != FormulaKind::Ex || !quantifierFree(f.body().body()) ||
      !f.isSentence())
    throw TransformError("not a Pi2 sentence with quantifier-free matrix");
  if (!certified(witness) || !certified(leafBuilder)) throw TransformError("NotPR");
  for (std::uint64_t n = 0; n < 8; ++n) {
    auto w = evalIndex(witness, {Natural(n)}, 1000000);
    if (!w.ok() || !w.value.fits_ulong_p()) throw TransformError("witness program failed");
    Formula inst = substitute(substitute(f.body(), n).body(), w.value.get_ui());
    if (boundedTruth(inst, 0) != Truth::True) throw TransformError("witness program gave a false instance");
  }
  Natural e = pi2Index(f, leafBuilder);
  if (!certified(e)) throw TransformError("NotPR");
  auto r = evalIndex(e, {encodeSeq({})}, 1000000);
  if (!r.ok()) throw TransformError("construction did not evaluate");
  return r.value;
}

}  // namespace omega
