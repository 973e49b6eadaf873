#include "omega/transforms.hpp"

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"

namespace omega {

namespace {

using namespace dsl;

constexpr std::uint64_t kPrecFuel = 100000000;

Expr endOf(Expr a) { return op("sq_norm", {op("code_end", {a})}); }

// g(gw, w, G, D, F, e, n, z, u), gw its own index, w the translator core.
// Once <e>(n) has halted within z steps with end G, A(n) the value is
// weak(f(<e>(n)), D + A(u) - A(n)); until then an omega node on F that
// delays by one more step.
ProgramPtr delayProgram() {
  static const ProgramPtr p = function(9, [](const Exprs& x) {
    Expr gw = x[0], w = x[1], g = x[2], d = x[3], f = x[4], e = x[5], n = x[6], z = x[7], u = x[8];
    Expr an = op("fm_inst", {nth(f, 1), n});
    Expr au = op("fm_inst", {nth(f, 1), u});
    Expr args = seq({n});
    Expr halted = op("kleene_t", {e, args, z});
    Expr done = let(op("kleene_u", {e, args, z}), [=](Expr v) {
      return callIndex(weakStrictIndex(), {app(w, {v, w}), op("sq_remove", {op("sq_insert", {d, au}), an})});
    });
    Expr fits = ite(halted, let(op("kleene_u", {e, args, z}),
                                [=](Expr v) { return eq(endOf(v), op("sq_insert", {g, an})); }),
                    lit(0));
    Expr next = op("smn", {gw, seq({gw, w, g, op("sq_insert", {d, au}), f, e, n, add(z, lit(1))})});
    Expr wait = seq({lit(3), op("sq_insert", {op("sq_insert", {d, an}), au}), f, next});
    return ite(fits, done, wait);
  });
  return p;
}

const Natural& delayIndex() {
  static const Natural e = delayProgram()->encode();
  return e;
}

// b(w, G, F, e, n) = g(.., G, G + F, F, e, n, 0, n)
ProgramPtr startProgram() {
  static const ProgramPtr p = function(5, [](const Exprs& x) {
    Expr w = x[0], g = x[1], f = x[2], e = x[3], n = x[4];
    return callIndex(delayIndex(), {lit(delayIndex()), w, g, op("sq_insert", {g, f}), f, e, n, lit(0), n});
  });
  return p;
}

// Core (a, w), w being the index of the core itself.
ProgramPtr precCore() {
  return recursive(2, [](const Exprs& x) {
    Expr a = x[0], w = x[1];
    Expr g = nth(a, 1), m = nth(a, 2);
    auto sub = [=](unsigned k) { return self({nth(a, k), w}); };
    Expr ax = a;
    Expr andC = seq({lit(1), g, m, sub(3), sub(4)});
    Expr orC = seq({lit(2), g, m, sub(3)});
    Expr omegaC = seq({lit(3), op("sq_insert", {g, m}), m,
                       op("smn", {lit(startProgram()->encode()), seq({w, g, m, nth(a, 3)})})});
    Expr exC = seq({lit(4), g, m, sub(3)});
    Expr cutC = seq({lit(5), g, m, sub(3), sub(4)});
    return ite(a, cases(nth(a, 0), {ax, andC, orC, omegaC, exC, cutC, lit(0)}), lit(0));
  });
}

const Natural& coreIndex() {
  static const Natural e = precCore()->encode();
  return e;
}

}  // namespace

Natural recToPrecIndex() {
  static const Natural e = [] {
    const Natural& core = coreIndex();
    auto p = function(1, [&](const Exprs& x) { return callIndex(core, {x[0], lit(core)}); });
    Natural i = p->encode();
    if (!PrRegistry::global().certify(i)) throw TransformError("translator index failed certification");
    return i;
  }();
  return e;
}

Natural recToPrec(const Natural& a) {
  auto r = evalIndex(recToPrecIndex(), {a}, kPrecFuel);
  if (!r.ok()) throw TransformError("translation did not finish: " + r.error);
  return r.value;
}

Natural recToPrecReference(const Natural& a) {
  Code c = Code::decode(a);
  std::vector<Natural> subs;
  switch (c.rule) {
    case Rule::Ax:
      return a;
    case Rule::Omega: {
      std::vector<Natural> frozen{coreIndex(), c.ctx.code(), c.main->code(), c.index()};
      return mkOmega(c.ctx.with(*c.main), *c.main, lambdaProgram(startProgram(), frozen)->encode());
    }
    default:
      for (const auto& s : c.subs) subs.push_back(recToPrecReference(s));
  }
  switch (c.rule) {
    case Rule::And:
      return mkAnd(c.ctx, *c.main, subs[0], subs[1]);
    case Rule::Or:
      return mkOr(c.ctx, *c.main, subs[0]);
    case Rule::Ex:
      return mkEx(c.ctx, *c.main, subs[0]);
    default:
      return mkCut(c.ctx, *c.main, subs[0], subs[1]);
  }
}

}  // namespace omega
