#include "omega/transforms.hpp"

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"

namespace omega {

namespace {

using namespace dsl;

constexpr std::uint64_t kWeakFuel = 100000000;

Expr endOf(Expr a) { return op("sq_norm", {op("code_end", {a})}); }

// wrap(w, e, D, n) = <w>(<e>(n), D, w)
ProgramPtr wrapSimple() {
  static const ProgramPtr p = function(4, [](const Exprs& x) {
    return app(x[0], {app(x[1], {x[3]}), x[2], x[0]});
  });
  return p;
}

// wrap(w, e, G, A, D, n): as above once End(<e>(n)) = G, A(n); otherwise 0.
ProgramPtr wrapStrict() {
  static const ProgramPtr p = function(6, [](const Exprs& x) {
    Expr w = x[0], e = x[1], g = x[2], m = x[3], d = x[4], n = x[5];
    return let(app(e, {n}), [=](Expr v) {
      Expr ok = eq(endOf(v), op("sq_insert", {g, op("fm_inst", {nth(m, 1), n})}));
      return ite(ok, app(w, {v, d, w}), lit(0));
    });
  });
  return p;
}

// Core (a, D, w), w being the index of the core itself.
ProgramPtr weakCore(bool strict) {
  return recursive(3, [strict](const Exprs& x) {
    Expr a = x[0], d = x[1], w = x[2];
    Expr g = nth(a, 1), m = nth(a, 2);
    Expr gd = op("sq_union", {g, d});
    auto sub = [=](unsigned k) { return self({nth(a, k), d, w}); };
    auto two = [=](unsigned tag, Expr ok) {
      if (!strict) return seq({lit(tag), gd, m, sub(3), sub(4)});
      return ite(ok, let(sub(3), [=](Expr r1) {
                   return let(sub(4), [=](Expr r2) {
                     return ite(op("and", {r1, r2}), seq({lit(tag), gd, m, r1, r2}), lit(0));
                   });
                 }),
                 lit(0));
    };
    auto one = [=](unsigned tag, Expr ok) {
      if (!strict) return seq({lit(tag), gd, m, sub(3)});
      return ite(ok, let(sub(3), [=](Expr r) { return ite(r, seq({lit(tag), gd, m, r}), lit(0)); }), lit(0));
    };
    Expr ax = strict ? ite(op("sq_is_axiom", {g}), seq({lit(0), gd}), lit(0)) : seq({lit(0), gd});
    Expr andC = two(1, op("and", {eq(endOf(nth(a, 3)), op("sq_insert", {g, nth(m, 1)})),
                                   eq(endOf(nth(a, 4)), op("sq_insert", {g, nth(m, 2)}))}));
    Expr orC = one(2, eq(endOf(nth(a, 3)), op("sq_insert", {op("sq_insert", {g, nth(m, 1)}), nth(m, 2)})));
    Expr omegaC = strict ? seq({lit(3), gd, m, op("smn", {lit(wrapStrict()->encode()), seq({w, nth(a, 3), g, m, d})})})
                         : seq({lit(3), gd, m, op("smn", {lit(wrapSimple()->encode()), seq({w, nth(a, 3), d})})});
    Expr exC = one(4, op("sq_inst_end", {endOf(nth(a, 3)), g, nth(m, 1)}));
    Expr cutC = two(5, op("and", {eq(endOf(nth(a, 3)), op("sq_insert", {g, m})),
                                   eq(endOf(nth(a, 4)), op("sq_insert", {g, op("fm_neg", {m})}))}));
    return ite(a, cases(nth(a, 0), {ax, andC, orC, omegaC, exC, cutC, lit(0)}), lit(0));
  });
}

const Natural& coreIndex(bool strict) {
  static const Natural simple = weakCore(false)->encode();
  static const Natural strictI = weakCore(true)->encode();
  return strict ? strictI : simple;
}

Natural publicIndex(bool strict) {
  const Natural& core = coreIndex(strict);
  auto p = function(2, [&](const Exprs& x) { return callIndex(core, {x[0], x[1], lit(core)}); });
  Natural e = p->encode();
  if (!PrRegistry::global().certify(e)) throw TransformError("weakening index failed certification");
  return e;
}

Natural runWeak(bool strict, const Natural& a, const Sequent& delta) {
  auto r = evalIndex(strict ? weakStrictIndex() : weakSimpleIndex(), {a, delta.code()}, kWeakFuel);
  if (!r.ok()) throw TransformError("weakening did not finish: " + r.error);
  return r.value;
}

Natural weakRef(bool strict, const Natural& a, const Sequent& delta) {
  if (a == 0) return 0;
  Code c;
  try {
    c = Code::decode(a);
  } catch (const MalformedCode&) {
    if (strict) return 0;
    throw;
  }
  const Sequent gd = c.ctx.unite(delta);
  auto end = [](const Natural& x) -> std::optional<Sequent> {
    try {
      return endRule(x).end;
    } catch (const MalformedCode&) {
      return std::nullopt;
    }
  };
  auto sub = [&](std::size_t i) { return weakRef(strict, c.subs[i], delta); };
  switch (c.rule) {
    case Rule::Ax:
      if (strict && !isAxiom(c.ctx)) return 0;
      return mkAx(gd);
    case Rule::And:
    case Rule::Cut: {
      if (strict) {
        const Formula& m = *c.main;
        Formula l = c.rule == Rule::And ? m.left() : m;
        Formula r = c.rule == Rule::And ? m.right() : negate(m);
        if (end(c.subs[0]) != c.ctx.with(l) || end(c.subs[1]) != c.ctx.with(r)) return 0;
      }
      Natural r1 = sub(0), r2 = sub(1);
      if (strict && (r1 == 0 || r2 == 0)) return 0;
      return c.rule == Rule::And ? mkAnd(gd, *c.main, r1, r2) : mkCut(gd, *c.main, r1, r2);
    }
    case Rule::Or:
    case Rule::Ex: {
      if (strict) {
        auto e = end(c.subs[0]);
        if (!e) return 0;
        if (c.rule == Rule::Or) {
          if (*e != c.ctx.with(c.main->left()).with(c.main->right())) return 0;
        } else {
          bool found = false;
          for (const auto& b : e->members()) {
            auto n = instanceNumeral(c.main->body(), b);
            if (n && *e == c.ctx.with(substitute(c.main->body(), *n))) found = true;
          }
          if (!found) return 0;
        }
      }
      Natural r = sub(0);
      if (strict && r == 0) return 0;
      return c.rule == Rule::Or ? mkOr(gd, *c.main, r) : mkEx(gd, *c.main, r);
    }
    case Rule::Omega: {
      Natural e;
      if (strict) {
        std::vector<Natural> frozen{coreIndex(true), c.index(), c.ctx.code(), c.main->code(), delta.code()};
        e = lambdaProgram(wrapStrict(), frozen)->encode();
      } else {
        std::vector<Natural> frozen{coreIndex(false), c.index(), delta.code()};
        e = lambdaProgram(wrapSimple(), frozen)->encode();
      }
      return mkOmega(gd, *c.main, e);
    }
  }
  return 0;
}

}  // namespace

Natural weakSimpleIndex() {
  static const Natural e = publicIndex(false);
  return e;
}
Natural weakStrictIndex() {
  static const Natural e = publicIndex(true);
  return e;
}

Natural weakSimple(const Natural& a, const Sequent& delta) { return runWeak(false, a, delta); }
Natural weakStrict(const Natural& a, const Sequent& delta) { return runWeak(true, a, delta); }

Natural weakSimpleReference(const Natural& a, const Sequent& delta) { return weakRef(false, a, delta); }
Natural weakStrictReference(const Natural& a, const Sequent& delta) { return weakRef(true, a, delta); }

}  // namespace omega
