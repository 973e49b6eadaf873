#include <algorithm>

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/kleeneo.hpp"
#include "omega/recfun.hpp"
#include "omega/transforms.hpp"

namespace omega {

namespace {

using namespace dsl;

constexpr std::uint64_t kBuildFuel = 100000000;

struct OFailure {
  Path path;
  std::string reason;
};

class OChecker {
 public:
  explicit OChecker(const CheckBounds& b) : bounds_(b), sample_(b.sample()) {}

  std::optional<OFailure> visit(const Natural& a, Path& path) {
    if (++nodes_ > bounds_.maxNodes) throw Exhausted{};
    height_ = std::max<std::uint32_t>(height_, static_cast<std::uint32_t>(path.size() + 1));
    ONotation o{a};
    if (o.shape() == OShape::Other) return OFailure{path, "NotNotation"};
    if (o.shape() == OShape::One) return std::nullopt;
    if (path.size() + 1 >= bounds_.depth) {
      cut_ = true;
      return std::nullopt;
    }
    if (o.shape() == OShape::Pow) return child(o.arg(), path, 0);
    limit_ = true;
    const Natural e = o.arg();
    for (auto n : sample_) {
      auto v = value(e, n);
      if (!v) return fail(path, n, "Undefined");
      if (n > 0) {
        auto u = value(e, n - 1);
        if (!u) return fail(path, n - 1, "Undefined");
        if (!ltPrimeO(*u, *v, bounds_.fuel).holds) return fail(path, n, "NotIncreasing");
      }
      if (auto f = child(*v, path, n)) return f;
    }
    return std::nullopt;
  }

  struct Exhausted {};

  std::uint64_t nodes_ = 0;
  std::uint32_t height_ = 0;
  bool cut_ = false, limit_ = false;

 private:
  std::optional<OFailure> child(const Natural& a, Path& path, std::uint64_t n) {
    path.push_back(Natural(static_cast<unsigned long>(n)));
    auto f = visit(a, path);
    path.pop_back();
    return f;
  }
  static OFailure fail(const Path& path, std::uint64_t n, std::string reason) {
    Path p = path;
    p.push_back(Natural(static_cast<unsigned long>(n)));
    return OFailure{p, std::move(reason)};
  }
  std::optional<Natural> value(const Natural& e, std::uint64_t n) {
    auto r = evalIndex(e, {Natural(static_cast<unsigned long>(n))}, bounds_.fuel);
    if (!r.ok()) return std::nullopt;
    return r.value;
  }

  CheckBounds bounds_;
  std::vector<std::uint64_t> sample_;
};

Natural evalOrThrow(const Natural& index, const Natural& arg, const char* what) {
  auto r = evalIndex(index, {arg}, kBuildFuel);
  if (!r.ok()) throw TransformError(std::string(what) + " did not finish: " + r.error);
  return r.value;
}

const Natural& emptySequent() {
  static const Natural c = Sequent{}.code();
  return c;
}

Expr single(Expr f) { return op("sq_insert", {lit(emptySequent()), f}); }

// phi(w, e, n): f(<e>(0)) at 0, and f(<e>(n)) at n > 0 once <e>(n-1) <' <e>(n)
// shows up; the search runs forever otherwise.
Expr guarded(Expr w, Expr e, Expr n) {
  Expr first = app(w, {app(e, {lit(0)}), w});
  Expr later = let(app(e, {op("sub", {n, lit(1)})}), [=](Expr u) {
    return let(app(e, {n}), [=](Expr v) {
      Expr found = search([=](Expr z) { return ite(op("lt_o", {u, v, z}), lit(0), lit(1)); });
      return let(found, [=](Expr) { return app(w, {v, w}); });
    });
  });
  return ite(n, later, first);
}

Natural certified(const ProgramPtr& p, const char* what) {
  Natural e = p->encode();
  if (!PrRegistry::global().certify(e)) throw TransformError(std::string(what) + " failed certification");
  return e;
}

// ---- f ----

const Natural& reflAllSequent() {
  static const Natural c = Sequent{reflAll()}.code();
  return c;
}

Expr instRefl(Expr n) { return single(op("fm_inst", {lit(reflAll().body().code()), n})); }

// g(w, b, n) = weak(f(b), A(n))
ProgramPtr powPremise() {
  static const ProgramPtr p = function(3, [](const Exprs& x) {
    return callIndex(weakStrictIndex(), {app(x[0], {x[1], x[0]}), instRefl(x[2])});
  });
  return p;
}

// h(w, e, n) = weak(phi(n), A(n))
ProgramPtr limPremise() {
  static const ProgramPtr p = function(3, [](const Exprs& x) {
    return callIndex(weakStrictIndex(), {guarded(x[0], x[1], x[2]), instRefl(x[2])});
  });
  return p;
}

const Natural& fCore() {
  static const Natural e = function(2, [](const Exprs& x) {
                             Expr a = x[0], w = x[1];
                             auto node = [&](const ProgramPtr& prem) {
                               return seq({lit(3), lit(reflAllSequent()), lit(reflAll().code()),
                                           op("smn", {lit(prem->encode()), seq({w, op("o_arg", {a})})})});
                             };
                             Natural bad = mkAx(Sequent{reflAll()});
                             return cases(op("o_kind", {a}),
                                          {lit(baseProofD()), node(powPremise()), node(limPremise()), lit(bad)});
                           })->encode();
  return e;
}

// ---- dual codes ----

// (w, U, n) -> <ex, {B(n)}, not U, dual(B(n))> for U = forall x B
ProgramPtr dualPremise() {
  static const ProgramPtr p = function(3, [](const Exprs& x) {
    Expr w = x[0], u = x[1], n = x[2];
    return let(op("fm_inst", {nth(u, 1), n}), [=](Expr c) {
      return seq({lit(4), single(c), op("fm_neg", {u}), app(w, {c, w})});
    });
  });
  return p;
}

const Natural& dualCore() {
  static const Natural e = recursive(2, [](const Exprs& x) {
                             Expr b = x[0], w = x[1];
                             Expr kind = nth(b, 0);
                             Expr literal = seq({lit(0), op("sq_insert", {single(b), op("fm_neg", {b})})});
                             Expr conj = let(ite(eq(kind, lit(2)), b, op("fm_neg", {b})), [=](Expr k) {
                               Expr nl = op("fm_neg", {nth(k, 1)}), nr = op("fm_neg", {nth(k, 2)});
                               Expr d1 = callIndex(weakSimpleIndex(), {self({nth(b, 1), w}), single(nr)});
                               Expr d2 = callIndex(weakSimpleIndex(), {self({nth(b, 2), w}), single(nl)});
                               Expr inner = seq({lit(1), op("sq_insert", {single(nl), nr}), k, d1, d2});
                               return seq({lit(2), single(k), op("fm_neg", {k}), inner});
                             });
                             Expr quant = let(ite(eq(kind, lit(4)), b, op("fm_neg", {b})), [=](Expr u) {
                               return seq({lit(3), single(op("fm_neg", {u})), u,
                                           op("smn", {lit(dualPremise()->encode()), seq({w, u})})});
                             });
                             return cases(kind, {literal, literal, conj, conj, quant, quant, lit(0)});
                           })->encode();
  return e;
}

}  // namespace

Verdict checkO(const ONotation& a, const CheckBounds& bounds) {
  OChecker c(bounds);
  Verdict v;
  v.depth = bounds.depth;
  v.seed = bounds.seed;
  Path path;
  try {
    auto f = c.visit(a.code, path);
    if (f) {
      v.status = VerdictStatus::Refuted;
      v.path = f->path;
      v.reason = f->reason;
    } else {
      v.status = c.cut_ || c.limit_ ? VerdictStatus::VerifiedToBound : VerdictStatus::VerifiedComplete;
    }
  } catch (const OChecker::Exhausted&) {
    v.status = VerdictStatus::ResourceExhausted;
  }
  v.maxDepthBranch = c.cut_;
  v.nodes = c.nodes_;
  v.height = c.height_;
  return v;
}

const Formula& reflAll() {
  static const Formula f = Formula::all(Formula::eq(Term::var(0), Term::var(0)));
  return f;
}

Natural baseProofD() {
  static const Natural d = [] {
    auto ed = function(1, [](const Exprs& x) { return seq({lit(0), instRefl(x[0])}); });
    return mkOmega(Sequent{}, reflAll(), certified(ed, "base proof index"));
  }();
  return d;
}

Natural oToCodeIndex() {
  static const Natural e = certified(function(1, [](const Exprs& x) { return callIndex(fCore(), {x[0], lit(fCore())}); }),
                                     "notation translation");
  return e;
}

Natural oToCode(const ONotation& a) { return evalOrThrow(oToCodeIndex(), a.code, "notation translation"); }

Natural dualCodeIndex() {
  static const Natural e = certified(function(1, [](const Exprs& x) { return callIndex(dualCore(), {x[0], lit(dualCore())}); }),
                                     "dual code");
  return e;
}

Natural dualCode(const Formula& b) { return evalOrThrow(dualCodeIndex(), b.code(), "dual code"); }

Natural oToCodeCut(const ONotation& a, const Formula& fixture, const Natural& base) {
  if (endRule(base).end != Sequent{fixture}) throw TransformError("base code does not end in the fixture");
  const Formula all = Formula::all(fixture);
  const Sequent g{fixture};
  const Natural right = mkEx(g, negate(all), dualCode(fixture));
  auto node = [&](Expr index) {
    Expr left = seq({lit(3), lit(g.code()), lit(all.code()), index});
    return seq({lit(5), lit(g.code()), lit(all.code()), left, lit(right)});
  };
  auto powPrem = function(3, [](const Exprs& x) { return app(x[0], {x[1], x[0]}); });
  auto limPrem = function(3, [](const Exprs& x) { return guarded(x[0], x[1], x[2]); });
  Natural constBase = prog::constant(1, base)->encode();
  Natural zero = prog::constant(1, 0)->encode();
  auto core = function(2, [&](const Exprs& x) {
    Expr a = x[0], w = x[1];
    auto wrap = [&](const ProgramPtr& p) { return node(op("smn", {lit(p->encode()), seq({w, op("o_arg", {a})})})); };
    return cases(op("o_kind", {a}), {node(lit(constBase)), wrap(powPrem), wrap(limPrem), node(lit(zero))});
  })->encode();
  auto entry = function(1, [&](const Exprs& x) { return callIndex(core, {x[0], lit(core)}); });
  return evalOrThrow(entry->encode(), a.code, "cut translation");
}

}  // namespace omega
