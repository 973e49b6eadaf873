#include "omega/schuette.hpp"

#include <algorithm>

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"

namespace omega {

namespace {

Natural ruleTag(FormulaKind k) { return Natural(static_cast<unsigned>(k) - 1); }

Sequent without(const OrderedSequent& s, std::size_t pos) {
  std::vector<Formula> xs = s.items();
  xs.erase(xs.begin() + static_cast<std::ptrdiff_t>(pos));
  return Sequent(std::move(xs));
}

std::uint64_t exInstance(const OrderedSequent& s, const Formula& a) {
  return static_cast<std::uint64_t>(std::count(s.items().begin(), s.items().end(), a)) - 1;
}

}  // namespace

SchuetteStep schuetteExpand(const OrderedSequent& s) {
  SchuetteStep st;
  Sequent set = s.toSet();
  auto k = s.firstNonLiteral();
  if (isAxiom(set) || !k) {
    st.kind = isAxiom(set) ? SchuetteKind::Axiom : SchuetteKind::DeadEnd;
    st.node = encodeSeq({Natural(0), set.code()});
    return st;
  }
  st.pos = *k;
  const Formula& a = s.items()[*k];
  switch (a.kind()) {
    case FormulaKind::And: st.kind = SchuetteKind::And; break;
    case FormulaKind::Or: st.kind = SchuetteKind::Or; break;
    case FormulaKind::All: st.kind = SchuetteKind::All; break;
    default: st.kind = SchuetteKind::Ex; break;
  }
  Sequent ctx = st.kind == SchuetteKind::Ex ? set : without(s, *k);
  st.node = encodeSeq({ruleTag(a.kind()), ctx.code(), a.code()});
  return st;
}

std::optional<OrderedSequent> schuetteChild(const OrderedSequent& s, std::uint64_t j) {
  auto st = schuetteExpand(s);
  std::vector<Formula> xs = s.items();
  auto at = xs.begin() + static_cast<std::ptrdiff_t>(st.pos);
  switch (st.kind) {
    case SchuetteKind::Axiom:
    case SchuetteKind::DeadEnd:
      return std::nullopt;
    case SchuetteKind::And:
      if (j > 1) return std::nullopt;
      *at = j == 0 ? at->left() : at->right();
      break;
    case SchuetteKind::Or: {
      if (j != 0) return std::nullopt;
      Formula l = at->left(), r = at->right();
      *at = l;
      xs.insert(at + 1, r);
      break;
    }
    case SchuetteKind::All:
      *at = substitute(at->body(), j);
      break;
    case SchuetteKind::Ex: {
      if (j != 0) return std::nullopt;
      Formula a = *at;
      *at = substitute(a.body(), exInstance(s, a));
      xs.push_back(a);
      xs.push_back(a);
      break;
    }
  }
  return OrderedSequent(std::move(xs));
}

std::optional<OrderedSequent> schuetteAt(const OrderedSequent& root, const Path& path) {
  OrderedSequent cur = root;
  for (const auto& j : path) {
    if (!j.fits_ulong_p()) return std::nullopt;
    auto next = schuetteChild(cur, j.get_ui());
    if (!next) return std::nullopt;
    cur = std::move(*next);
  }
  return cur;
}

Natural schuetteNode(const OrderedSequent& root, const Path& path) {
  auto s = schuetteAt(root, path);
  if (!s) return 0;
  return schuetteExpand(*s).node;
}

// ---- kernel programs -------------------------------------------------------

namespace {

using namespace dsl;

// Shared decomposition of an ordered sequent s (a program variable): binds
// norm, the first non-literal position k+1, the formula and its kind.
Expr withSplit(Expr s, const std::function<Expr(Expr norm, Expr k1, Expr a, Expr i)>& body) {
  return let(op("sq_norm", {s}), [=](Expr norm) {
    return let(op("os_first_nonlit", {s}), [=](Expr k1) {
      return let(op("sub", {k1, lit(1)}), [=](Expr i) {
        return let(nthE(s, i), [=](Expr a) { return body(norm, k1, a, i); });
      });
    });
  });
}

// Child j of the ordered sequent s, or 0.
Expr childExpr(Expr s, Expr j) {
  return withSplit(s, [=](Expr norm, Expr k1, Expr a, Expr i) {
    Expr leaf = lit(0);
    Expr andKid = cases(j, {op("replace", {s, i, nth(a, 1)}), op("replace", {s, i, nth(a, 2)}), lit(0)});
    Expr orKid = ite(op("iszero", {j}), op("splice2", {s, i, nth(a, 1), nth(a, 2)}), lit(0));
    Expr allKid = op("replace", {s, i, op("fm_inst", {nth(a, 1), j})});
    Expr exKid = ite(op("iszero", {j}),
                     op("snoc", {op("snoc", {op("replace", {s, i, op("fm_inst", {nth(a, 1), op("sub", {op("count", {s, a}), lit(1)})})}), a}), a}),
                     lit(0));
    Expr byKind = cases(nth(a, 0), {leaf, leaf, andKid, orKid, allKid, exKid});
    return ite(op("sq_is_axiom", {norm}), leaf, ite(k1, byKind, leaf));
  });
}

Expr nodeExpr(Expr s) {
  return withSplit(s, [=](Expr norm, Expr k1, Expr a, Expr i) {
    Expr leaf = seq({lit(0), norm});
    Expr ctx = op("sq_norm", {op("remove_at", {s, i})});
    Expr tag = op("sub", {nth(a, 0), lit(1)});
    Expr inner = ite(eq(nth(a, 0), lit(5)), seq({lit(4), norm, a}), seq({tag, ctx, a}));
    return ite(op("sq_is_axiom", {norm}), leaf, ite(k1, inner, leaf));
  });
}

ProgramPtr walkerProgram() {
  static const ProgramPtr p = function(2, [](const Exprs& x) {
    Expr root = x[0], sigma = x[1];
    Expr final = iterate(op("len", {sigma}), root, [=](Expr i, Expr acc) {
      return ite(acc, childExpr(acc, nthE(sigma, i)), lit(0));
    });
    return let(final, [](Expr s) { return ite(s, nodeExpr(s), lit(0)); });
  });
  return p;
}

// wrap(self, s, i, n) = <self>(s with position i replaced by its body at n)
ProgramPtr omegaWrapProgram() {
  static const ProgramPtr p = function(4, [](const Exprs& x) {
    Expr self = x[0], s = x[1], i = x[2], n = x[3];
    return app(self, {op("replace", {s, i, op("fm_inst", {nth(nthE(s, i), 1), n})})});
  });
  return p;
}

ProgramPtr psiBody() {
  return function(2, [](const Exprs& x) {
    Expr self = x[0], s = x[1];
    return withSplit(s, [=](Expr norm, Expr k1, Expr a, Expr i) {
      Expr leaf = seq({lit(0), norm});
      Expr ctx = op("sq_norm", {op("remove_at", {s, i})});
      Expr andC = seq({lit(1), ctx, a, app(self, {op("replace", {s, i, nth(a, 1)})}),
                       app(self, {op("replace", {s, i, nth(a, 2)})})});
      Expr orC = seq({lit(2), ctx, a, app(self, {op("splice2", {s, i, nth(a, 1), nth(a, 2)})})});
      Expr allC = seq({lit(3), ctx, a, op("smn", {lit(omegaWrapProgram()->encode()), seq({self, s, i})})});
      Expr inst = op("fm_inst", {nth(a, 1), op("sub", {op("count", {s, a}), lit(1)})});
      Expr exC = seq({lit(4), norm, a, app(self, {op("snoc", {op("snoc", {op("replace", {s, i, inst}), a}), a})})});
      Expr byKind = cases(nth(a, 0), {leaf, leaf, andC, orC, allC, exC});
      return ite(op("sq_is_axiom", {norm}), leaf, ite(k1, byKind, leaf));
    });
  });
}

}  // namespace

Natural schuetteIndex(const OrderedSequent& g) {
  Natural root = g.code();
  return lambdaProgram(walkerProgram(), std::span<const Natural>(&root, 1))->encode();
}

Natural psiIndex() {
  static const Natural e = fixProgram(psiBody())->encode();
  return e;
}

PsiResult psi(const OrderedSequent& s, std::uint64_t fuel) {
  PsiResult out;
  auto r = evalIndex(psiIndex(), {s.code()}, fuel);
  if (!r.ok()) return out;
  // Scan the finitary prefix for a leaf that is not an axiom.
  std::vector<std::pair<Natural, Path>> stack{{r.value, {}}};
  while (!stack.empty()) {
    auto [a, path] = stack.back();
    stack.pop_back();
    Code c = Code::decode(a);
    if (c.rule == Rule::Ax && !isAxiom(c.ctx)) {
      out.status = PsiStatus::DeadEnd;
      out.deadEnd = path;
      out.code = r.value;
      return out;
    }
    if (c.rule == Rule::Omega) continue;
    for (std::size_t i = c.subs.size(); i-- > 0;) {
      Path p = path;
      p.push_back(Natural(static_cast<unsigned long>(i)));
      stack.emplace_back(c.subs[i], std::move(p));
    }
  }
  out.status = PsiStatus::Code;
  out.code = r.value;
  return out;
}

namespace {

struct OutOfSteps {};

Natural psiRef(const OrderedSequent& s, std::uint64_t& steps) {
  const std::uint64_t cost = 1 + s.size();
  if (steps < cost) throw OutOfSteps{};
  steps -= cost;
  auto st = schuetteExpand(s);
  auto kid = [&](std::uint64_t j) { return psiRef(*schuetteChild(s, j), steps); };
  auto node = decodeSeq(st.node);
  switch (st.kind) {
    case SchuetteKind::Axiom:
    case SchuetteKind::DeadEnd:
      return st.node;
    case SchuetteKind::And:
      return encodeSeq({node[0], node[1], node[2], kid(0), kid(1)});
    case SchuetteKind::Or:
    case SchuetteKind::Ex:
      return encodeSeq({node[0], node[1], node[2], kid(0)});
    case SchuetteKind::All: {
      std::vector<Natural> frozen{psiIndex(), s.code(), Natural(static_cast<unsigned long>(st.pos))};
      Natural e = lambdaProgram(omegaWrapProgram(), frozen)->encode();
      return encodeSeq({node[0], node[1], node[2], e});
    }
  }
  return 0;
}

}  // namespace

std::optional<Natural> psiReference(const OrderedSequent& s, std::uint64_t budget) {
  try {
    return psiRef(s, budget);
  } catch (const OutOfSteps&) {
    return std::nullopt;
  }
}

}  // namespace omega
