#include <cctype>
#include "omega/corpus.hpp"

#include <algorithm>
#include <functional>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"
#include "omega/schuette.hpp"
#include "omega/sexpr.hpp"
#include "omega/transforms.hpp"

#ifndef OMEGA_FIXTURE_DIR
#define OMEGA_FIXTURE_DIR "fixtures"
#endif

namespace omega {

namespace {

std::string joinAtoms(const SExpr& e, std::size_t from) {
  std::string out;
  for (std::size_t i = from; i < e.items.size(); ++i) {
    if (!out.empty()) out += ' ';
    out += e.items[i].str();
  }
  return out;
}

}  // namespace

Fixture parseFixture(const std::string& name, const std::string& text) {
  auto exprs = parseSExprs(text);
  if (exprs.empty()) throw MalformedCode("fixture " + name + ": empty");
  Fixture f;
  f.name = name;
  f.sentence = Sequent::fromSExpr(exprs[0]);
  for (std::size_t k = 1; k < exprs.size(); ++k) {
    const auto& a = exprs[k];
    if (a.head() != "assert") throw MalformedCode("fixture " + name + ": expected (assert ...)");
    for (std::size_t i = 1; i < a.items.size(); ++i) {
      const auto& kv = a.items[i];
      auto key = kv.head();
      if (key == "truth" && kv.items.size() == 2) {
        f.truth = kv.items[1].isAtom("true");
      } else if (key == "expect" && kv.items.size() == 2) {
        f.expect = kv.items[1].atom;
      } else if (key == "branch") {
        Path p;
        for (std::size_t j = 1; j < kv.items.size(); ++j) p.push_back(Natural(kv.items[j].atom));
        f.branch = std::move(p);
      } else if (key == "reason" && kv.items.size() == 2) {
        f.reason = kv.items[1].atom;
      } else if (key == "note") {
        f.note = joinAtoms(kv, 1);
      } else {
        throw MalformedCode("fixture " + name + ": unknown assertion " + kv.str());
      }
    }
  }
  return f;
}

Fixture loadFixture(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return parseFixture(std::filesystem::path(file).stem().string(), ss.str());
}

std::vector<Fixture> loadFixtures(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().extension() == ".seq") files.push_back(ent.path().string());
  std::sort(files.begin(), files.end());
  std::vector<Fixture> out;
  for (const auto& f : files) out.push_back(loadFixture(f));
  return out;
}

std::string defaultFixtureDir() { return OMEGA_FIXTURE_DIR; }

std::optional<Natural> namedLimitIndex(const std::string& name) {
  if (name == "iterated-power") return iteratedPowerIndex();
  if (name == "flat-pair") return flatPairIndex();
  if (name == "undefined-at-one") return undefinedAtOneIndex();
  return std::nullopt;
}

ONotation notationFromSExpr(const SExpr& e) {
  if (!e.isList && !e.atom.empty() && std::isdigit(static_cast<unsigned char>(e.atom[0])))
    return ONotation::fromValue(Natural(e.atom));
  if (e.head() == "pow" && e.items.size() == 2) return ONotation::pow(notationFromSExpr(e.items[1]));
  if (e.head() == "lim" && e.items.size() == 2) {
    if (auto i = namedLimitIndex(e.items[1].atom)) return ONotation::lim(*i);
    if (!e.items[1].atom.empty() && std::isdigit(static_cast<unsigned char>(e.items[1].atom[0])))
      return ONotation::lim(Natural(e.items[1].atom));
  }
  throw MalformedCode("bad notation " + e.str());
}

NotationFixture parseNotationFixture(const std::string& name, const std::string& text) {
  auto exprs = parseSExprs(text);
  if (exprs.empty() || exprs[0].head() != "notation" || exprs[0].items.size() != 2)
    throw MalformedCode("fixture " + name + ": expected (notation ...)");
  NotationFixture f;
  f.name = name;
  f.notation = notationFromSExpr(exprs[0].items[1]);
  auto path = [](const SExpr& kv) {
    Path p;
    for (std::size_t j = 1; j < kv.items.size(); ++j) p.push_back(Natural(kv.items[j].atom));
    return p;
  };
  auto num = [&](const SExpr& kv, std::size_t i) { return std::stoull(kv.items.at(i).atom); };
  for (std::size_t k = 1; k < exprs.size(); ++k) {
    const auto& a = exprs[k];
    if (a.head() != "assert") throw MalformedCode("fixture " + name + ": expected (assert ...)");
    for (std::size_t i = 1; i < a.items.size(); ++i) {
      const auto& kv = a.items[i];
      auto key = kv.head();
      if (key == "expect" && kv.items.size() == 2) {
        f.expect = kv.items[1].atom;
      } else if (key == "bounds" && kv.items.size() == 4) {
        f.bounds.depth = static_cast<std::uint32_t>(num(kv, 1));
        f.bounds.breadth = static_cast<std::uint32_t>(num(kv, 2));
        f.bounds.fuel = num(kv, 3);
      } else if (key == "height" && kv.items.size() == 2) {
        f.height = static_cast<std::uint32_t>(num(kv, 1));
      } else if (key == "code-height" && kv.items.size() == 2) {
        f.codeHeight = static_cast<std::uint32_t>(num(kv, 1));
      } else if (key == "branch") {
        f.branch = path(kv);
      } else if (key == "code-branch") {
        f.codeBranch = path(kv);
      } else if (key == "reason" && kv.items.size() == 2) {
        f.reason = kv.items[1].atom;
      } else if (key == "code-reason" && kv.items.size() == 2) {
        f.codeReason = kv.items[1].atom;
      } else if (key == "note") {
        f.note = joinAtoms(kv, 1);
      } else {
        throw MalformedCode("fixture " + name + ": unknown assertion " + kv.str());
      }
    }
  }
  return f;
}

std::vector<NotationFixture> loadNotationFixtures(const std::string& dir) {
  std::vector<std::string> files;
  for (const auto& ent : std::filesystem::directory_iterator(dir))
    if (ent.path().extension() == ".ord") files.push_back(ent.path().string());
  std::sort(files.begin(), files.end());
  std::vector<NotationFixture> out;
  for (const auto& file : files) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    out.push_back(parseNotationFixture(std::filesystem::path(file).stem().string(), ss.str()));
  }
  return out;
}

std::string defaultNotationDir() { return std::string(OMEGA_FIXTURE_DIR) + "/notations"; }

const Formula& ackermannSentence() {
  static const Formula f = Formula::parse("(all (all (ex (and (and (= (v 2) (v 2)) (= (v 1) (v 1))) (= (v 0) (v 0))))))");
  return f;
}

Natural ackermannFixture() {
  using namespace dsl;
  static const Natural code = [] {
    auto single = [](Expr f) { return op("sq_insert", {lit(Sequent{}.code()), f}); };
    auto ax = [&](Expr f) { return seq({lit(0), single(f)}); };
    Natural empty = Sequent{}.code();
    Natural p0 = function(1, [](const Exprs& x) { return add(x[0], lit(1)); })->encode();
    // step(p, m): p iterated m + 1 times on 1
    Natural step = function(2, [](const Exprs& x) {
                     Expr p = x[0];
                     return iterate(add(x[1], lit(1)), lit(1), [=](Expr, Expr acc) { return app(p, {acc}); });
                   })->encode();
    // leaf(F_n, p, m) = <ex, {}, F_nm, <and, {}, A, <and, {}, n=n & m=m, ...>, <Ax, k=k>>>
    Natural leaf = function(3, [&](const Exprs& x) {
                     Expr fn = x[0], p = x[1], m = x[2];
                     return let(op("fm_inst", {nth(fn, 1), m}), [=](Expr fnm) {
                       return let(op("fm_inst", {nth(fnm, 1), app(p, {m})}), [=](Expr a) {
                         Expr l = nth(a, 1);
                         Expr inner = seq({lit(1), lit(empty), l, ax(nth(l, 1)), ax(nth(l, 2))});
                         Expr conj = seq({lit(1), lit(empty), a, inner, ax(nth(a, 2))});
                         return seq({lit(4), lit(empty), fnm, conj});
                       });
                     });
                   })->encode();
    auto outer = function(1, [&](const Exprs& x) {
      Expr n = x[0];
      Expr prog = iterate(n, lit(p0), [&](Expr, Expr acc) { return op("smn", {lit(step), seq({acc})}); });
      return let(op("fm_inst", {lit(ackermannSentence().body().code()), n}), [=](Expr fn) {
        return seq({lit(3), lit(empty), fn, op("smn", {lit(leaf), seq({fn, prog})})});
      });
    });
    Natural e = outer->encode();
    if (!PrRegistry::global().certify(e)) throw std::logic_error("ackermann index failed certification");
    return mkOmega(Sequent{}, ackermannSentence(), e);
  }();
  return code;
}

std::optional<std::uint64_t> ackermann(std::uint64_t n, std::uint64_t m, std::uint64_t limit) {
  // Row by row: row n+1 at m is row n iterated m + 1 times on 1.
  std::vector<std::uint64_t> row;
  for (std::uint64_t j = 0; j <= limit; ++j) row.push_back(j + 1);
  for (std::uint64_t i = 0; i < n; ++i) {
    std::vector<std::uint64_t> next;
    for (std::uint64_t j = 0;; ++j) {
      std::uint64_t arg = j == 0 ? 1 : next.back();
      if (arg >= row.size()) break;
      next.push_back(row[arg]);
      if (next.back() > limit) break;
    }
    row = std::move(next);
  }
  if (m >= row.size() || row[m] > limit) return std::nullopt;
  return row[m];
}

Natural reflIndex(const Sequent& g) {
  using namespace dsl;
  Natural gc = g.code();
  auto p = function(1, [&](const Exprs& x) {
    Expr t = op("numeral", {x[0]});
    return seq({lit(0), op("sq_insert", {lit(gc), seq({lit(0), t, t})})});
  });
  Natural e = p->encode();
  PrRegistry::global().certify(e);
  return e;
}

namespace {

Formula F(const char* s) { return Formula::parse(s); }

// <cut, G, C, weak(psi{C}, G), weak(psi(G + {not C}), {})>; both sides true.
std::optional<Natural> cutOf(const Sequent& g, const Formula& c, std::uint64_t fuel) {
  auto left = psi(Sequent{c}, fuel);
  auto right = psi(g.with(negate(c)), fuel);
  if (left.status != PsiStatus::Code || right.status != PsiStatus::Code) return std::nullopt;
  return mkCut(g, c, weakSimple(left.code, g), right.code);
}

}  // namespace

std::vector<CorpusCode> corpusCodes(const std::vector<Fixture>& fixtures, std::uint64_t fuel) {
  std::vector<CorpusCode> out;
  for (const auto& f : fixtures) {
    if (!f.truth || !*f.truth) continue;
    auto r = psi(f.sentence, fuel);
    if (r.status == PsiStatus::Code) out.push_back({f.name, r.code, false});
  }
  Sequent g1{F("(= 1 1)")};
  out.push_back({"cut_literal", mkCut(g1, F("(= 0 0)"), mkAx(g1.with(F("(= 0 0)"))), mkAx(g1.with(F("(!= 0 0)")))), true});
  Sequent g2{F("(= 0 0)")};
  auto refl = F("(all (= (v 0) (v 0)))");
  out.push_back({"cut_refl", mkCut(g2, refl, mkOmega(g2, refl, reflIndex(g2)), mkAx(g2.with(negate(refl)))), true});
  if (auto c = cutOf(Sequent{refl}, F("(all (ex (= (v 0) (+ (v 1) 1))))"), fuel)) out.push_back({"cut_succ", *c, true});
  if (auto c = cutOf(Sequent{F("(or (= 0 1) (= 1 1))")}, F("(all (!= (+ (v 0) 1) 0))"), fuel))
    out.push_back({"cut_nonzero", *c, true});
  return out;
}

// ---- mutations -------------------------------------------------------------

std::string_view mutationName(MutationKind k) {
  switch (k) {
    case MutationKind::Identity: return "identity";
    case MutationKind::WrongNumeral: return "wrong-numeral";
    case MutationKind::DropContext: return "drop-context";
    case MutationKind::SwapCutDual: return "swap-cut-dual";
    case MutationKind::MuWrapOmega: return "mu-wrap-omega";
  }
  return "?";
}

namespace {

struct Walked {
  std::vector<Code> nodes;  // nodes[i] sits at path[0..i)
};

Walked walk(const Natural& a, const Path& path, std::uint64_t fuel) {
  Walked w;
  Natural cur = a;
  for (std::size_t i = 0;; ++i) {
    Code c;
    try {
      c = Code::decode(cur);
    } catch (const MalformedCode&) {
      throw BadSite("malformed node at " + pathStr(Path(path.begin(), path.begin() + static_cast<std::ptrdiff_t>(i))));
    }
    w.nodes.push_back(c);
    if (i == path.size()) return w;
    const Natural& j = path[i];
    if (c.rule == Rule::Omega) {
      auto r = evalIndex(c.index(), {j}, fuel);
      if (!r.ok()) throw BadSite("premise does not evaluate");
      cur = r.value;
    } else {
      if (!(j < c.subs.size())) throw BadSite("no such premise");
      cur = c.subs[j.get_ui()];
    }
  }
}

Natural rebuild(const Code& c, std::vector<Natural> subs) {
  switch (c.rule) {
    case Rule::Ax: return mkAx(c.ctx);
    case Rule::And: return mkAnd(c.ctx, *c.main, subs[0], subs[1]);
    case Rule::Or: return mkOr(c.ctx, *c.main, subs[0]);
    case Rule::Omega: return mkOmega(c.ctx, *c.main, subs[0]);
    case Rule::Ex: return mkEx(c.ctx, *c.main, subs[0]);
    case Rule::Cut: return mkCut(c.ctx, *c.main, subs[0], subs[1]);
  }
  return 0;
}

// n -> replacement at k, <e>(n) elsewhere.
Natural patchIndex(const Natural& e, const Natural& k, const Natural& replacement) {
  using namespace dsl;
  auto p = function(1, [&](const Exprs& x) { return ite(eq(x[0], lit(k)), lit(replacement), callIndex(e, {x[0]})); });
  Natural out = p->encode();
  PrRegistry::global().certify(out);
  return out;
}

Natural replaceFrom(const Walked& w, const Path& path, std::size_t i, const Natural& replacement) {
  if (i == path.size()) return replacement;
  const Code& c = w.nodes[i];
  Natural below = replaceFrom(w, path, i + 1, replacement);
  if (c.rule == Rule::Omega) return rebuild(c, {patchIndex(c.index(), path[i], below)});
  auto subs = c.subs;
  subs[path[i].get_ui()] = below;
  return rebuild(c, subs);
}

// p cut back to just after its last omega step.
Path strictCut(const Walked& w, const Path& p) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (w.nodes[i].rule == Rule::Omega) k = i + 1;
  return Path(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(k));
}

std::string dropReason(Rule parent) {
  switch (parent) {
    case Rule::Omega: return "WrongInstance";
    case Rule::Ex: return "NoInstance";
    default: return "WrongPremiseEnd";
  }
}

}  // namespace

Natural replaceAt(const Natural& a, const Path& path, const Natural& replacement, std::uint64_t fuel) {
  return replaceFrom(walk(a, path, fuel), path, 0, replacement);
}

Mutation mutate(const Natural& a, const Path& site, MutationKind kind, std::uint64_t fuel) {
  Mutation m;
  m.kind = kind;
  m.site = site;
  Walked w = walk(a, site, fuel);
  const Code& node = w.nodes.back();
  switch (kind) {
    case MutationKind::Identity:
      m.code = a;
      return m;
    case MutationKind::WrongNumeral: {
      if (site.empty() || w.nodes[site.size() - 1].rule != Rule::Omega) throw BadSite("not an omega premise");
      const Code& parent = w.nodes[site.size() - 1];
      auto r = evalIndex(parent.index(), {site.back() + 1}, fuel);
      if (!r.ok()) throw BadSite("next premise does not evaluate");
      Sequent next, here = endOf(node);
      try {
        next = endRule(r.value).end;
      } catch (const MalformedCode&) {
        throw BadSite("next premise is malformed");
      }
      if (next == here) throw BadSite("premises n and n+1 have the same end");
      m.code = replaceFrom(w, site, 0, r.value);
      m.reason = "WrongInstance";
      m.path = Path(site.begin(), site.end() - 1);
      m.strictPath = site;
      return m;
    }
    case MutationKind::DropContext: {
      if (site.empty()) throw BadSite("root has no parent");
      std::optional<Formula> drop;
      for (const auto& f : node.ctx.members())
        if (!node.main || !(f == *node.main)) {
          drop = f;
          break;
        }
      if (!drop) throw BadSite("no context member to drop");
      Code changed = node;
      changed.ctx = node.ctx.without(*drop);
      if (endOf(changed) == endOf(node)) throw BadSite("dropping does not change the end");
      m.code = replaceFrom(w, site, 0, rebuild(changed, changed.subs));
      const Code& parent = w.nodes[site.size() - 1];
      m.reason = dropReason(parent.rule);
      m.path = Path(site.begin(), site.end() - 1);
      m.strictPath = parent.rule == Rule::Omega ? site : strictCut(w, m.path);
      return m;
    }
    case MutationKind::SwapCutDual: {
      if (node.rule != Rule::Cut) throw BadSite("not a cut");
      m.code = replaceFrom(w, site, 0, mkCut(node.ctx, negate(*node.main), node.subs[0], node.subs[1]));
      m.reason = "WrongPremiseEnd";
      m.path = site;
      m.strictPath = strictCut(w, site);
      return m;
    }
    case MutationKind::MuWrapOmega: {
      if (node.rule != Rule::Omega) throw BadSite("not an omega node");
      using namespace dsl;
      const Natural e = node.index();
      auto p = function(1, [&](const Exprs& x) {
        return callIndex(e, {add(x[0], search([](Expr z) { return z; }))});
      });
      m.code = replaceFrom(w, site, 0, mkOmega(node.ctx, *node.main, p->encode()));
      m.reason = "NotPR";
      m.path = site;
      m.strictPath = site;
      return m;
    }
  }
  return m;
}

std::vector<Path> mutationSites(const Natural& a, MutationKind kind, std::uint32_t depth, std::uint32_t breadth,
                                std::uint64_t fuel) {
  std::vector<Path> out;
  std::function<void(const Natural&, Path&)> go = [&](const Natural& x, Path& p) {
    Code c;
    try {
      c = Code::decode(x);
    } catch (const MalformedCode&) {
      return;
    }
    try {
      mutate(a, p, kind, fuel);
      out.push_back(p);
    } catch (const BadSite&) {
    }
    if (p.size() >= depth) return;
    std::vector<std::pair<Natural, Natural>> kids;
    if (c.rule == Rule::Omega) {
      for (std::uint32_t n = 0; n < breadth; ++n) {
        auto r = evalIndex(c.index(), {Natural(n)}, fuel);
        if (r.ok()) kids.emplace_back(Natural(n), r.value);
      }
    } else {
      for (std::size_t i = 0; i < c.subs.size(); ++i) kids.emplace_back(Natural(static_cast<unsigned long>(i)), c.subs[i]);
    }
    for (const auto& [j, k] : kids) {
      p.push_back(j);
      go(k, p);
      p.pop_back();
    }
  };
  Path p;
  go(a, p);
  return out;
}

}  // namespace omega
