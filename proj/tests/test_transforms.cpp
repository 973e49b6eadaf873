#include <doctest.h>

#include <random>
#include <set>

#include "omega/corpus.hpp"
#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/recfun.hpp"
#include "omega/schuette.hpp"
#include "omega/transforms.hpp"

using namespace omega;

namespace {

Formula F(const char* s) { return Formula::parse(s); }
Sequent S(std::initializer_list<const char*> xs) {
  std::vector<Formula> fs;
  for (auto x : xs) fs.push_back(F(x));
  return Sequent(fs);
}

const std::vector<CorpusCode>& codes() {
  static const auto cs = corpusCodes(loadFixtures(defaultFixtureDir()));
  return cs;
}

std::vector<Sequent> deltas() {
  return {Sequent{}, S({"(= 0 1)"}), S({"(all (= (v 0) 0))"}), S({"(= 1 0)", "(ex (!= (v 0) (v 0)))"}), S({"(= 0 0)"})};
}

CheckBounds bounds(std::uint32_t depth = 8) {
  CheckBounds b;
  b.depth = depth;
  b.breadth = 6;
  return b;
}

System systemFor(const CorpusCode& c) { return c.hasCut ? System::Crec : System::CrecCutFree; }

Path randomPath(std::mt19937_64& rng) {
  Path p;
  auto len = rng() % 6;
  for (std::uint64_t i = 0; i < len; ++i) p.push_back(Natural(rng() % 2 ? rng() % 2 : rng() % 6));
  return p;
}

// Node at path with the added formulas removed again from its context.
Natural unweaken(const Natural& node, const Sequent& delta, const Sequent& original) {
  if (node == 0) return 0;
  auto xs = decodeSeq(node);
  Sequent g = Sequent::decode(xs[1]);
  Sequent back;
  for (const auto& f : g.members())
    if (!delta.contains(f) || original.contains(f)) back = back.with(f);
  xs[1] = back.code();
  return encodeSeq(xs);
}

// Input choices with the waiting steps of recToPrec inserted after each
// omega step: n is followed by z zeros, z the least halting time of <e>(n).
// Stops early when an input node fails to decode or an index does not halt.
struct Mapped {
  std::vector<Natural> input;  // codes along the input path
  std::vector<std::uint64_t> output;
  std::size_t omegaSteps = 0;
};

Mapped mapChoices(const Natural& a, const std::vector<std::uint64_t>& choices) {
  Mapped m;
  Natural node = a;
  m.input.push_back(node);
  for (auto n : choices) {
    Code k = Code::decode(node);
    if (n >= k.premiseCount() && k.rule != Rule::Omega) break;
    m.output.push_back(n);
    if (k.rule == Rule::Omega) {
      std::vector<Natural> args{Natural(n)};
      auto z = haltingSteps(k.index(), args, 10000000);
      REQUIRE(z);
      m.output.insert(m.output.end(), *z, 0);
      node = *extractU(k.index(), args, *z);
      ++m.omegaSteps;
    } else {
      node = k.subs[n];
    }
    m.input.push_back(node);
  }
  return m;
}

Rule tagOf(const Natural& node) { return static_cast<Rule>(decodeSeq(node).at(0).get_ui()); }

}  // namespace

TEST_CASE("weakening indices are certified") {
  CHECK(isPR(weakSimpleIndex()));
  CHECK(isPR(weakStrictIndex()));
}

TEST_CASE("weakening an axiom") {
  auto a = mkAx(S({"(= 0 0)"}));
  CHECK(weakSimple(a, S({"(= 0 1)"})) == mkAx(S({"(= 0 0)", "(= 0 1)"})));
  CHECK(weakStrict(a, S({"(= 0 1)"})) == mkAx(S({"(= 0 0)", "(= 0 1)"})));
  CHECK(weakStrict(mkAx(S({"(= 0 1)"})), Sequent{}) == 0);
}

TEST_CASE("kernel weakening matches the host construction") {
  REQUIRE(codes().size() >= 20);
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    for (const auto& d : deltas()) {
      CHECK(weakSimple(c.code, d) == weakSimpleReference(c.code, d));
      CHECK(weakStrict(c.code, d) == weakStrictReference(c.code, d));
    }
  }
}

TEST_CASE("end law and height preservation") {
  int pairs = 0;
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    auto before = checkMembership(c.code, systemFor(c), bounds());
    REQUIRE(before.verified());
    for (const auto& d : deltas()) {
      for (bool strict : {false, true}) {
        auto w = strict ? weakStrict(c.code, d) : weakSimple(c.code, d);
        CHECK(endRule(w).end == endRule(c.code).end.unite(d));
        auto after = checkMembership(w, systemFor(c), bounds());
        CHECK(after.status == before.status);
        CHECK(after.height == before.height);
        CHECK(after.nodes == before.nodes);
      }
      ++pairs;
    }
  }
  CHECK(pairs >= 100);
}

TEST_CASE("weak with empty delta is the identity on nodes") {
  std::mt19937_64 rng(3);
  for (const auto& c : codes()) {
    auto w = weakSimple(c.code, Sequent{});
    auto ws = weakStrict(c.code, Sequent{});
    for (int k = 0; k < 30; ++k) {
      auto sigma = encodeSeq(randomPath(rng));
      auto pv = proofValue(c.code, sigma, 1000000);
      REQUIRE(pv.status == ProofValueStatus::Node);
      CHECK(proofValue(w, sigma, 1000000).node == pv.node);
      CHECK(proofValue(ws, sigma, 1000000).node == pv.node);
    }
  }
}

TEST_CASE("weakened nodes carry the added formulas") {
  std::mt19937_64 rng(4);
  auto d = S({"(= 1 0)", "(ex (!= (v 0) (v 0)))"});
  for (const auto& c : codes()) {
    auto w = weakStrict(c.code, d);
    for (int k = 0; k < 20; ++k) {
      auto sigma = encodeSeq(randomPath(rng));
      auto orig = proofValue(c.code, sigma, 1000000).node;
      auto got = proofValue(w, sigma, 1000000).node;
      if (orig == 0) {
        CHECK(got == 0);
        continue;
      }
      Sequent og = Sequent::decode(decodeSeq(orig)[1]);
      CHECK(unweaken(got, d, og) == orig);
    }
  }
}

TEST_CASE("strict omega clause stops at a premise with the wrong end") {
  using namespace dsl;
  auto all = F("(all (= (v 0) (v 0)))");
  Sequent g{};
  // Premise 2 proves 3 = 3 instead of 2 = 2.
  auto good = reflIndex(g);
  auto three = evalIndex(good, {3}, 100000).value;
  auto bad = function(1, [&](const Exprs& x) { return ite(eq(x[0], lit(2)), lit(three), callIndex(good, {x[0]})); })->encode();
  auto a = mkOmega(g, all, bad);
  CHECK(checkMembership(a, System::Crec, bounds()).reason == "WrongInstance");
  auto w = weakStrict(a, S({"(= 0 1)"}));
  auto walked = pathWalk(w, {2}, 100000);
  REQUIRE(walked.size() == 2);
  CHECK(walked[1] == 0);
  auto v = checkMembership(w, System::Crec, bounds());
  CHECK(v.refuted());
  CHECK(*v.path == Path{2});
  CHECK(v.reason == "Malformed");
  auto ws = weakSimple(a, S({"(= 0 1)"}));
  CHECK(checkMembership(ws, System::Crec, bounds()).reason == "WrongInstance");
}

TEST_CASE("mutations are refuted where recorded") {
  int breaking = 0;
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    auto sys = systemFor(c);
    for (auto kind : {MutationKind::Identity, MutationKind::WrongNumeral, MutationKind::DropContext,
                      MutationKind::SwapCutDual, MutationKind::MuWrapOmega}) {
      CAPTURE(mutationName(kind));
      auto precSys = c.hasCut ? System::Cprec : System::CprecCutFree;
      // psi codes carry indices of a partial search, so they are outside the PR systems.
      if (kind == MutationKind::MuWrapOmega && !checkMembership(c.code, precSys, bounds()).verified()) continue;
      auto sites = mutationSites(c.code, kind, 3, 3);
      if (sites.size() > 2) sites.resize(2);
      for (const auto& site : sites) {
        CAPTURE(pathStr(site));
        auto m = mutate(c.code, site, kind);
        auto checkSys = kind == MutationKind::MuWrapOmega ? precSys : sys;
        auto v = checkMembership(m.code, checkSys, bounds());
        if (kind == MutationKind::Identity) {
          CHECK(v.line() == checkMembership(c.code, checkSys, bounds()).line());
          continue;
        }
        REQUIRE(v.refuted());
        CHECK(v.reason == m.reason);
        CHECK(*v.path == m.path);
        CHECK(replayRefutation(m.code, checkSys, bounds(), v));
        auto ws = weakStrict(m.code, S({"(= 1 0)"}));
        auto vs = checkMembership(ws, checkSys, bounds());
        REQUIRE(vs.refuted());
        CHECK(*vs.path == m.strictPath);
        CHECK(vs.reason == (kind == MutationKind::MuWrapOmega ? "NotPR" : "Malformed"));
        if (kind != MutationKind::MuWrapOmega) ++breaking;
      }
    }
  }
  CHECK(breaking >= 20);
}

TEST_CASE("codeToIndex denotes the same proof") {
  auto g = S({"(= 0 0)"});
  auto p = codeToIndex(mkAx(g));
  CHECK(evalIndex(p, {encodeSeq({})}, 100000).value == encodeSeq({0, g.code()}));
  CHECK(evalIndex(p, {encodeSeq({0})}, 100000).value == 0);

  std::mt19937_64 rng(8);
  int samples = 0;
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    auto idx = codeToIndex(c.code);
    for (int k = 0; k < 10; ++k, ++samples) {
      auto sigma = encodeSeq(randomPath(rng));
      auto r = evalIndex(idx, {sigma}, 1000000);
      REQUIRE(r.ok());
      CHECK(r.value == proofValue(c.code, sigma, 1000000).node);
    }
    if (checkMembership(c.code, systemFor(c), bounds(5)).verified())
      CHECK(checkProofIndex(idx, bounds(5)).verified());
  }
  CHECK(samples >= 200);
}

TEST_CASE("indexToCodeExact") {
  auto g = S({"(= 0 0)"});
  auto a = indexToCodeExact(schuetteIndex(g), 100000);
  REQUIRE(a);
  CHECK(*a == mkAx(g));

  std::mt19937_64 rng(9);
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    auto back = indexToCodeExact(codeToIndex(c.code), 10000000);
    REQUIRE(back);
    CHECK(endRule(*back).end == endRule(c.code).end);
    for (int k = 0; k < 10; ++k) {
      auto sigma = encodeSeq(randomPath(rng));
      CHECK(proofValue(*back, sigma, 1000000).node == proofValue(c.code, sigma, 1000000).node);
    }
  }
  using namespace dsl;
  auto garbage = function(1, [](const Exprs&) { return lit(12345); })->encode();
  CHECK_THROWS_WITH_AS(indexToCodeExact(garbage, 100000), "MalformedNode", TransformError);
}

namespace {

// Follows sigma in the original tree and the matching path in the cut
// translation; returns false once sigma leaves the tree.
struct CutAudit {
  int finitarySteps = 0;
  int cuts = 0;
  bool sameNode = true;
};

CutAudit auditCutPath(const Natural& p, const Natural& t, const Path& sigma, std::uint64_t n) {
  CutAudit out;
  Path orig, mapped;
  auto nodeAt = [](const Natural& idx, const Path& q) { return evalIndex(idx, {encodeSeq(q)}, 10000000).value; };
  auto check = [&]() {
    auto o = nodeAt(p, orig);
    auto m = proofValue(t, encodeSeq(mapped), 10000000).node;
    if (o == 0 || m == 0) return false;
    auto ox = decodeSeq(o), mx = decodeSeq(m);
    if (ox[0] != mx[0] || ox.size() != mx.size() || (ox.size() == 3 && ox[2] != mx[2])) out.sameNode = false;
    Sequent og = Sequent::decode(ox[1]), mg = Sequent::decode(mx[1]);
    for (const auto& f : og.members())
      if (!mg.contains(f)) out.sameNode = false;
    return true;
  };
  if (!check()) return out;
  for (const auto& j : sigma) {
    auto o = decodeSeq(nodeAt(p, orig));
    orig.push_back(j);
    if (nodeAt(p, orig) == 0) break;
    if (o[0] == 3) {
      mapped.push_back(j);
    } else {
      ++out.finitarySteps;
      mapped.push_back(j);
      auto cut = proofValue(t, encodeSeq(mapped), 10000000).node;
      auto cx = decodeSeq(cut);
      if (cx[0] == 5 && Formula::decode(cx[2]) == cutGadgetFormula()) ++out.cuts;
      mapped.push_back(0);
      mapped.push_back(Natural(n));
    }
    check();
  }
  return out;
}

}  // namespace

TEST_CASE("indexToCodeCut") {
  auto fixtures = loadFixtures(defaultFixtureDir());
  std::mt19937_64 rng(10);
  int converted = 0;
  for (const auto& f : fixtures) {
    if (!*f.truth || converted == 6) continue;
    CAPTURE(f.name);
    auto p = schuetteIndex(f.sentence);
    REQUIRE(isPR(p));
    auto t = indexToCodeCut(p, 10000000);
    REQUIRE(t);
    if (Code::decode(*t).rule == Rule::Ax) continue;  // nothing to translate
    CHECK(isPR(cutTranslationIndex(p)));
    CHECK(endRule(*t).end == f.sentence);
    auto v = checkMembership(*t, System::Cprec, bounds());
    CHECK(v.status == VerdictStatus::VerifiedToBound);
    for (int k = 0; k < 10; ++k) {
      Path sigma = randomPath(rng);
      auto audit = auditCutPath(p, *t, sigma, rng() % 4);
      CHECK(audit.cuts == audit.finitarySteps);
      CHECK(audit.sameNode);
    }
    ++converted;
  }
  CHECK(converted >= 5);

  using namespace dsl;
  auto mu = function(1, [](const Exprs& x) { return add(x[0], search([](Expr z) { return z; })); })->encode();
  CHECK_THROWS_WITH_AS(indexToCodeCut(mu, 1000), "NotPR", TransformError);
}

TEST_CASE("cut gadget shape") {
  auto p = schuetteIndex(S({"(and (= 0 0) (or (= 1 0) (= 1 1)))"}));
  auto t = indexToCodeCut(p, 10000000);
  REQUIRE(t);
  Code root = Code::decode(*t);
  REQUIRE(root.rule == Rule::And);
  for (const auto& b : root.subs) {
    Code cut = Code::decode(b);
    REQUIRE(cut.rule == Rule::Cut);
    CHECK(*cut.main == cutGadgetFormula());
    Code left = Code::decode(cut.subs[0]);
    Code right = Code::decode(cut.subs[1]);
    CHECK(left.rule == Rule::Omega);
    CHECK(isPR(left.index()));
    REQUIRE(right.rule == Rule::Ex);
    Code leaf = Code::decode(right.subs[0]);
    CHECK(leaf.rule == Rule::Ax);
    CHECK(leaf.ctx.contains(F("(= 0 0)")));
    CHECK(isAxiom(leaf.ctx));
  }
}

TEST_CASE("pi2 construction") {
  using namespace dsl;
  auto f = F("(all (ex (= (v 0) (+ (v 1) 1))))");
  auto succ = function(1, [](const Exprs& x) { return add(x[0], lit(1)); })->encode();
  REQUIRE(isPR(succ));
  auto leaves = pi2AxiomLeaves(f);
  auto a = pi2Code(f, succ, leaves);
  CHECK(endRule(a).end == Sequent{f});
  CHECK(isPR(Code::decode(a).index()));

  // The exists rule fires on branch n exactly at depth n + 2.
  for (std::uint64_t n = 0; n <= 5; ++n) {
    std::vector<std::uint64_t> choices{n};
    for (std::uint64_t k = 0; k < n + 3; ++k) choices.push_back(k % 3);
    auto nodes = pathWalk(a, choices, 1000000);
    REQUIRE(nodes.size() >= n + 3);
    for (std::uint64_t d = 0; d < n + 2; ++d) CHECK(Code::decode(nodes[d]).rule == Rule::Omega);
    Code ex = Code::decode(nodes[n + 2]);
    CHECK(ex.rule == Rule::Ex);
    CHECK(*ex.main == substitute(f.body(), n));
    CHECK(Code::decode(nodes[n + 3]).rule == Rule::Ax);
  }

  auto at = codeAt(a, {Natural(4), Natural(2)}, 1000000);
  REQUIRE(at);
  CHECK(endRule(*at).end == Sequent{f, substitute(f.body(), 4), substitute(f.body(), 2)});

  // Breadth 4 reaches the exists rule on branches 0..3 within depth 8.
  auto b = bounds();
  b.breadth = 4;
  auto v = checkMembership(a, System::CprecCutFree, b);
  CHECK(v.status == VerdictStatus::VerifiedToBound);

  auto mu = function(1, [](const Exprs& x) { return add(x[0], search([](Expr z) { return z; })); })->encode();
  CHECK_THROWS_WITH_AS(pi2Code(f, mu, leaves), "NotPR", TransformError);
  auto zero = function(1, [](const Exprs&) { return lit(0); })->encode();
  CHECK_THROWS_AS(pi2Code(f, zero, leaves), TransformError);
}

TEST_CASE("recToPrec structural clauses") {
  auto ax = mkAx(S({"(= 0 0)", "(= 1 0)"}));
  CHECK(recToPrec(ax) == ax);
  CHECK(isPR(recToPrecIndex()));
  Sequent g = S({"(= 0 1)"});
  Formula all = F("(all (= (v 0) (v 0)))");
  auto r = Code::decode(recToPrec(mkOmega(g, all, reflIndex(g))));
  CHECK(r.rule == Rule::Omega);
  CHECK(r.ctx == g.with(all));
  CHECK(*r.main == all);
  CHECK(isPR(r.index()));
}

TEST_CASE("recToPrec on the corpus") {
  std::mt19937_64 rng(11);
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    auto r = recToPrec(c.code);
    CHECK(r == recToPrecReference(c.code));
    CHECK(endRule(r).end == endRule(c.code).end);
    bool inCut = false, outCut = false;
    // Paths avoid omega premises of psi codes, whose waits run to thousands of steps.
    for (int i = 0; i < 6; ++i) {
      std::vector<std::uint64_t> ch;
      for (int j = 0; j < 5; ++j) ch.push_back(rng() % 2);
      Natural node = c.code;
      std::size_t keep = 0;
      for (; keep < ch.size(); ++keep) {
        Code k = Code::decode(node);
        if (k.rule == Rule::Ax || k.rule == Rule::Omega || ch[keep] >= k.premiseCount()) break;
        node = k.subs[ch[keep]];
      }
      ch.resize(keep);
      auto m = mapChoices(c.code, ch);
      auto out = pathWalk(r, m.output, 100000000);
      REQUIRE(out.size() == m.output.size() + 1);
      std::multiset<Rule> inTags, outTags;
      for (const auto& x : m.input) inTags.insert(tagOf(x));
      for (const auto& x : out) {
        if (tagOf(x) != Rule::Omega) outTags.insert(tagOf(x));
        outCut = outCut || tagOf(x) == Rule::Cut;
      }
      for (const auto& x : m.input) inCut = inCut || tagOf(x) == Rule::Cut;
      for (auto t : outTags) CHECK(outTags.count(t) <= inTags.count(t));
    }
    CHECK(inCut == outCut);
    // Every wait node branches, so the sample stays narrow.
    CheckBounds b;
    b.depth = 6;
    b.breadth = 2;
    auto v = checkMembership(r, c.hasCut ? System::Cprec : System::CprecCutFree, b);
    CHECK(v.status != VerdictStatus::Refuted);
    if (c.hasCut) CHECK(outCut);
  }
}

TEST_CASE("recToPrec waits exactly the halting time") {
  int samples = 0;
  Formula all = F("(all (= (v 0) (v 0)))");
  auto count = [&](const Natural& a, std::uint64_t n) {
    Code k = Code::decode(a);
    std::vector<Natural> args{Natural(n)};
    auto z = haltingSteps(k.index(), args, 10000000);
    REQUIRE(z);
    std::vector<std::uint64_t> ch(*z + 3, 0);
    ch[0] = n;
    auto nodes = pathWalk(recToPrec(a), ch, 100000000);
    std::uint64_t waits = 0;
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      auto xs = decodeSeq(nodes[i]);
      if (xs.at(0) != 3 || xs.at(2) != k.main->code()) break;
      ++waits;
    }
    CHECK(waits == *z);
    ++samples;
  };
  for (const auto& g : deltas())
    for (std::uint64_t n = 0; n < 6; ++n) count(mkOmega(g, all, reflIndex(g)), n);
  for (const auto& c : codes())
    if (c.name == "forall_refl" || c.name == "add_zero") count(c.code, 0);
  CHECK(samples >= 30);
}

TEST_CASE("recToPrec transfers refutations") {
  int transferred = 0, waiting = 0;
  for (const auto& c : codes()) {
    CAPTURE(c.name);
    for (auto kind : {MutationKind::WrongNumeral, MutationKind::DropContext, MutationKind::SwapCutDual}) {
      auto sites = mutationSites(c.code, kind, 4, 1);
      if (sites.size() > 3) sites.resize(3);
      for (const auto& site : sites) {
        CAPTURE(pathStr(site));
        auto m = mutate(c.code, site, kind);
        std::vector<std::uint64_t> ch;
        for (const auto& x : m.path) ch.push_back(x.get_ui());
        auto mapped = mapChoices(m.code, ch);
        REQUIRE(mapped.input.size() == ch.size() + 1);
        auto r = recToPrec(m.code);
        if (tagOf(mapped.input.back()) == Rule::Omega && kind != MutationKind::SwapCutDual) {
          // The broken premise never gets past its end check: waiting goes on forever.
          std::vector<std::uint64_t> walk = mapped.output;
          walk.push_back(site.back().get_ui());
          walk.resize(walk.size() + 200, 0);
          auto nodes = pathWalk(r, walk, 100000000);
          REQUIRE(nodes.size() == walk.size() + 1);
          for (std::size_t i = mapped.output.size() + 1; i < nodes.size(); ++i) CHECK(tagOf(nodes[i]) == Rule::Omega);
          ++waiting;
          continue;
        }
        // Below an omega step the strict weakening reports the break at the
        // end of the last wait.
        Path want;
        std::string reason = m.reason;
        if (mapped.omegaSteps == 0) {
          want = m.path;
        } else {
          std::size_t last = 0, seen = 0;
          for (std::size_t i = 0; i < ch.size(); ++i) {
            if (tagOf(mapped.input[i]) == Rule::Omega) {
              std::vector<Natural> args{Natural(ch[i])};
              auto z = *haltingSteps(Code::decode(mapped.input[i]).index(), args, 10000000);
              seen += 1 + z;
              last = seen;
            } else {
              seen += 1;
            }
          }
          want.assign(mapped.output.begin(), mapped.output.begin() + last);
          reason = "Malformed";
        }
        CheckBounds b;
        b.depth = static_cast<std::uint32_t>(want.size() + 1);
        b.breadth = 1;
        b.fuel = 100000000;
        auto v = checkMembership(r, System::Cprec, b);
        REQUIRE(v.refuted());
        CHECK(*v.path == want);
        CHECK(v.reason == reason);
        ++transferred;
      }
    }
  }
  CHECK(transferred >= 20);
  CHECK(waiting >= 3);
}

TEST_CASE("recToPrec of an index that never halts at 1") {
  Sequent g;
  Formula all = F("(all (= (v 0) (v 0)))");
  Natural refl = reflIndex(g);
  auto e = dsl::function(1, [&](const dsl::Exprs& x) {
             return dsl::ite(dsl::eq(x[0], dsl::lit(1)), dsl::search([](dsl::Expr) { return dsl::lit(1); }),
                             dsl::callIndex(refl, {x[0]}));
           })->encode();
  auto r = recToPrec(mkOmega(g, all, e));
  for (std::uint64_t pick : {0, 1, 3}) {
    std::vector<std::uint64_t> ch(60, pick);
    ch[0] = 1;
    auto nodes = pathWalk(r, ch, 100000000);
    REQUIRE(nodes.size() == ch.size() + 1);
    for (const auto& x : nodes) CHECK(tagOf(x) == Rule::Omega);
  }
  std::vector<Natural> one{Natural(1)};
  CHECK_FALSE(haltingSteps(e, one, 100000));
}
