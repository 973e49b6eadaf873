// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "omega/builder.hpp"
#include "omega/cli.hpp"
#include "omega/corpus.hpp"
#include "omega/eval.hpp"
#include "omega/kleeneo.hpp"
#include "omega/ops.hpp"
#include "omega/recfun.hpp"
#include "omega/schuette.hpp"
#include "omega/transforms.hpp"

using namespace omega;

namespace {

// Collects failed expectations of one criterion.
class Report {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  bool ok() const { return failed_ == 0; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks";
    if (failed_) s << ", " << failed_ << " failed";
    for (const auto& f : failures_) s << "\n    " << f;
    return s.str();
  }
  std::uint64_t checks() const { return checks_; }

 private:
  std::uint64_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

Formula F(const char* s) { return Formula::parse(s); }

Natural N(std::uint64_t v) { return Natural(static_cast<unsigned long>(v)); }

double secondsSince(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<Fixture>& fixtures() {
  static const auto fs = loadFixtures(defaultFixtureDir());
  return fs;
}

const std::vector<CorpusCode>& codes() {
  static const auto cs = corpusCodes(fixtures());
  return cs;
}

CheckBounds bounds(std::uint32_t depth, std::uint32_t breadth, std::uint64_t fuel = 1000000) {
  CheckBounds b;
  b.depth = depth;
  b.breadth = breadth;
  b.fuel = fuel;
  return b;
}

System systemFor(const CorpusCode& c) { return c.hasCut ? System::Crec : System::CrecCutFree; }

Path randomPath(std::mt19937_64& rng, std::uint64_t maxLen) {
  Path p;
  auto len = rng() % (maxLen + 1);
  for (std::uint64_t i = 0; i < len; ++i) p.push_back(N(rng() % 2 ? rng() % 2 : rng() % 6));
  return p;
}

bool hasOmega(const Natural& a) {
  Code c = Code::decode(a);
  if (c.rule == Rule::Omega) return true;
  for (const auto& s : c.subs)
    if (hasOmega(s)) return true;
  return false;
}

Rule tagOf(const Natural& node) { return static_cast<Rule>(decodeSeq(node).at(0).get_ui()); }

// ---- 1: kernel laws ----

ProgramPtr randomProgram(std::mt19937_64& rng, std::uint32_t arity, int size) {
  if (size <= 1 || arity == 0) {
    switch (rng() % 3) {
      case 0: return prog::zero(arity);
      case 1: return arity ? prog::proj(arity, rng() % arity) : prog::constant(0, rng() % 4);
      default: return prog::constant(arity, rng() % 4);
    }
  }
  switch (rng() % 4) {
    case 0: return prog::comp(prog::succ(), {randomProgram(rng, arity, size - 1)});
    case 1: {
      std::uint32_t k = 1 + rng() % 2;
      std::vector<ProgramPtr> gs;
      for (std::uint32_t i = 0; i < k; ++i) gs.push_back(randomProgram(rng, arity, size / 2));
      return prog::comp(randomProgram(rng, k, size / 2), gs);
    }
    case 2:
      return prog::primRec(randomProgram(rng, arity - 1 == 0 ? 0 : arity - 1, size / 2),
                           randomProgram(rng, arity + 1, size / 2));
    default:
      return prog::op(opId("add"), {randomProgram(rng, arity, size / 2), randomProgram(rng, arity, size / 2)});
  }
}

void kernelLaws(Report& r) {
  std::mt19937_64 rng(101);
  int smn = 0;
  while (smn < 60) {
    auto p = randomProgram(rng, 3, 6);
    std::vector<Natural> frozen{N(rng() % 5)};
    std::vector<Natural> xs{N(rng() % 5), N(rng() % 5)};
    std::vector<Natural> all{frozen[0], xs[0], xs[1]};
    auto rhs = evalIndex(p->encode(), all, 1u << 22);
    if (!rhs.ok()) continue;
    auto lhs = evalIndex(lambdaIndex(Index::of(p), frozen).code, xs, 1u << 22);
    r.expect(lhs.ok() && lhs.value == rhs.value, "s-m-n law on " + p->str());
    ++smn;
  }
  // The body reads its own index, so the law is not vacuous.
  for (int i = 0; i < 60; ++i) {
    auto g = prog::op(opId("add"), {randomProgram(rng, 2, 6), prog::proj(2, 0)});
    auto f = fix(Index::of(g));
    Natural x = N(rng() % 5);
    auto lhs = evalIndex(f.code, {x}, 1u << 22);
    auto rhs = evalIndex(g->encode(), {f.code, x}, 1u << 22);
    r.expect(lhs.status == rhs.status && (!rhs.ok() || lhs.value == rhs.value), "fixed point law on " + g->str());
  }
  for (int i = 0; i < 100; ++i) {
    auto p = randomProgram(rng, 2, 7);
    std::vector<Natural> xs{N(rng() % 6), N(rng() % 6)};
    std::uint64_t f = 1 + rng() % 200;
    auto a = evalIndex(p->encode(), xs, f);
    auto b = evalIndex(p->encode(), xs, f + 1 + rng() % 1000);
    r.expect(!a.ok() || (b.ok() && a.value == b.value), "fuel monotonicity on " + p->str());
  }
}

// ---- 2: completeness on true fixtures ----

void completeness(Report& r) {
  std::mt19937_64 rng(102);
  int count = 0;
  for (const auto& f : fixtures()) {
    if (!*f.truth) continue;
    ++count;
    auto t0 = std::chrono::steady_clock::now();
    auto root = OrderedSequent::fromSequent(f.sentence);
    r.expect(rank(f.sentence.members()[0]) <= 4, f.name + ": rank above 4");
    auto p = psi(root, 1000000);
    if (p.status != PsiStatus::Code) {
      r.expect(false, f.name + ": psi gave no code");
      continue;
    }
    r.expect(endRule(p.code).end == f.sentence, f.name + ": end sequent");
    auto v = checkMembership(p.code, System::CrecCutFree, bounds(8, 6));
    // Without an omega node the whole tree is explored.
    auto want = hasOmega(p.code) ? VerdictStatus::VerifiedToBound : VerdictStatus::VerifiedComplete;
    r.expect(v.status == want, f.name + ": " + v.line());
    for (int k = 0; k < 100; ++k) {
      auto path = randomPath(rng, 6);
      auto pv = proofValue(p.code, encodeSeq(path), 1000000);
      r.expect(pv.status == ProofValueStatus::Node && pv.node == schuetteNode(root, path),
               f.name + ": proof value at " + pathStr(path));
    }
    r.expect(secondsSince(t0) < 10.0, f.name + ": slower than 10 s");
  }
  r.expect(count >= 20, "fewer than 20 true fixtures");
}

// ---- 3: false fixtures ----

void falsity(Report& r) {
  int count = 0;
  for (const auto& f : fixtures()) {
    if (*f.truth) continue;
    ++count;
    auto p = psi(OrderedSequent::fromSequent(f.sentence), 200000);
    if (f.expect == "diverged") {
      r.expect(p.status == PsiStatus::Diverged, f.name + ": expected divergence");
    } else if (f.expect == "deadend") {
      r.expect(p.status == PsiStatus::DeadEnd && f.branch && p.deadEnd == *f.branch, f.name + ": dead end branch");
    } else if (p.status != PsiStatus::Code || !f.branch) {
      r.expect(false, f.name + ": expected a refutable code");
    } else {
      auto v = checkMembership(p.code, System::CrecCutFree, bounds(8, 6));
      r.expect(v.refuted() && v.path && *v.path == *f.branch && v.reason == f.reason, f.name + ": " + v.line());
      r.expect(replayRefutation(p.code, System::CrecCutFree, bounds(8, 6), v), f.name + ": witness does not replay");
    }
  }
  r.expect(count >= 10, "fewer than 10 false fixtures");
}

// ---- 4: weakening ----

void weakening(Report& r) {
  std::vector<Sequent> deltas{Sequent{}, Sequent{F("(= 0 1)")}, Sequent{F("(all (= (v 0) 0))")},
                              Sequent{F("(= 1 0)"), F("(ex (!= (v 0) (v 0)))")}, Sequent{F("(= 0 0)")}};
  int pairs = 0;
  for (const auto& c : codes()) {
    auto before = checkMembership(c.code, systemFor(c), bounds(8, 6));
    r.expect(before.verified(), c.name + ": corpus code " + before.line());
    for (const auto& d : deltas) {
      for (bool strict : {false, true}) {
        auto w = strict ? weakStrict(c.code, d) : weakSimple(c.code, d);
        r.expect(endRule(w).end == endRule(c.code).end.unite(d), c.name + ": end law");
        auto after = checkMembership(w, systemFor(c), bounds(8, 6));
        r.expect(after.status == before.status && after.height == before.height, c.name + ": height changed");
      }
      ++pairs;
    }
  }
  r.expect(pairs >= 100, "fewer than 100 pairs");

  int breaking = 0;
  const Sequent delta{F("(= 1 0)")};
  for (const auto& c : codes()) {
    for (auto kind : {MutationKind::WrongNumeral, MutationKind::DropContext, MutationKind::SwapCutDual}) {
      auto sites = mutationSites(c.code, kind, 3, 3);
      if (sites.size() > 2) sites.resize(2);
      for (const auto& site : sites) {
        auto m = mutate(c.code, site, kind);
        auto vs = checkMembership(weakStrict(m.code, delta), systemFor(c), bounds(8, 6));
        r.expect(vs.refuted() && vs.path && *vs.path == m.strictPath,
                 c.name + " " + std::string(mutationName(kind)) + " at " + pathStr(site) + ": " + vs.line());
        ++breaking;
      }
    }
  }
  r.expect(breaking >= 20, "fewer than 20 mutations");
}

// ---- 5: cut conversion ----

struct CutAudit {
  int finitarySteps = 0;
  int cuts = 0;
  bool sameNode = true;
};

// Follows sigma in the tree of p and the matching path in t, where every
// finitary step is followed by the cut's left premise and an omega choice.
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
    mapped.push_back(j);
    if (o[0] != 3) {
      ++out.finitarySteps;
      auto cx = decodeSeq(proofValue(t, encodeSeq(mapped), 10000000).node);
      if (cx[0] == 5 && Formula::decode(cx[2]) == cutGadgetFormula()) ++out.cuts;
      mapped.push_back(0);
      mapped.push_back(N(n));
    }
    check();
  }
  return out;
}

void cutConversion(Report& r) {
  r.expect(cutGadgetFormula() == F("(all (!= (v 0) (v 0)))"), "cut formula is " + cutGadgetFormula().str());
  std::mt19937_64 rng(105);
  int converted = 0;
  for (const auto& f : fixtures()) {
    if (!*f.truth || converted == 6) continue;
    auto p = schuetteIndex(f.sentence);
    r.expect(isPR(p), f.name + ": tree index not certified");
    auto t = indexToCodeCut(p, 10000000);
    if (!t) {
      r.expect(false, f.name + ": conversion ran out of fuel");
      continue;
    }
    if (Code::decode(*t).rule == Rule::Ax) continue;
    r.expect(endRule(*t).end == f.sentence, f.name + ": end sequent");
    auto v = checkMembership(*t, System::Cprec, bounds(8, 6));
    r.expect(v.status == VerdictStatus::VerifiedToBound, f.name + ": " + v.line());
    for (int k = 0; k < 10; ++k) {
      Path sigma = randomPath(rng, 5);
      auto audit = auditCutPath(p, *t, sigma, rng() % 4);
      r.expect(audit.cuts == audit.finitarySteps && audit.sameNode, f.name + ": audit along " + pathStr(sigma));
    }
    ++converted;
  }
  r.expect(converted >= 5, "fewer than 5 conversions");
}

// ---- 6: recToPrec ----

// Input choices with the waits of recToPrec inserted after each omega step:
// n is followed by z zeros, z the least halting time of <e>(n).
struct Mapped {
  std::vector<Natural> input;
  std::vector<std::uint64_t> output;
  std::size_t omegaSteps = 0;
  bool ok = true;
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
      std::vector<Natural> args{N(n)};
      auto z = haltingSteps(k.index(), args, 10000000);
      if (!z) {
        m.ok = false;
        break;
      }
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

// Number of wait nodes directly above premise n of the omega node a.
std::optional<std::uint64_t> waitsAbove(const Natural& a, std::uint64_t n, std::uint64_t& halting) {
  Code k = Code::decode(a);
  std::vector<Natural> args{N(n)};
  auto z = haltingSteps(k.index(), args, 10000000);
  if (!z) return std::nullopt;
  halting = *z;
  std::vector<std::uint64_t> ch(*z + 3, 0);
  ch[0] = n;
  auto nodes = pathWalk(recToPrec(a), ch, 100000000);
  std::uint64_t waits = 0;
  for (std::size_t i = 1; i < nodes.size(); ++i) {
    auto xs = decodeSeq(nodes[i]);
    if (xs.at(0) != 3 || xs.at(2) != k.main->code()) break;
    ++waits;
  }
  return waits;
}

void recToPrecCriterion(Report& r) {
  r.expect(isPR(recToPrecIndex()), "translator index not certified");
  std::mt19937_64 rng(106);
  for (const auto& c : codes()) {
    auto out = recToPrec(c.code);
    r.expect(endRule(out).end == endRule(c.code).end, c.name + ": end sequent");
    bool inCut = false, outCut = false;
    // Finitary paths only: psi omega premises wait thousands of steps.
    for (int i = 0; i < 6; ++i) {
      std::vector<std::uint64_t> ch;
      Natural node = c.code;
      for (int j = 0; j < 5; ++j) {
        Code k = Code::decode(node);
        auto pick = rng() % 2;
        if (k.rule == Rule::Ax || k.rule == Rule::Omega || pick >= k.premiseCount()) break;
        ch.push_back(pick);
        node = k.subs[pick];
      }
      auto m = mapChoices(c.code, ch);
      auto nodes = pathWalk(out, m.output, 100000000);
      r.expect(nodes.size() == m.output.size() + 1, c.name + ": mapped path leaves the output");
      for (const auto& x : m.input) inCut = inCut || tagOf(x) == Rule::Cut;
      for (const auto& x : nodes) {
        outCut = outCut || tagOf(x) == Rule::Cut;
        if (tagOf(x) == Rule::Omega) r.expect(isPR(Code::decode(x).index()), c.name + ": omega index not certified");
      }
    }
    r.expect(inCut == outCut, c.name + ": cut-freeness changed");
    auto v = checkMembership(out, c.hasCut ? System::Cprec : System::CprecCutFree, bounds(6, 2));
    r.expect(v.status != VerdictStatus::Refuted, c.name + ": " + v.line());
  }

  int samples = 0;
  Formula all = F("(all (= (v 0) (v 0)))");
  std::vector<Sequent> ctxs{Sequent{}, Sequent{F("(= 0 1)")}, Sequent{F("(all (= (v 0) 0))")},
                            Sequent{F("(= 1 0)"), F("(ex (!= (v 0) (v 0)))")}, Sequent{F("(= 0 0)")}};
  auto countAt = [&](const Natural& a, std::uint64_t n) {
    std::uint64_t z = 0;
    auto w = waitsAbove(a, n, z);
    r.expect(w && *w == z, "waits above premise " + std::to_string(n));
    ++samples;
  };
  for (const auto& g : ctxs)
    for (std::uint64_t n = 0; n < 6; ++n) countAt(mkOmega(g, all, reflIndex(g)), n);
  for (const auto& c : codes())
    if (c.name == "forall_refl" || c.name == "add_zero") countAt(c.code, 0);
  r.expect(samples >= 30, "fewer than 30 wait samples");

  int transferred = 0, waiting = 0;
  for (const auto& c : codes()) {
    for (auto kind : {MutationKind::WrongNumeral, MutationKind::DropContext, MutationKind::SwapCutDual}) {
      auto sites = mutationSites(c.code, kind, 4, 1);
      if (sites.size() > 3) sites.resize(3);
      for (const auto& site : sites) {
        auto m = mutate(c.code, site, kind);
        std::vector<std::uint64_t> ch;
        for (const auto& x : m.path) ch.push_back(x.get_ui());
        auto mapped = mapChoices(m.code, ch);
        const std::string where = c.name + " " + std::string(mutationName(kind)) + " at " + pathStr(site);
        if (!mapped.ok || mapped.input.size() != ch.size() + 1) {
          r.expect(false, where + ": witness path does not map");
          continue;
        }
        auto out = recToPrec(m.code);
        if (tagOf(mapped.input.back()) == Rule::Omega && kind != MutationKind::SwapCutDual) {
          // A premise with the wrong end never passes its check, so the waits go on.
          std::vector<std::uint64_t> walk = mapped.output;
          walk.push_back(site.back().get_ui());
          walk.resize(walk.size() + 200, 0);
          auto nodes = pathWalk(out, walk, 100000000);
          bool endless = nodes.size() == walk.size() + 1;
          for (std::size_t i = mapped.output.size() + 1; endless && i < nodes.size(); ++i)
            endless = tagOf(nodes[i]) == Rule::Omega;
          r.expect(endless, where + ": waits end");
          ++waiting;
          continue;
        }
        Path want;
        std::string reason = m.reason;
        if (mapped.omegaSteps == 0) {
          want = m.path;
        } else {
          std::size_t last = 0, seen = 0;
          for (std::size_t i = 0; i < ch.size(); ++i) {
            if (tagOf(mapped.input[i]) == Rule::Omega) {
              std::vector<Natural> args{N(ch[i])};
              seen += 1 + *haltingSteps(Code::decode(mapped.input[i]).index(), args, 10000000);
              last = seen;
            } else {
              seen += 1;
            }
          }
          want.assign(mapped.output.begin(), mapped.output.begin() + last);
          reason = "Malformed";
        }
        auto v = checkMembership(out, System::Cprec, bounds(static_cast<std::uint32_t>(want.size() + 1), 1, 100000000));
        r.expect(v.refuted() && v.path && *v.path == want && v.reason == reason, where + ": " + v.line());
        ++transferred;
      }
    }
  }
  r.expect(transferred >= 20 && waiting >= 3, "too few transferred mutations");
}

// ---- 7: Kleene O ----

const NotationFixture* notationFixture(const std::vector<NotationFixture>& fs, const std::string& name) {
  for (const auto& f : fs)
    if (f.name == name) return &f;
  return nullptr;
}

void kleeneO(Report& r) {
  CheckBounds b = bounds(10, 4);
  std::uint32_t last = 0;
  for (unsigned long v : {1, 2, 4, 16}) {
    auto c = oToCode(ONotation::fromValue(v));
    r.expect(endRule(c).end == Sequent{reflAll()}, "end sequent for " + std::to_string(v));
    auto verdict = checkMembership(c, System::CrecCutFree, b);
    r.expect(verdict.status == VerdictStatus::VerifiedToBound, std::to_string(v) + ": " + verdict.line());
    r.expect(verdict.height > last, "height does not grow at " + std::to_string(v));
    last = verdict.height;
  }
  auto lim = ONotation::lim(iteratedPowerIndex());
  auto lv = checkMembership(oToCode(lim), System::CrecCutFree, bounds(10, 3));
  r.expect(lv.status == VerdictStatus::VerifiedToBound, "limit notation: " + lv.line());

  auto fs = loadNotationFixtures(defaultNotationDir());
  for (const char* name : {"lim_undefined_at_one", "lim_flat_pair"}) {
    auto f = notationFixture(fs, name);
    if (!f) {
      r.expect(false, std::string("missing fixture ") + name);
      continue;
    }
    auto v = checkO(f->notation, f->bounds);
    r.expect(v.refuted() && *v.path == *f->branch && v.reason == f->reason, f->name + ": " + v.line());
    auto vc = checkMembership(oToCode(f->notation), System::CrecCutFree, f->bounds);
    r.expect(vc.refuted() && *vc.path == *f->codeBranch && vc.reason == f->codeReason, f->name + " code: " + vc.line());
  }

  const Formula refl = reflAll();
  const Natural base = psi(Sequent{refl}, 1000000).code;
  for (unsigned long v : {1, 2, 4}) {
    auto c = oToCodeCut(ONotation::fromValue(v), refl, base);
    auto with = checkMembership(c, System::Crec, bounds(7, 4));
    r.expect(with.status == VerdictStatus::VerifiedToBound, "cut variant " + std::to_string(v) + ": " + with.line());
    auto without = checkMembership(c, System::CrecCutFree, bounds(7, 4));
    r.expect(without.refuted() && without.path->empty(), "cut-free check of cut variant: " + without.line());
  }
}

// ---- 8: Pi2 ----

void pi2(Report& r) {
  using namespace dsl;
  auto f = F("(all (ex (= (v 0) (+ (v 1) 1))))");
  auto succ = function(1, [](const Exprs& x) { return add(x[0], lit(1)); })->encode();
  auto a = pi2Code(f, succ, pi2AxiomLeaves(f));
  r.expect(endRule(a).end == Sequent{f}, "end sequent");
  auto v = checkMembership(a, System::CprecCutFree, bounds(8, 4));
  r.expect(v.status == VerdictStatus::VerifiedToBound, v.line());
  // Depth counts edges from the root: the exists node of branch n sits n + 2 below it.
  for (std::uint64_t n = 0; n <= 5; ++n) {
    std::vector<std::uint64_t> choices{n};
    for (std::uint64_t k = 0; k < n + 3; ++k) choices.push_back(k % 3);
    auto nodes = pathWalk(a, choices, 1000000);
    bool ok = nodes.size() >= n + 4;
    for (std::uint64_t d = 0; ok && d < n + 2; ++d) ok = Code::decode(nodes[d]).rule == Rule::Omega;
    if (ok) {
      Code ex = Code::decode(nodes[n + 2]);
      ok = ex.rule == Rule::Ex && *ex.main == substitute(f.body(), n);
      // The premise adds the instance at the witness n + 1.
      std::optional<std::uint64_t> witness;
      const Sequent premise = endRule(ex.subs[0]).end;
      for (const auto& g : premise.members())
        if (!endOf(ex).contains(g)) witness = instanceNumeral(ex.main->body(), g);
      ok = ok && witness == n + 1;
      ok = ok && Code::decode(nodes[n + 3]).rule == Rule::Ax;
    }
    r.expect(ok, "branch " + std::to_string(n));
  }
}

// ---- 9: Ackermann ----

void ackermannCriterion(Report& r) {
  auto t0 = std::chrono::steady_clock::now();
  Natural a = ackermannFixture();
  r.expect(endRule(a).end == Sequent{ackermannSentence()}, "end sequent");
  auto root = Code::decode(a);
  r.expect(isPR(root.index()), "outer index not certified");
  for (std::uint64_t n = 0; n < 5; ++n) {
    auto inner = Code::decode(*codeAt(a, {N(n)}, 1000000));
    r.expect(inner.rule == Rule::Omega && isPR(inner.index()), "inner index " + std::to_string(n));
  }
  auto v = checkMembership(a, System::CprecCutFree, bounds(6, 3));
  r.expect(v.status == VerdictStatus::VerifiedToBound, v.line());
  for (std::uint64_t n = 0; n < 4; ++n)
    for (std::uint64_t m = 0; m < 4; ++m) {
      auto node = codeAt(a, {N(n), N(m)}, 10000000);
      std::optional<std::uint64_t> w;
      if (node) {
        auto c = Code::decode(*node);
        if (c.rule == Rule::Ex) w = instanceNumeral(c.main->body(), *Code::decode(c.subs[0]).main);
      }
      r.expect(w && w == ackermann(n, m), "witness at " + std::to_string(n) + "," + std::to_string(m));
    }
  r.expect(secondsSince(t0) < 60.0, "slower than 60 s");
}

// ---- 10: reproducibility ----

std::vector<std::string> verdictBatch() {
  std::vector<std::string> out;
  for (const auto& c : codes())
    for (std::uint64_t seed : {0, 7, 42}) {
      auto b = bounds(6, 3);
      b.seed = seed;
      out.push_back(c.name + " " + checkMembership(c.code, systemFor(c), b).line());
    }
  for (const auto& f : loadNotationFixtures(defaultNotationDir()))
    out.push_back(f.name + " " + checkO(f.notation, f.bounds).line());
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"prove", "fixtures/forall_refl.seq", "--emit", "tree"},
           {"ocheck", "(lim iterated-power)", "--seed", "9"},
           {"oreduce", "16", "--emit", "number"}}) {
    std::ostringstream o, e;
    int s = runCommand(args, o, e);
    out.push_back(std::to_string(s) + " " + o.str());
  }
  return out;
}

void reproducibility(Report& r) {
  auto a = verdictBatch(), b = verdictBatch();
  r.expect(a.size() == b.size(), "batch sizes differ");
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) r.expect(a[i] == b[i], "differs: " + a[i]);
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<void(Report&)>>> criteria{
      {"kernel laws", kernelLaws},
      {"completeness on true fixtures", completeness},
      {"false fixtures", falsity},
      {"weakening", weakening},
      {"cut conversion of tree indices", cutConversion},
      {"recursive to primitive recursive codes", recToPrecCriterion},
      {"notations", kleeneO},
      {"pi2 construction", pi2},
      {"ackermann fixture", ackermannCriterion},
      {"reproducibility", reproducibility},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Report r;
    auto t0 = std::chrono::steady_clock::now();
    try {
      criteria[i].second(r);
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    char time[32];
    std::snprintf(time, sizeof time, "%.1f s", secondsSince(t0));
    std::cout << (r.ok() ? "PASS " : "FAIL ") << i + 1 << " " << criteria[i].first << " (" << r.summary() << ", "
              << time << ")" << std::endl;
    if (!r.ok()) ++failed;
  }
  return failed ? 1 : 0;
}
