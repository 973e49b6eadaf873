#include "omega/codes.hpp"

#include <functional>
#include <random>
#include <sstream>

#include "omega/eval.hpp"
#include "omega/recfun.hpp"

namespace omega {

std::string_view ruleName(Rule r) {
  switch (r) {
    case Rule::Ax: return "Ax";
    case Rule::And: return "∧";
    case Rule::Or: return "∨";
    case Rule::Omega: return "ω";
    case Rule::Ex: return "∃";
    case Rule::Cut: return "cut";
  }
  return "?";
}

std::optional<Rule> ruleFromName(std::string_view s) {
  if (s == "Ax") return Rule::Ax;
  if (s == "∧" || s == "and") return Rule::And;
  if (s == "∨" || s == "or") return Rule::Or;
  if (s == "ω" || s == "omega") return Rule::Omega;
  if (s == "∃" || s == "ex") return Rule::Ex;
  if (s == "cut") return Rule::Cut;
  return std::nullopt;
}

namespace {

std::size_t fieldCount(Rule r) {
  switch (r) {
    case Rule::Ax: return 2;
    case Rule::And:
    case Rule::Cut: return 5;
    default: return 4;
  }
}

bool mainShapeOk(Rule r, const Formula& f) {
  switch (r) {
    case Rule::And: return f.kind() == FormulaKind::And;
    case Rule::Or: return f.kind() == FormulaKind::Or;
    case Rule::Omega: return f.kind() == FormulaKind::All;
    case Rule::Ex: return f.kind() == FormulaKind::Ex;
    default: return true;
  }
}

Natural tag(Rule r) { return Natural(static_cast<unsigned>(r)); }

}  // namespace

std::size_t Code::premiseCount() const {
  switch (rule) {
    case Rule::Ax:
    case Rule::Omega: return 0;
    case Rule::And:
    case Rule::Cut: return 2;
    default: return 1;
  }
}

Code Code::decode(const Natural& a) {
  auto xs = decodeSeq(a);
  if (xs.empty() || xs[0] > 5) throw MalformedCode("unknown rule tag");
  Code c;
  c.rule = static_cast<Rule>(xs[0].get_ui());
  if (xs.size() != fieldCount(c.rule)) throw MalformedCode("wrong number of code fields");
  c.ctx = Sequent::decode(xs[1]);
  for (const auto& m : c.ctx.members())
    if (!m.isSentence()) throw MalformedCode("context member is not a sentence");
  if (c.rule != Rule::Ax) {
    c.main = Formula::decode(xs[2]);
    if (!c.main->isSentence() || !mainShapeOk(c.rule, *c.main)) throw MalformedCode("main formula has the wrong shape");
    c.subs.assign(xs.begin() + 3, xs.end());
  }
  c.code = a;
  return c;
}

Natural mkAx(const Sequent& g) { return encodeSeq({tag(Rule::Ax), g.code()}); }
Natural mkAnd(const Sequent& g, const Formula& main, const Natural& a, const Natural& b) {
  return encodeSeq({tag(Rule::And), g.code(), main.code(), a, b});
}
Natural mkOr(const Sequent& g, const Formula& main, const Natural& a) {
  return encodeSeq({tag(Rule::Or), g.code(), main.code(), a});
}
Natural mkOmega(const Sequent& g, const Formula& main, const Natural& e) {
  return encodeSeq({tag(Rule::Omega), g.code(), main.code(), e});
}
Natural mkEx(const Sequent& g, const Formula& main, const Natural& a) {
  return encodeSeq({tag(Rule::Ex), g.code(), main.code(), a});
}
Natural mkCut(const Sequent& g, const Formula& cutFormula, const Natural& a, const Natural& b) {
  return encodeSeq({tag(Rule::Cut), g.code(), cutFormula.code(), a, b});
}

Sequent endOf(const Code& c) {
  if (c.rule == Rule::Ax || c.rule == Rule::Cut) return c.ctx;
  return c.ctx.with(*c.main);
}

EndRule endRule(const Natural& a) {
  auto c = Code::decode(a);
  return {c.rule, endOf(c)};
}

std::optional<std::string> localCheck(const Code& a, const PremiseEnds& premEnds) {
  const Sequent& g = a.ctx;
  if (a.rule == Rule::Ax) {
    if (!isAxiom(g)) return std::string("NotAxiom");
    return std::nullopt;
  }
  const Formula& m = *a.main;
  for (const auto& [pos, end] : premEnds) {
    switch (a.rule) {
      case Rule::And:
        if (pos > 1) return std::string("NoSuchPremise");
        if (end != g.with(pos == 0 ? m.left() : m.right())) return std::string("WrongPremiseEnd");
        break;
      case Rule::Or:
        if (pos != 0) return std::string("NoSuchPremise");
        if (end != g.with(m.left()).with(m.right())) return std::string("WrongPremiseEnd");
        break;
      case Rule::Omega: {
        if (!pos.fits_ulong_p()) return std::string("WrongInstance");
        if (end != g.with(substitute(m.body(), pos.get_ui()))) return std::string("WrongInstance");
        break;
      }
      case Rule::Ex: {
        if (pos != 0) return std::string("NoSuchPremise");
        bool found = false;
        for (const auto& b : end.members()) {
          auto n = instanceNumeral(m.body(), b);
          if (n && end == g.with(substitute(m.body(), *n))) {
            found = true;
            break;
          }
        }
        if (!found) return std::string("NoInstance");
        break;
      }
      case Rule::Cut:
        if (pos > 1) return std::string("NoSuchPremise");
        if (end != g.with(pos == 0 ? m : negate(m))) return std::string("WrongPremiseEnd");
        break;
      case Rule::Ax:
        break;
    }
  }
  return std::nullopt;
}

std::string_view systemName(System s) {
  switch (s) {
    case System::Crec: return "rec";
    case System::Cprec: return "prec";
    case System::CrecCutFree: return "rec-";
    case System::CprecCutFree: return "prec-";
  }
  return "?";
}

std::optional<System> systemFromName(std::string_view s) {
  for (System x : {System::Crec, System::Cprec, System::CrecCutFree, System::CprecCutFree})
    if (systemName(x) == s) return x;
  return std::nullopt;
}

std::vector<std::uint64_t> CheckBounds::sample() const {
  std::vector<std::uint64_t> out;
  if (seed == 0) {
    for (std::uint64_t n = 0; n < breadth; ++n) out.push_back(n);
    return out;
  }
  out = {0, 1};
  std::mt19937_64 rng(seed);
  const std::uint64_t range = 4 * std::max<std::uint64_t>(breadth, 2);
  while (out.size() < std::max<std::uint32_t>(breadth, 2)) {
    std::uint64_t n = rng() % range;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string_view statusName(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::VerifiedComplete: return "VerifiedComplete";
    case VerdictStatus::VerifiedToBound: return "VerifiedToBound";
    case VerdictStatus::Refuted: return "Refuted";
    case VerdictStatus::ResourceExhausted: return "ResourceExhausted";
  }
  return "?";
}

std::string pathStr(const Path& p) {
  std::string s = "<";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ',';
    s += toDecimal(p[i]);
  }
  return s + ">";
}

std::string Verdict::line() const {
  std::ostringstream os;
  os << "VERDICT " << statusName(status) << " DEPTH " << depth << " SEED " << seed << " PATH "
     << (path ? pathStr(*path) : "-") << " REASON " << (reason.empty() ? "-" : reason);
  return os.str();
}

// ---- membership ----------------------------------------------------------

namespace {

struct Stop {};

struct Premise {
  Natural pos;
  Natural code;
};

class Explorer {
 public:
  Explorer(System sys, const CheckBounds& b) : sys_(sys), b_(b), sample_(b.sample()) {
    v_.depth = b.depth;
    v_.seed = b.seed;
  }

  Verdict run(const Natural& a) {
    Path path;
    try {
      visit(a, path, 0);
      v_.status = (sawOmega_ || v_.maxDepthBranch) ? VerdictStatus::VerifiedToBound : VerdictStatus::VerifiedComplete;
    } catch (const Stop&) {
    }
    return v_;
  }

  std::function<void(const Code&, const Path&)> onNode;

 private:
  [[noreturn]] void fail(VerdictStatus s, const Path& p, std::string reason) {
    v_.status = s;
    v_.path = p;
    v_.reason = std::move(reason);
    throw Stop{};
  }

  bool cutFree() const { return sys_ == System::CrecCutFree || sys_ == System::CprecCutFree; }
  bool prec() const { return sys_ == System::Cprec || sys_ == System::CprecCutFree; }

  void visit(const Natural& a, Path& path, std::uint32_t depth) {
    if (++v_.nodes > b_.maxNodes) fail(VerdictStatus::ResourceExhausted, path, "NodeBudget");
    v_.height = std::max(v_.height, depth + 1);
    Code c;
    try {
      c = Code::decode(a);
    } catch (const MalformedCode&) {
      fail(VerdictStatus::Refuted, path, "Malformed");
    }
    if (onNode) onNode(c, path);
    if (c.rule == Rule::Cut && cutFree()) fail(VerdictStatus::Refuted, path, "CutInCutFree");

    std::vector<Premise> prem;
    if (c.rule == Rule::Omega) {
      sawOmega_ = true;
      const Natural& e = c.index();
      bool pr = false;
      try {
        pr = !prec() || isPR(e);
      } catch (const MalformedCode&) {
        pr = false;
      }
      if (!pr) fail(VerdictStatus::Refuted, path, "NotPR");
      for (auto n : sample_) {
        Natural pos(static_cast<unsigned long>(n));
        auto r = evalIndex(e, {pos}, b_.fuel);
        path.push_back(pos);
        if (!r.ok()) fail(VerdictStatus::Refuted, path, r.status == EvalStatus::Diverged ? "Undefined" : "BadIndex");
        path.pop_back();
        prem.push_back({pos, r.value});
      }
    } else {
      for (std::size_t i = 0; i < c.subs.size(); ++i) prem.push_back({Natural(static_cast<unsigned long>(i)), c.subs[i]});
    }

    PremiseEnds ends;
    for (const auto& p : prem) {
      try {
        ends.emplace_back(p.pos, endRule(p.code).end);
      } catch (const MalformedCode&) {
        path.push_back(p.pos);
        fail(VerdictStatus::Refuted, path, "Malformed");
      }
    }
    for (const auto& pe : ends) {
      if (auto bad = localCheck(c, {pe})) {
        fail(VerdictStatus::Refuted, path, *bad);
      }
    }
    if (c.rule == Rule::Ax) {
      if (auto bad = localCheck(c, {})) fail(VerdictStatus::Refuted, path, *bad);
      return;
    }
    if (depth >= b_.depth) {
      v_.maxDepthBranch = true;
      return;
    }
    for (const auto& p : prem) {
      path.push_back(p.pos);
      visit(p.code, path, depth + 1);
      path.pop_back();
    }
  }

  System sys_;
  CheckBounds b_;
  std::vector<std::uint64_t> sample_;
  Verdict v_;
  bool sawOmega_ = false;
};

}  // namespace

Verdict checkMembership(const Natural& a, System sys, const CheckBounds& bounds) {
  Explorer x(sys, bounds);
  return x.run(a);
}

std::optional<Natural> codeAt(const Natural& a, const Path& path, std::uint64_t fuel) {
  Natural cur = a;
  for (const auto& i : path) {
    Code c;
    try {
      c = Code::decode(cur);
    } catch (const MalformedCode&) {
      return std::nullopt;
    }
    if (c.rule == Rule::Omega) {
      auto r = evalIndex(c.index(), {i}, fuel);
      if (!r.ok()) return std::nullopt;
      cur = r.value;
    } else {
      if (!(i < c.subs.size())) return std::nullopt;
      cur = c.subs[i.get_ui()];
    }
  }
  return cur;
}

bool replayRefutation(const Natural& a, System sys, const CheckBounds& bounds, const Verdict& v) {
  if (!v.refuted() || !v.path) return false;
  const Path& p = *v.path;
  if (v.reason == "Undefined" || v.reason == "BadIndex" || v.reason == "Malformed") {
    if (p.empty()) {
      if (v.reason != "Malformed") return false;
      try {
        Code::decode(a);
        return false;
      } catch (const MalformedCode&) {
        return true;
      }
    }
    Path parent(p.begin(), p.end() - 1);
    auto node = codeAt(a, parent, bounds.fuel);
    if (!node) return false;
    Code c;
    try {
      c = Code::decode(*node);
    } catch (const MalformedCode&) {
      return false;
    }
    if (c.rule == Rule::Omega) {
      auto r = evalIndex(c.index(), {p.back()}, bounds.fuel);
      if (v.reason == "Malformed") {
        if (!r.ok()) return false;
        try {
          Code::decode(r.value);
          return false;
        } catch (const MalformedCode&) {
          return true;
        }
      }
      return !r.ok();
    }
    if (v.reason != "Malformed" || !(p.back() < c.subs.size())) return false;
    try {
      Code::decode(c.subs[p.back().get_ui()]);
      return false;
    } catch (const MalformedCode&) {
      return true;
    }
  }
  auto node = codeAt(a, p, bounds.fuel);
  if (!node) return false;
  Code c;
  try {
    c = Code::decode(*node);
  } catch (const MalformedCode&) {
    return false;
  }
  if (v.reason == "CutInCutFree") return c.rule == Rule::Cut && (sys == System::CrecCutFree || sys == System::CprecCutFree);
  if (v.reason == "NotPR") return c.rule == Rule::Omega && !isPR(c.index());
  if (c.rule == Rule::Ax) return localCheck(c, {}) == v.reason;
  std::vector<Premise> prem;
  if (c.rule == Rule::Omega) {
    for (auto n : bounds.sample()) {
      Natural pos(static_cast<unsigned long>(n));
      auto r = evalIndex(c.index(), {pos}, bounds.fuel);
      if (r.ok()) prem.push_back({pos, r.value});
    }
  } else {
    for (std::size_t i = 0; i < c.subs.size(); ++i) prem.push_back({Natural(static_cast<unsigned long>(i)), c.subs[i]});
  }
  for (const auto& q : prem) {
    try {
      if (localCheck(c, {{q.pos, endRule(q.code).end}}) == v.reason) return true;
    } catch (const MalformedCode&) {
    }
  }
  return false;
}

std::vector<Natural> pathWalk(const Natural& a, const std::vector<std::uint64_t>& choices, std::uint64_t fuel) {
  std::vector<Natural> walk{a};
  Natural cur = a;
  for (auto f : choices) {
    Code c;
    try {
      c = Code::decode(cur);
    } catch (const MalformedCode&) {
      break;
    }
    if (c.rule == Rule::Ax) break;
    if (c.rule == Rule::Omega) {
      auto r = evalIndex(c.index(), {Natural(static_cast<unsigned long>(f))}, fuel);
      if (!r.ok()) break;
      cur = r.value;
    } else if (c.rule == Rule::And || c.rule == Rule::Cut) {
      cur = c.subs[f % 2];
    } else {
      cur = c.subs[0];
    }
    walk.push_back(cur);
  }
  return walk;
}

Natural nodeOf(const Code& c) {
  if (c.rule == Rule::Ax) return encodeSeq({tag(Rule::Ax), c.ctx.code()});
  return encodeSeq({tag(c.rule), c.ctx.code(), c.main->code()});
}

ProofValue proofValue(const Natural& a, const Natural& sigma, std::uint64_t fuel) {
  ProofValue out;
  auto steps = tryDecodeSeq(sigma);
  if (!steps) return out;
  Natural cur = a;
  for (const auto& i : *steps) {
    Code c;
    try {
      c = Code::decode(cur);
    } catch (const MalformedCode&) {
      return out;
    }
    if (c.rule == Rule::Omega) {
      auto r = evalIndex(c.index(), {i}, fuel);
      if (!r.ok()) {
        out.status = ProofValueStatus::Diverged;
        return out;
      }
      cur = r.value;
    } else {
      if (!(i < c.subs.size())) return out;
      cur = c.subs[i.get_ui()];
    }
  }
  try {
    out.node = nodeOf(Code::decode(cur));
  } catch (const MalformedCode&) {
  }
  return out;
}

// ---- global indices ------------------------------------------------------

namespace {

std::optional<Code> decodeNode(const Natural& v) {
  auto xs = tryDecodeSeq(v);
  if (!xs || xs->empty() || (*xs)[0] > 5) return std::nullopt;
  Code c;
  c.rule = static_cast<Rule>((*xs)[0].get_ui());
  try {
    if (c.rule == Rule::Ax) {
      if (xs->size() != 2) return std::nullopt;
      c.ctx = Sequent::decode((*xs)[1]);
    } else {
      if (xs->size() != 3) return std::nullopt;
      c.ctx = Sequent::decode((*xs)[1]);
      c.main = Formula::decode((*xs)[2]);
      if (!c.main->isSentence() || !mainShapeOk(c.rule, *c.main)) return std::nullopt;
    }
  } catch (const MalformedCode&) {
    return std::nullopt;
  }
  for (const auto& m : c.ctx.members())
    if (!m.isSentence()) return std::nullopt;
  c.code = v;
  return c;
}

class IndexExplorer {
 public:
  IndexExplorer(const Natural& p, const CheckBounds& b) : p_(p), b_(b), sample_(b.sample()) {
    v_.depth = b.depth;
    v_.seed = b.seed;
  }

  Verdict run() {
    Path path;
    try {
      Natural root = at(path);
      if (root == 0) fail(path, "EmptyTree");
      visit(root, path, 0);
      v_.status = (sawOmega_ || v_.maxDepthBranch) ? VerdictStatus::VerifiedToBound : VerdictStatus::VerifiedComplete;
    } catch (const Stop&) {
    }
    return v_;
  }

 private:
  [[noreturn]] void fail(const Path& p, std::string reason, VerdictStatus s = VerdictStatus::Refuted) {
    v_.status = s;
    v_.path = p;
    v_.reason = std::move(reason);
    throw Stop{};
  }

  Natural at(Path& path) {
    auto r = evalIndex(p_, {encodeSeq(path)}, b_.fuel);
    if (!r.ok()) fail(path, "Undefined");
    return r.value;
  }

  void visit(const Natural& node, Path& path, std::uint32_t depth) {
    if (++v_.nodes > b_.maxNodes) fail(path, "NodeBudget", VerdictStatus::ResourceExhausted);
    v_.height = std::max(v_.height, depth + 1);
    auto c = decodeNode(node);
    if (!c) fail(path, "MalformedNode");

    std::vector<std::pair<Natural, Natural>> kids;  // position, node
    if (c->rule == Rule::Omega) {
      sawOmega_ = true;
      for (auto n : sample_) {
        Natural pos(static_cast<unsigned long>(n));
        path.push_back(pos);
        Natural k = at(path);
        if (k == 0) fail(path, "MissingPremise");
        path.pop_back();
        kids.emplace_back(pos, k);
      }
    } else {
      std::size_t want = c->premiseCount();
      std::vector<Natural> vals;
      for (std::size_t j = 0; j < want + 2; ++j) {
        path.push_back(Natural(static_cast<unsigned long>(j)));
        vals.push_back(at(path));
        path.pop_back();
      }
      for (std::size_t j = 0; j < vals.size(); ++j) {
        if (vals[j] == 0) continue;
        for (std::size_t i = 0; i < j; ++i)
          if (vals[i] == 0) {
            path.push_back(Natural(static_cast<unsigned long>(j)));
            fail(path, "SiblingGap");
          }
        if (j >= want) {
          path.push_back(Natural(static_cast<unsigned long>(j)));
          fail(path, "ExtraPremise");
        }
      }
      for (std::size_t j = 0; j < want; ++j) {
        if (vals[j] == 0) {
          path.push_back(Natural(static_cast<unsigned long>(j)));
          fail(path, "MissingPremise");
        }
        kids.emplace_back(Natural(static_cast<unsigned long>(j)), vals[j]);
      }
    }

    for (const auto& [pos, k] : kids) {
      auto kc = decodeNode(k);
      if (!kc) {
        path.push_back(pos);
        fail(path, "MalformedNode");
      }
      if (auto bad = localCheck(*c, {{pos, endOf(*kc)}})) fail(path, *bad);
    }
    if (c->rule == Rule::Ax) {
      if (auto bad = localCheck(*c, {})) fail(path, *bad);
      return;
    }
    if (depth >= b_.depth) {
      v_.maxDepthBranch = true;
      return;
    }
    for (const auto& [pos, k] : kids) {
      path.push_back(pos);
      visit(k, path, depth + 1);
      path.pop_back();
    }
  }

  Natural p_;
  CheckBounds b_;
  std::vector<std::uint64_t> sample_;
  Verdict v_;
  bool sawOmega_ = false;
};

}  // namespace

Verdict checkProofIndex(const Natural& p, const CheckBounds& bounds) {
  IndexExplorer x(p, bounds);
  return x.run();
}

// ---- text forms ----------------------------------------------------------

SExpr codeToSExpr(const Natural& a) {
  Code c = Code::decode(a);
  std::vector<SExpr> xs{SExpr::makeAtom(std::string(ruleName(c.rule))), c.ctx.toSExpr()};
  if (c.rule == Rule::Ax) return SExpr::makeList(std::move(xs));
  xs.push_back(c.main->toSExpr());
  if (c.rule == Rule::Omega) {
    xs.push_back(SExpr::makeAtom(toDecimal(c.index())));
  } else {
    for (const auto& s : c.subs) xs.push_back(codeToSExpr(s));
  }
  return SExpr::makeList(std::move(xs));
}

Natural codeFromSExpr(const SExpr& e) {
  if (!e.isList) return parseNatural(e.atom);
  if (e.items.size() < 2) throw MalformedCode("code needs a rule and a context");
  auto r = ruleFromName(e.head());
  if (!r) throw MalformedCode("unknown rule " + std::string(e.head()));
  Sequent g = Sequent::fromSExpr(e.items[1]);
  if (*r == Rule::Ax) {
    if (e.items.size() != 2) throw MalformedCode("Ax takes only a context");
    return mkAx(g);
  }
  if (e.items.size() != fieldCount(*r)) throw MalformedCode("wrong number of code fields");
  Formula m = Formula::fromSExpr(e.items[2]);
  std::vector<Natural> fields{tag(*r), g.code(), m.code()};
  if (*r == Rule::Omega) {
    const SExpr& ix = e.items[3];
    fields.push_back(ix.isList ? programFromSExpr(ix)->encode() : parseNatural(ix.atom));
  } else {
    for (std::size_t i = 3; i < e.items.size(); ++i) fields.push_back(codeFromSExpr(e.items[i]));
  }
  Natural a = encodeSeq(fields);
  Code::decode(a);
  return a;
}

std::string codeToDot(const Natural& a, const CheckBounds& bounds) {
  std::ostringstream os;
  os << "digraph proof {\n  node [shape=box, fontname=\"monospace\"];\n";
  Explorer x(System::Crec, bounds);
  std::vector<std::string> edges;
  x.onNode = [&](const Code& c, const Path& p) {
    std::string id = "n" + pathStr(p);
    std::string label = std::string(ruleName(c.rule)) + "\\n" + endOf(c).str();
    std::string esc;
    for (char ch : label) {
      if (ch == '"') esc += '\\';
      esc += ch;
    }
    os << "  \"" << id << "\" [label=\"" << esc << "\"];\n";
    if (!p.empty()) {
      Path parent(p.begin(), p.end() - 1);
      edges.push_back("  \"n" + pathStr(parent) + "\" -> \"" + id + "\" [label=\"" + toDecimal(p.back()) + "\"];\n");
    }
  };
  Verdict v = x.run(a);
  for (const auto& e : edges) os << e;
  os << "  // " << v.line() << "\n}\n";
  return os.str();
}

}  // namespace omega
