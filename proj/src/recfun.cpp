#include "omega/recfun.hpp"

#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include "omega/ops.hpp"

namespace omega {

ProgramPtr lambdaProgram(const ProgramPtr& e, std::span<const Natural> frozen) {
  const std::size_t k = frozen.size();
  if (e->arity < k) throw ArityMismatch("lambda: more frozen values than arguments");
  if (k == 0) return e;
  const auto m = static_cast<std::uint32_t>(e->arity - k);
  std::vector<ProgramPtr> gs;
  gs.reserve(e->arity);
  for (const auto& f : frozen) gs.push_back(prog::constant(m, f));
  for (std::uint32_t i = 0; i < m; ++i) gs.push_back(prog::proj(m, i));
  return prog::comp(e, std::move(gs));
}

Index lambdaIndex(const Index& e, std::span<const Natural> frozen) {
  return Index::of(lambdaProgram(e.program(), frozen));
}

Index lambdaIndex(const Index& e, std::initializer_list<Natural> frozen) {
  return lambdaIndex(e, std::span<const Natural>(frozen.begin(), frozen.size()));
}

ProgramPtr fixProgram(const ProgramPtr& g) {
  if (g->arity == 0) throw ArityMismatch("fix needs an index of arity n+1");
  const std::uint32_t k = g->arity;  // d has the same arity as g
  auto self = prog::proj(k, 0);
  std::vector<ProgramPtr> gs;
  gs.push_back(prog::op(opId("smn"), {self, prog::op(opId("seq1"), {self})}));
  for (std::uint32_t i = 1; i < k; ++i) gs.push_back(prog::proj(k, i));
  auto d = prog::comp(g, std::move(gs));
  Natural dc = d->encode();
  return lambdaProgram(d, std::span<const Natural>(&dc, 1));
}

Index fix(const Index& g) { return Index::of(fixProgram(g.program())); }

std::string_view justificationName(Justification j) {
  switch (j) {
    case Justification::MuFree: return "MuFree";
    case Justification::CVRecGuarded: return "CVRecGuarded";
    case Justification::CompositionOfCertified: return "CompositionOfCertified";
  }
  return "?";
}

// ---- certificate -----------------------------------------------------------

namespace {

using Known = std::vector<std::optional<Natural>>;

struct Ctx {
  Known known;
  std::vector<int> toRec;  // env position -> position in the enclosing cvrec, or -1
  const Known* recKnown = nullptr;
};

std::string cacheKey(const Natural& e, const Known& known) {
  std::string k = naturalKey(e);
  for (const auto& x : known) {
    k += '|';
    if (x) k += naturalKey(*x);
    else k += '?';
  }
  return k;
}

std::optional<Natural> staticValue(const Program& g, const Ctx& c) {
  if (g.kind == ProgKind::Const) return g.value;
  if (g.kind == ProgKind::Proj) return c.known[g.index];
  return std::nullopt;
}

int recPos(const Program& g, const Ctx& c) {
  if (g.kind == ProgKind::Proj && g.index < c.toRec.size()) return c.toRec[g.index];
  return -1;
}

Justification classify(const Program& p) {
  bool apps = false, recs = false;
  std::vector<const Program*> stack{&p};
  while (!stack.empty()) {
    const Program* q = stack.back();
    stack.pop_back();
    if (q->kind == ProgKind::ApplyLit || q->kind == ProgKind::App) apps = true;
    if (q->kind == ProgKind::CVRec) recs = true;
    for (const auto& k : q->kids) stack.push_back(k.get());
  }
  if (apps) return Justification::CompositionOfCertified;
  if (recs) return Justification::CVRecGuarded;
  return Justification::MuFree;
}

}  // namespace

struct PrRegistry::Impl {
  mutable std::recursive_mutex mu;
  std::map<std::string, bool> cache;
  std::set<std::string> inProgress;
  std::map<std::string, Justification> registry;

  bool certifyKnown(const Natural& e, const Known& known);
  bool check(const Program& p, const Ctx& c);
  bool checkArgs(const Program& p, std::size_t from, const Ctx& c) {
    for (std::size_t i = from; i < p.kids.size(); ++i)
      if (!check(*p.kids[i], c)) return false;
    return true;
  }
  Ctx childCtx(const Program& p, std::size_t from, const Ctx& c) {
    Ctx n;
    n.recKnown = c.recKnown;
    for (std::size_t i = from; i < p.kids.size(); ++i) {
      n.known.push_back(staticValue(*p.kids[i], c));
      n.toRec.push_back(c.recKnown ? recPos(*p.kids[i], c) : -1);
    }
    return n;
  }
};

bool PrRegistry::Impl::check(const Program& p, const Ctx& c) {
  switch (p.kind) {
    case ProgKind::Zero:
    case ProgKind::Succ:
    case ProgKind::Proj:
    case ProgKind::Const:
      return true;
    case ProgKind::Mu:
      return false;
    case ProgKind::Op:
    case ProgKind::Case:
      return checkArgs(p, 0, c);
    case ProgKind::Comp:
      return checkArgs(p, 1, c) && check(*p.kids[0], childCtx(p, 1, c));
    case ProgKind::PrimRec: {
      Ctx base, step;
      base.recKnown = step.recKnown = c.recKnown;
      base.known.assign(c.known.begin() + 1, c.known.end());
      base.toRec.assign(c.toRec.begin() + 1, c.toRec.end());
      step.known = {std::nullopt, std::nullopt};
      step.known.insert(step.known.end(), base.known.begin(), base.known.end());
      step.toRec = {-1, -1};
      step.toRec.insert(step.toRec.end(), base.toRec.begin(), base.toRec.end());
      return check(*p.kids[0], base) && check(*p.kids[1], step);
    }
    case ProgKind::ApplyLit: {
      if (!checkArgs(p, 0, c)) return false;
      return certifyKnown(p.value, childCtx(p, 0, c).known);
    }
    case ProgKind::App: {
      auto target = staticValue(*p.kids[0], c);
      if (!target || !checkArgs(p, 1, c)) return false;
      return certifyKnown(*target, childCtx(p, 1, c).known);
    }
    case ProgKind::CVRec: {
      Ctx n;
      n.known = c.known;
      n.recKnown = &n.known;
      for (std::size_t i = 0; i < c.known.size(); ++i) n.toRec.push_back(static_cast<int>(i));
      return check(*p.kids[0], n);
    }
    case ProgKind::CVSelf: {
      if (!c.recKnown || !checkArgs(p, 0, c)) return false;
      const Program& first = *p.kids[0];
      if (first.kind != ProgKind::Op || !opInfo(first.index).extractor) return false;
      if (recPos(*first.kids[0], c) != 0) return false;
      for (std::size_t j = 1; j < p.kids.size(); ++j)
        if (j < c.recKnown->size() && (*c.recKnown)[j] && recPos(*p.kids[j], c) != static_cast<int>(j)) return false;
      return true;
    }
  }
  return false;
}

bool PrRegistry::Impl::certifyKnown(const Natural& e, const Known& known) {
  std::string key = cacheKey(e, known);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  if (inProgress.count(key)) return false;
  ProgramPtr p;
  try {
    p = decodeProgram(e);
  } catch (const MalformedCode&) {
    cache[key] = false;
    return false;
  }
  if (p->arity != known.size()) {
    cache[key] = false;
    return false;
  }
  inProgress.insert(key);
  Ctx c;
  c.known = known;
  c.toRec.assign(known.size(), -1);
  bool ok = check(*p, c);
  inProgress.erase(key);
  cache[key] = ok;
  return ok;
}

PrRegistry& PrRegistry::global() {
  static PrRegistry r;
  return r;
}

PrRegistry::Impl& PrRegistry::impl() const {
  static Impl i;
  return i;
}

std::optional<Justification> PrRegistry::certify(const Natural& e) {
  auto& m = impl();
  std::lock_guard lock(m.mu);
  auto p = decodeProgram(e);
  std::string key = naturalKey(e);
  if (auto it = m.registry.find(key); it != m.registry.end()) return it->second;
  if (!m.certifyKnown(e, Known(p->arity))) return std::nullopt;
  Justification j = classify(*p);
  m.registry.emplace(key, j);
  return j;
}

bool PrRegistry::certifyWith(const Natural& e, const Known& known) {
  auto& m = impl();
  std::lock_guard lock(m.mu);
  return m.certifyKnown(e, known);
}

std::optional<Justification> PrRegistry::lookup(const Natural& e) const {
  auto& m = impl();
  std::lock_guard lock(m.mu);
  auto it = m.registry.find(naturalKey(e));
  if (it == m.registry.end()) return std::nullopt;
  return it->second;
}

std::size_t PrRegistry::size() const {
  auto& m = impl();
  std::lock_guard lock(m.mu);
  return m.registry.size();
}

bool isPR(const Natural& e) { return PrRegistry::global().certify(e).has_value(); }

}  // namespace omega
