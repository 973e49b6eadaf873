#include "omega/program.hpp"

#include <mutex>
#include <unordered_map>

#include "omega/ops.hpp"

namespace omega {

namespace {

Natural tagNat(ProgKind k) { return Natural(static_cast<unsigned>(k)); }

ProgramPtr finish(Program p) {
  std::vector<Natural> fields{tagNat(p.kind)};
  switch (p.kind) {
    case ProgKind::Zero:
      fields.emplace_back(p.arity);
      break;
    case ProgKind::Succ:
      break;
    case ProgKind::Proj:
      fields.emplace_back(p.arity);
      fields.emplace_back(p.index);
      break;
    case ProgKind::Const:
      fields.emplace_back(p.arity);
      fields.push_back(p.value);
      break;
    case ProgKind::ApplyLit:
      fields.push_back(p.value);
      break;
    case ProgKind::Op:
      fields.emplace_back(p.index);
      break;
    default:
      break;
  }
  for (const auto& k : p.kids) fields.push_back(k->code);
  p.code = encodeSeq(fields);
  return std::make_shared<const Program>(std::move(p));
}

std::uint32_t commonArity(const std::vector<ProgramPtr>& gs, const char* what) {
  if (gs.empty()) throw ArityMismatch(std::string(what) + " needs at least one argument program");
  std::uint32_t k = gs.front()->arity;
  for (const auto& g : gs)
    if (g->arity != k) throw ArityMismatch(std::string(what) + ": argument programs disagree on arity");
  return k;
}

// Every cvself lexically owned by this cvrec must pass exactly `arity` arguments.
void checkSelfCalls(const Program& p, std::uint32_t arity) {
  if (p.kind == ProgKind::CVRec) return;
  if (p.kind == ProgKind::CVSelf && p.kids.size() != arity)
    throw ArityMismatch("cvself passes the wrong number of arguments");
  for (const auto& k : p.kids) checkSelfCalls(*k, arity);
}

}  // namespace

namespace prog {

ProgramPtr zero(std::uint32_t k) { return finish(Program{ProgKind::Zero, k}); }
ProgramPtr succ() {
  static const ProgramPtr s = finish(Program{ProgKind::Succ, 1});
  return s;
}
ProgramPtr proj(std::uint32_t k, std::uint32_t i) {
  if (i >= k) throw ArityMismatch("projection index out of range");
  return finish(Program{ProgKind::Proj, k, i});
}
ProgramPtr comp(ProgramPtr f, std::vector<ProgramPtr> gs) {
  std::uint32_t k = commonArity(gs, "C");
  if (f->arity != gs.size()) throw ArityMismatch("C: outer arity does not match argument count");
  Program p{ProgKind::Comp, k};
  p.kids.push_back(std::move(f));
  for (auto& g : gs) p.kids.push_back(std::move(g));
  return finish(std::move(p));
}
ProgramPtr primRec(ProgramPtr base, ProgramPtr step) {
  if (step->arity != base->arity + 2) throw ArityMismatch("R: step arity must be base arity + 2");
  Program p{ProgKind::PrimRec, base->arity + 1};
  p.kids = {std::move(base), std::move(step)};
  return finish(std::move(p));
}
ProgramPtr mu(ProgramPtr f) {
  if (f->arity == 0) throw ArityMismatch("Mu needs arity >= 1");
  Program p{ProgKind::Mu, f->arity - 1};
  p.kids = {std::move(f)};
  return finish(std::move(p));
}
ProgramPtr applyLit(const Natural& index, std::vector<ProgramPtr> gs) {
  auto target = decodeProgram(index);
  std::uint32_t k = commonArity(gs, "A");
  if (target->arity != gs.size()) throw ArityMismatch("A: index arity does not match argument count");
  Program p{ProgKind::ApplyLit, k};
  p.value = index;
  p.kids = std::move(gs);
  return finish(std::move(p));
}
ProgramPtr cvrec(ProgramPtr body) {
  if (body->arity == 0) throw ArityMismatch("cvrec needs arity >= 1");
  checkSelfCalls(*body, body->arity);
  Program p{ProgKind::CVRec, body->arity};
  p.kids = {std::move(body)};
  return finish(std::move(p));
}
ProgramPtr cvself(std::vector<ProgramPtr> gs) {
  std::uint32_t k = commonArity(gs, "cvself");
  Program p{ProgKind::CVSelf, k};
  p.kids = std::move(gs);
  return finish(std::move(p));
}
ProgramPtr constant(std::uint32_t k, Natural n) {
  if (n < 0) throw MalformedCode("negative constant");
  Program p{ProgKind::Const, k};
  p.value = std::move(n);
  return finish(std::move(p));
}
ProgramPtr op(std::uint32_t opId, std::vector<ProgramPtr> gs) {
  if (opId >= opCount()) throw MalformedCode("unknown primitive");
  const auto& info = opInfo(opId);
  std::uint32_t k = commonArity(gs, "op");
  if (gs.size() != info.arity) throw ArityMismatch("op " + std::string(info.name) + ": wrong argument count");
  Program p{ProgKind::Op, k, opId};
  p.kids = std::move(gs);
  return finish(std::move(p));
}
ProgramPtr cases(ProgramPtr selector, std::vector<ProgramPtr> branches) {
  if (branches.empty()) throw ArityMismatch("case needs a branch");
  for (const auto& b : branches)
    if (b->arity != selector->arity) throw ArityMismatch("case: branch arity mismatch");
  Program p{ProgKind::Case, selector->arity};
  p.kids.push_back(std::move(selector));
  for (auto& b : branches) p.kids.push_back(std::move(b));
  return finish(std::move(p));
}
ProgramPtr app(ProgramPtr target, std::vector<ProgramPtr> gs) {
  std::uint32_t k = commonArity(gs, "app");
  if (target->arity != k) throw ArityMismatch("app: target program arity mismatch");
  Program p{ProgKind::App, k};
  p.kids.push_back(std::move(target));
  for (auto& g : gs) p.kids.push_back(std::move(g));
  return finish(std::move(p));
}

}  // namespace prog

namespace {

std::uint32_t small(const Natural& n) {
  auto v = toU64(n);
  if (!v || *v > 0xFFFFFFFFu) throw MalformedCode("program field out of range");
  return static_cast<std::uint32_t>(*v);
}

ProgramPtr decodeUncached(const Natural& code) {
  auto xs = decodeSeq(code);
  if (xs.empty()) throw MalformedCode("empty program code");
  auto tag = small(xs[0]);
  auto kids = [&](std::size_t from) {
    std::vector<ProgramPtr> out;
    for (std::size_t i = from; i < xs.size(); ++i) out.push_back(decodeProgram(xs[i]));
    return out;
  };
  auto need = [&](bool ok) {
    if (!ok) throw MalformedCode("program node has the wrong number of fields");
  };
  switch (static_cast<ProgKind>(tag)) {
    case ProgKind::Zero:
      need(xs.size() == 2);
      return prog::zero(small(xs[1]));
    case ProgKind::Succ:
      need(xs.size() == 1);
      return prog::succ();
    case ProgKind::Proj:
      need(xs.size() == 3);
      return prog::proj(small(xs[1]), small(xs[2]));
    case ProgKind::Comp: {
      need(xs.size() >= 3);
      auto ks = kids(1);
      auto f = ks.front();
      ks.erase(ks.begin());
      return prog::comp(f, std::move(ks));
    }
    case ProgKind::PrimRec:
      need(xs.size() == 3);
      return prog::primRec(decodeProgram(xs[1]), decodeProgram(xs[2]));
    case ProgKind::Mu:
      need(xs.size() == 2);
      return prog::mu(decodeProgram(xs[1]));
    case ProgKind::ApplyLit:
      need(xs.size() >= 3);
      return prog::applyLit(xs[1], kids(2));
    case ProgKind::CVRec:
      need(xs.size() == 2);
      return prog::cvrec(decodeProgram(xs[1]));
    case ProgKind::CVSelf:
      need(xs.size() >= 2);
      return prog::cvself(kids(1));
    case ProgKind::Const:
      need(xs.size() == 3);
      return prog::constant(small(xs[1]), xs[2]);
    case ProgKind::Op:
      need(xs.size() >= 3);
      return prog::op(small(xs[1]), kids(2));
    case ProgKind::Case: {
      need(xs.size() >= 3);
      auto ks = kids(1);
      auto s = ks.front();
      ks.erase(ks.begin());
      return prog::cases(s, std::move(ks));
    }
    case ProgKind::App: {
      need(xs.size() >= 3);
      auto ks = kids(1);
      auto t = ks.front();
      ks.erase(ks.begin());
      return prog::app(t, std::move(ks));
    }
  }
  throw MalformedCode("unknown program tag");
}

struct Cache {
  std::mutex mu;
  std::unordered_map<std::string, ProgramPtr> map;
};

Cache& cache() {
  static Cache c;
  return c;
}

}  // namespace

ProgramPtr decodeProgram(const Natural& code) {
  if (code <= 0) throw MalformedCode("0 is not a program code");
  const std::string key = naturalKey(code);
  auto& c = cache();
  {
    std::lock_guard lock(c.mu);
    auto it = c.map.find(key);
    if (it != c.map.end()) return it->second;
  }
  ProgramPtr p;
  try {
    p = decodeUncached(code);
  } catch (const ArityMismatch& e) {
    throw MalformedCode(std::string("ill-typed program: ") + e.what());
  }
  std::lock_guard lock(c.mu);
  if (c.map.size() > 200000) c.map.clear();
  c.map.emplace(key, p);
  return p;
}

Index Index::of(const Natural& code) { return Index{code, decodeProgram(code)->arity}; }

SExpr Program::toSExpr() const {
  auto atom = [](auto v) { return SExpr::makeAtom(std::string(v)); };
  auto num = [](auto v) { return SExpr::makeAtom(std::to_string(v)); };
  std::vector<SExpr> items;
  auto addKids = [&](std::size_t from) {
    for (std::size_t i = from; i < kids.size(); ++i) items.push_back(kids[i]->toSExpr());
  };
  switch (kind) {
    case ProgKind::Zero:
      return SExpr::makeList({atom("Z"), num(arity)});
    case ProgKind::Succ:
      return atom("S");
    case ProgKind::Proj:
      return SExpr::makeList({atom("P"), num(arity), num(index)});
    case ProgKind::Comp:
      items.push_back(atom("C"));
      break;
    case ProgKind::PrimRec:
      items.push_back(atom("R"));
      break;
    case ProgKind::Mu:
      items.push_back(atom("Mu"));
      break;
    case ProgKind::ApplyLit:
      items = {atom("A"), atom(toDecimal(value))};
      break;
    case ProgKind::CVRec:
      items.push_back(atom("cvrec"));
      break;
    case ProgKind::CVSelf:
      items.push_back(atom("cvself"));
      break;
    case ProgKind::Const:
      return SExpr::makeList({atom("K"), num(arity), atom(toDecimal(value))});
    case ProgKind::Op:
      items = {atom("op"), atom(opInfo(index).name)};
      break;
    case ProgKind::Case:
      items.push_back(atom("case"));
      break;
    case ProgKind::App:
      items.push_back(atom("app"));
      break;
  }
  addKids(0);
  return SExpr::makeList(std::move(items));
}

ProgramPtr programFromSExpr(const SExpr& e) {
  if (e.isAtom("S")) return prog::succ();
  if (!e.isList || e.items.empty()) throw MalformedCode("bad program: " + e.str());
  auto h = e.head();
  auto nat = [&](std::size_t i) -> Natural {
    if (i >= e.items.size() || e.items[i].isList) throw MalformedCode("bad program field: " + e.str());
    return parseNatural(e.items[i].atom);
  };
  auto sub = [&](std::size_t from) {
    std::vector<ProgramPtr> out;
    for (std::size_t i = from; i < e.items.size(); ++i) out.push_back(programFromSExpr(e.items[i]));
    return out;
  };
  try {
    if (h == "Z" && e.items.size() == 2) return prog::zero(small(nat(1)));
    if (h == "P" && e.items.size() == 3) return prog::proj(small(nat(1)), small(nat(2)));
    if (h == "K" && e.items.size() == 3) return prog::constant(small(nat(1)), nat(2));
    if (h == "C" && e.items.size() >= 3) {
      auto ks = sub(1);
      auto f = ks.front();
      ks.erase(ks.begin());
      return prog::comp(f, std::move(ks));
    }
    if (h == "R" && e.items.size() == 3) return prog::primRec(programFromSExpr(e.items[1]), programFromSExpr(e.items[2]));
    if (h == "Mu" && e.items.size() == 2) return prog::mu(programFromSExpr(e.items[1]));
    if (h == "A" && e.items.size() >= 3) return prog::applyLit(nat(1), sub(2));
    if (h == "cvrec" && e.items.size() == 2) return prog::cvrec(programFromSExpr(e.items[1]));
    if (h == "cvself" && e.items.size() >= 2) return prog::cvself(sub(1));
    if (h == "op" && e.items.size() >= 3 && !e.items[1].isList) {
      auto id = opByName(e.items[1].atom);
      if (!id) throw MalformedCode("unknown primitive " + e.items[1].atom);
      return prog::op(*id, sub(2));
    }
    if (h == "case" && e.items.size() >= 3) {
      auto ks = sub(1);
      auto s = ks.front();
      ks.erase(ks.begin());
      return prog::cases(s, std::move(ks));
    }
    if (h == "app" && e.items.size() >= 3) {
      auto ks = sub(1);
      auto t = ks.front();
      ks.erase(ks.begin());
      return prog::app(t, std::move(ks));
    }
  } catch (const ArityMismatch& ex) {
    throw MalformedCode(std::string("ill-typed program: ") + ex.what());
  }
  throw MalformedCode("bad program: " + e.str());
}

}  // namespace omega
