#include "omega/builder.hpp"

#include <atomic>
#include <stdexcept>
#include <unordered_map>

#include "omega/ops.hpp"

namespace omega::dsl {

enum class K { Var, Lit, Op, Call, CallIndex, App, Case, Self, Let, Iter, Search };

struct Expr::Node {
  K kind = K::Lit;
  std::uint64_t var = 0;
  Natural value;
  std::uint32_t opId = 0;
  ProgramPtr fn;
  Exprs args;
  std::function<Expr(Expr)> body1;
  std::function<Expr(Expr, Expr)> body2;
};

namespace {

std::atomic<std::uint64_t> nextVar{1};

Expr mk(Expr::Node n) { return Expr(std::make_shared<const Expr::Node>(std::move(n))); }

Expr freshVar(std::uint64_t& id) {
  id = nextVar++;
  Expr::Node n;
  n.kind = K::Var;
  n.var = id;
  return mk(std::move(n));
}

struct Scope {
  std::uint32_t arity = 0;
  std::unordered_map<std::uint64_t, std::uint32_t> pos;

  Scope shifted(std::uint32_t by) const {
    Scope s;
    s.arity = arity + by;
    for (const auto& [k, v] : pos) s.pos[k] = v + by;
    return s;
  }
  std::vector<ProgramPtr> identity() const {
    std::vector<ProgramPtr> ps;
    for (std::uint32_t i = 0; i < arity; ++i) ps.push_back(prog::proj(arity, i));
    return ps;
  }
};

ProgramPtr compile(const Expr& e, const Scope& s);

std::vector<ProgramPtr> compileAll(const Exprs& es, const Scope& s) {
  std::vector<ProgramPtr> out;
  out.reserve(es.size());
  for (const auto& e : es) out.push_back(compile(e, s));
  return out;
}

ProgramPtr compile(const Expr& e, const Scope& s) {
  const auto& n = e.node();
  switch (n.kind) {
    case K::Var: {
      auto it = s.pos.find(n.var);
      if (it == s.pos.end()) throw std::logic_error("builder: variable used outside its scope");
      return prog::proj(s.arity, it->second);
    }
    case K::Lit:
      return prog::constant(s.arity, n.value);
    case K::Op:
      return prog::op(n.opId, compileAll(n.args, s));
    case K::Call:
      if (n.args.empty()) {
        if (s.arity != 0) throw ArityMismatch("builder: nullary call in a non-nullary context");
        return n.fn;
      }
      return prog::comp(n.fn, compileAll(n.args, s));
    case K::CallIndex:
      return prog::applyLit(n.value, compileAll(n.args, s));
    case K::App: {
      std::vector<ProgramPtr> gs{compile(n.args[0], s)};
      for (std::size_t i = 1; i < n.args.size(); ++i) gs.push_back(compile(n.args[i], s));
      return prog::app(gs[0], std::vector<ProgramPtr>(gs.begin() + 1, gs.end()));
    }
    case K::Case: {
      auto sel = compile(n.args[0], s);
      std::vector<ProgramPtr> bs;
      for (std::size_t i = 1; i < n.args.size(); ++i) bs.push_back(compile(n.args[i], s));
      return prog::cases(sel, std::move(bs));
    }
    case K::Self:
      return prog::cvself(compileAll(n.args, s));
    case K::Let: {
      auto value = compile(n.args[0], s);
      std::uint64_t id;
      Expr v = freshVar(id);
      Scope inner = s;
      inner.arity = s.arity + 1;
      inner.pos[id] = s.arity;
      auto body = compile(n.body1(v), inner);
      auto gs = s.identity();
      gs.push_back(value);
      return prog::comp(body, std::move(gs));
    }
    case K::Iter: {
      auto count = compile(n.args[0], s);
      auto base = compile(n.args[1], s);
      std::uint64_t iId, aId;
      Expr i = freshVar(iId);
      Expr acc = freshVar(aId);
      Scope inner = s.shifted(2);
      inner.pos[iId] = 0;
      inner.pos[aId] = 1;
      auto step = compile(n.body2(i, acc), inner);
      auto r = prog::primRec(base, step);
      std::vector<ProgramPtr> gs{count};
      for (auto& p : s.identity()) gs.push_back(p);
      return prog::comp(r, std::move(gs));
    }
    case K::Search: {
      std::uint64_t zId;
      Expr z = freshVar(zId);
      Scope inner = s.shifted(1);
      inner.pos[zId] = 0;
      return prog::mu(compile(n.body1(z), inner));
    }
  }
  throw std::logic_error("builder: unknown node");
}

}  // namespace

Expr lit(const Natural& v) {
  Expr::Node n;
  n.kind = K::Lit;
  n.value = v;
  return mk(std::move(n));
}

Expr op(std::string_view name, Exprs args) {
  Expr::Node n;
  n.kind = K::Op;
  n.opId = opId(name);
  if (args.size() != opInfo(n.opId).arity) throw ArityMismatch("builder: wrong argument count for " + std::string(name));
  n.args = std::move(args);
  return mk(std::move(n));
}

Expr call(ProgramPtr f, Exprs args) {
  if (f->arity != args.size()) throw ArityMismatch("builder: call arity");
  Expr::Node n;
  n.kind = K::Call;
  n.fn = std::move(f);
  n.args = std::move(args);
  return mk(std::move(n));
}

Expr callIndex(const Natural& index, Exprs args) {
  Expr::Node n;
  n.kind = K::CallIndex;
  n.value = index;
  n.args = std::move(args);
  return mk(std::move(n));
}

Expr app(Expr target, Exprs args) {
  Expr::Node n;
  n.kind = K::App;
  n.args.push_back(std::move(target));
  for (auto& a : args) n.args.push_back(std::move(a));
  return mk(std::move(n));
}

Expr cases(Expr sel, Exprs branches) {
  Expr::Node n;
  n.kind = K::Case;
  n.args.push_back(std::move(sel));
  for (auto& b : branches) n.args.push_back(std::move(b));
  return mk(std::move(n));
}

Expr ite(Expr cond, Expr then, Expr otherwise) { return cases(std::move(cond), {std::move(otherwise), std::move(then)}); }

Expr self(Exprs args) {
  Expr::Node n;
  n.kind = K::Self;
  n.args = std::move(args);
  return mk(std::move(n));
}

Expr let(Expr value, std::function<Expr(Expr)> body) {
  Expr::Node n;
  n.kind = K::Let;
  n.args.push_back(std::move(value));
  n.body1 = std::move(body);
  return mk(std::move(n));
}

Expr iterate(Expr count, Expr init, std::function<Expr(Expr, Expr)> step) {
  Expr::Node n;
  n.kind = K::Iter;
  n.args = {std::move(count), std::move(init)};
  n.body2 = std::move(step);
  return mk(std::move(n));
}

Expr search(std::function<Expr(Expr)> pred) {
  Expr::Node n;
  n.kind = K::Search;
  n.body1 = std::move(pred);
  return mk(std::move(n));
}

ProgramPtr function(std::uint32_t arity, const std::function<Expr(const Exprs&)>& body) {
  Scope s;
  s.arity = arity;
  Exprs params;
  for (std::uint32_t i = 0; i < arity; ++i) {
    std::uint64_t id;
    params.push_back(freshVar(id));
    s.pos[id] = i;
  }
  return compile(body(params), s);
}

ProgramPtr recursive(std::uint32_t arity, const std::function<Expr(const Exprs&)>& body) {
  return prog::cvrec(function(arity, body));
}

Expr nth(Expr s, unsigned i) { return op("nth", {std::move(s), lit(i)}); }
Expr nthE(Expr s, Expr i) { return op("nth", {std::move(s), std::move(i)}); }

Expr seq(Exprs xs) {
  if (xs.empty()) return lit(1);
  static const char* names[] = {"seq1", "seq2", "seq3", "seq4", "seq5", "seq6"};
  if (xs.size() <= 6) {
    const char* name = names[xs.size() - 1];
    return op(name, std::move(xs));
  }
  Expr acc = op("seq6", Exprs(xs.begin(), xs.begin() + 6));
  for (std::size_t i = 6; i < xs.size(); ++i) acc = op("snoc", {acc, xs[i]});
  return acc;
}

Expr eq(Expr a, Expr b) { return op("eq", {std::move(a), std::move(b)}); }
Expr add(Expr a, Expr b) { return op("add", {std::move(a), std::move(b)}); }

}  // namespace omega::dsl
