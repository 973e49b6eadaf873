#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "omega/builder.hpp"
#include "omega/recfun.hpp"

namespace omega {

namespace {

using namespace dsl;

ProgramPtr wrapOp(std::string_view name, std::uint32_t arity) {
  return function(arity, [&](const Exprs& x) { return op(name, x); });
}

ProgramPtr addProgram() {
  return prog::primRec(prog::proj(1, 0), prog::comp(prog::succ(), {prog::proj(3, 1)}));
}

ProgramPtr mulProgram() {
  return prog::primRec(prog::zero(1), prog::comp(addProgram(), {prog::proj(3, 1), prog::proj(3, 2)}));
}

// Number of nodes in the finitary part of a local code; omega nodes count as leaves.
ProgramPtr codeSizeProgram() {
  return recursive(1, [](const Exprs& x) {
    Expr a = x[0];
    auto sub = [&](unsigned i) { return self({nth(a, i)}); };
    Expr one = lit(1);
    return cases(nth(a, 0), {one, add(one, add(sub(3), sub(4))), add(one, sub(3)), one, add(one, sub(3)),
                             add(one, add(sub(3), sub(4))), lit(0)});
  });
}

ProgramPtr seqSumProgram() {
  return function(1, [](const Exprs& x) {
    Expr s = x[0];
    return iterate(op("len", {s}), lit(0), [&](Expr i, Expr acc) { return add(acc, nthE(s, i)); });
  });
}

std::map<std::string, Index> build() {
  std::map<std::string, Index> m;
  auto put = [&](const std::string& name, const ProgramPtr& p) {
    Index ix = Index::of(p);
    if (!PrRegistry::global().certify(ix.code)) throw std::logic_error("library program not certifiable: " + name);
    m.emplace(name, ix);
  };
  put("add", addProgram());
  put("mul", mulProgram());
  put("identity", prog::proj(1, 0));
  put("seq-nth", wrapOp("nth", 2));
  put("seq-len", wrapOp("len", 1));
  put("seq-snoc", wrapOp("snoc", 2));
  put("seq-concat", wrapOp("concat", 2));
  put("seq-sum", seqSumProgram());
  put("sequent-union", wrapOp("sq_union", 2));
  put("sequent-insert", wrapOp("sq_insert", 2));
  put("sequent-remove", wrapOp("sq_remove", 2));
  put("sequent-is-axiom", wrapOp("sq_is_axiom", 1));
  put("formula-neg", wrapOp("fm_neg", 1));
  put("formula-inst", wrapOp("fm_inst", 2));
  put("numeral", wrapOp("numeral", 1));
  put("code-tag", function(1, [](const Exprs& x) { return nth(x[0], 0); }));
  put("code-end", wrapOp("code_end", 1));
  put("node-of", wrapOp("node_of", 1));
  put("code-size", codeSizeProgram());
  return m;
}

const std::map<std::string, Index>& library() {
  static const std::map<std::string, Index> lib = build();
  return lib;
}

}  // namespace

std::vector<std::string> libNames() {
  std::vector<std::string> names;
  for (const auto& [k, v] : library()) names.push_back(k);
  return names;
}

Index libIndex(std::string_view name) {
  auto it = library().find(std::string(name));
  if (it == library().end()) throw std::out_of_range("UnknownName: " + std::string(name));
  return it->second;
}

}  // namespace omega
