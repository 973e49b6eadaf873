#include "omega/ops.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

#include "omega/eval.hpp"
#include "omega/kleeneo.hpp"
#include "omega/recfun.hpp"
#include "omega/syntax.hpp"

namespace omega {

namespace {

using Args = std::span<const Natural>;
using Result = std::optional<Natural>;
using Fn = Result (*)(Args, Evaluator&);

constexpr std::uint64_t kPowCap = 1u << 20;
constexpr std::uint64_t kNumeralCap = 100000;

Natural flag(bool b) { return b ? 1 : 0; }

std::optional<std::vector<Natural>> seqOf(const Natural& x) { return tryDecodeSeq(x); }

std::optional<std::size_t> smallIndex(const Natural& i) {
  if (!i.fits_ulong_p()) return std::nullopt;
  return static_cast<std::size_t>(i.get_ui());
}

std::optional<Formula> formulaOf(const Natural& x) {
  try {
    return Formula::decode(x);
  } catch (const MalformedCode&) {
    return std::nullopt;
  }
}

std::optional<std::vector<Formula>> formulasOf(const Natural& x) {
  auto xs = seqOf(x);
  if (!xs) return std::nullopt;
  std::vector<Formula> fs;
  fs.reserve(xs->size());
  for (const auto& c : *xs) {
    auto f = formulaOf(c);
    if (!f || !f->isSentence()) return std::nullopt;
    fs.push_back(*f);
  }
  return fs;
}

std::optional<Sequent> sequentOf(const Natural& x) {
  auto fs = formulasOf(x);
  if (!fs) return std::nullopt;
  return Sequent(std::move(*fs));
}

// ---- arithmetic -----------------------------------------------------------

Result opAdd(Args a, Evaluator&) { return Natural(a[0] + a[1]); }
Result opMul(Args a, Evaluator&) { return Natural(a[0] * a[1]); }
Result opSub(Args a, Evaluator&) { return a[0] > a[1] ? Natural(a[0] - a[1]) : Natural(0); }
Result opEq(Args a, Evaluator&) { return flag(a[0] == a[1]); }
Result opLt(Args a, Evaluator&) { return flag(a[0] < a[1]); }
Result opIsZero(Args a, Evaluator&) { return flag(a[0] == 0); }
Result opAnd(Args a, Evaluator&) { return flag(a[0] != 0 && a[1] != 0); }
Result opOr(Args a, Evaluator&) { return flag(a[0] != 0 || a[1] != 0); }
Result opPow2(Args a, Evaluator&) {
  if (a[0] > kPowCap) return std::nullopt;
  Natural r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, a[0].get_ui());
  return r;
}

// ---- sequences ------------------------------------------------------------

Result opIsSeq(Args a, Evaluator&) { return flag(isSeq(a[0])); }
Result opLen(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  return s ? Natural(static_cast<unsigned long>(s->size())) : Natural(0);
}
Result opNth(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  auto i = smallIndex(a[1]);
  if (!s || !i || *i >= s->size()) return Natural(0);
  return (*s)[*i];
}
Result opSeq1(Args a, Evaluator&) { return encodeSeq(a); }
Result opSnoc(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  if (!s) return Natural(0);
  s->push_back(a[1]);
  return encodeSeq(*s);
}
Result opConcat(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  auto t = seqOf(a[1]);
  if (!s || !t) return Natural(0);
  s->insert(s->end(), t->begin(), t->end());
  return encodeSeq(*s);
}
Result opReplace(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  auto i = smallIndex(a[1]);
  if (!s || !i || *i >= s->size()) return Natural(0);
  (*s)[*i] = a[2];
  return encodeSeq(*s);
}
Result opSplice2(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  auto i = smallIndex(a[1]);
  if (!s || !i || *i >= s->size()) return Natural(0);
  (*s)[*i] = a[2];
  s->insert(s->begin() + static_cast<std::ptrdiff_t>(*i) + 1, a[3]);
  return encodeSeq(*s);
}
Result opRemoveAt(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  auto i = smallIndex(a[1]);
  if (!s || !i || *i >= s->size()) return Natural(0);
  s->erase(s->begin() + static_cast<std::ptrdiff_t>(*i));
  return encodeSeq(*s);
}
Result opTail(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  if (!s || s->empty()) return Natural(0);
  s->erase(s->begin());
  return encodeSeq(*s);
}

// ---- formulas -------------------------------------------------------------

bool quantifierFree(const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq: return true;
    case FormulaKind::And:
    case FormulaKind::Or: return quantifierFree(f.left()) && quantifierFree(f.right());
    default: return false;
  }
}

// Building n-bar touches O(n^2) bits.
void chargeNumeral(const Natural& n, Evaluator& ev) {
  auto k = n.get_ui();
  ev.charge(k * k / 4096);
}

Result opNumeral(Args a, Evaluator& ev) {
  if (a[0] > kNumeralCap) return std::nullopt;
  chargeNumeral(a[0], ev);
  return Term::numeral(a[0].get_ui()).code();
}
Result opFmInst(Args a, Evaluator& ev) {
  if (a[1] > kNumeralCap) return std::nullopt;
  chargeNumeral(a[1], ev);
  auto f = formulaOf(a[0]);
  if (!f) return Natural(0);
  return substitute(*f, a[1].get_ui()).code();
}
Result opFmNeg(Args a, Evaluator&) {
  auto f = formulaOf(a[0]);
  return f ? negate(*f).code() : Natural(0);
}
Result opFmIsLit(Args a, Evaluator&) {
  auto f = formulaOf(a[0]);
  return flag(f && f->isLiteral());
}
// Truth of a closed formula without quantifiers; 0 otherwise.
Result opQfTrue(Args a, Evaluator&) {
  auto f = formulaOf(a[0]);
  if (!f || !f->isSentence()) return Natural(0);
  return flag(boundedTruth(*f, 0) == Truth::True && quantifierFree(*f));
}
// n+1 when b is body[x := n], else 0.
Result opInstanceOf(Args a, Evaluator&) {
  auto body = formulaOf(a[0]);
  auto b = formulaOf(a[1]);
  if (!body || !b) return Natural(0);
  auto n = instanceNumeral(*body, *b);
  if (!n) return Natural(0);
  return Natural(static_cast<unsigned long>(*n)) + 1;
}

// ---- sequents -------------------------------------------------------------

Result opSqNorm(Args a, Evaluator&) {
  auto s = sequentOf(a[0]);
  return s ? s->code() : Natural(0);
}
Result opSqUnion(Args a, Evaluator&) {
  auto s = sequentOf(a[0]);
  auto t = sequentOf(a[1]);
  if (!s || !t) return Natural(0);
  return s->unite(*t).code();
}
Result opSqInsert(Args a, Evaluator&) {
  auto s = sequentOf(a[0]);
  auto f = formulaOf(a[1]);
  if (!s || !f || !f->isSentence()) return Natural(0);
  return s->with(*f).code();
}
Result opSqRemove(Args a, Evaluator&) {
  auto s = sequentOf(a[0]);
  auto f = formulaOf(a[1]);
  if (!s || !f) return Natural(0);
  return s->without(*f).code();
}
Result opSqMem(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  if (!s) return Natural(0);
  return flag(std::find(s->begin(), s->end(), a[1]) != s->end());
}
Result opSqIsAxiom(Args a, Evaluator&) {
  auto s = sequentOf(a[0]);
  return flag(s && isAxiom(*s));
}
// n+1 when p equals g with body[x := n] added, for some n; else 0.
Result opSqInstEnd(Args a, Evaluator&) {
  auto p = sequentOf(a[0]);
  auto g = sequentOf(a[1]);
  auto body = formulaOf(a[2]);
  if (!p || !g || !body) return Natural(0);
  for (const auto& m : p->members()) {
    auto n = instanceNumeral(*body, m);
    if (!n) continue;
    if (g->with(substitute(*body, *n)) == *p) return Natural(static_cast<unsigned long>(*n)) + 1;
  }
  return Natural(0);
}

// ---- ordered sequents -----------------------------------------------------

Result opOsFirstNonLit(Args a, Evaluator&) {
  auto fs = formulasOf(a[0]);
  if (!fs) return Natural(0);
  for (std::size_t i = 0; i < fs->size(); ++i)
    if (!(*fs)[i].isLiteral()) return Natural(static_cast<unsigned long>(i + 1));
  return Natural(0);
}
Result opCount(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  if (!s) return Natural(0);
  return Natural(static_cast<unsigned long>(std::count(s->begin(), s->end(), a[1])));
}

// ---- codes ----------------------------------------------------------------

Result opCodeEnd(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  if (!s || s->size() < 2) return Natural(0);
  const Natural& tag = (*s)[0];
  if (tag == 0 || tag == 5) return (*s)[1];
  if (s->size() < 3 || tag > 5) return Natural(0);
  auto g = sequentOf((*s)[1]);
  auto f = formulaOf((*s)[2]);
  if (!g || !f || !f->isSentence()) return Natural(0);
  return g->with(*f).code();
}
Result opNodeOf(Args a, Evaluator&) {
  auto s = seqOf(a[0]);
  if (!s || s->size() < 2) return Natural(0);
  if ((*s)[0] == 0) return encodeSeq({Natural(0), (*s)[1]});
  if (s->size() < 3) return Natural(0);
  return encodeSeq({(*s)[0], (*s)[1], (*s)[2]});
}

// ---- meta -----------------------------------------------------------------

Result opSmn(Args a, Evaluator&) {
  auto frozen = seqOf(a[1]);
  if (!frozen) return Natural(0);
  try {
    return lambdaProgram(decodeProgram(a[0]), *frozen)->encode();
  } catch (const MalformedCode&) {
    return Natural(0);
  } catch (const ArityMismatch&) {
    return Natural(0);
  }
}
Result opKleeneT(Args a, Evaluator& ev) {
  auto z = toU64(a[2]);
  if (!z) return std::nullopt;
  ev.charge(*z);
  auto xs = seqOf(a[1]);
  if (!xs) return Natural(0);
  return flag(kleeneT(a[0], *xs, *z));
}
Result opKleeneU(Args a, Evaluator& ev) {
  auto z = toU64(a[2]);
  if (!z) return std::nullopt;
  ev.charge(*z);
  auto xs = seqOf(a[1]);
  if (!xs) return Natural(0);
  auto v = extractU(a[0], *xs, *z);
  return v ? *v : Natural(0);
}
Result opLtO(Args a, Evaluator& ev) {
  auto z = toU64(a[2]);
  if (!z) return std::nullopt;
  ev.charge(*z);
  return flag(ltPrimeO(a[0], a[1], *z).holds);
}
Result opOKind(Args a, Evaluator&) {
  switch (ONotation{a[0]}.shape()) {
    case OShape::One: return Natural(0);
    case OShape::Pow: return Natural(1);
    case OShape::Lim: return Natural(2);
    case OShape::Other: return Natural(3);
  }
  return Natural(3);
}
Result opOArg(Args a, Evaluator&) { return ONotation{a[0]}.arg(); }

struct Entry {
  OpInfo info;
  Fn fn;
};

const std::vector<Entry>& table() {
  static const std::vector<Entry> t = {
      {{"add", 2, false}, opAdd},
      {{"mul", 2, false}, opMul},
      {{"sub", 2, false}, opSub},
      {{"eq", 2, false}, opEq},
      {{"lt", 2, false}, opLt},
      {{"iszero", 1, false}, opIsZero},
      {{"and", 2, false}, opAnd},
      {{"or", 2, false}, opOr},
      {{"pow2", 1, false}, opPow2},
      {{"isseq", 1, false}, opIsSeq},
      {{"len", 1, false}, opLen},
      {{"nth", 2, true}, opNth},
      {{"seq1", 1, false}, opSeq1},
      {{"seq2", 2, false}, opSeq1},
      {{"seq3", 3, false}, opSeq1},
      {{"seq4", 4, false}, opSeq1},
      {{"seq5", 5, false}, opSeq1},
      {{"seq6", 6, false}, opSeq1},
      {{"snoc", 2, false}, opSnoc},
      {{"concat", 2, false}, opConcat},
      {{"replace", 3, false}, opReplace},
      {{"splice2", 4, false}, opSplice2},
      {{"remove_at", 2, false}, opRemoveAt},
      {{"tail", 1, true}, opTail},
      {{"numeral", 1, false}, opNumeral},
      {{"fm_inst", 2, false}, opFmInst},
      {{"fm_neg", 1, false}, opFmNeg},
      {{"fm_is_lit", 1, false}, opFmIsLit},
      {{"instance_of", 2, false}, opInstanceOf},
      {{"sq_norm", 1, false}, opSqNorm},
      {{"sq_union", 2, false}, opSqUnion},
      {{"sq_insert", 2, false}, opSqInsert},
      {{"sq_remove", 2, false}, opSqRemove},
      {{"sq_mem", 2, false}, opSqMem},
      {{"sq_is_axiom", 1, false}, opSqIsAxiom},
      {{"sq_inst_end", 3, false}, opSqInstEnd},
      {{"os_first_nonlit", 1, false}, opOsFirstNonLit},
      {{"count", 2, false}, opCount},
      {{"code_end", 1, false}, opCodeEnd},
      {{"node_of", 1, false}, opNodeOf},
      {{"smn", 2, false}, opSmn},
      {{"kleene_t", 3, false}, opKleeneT},
      {{"kleene_u", 3, false}, opKleeneU},
      {{"lt_o", 3, false}, opLtO},
      {{"o_kind", 1, false}, opOKind},
      {{"o_arg", 1, false}, opOArg},
      {{"qf_true", 1, false}, opQfTrue},
  };
  return t;
}

}  // namespace

std::size_t opCount() { return table().size(); }

const OpInfo& opInfo(std::uint32_t id) { return table().at(id).info; }

std::optional<std::uint32_t> opByName(std::string_view name) {
  const auto& t = table();
  for (std::size_t i = 0; i < t.size(); ++i)
    if (t[i].info.name == name) return static_cast<std::uint32_t>(i);
  return std::nullopt;
}

std::uint32_t opId(std::string_view name) {
  auto id = opByName(name);
  if (!id) throw std::out_of_range("unknown primitive: " + std::string(name));
  return *id;
}

std::optional<Natural> runOp(std::uint32_t id, std::span<const Natural> args, Evaluator& ev) {
  const auto& e = table().at(id);
  try {
    return e.fn(args, ev);
  } catch (const MalformedCode&) {
    return Natural(0);
  } catch (const NotClosed&) {
    return Natural(0);
  }
}

}  // namespace omega
