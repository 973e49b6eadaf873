#include "omega/syntax.hpp"

#include <algorithm>
#include <functional>

namespace omega {

// ---- Term ----------------------------------------------------------------

Term Term::zero() {
  static const Term z(std::make_shared<const Node>(Node{TermKind::Zero, 0, nullptr, nullptr, encodeSeq({0})}));
  return z;
}

Term Term::one() {
  static const Term o(std::make_shared<const Node>(Node{TermKind::One, 0, nullptr, nullptr, encodeSeq({1})}));
  return o;
}

Term Term::var(std::uint32_t k) {
  return Term(std::make_shared<const Node>(Node{TermKind::Var, k, nullptr, nullptr, encodeSeq({2, Natural(k)})}));
}

Term Term::add(Term l, Term r) {
  Natural c = encodeSeq({3, l.code(), r.code()});
  return Term(std::make_shared<const Node>(
      Node{TermKind::Add, 0, std::make_shared<const Term>(std::move(l)), std::make_shared<const Term>(std::move(r)), std::move(c)}));
}

Term Term::mul(Term l, Term r) {
  Natural c = encodeSeq({4, l.code(), r.code()});
  return Term(std::make_shared<const Node>(
      Node{TermKind::Mul, 0, std::make_shared<const Term>(std::move(l)), std::make_shared<const Term>(std::move(r)), std::move(c)}));
}

Term Term::numeral(std::uint64_t n) {
  if (n == 0) return zero();
  Term t = one();
  for (std::uint64_t i = 1; i < n; ++i) t = add(one(), t);
  return t;
}

bool Term::closed() const {
  switch (kind()) {
    case TermKind::Zero:
    case TermKind::One:
      return true;
    case TermKind::Var:
      return false;
    default:
      return left().closed() && right().closed();
  }
}

std::optional<std::uint64_t> Term::numeralValue() const {
  if (kind() == TermKind::Zero) return 0;
  std::uint64_t n = 0;
  const Term* t = this;
  while (t->kind() == TermKind::Add && t->left().kind() == TermKind::One) {
    ++n;
    t = &t->right();
  }
  if (t->kind() != TermKind::One) return std::nullopt;
  return n + 1;
}

Term Term::decode(const Natural& code) {
  auto xs = decodeSeq(code);
  if (xs.empty()) throw MalformedCode("empty term code");
  auto tag = toU64(xs[0]);
  if (!tag) throw MalformedCode("bad term tag");
  switch (*tag) {
    case 0:
      if (xs.size() == 1) return zero();
      break;
    case 1:
      if (xs.size() == 1) return one();
      break;
    case 2:
      if (xs.size() == 2) {
        auto k = toU64(xs[1]);
        if (k && *k < (1u << 31)) return var(static_cast<std::uint32_t>(*k));
      }
      break;
    case 3:
      if (xs.size() == 3) return add(decode(xs[1]), decode(xs[2]));
      break;
    case 4:
      if (xs.size() == 3) return mul(decode(xs[1]), decode(xs[2]));
      break;
    default:
      break;
  }
  throw MalformedCode("malformed term code");
}

Term Term::fromSExpr(const SExpr& e) {
  if (!e.isList) {
    if (e.atom == "0") return zero();
    if (e.atom == "1") return one();
    throw MalformedCode("bad term atom: " + e.atom);
  }
  auto h = e.head();
  if (h == "v" && e.items.size() == 2 && !e.items[1].isList) {
    return var(static_cast<std::uint32_t>(std::stoul(e.items[1].atom)));
  }
  if (h == "num" && e.items.size() == 2 && !e.items[1].isList) {
    return numeral(std::stoull(e.items[1].atom));
  }
  if ((h == "+" || h == "*") && e.items.size() == 3) {
    Term l = fromSExpr(e.items[1]);
    Term r = fromSExpr(e.items[2]);
    return h == "+" ? add(std::move(l), std::move(r)) : mul(std::move(l), std::move(r));
  }
  throw MalformedCode("bad term: " + e.str());
}

SExpr Term::toSExpr() const {
  switch (kind()) {
    case TermKind::Zero:
      return SExpr::makeAtom("0");
    case TermKind::One:
      return SExpr::makeAtom("1");
    case TermKind::Var:
      return SExpr::makeList({SExpr::makeAtom("v"), SExpr::makeAtom(std::to_string(varIndex()))});
    case TermKind::Add:
      return SExpr::makeList({SExpr::makeAtom("+"), left().toSExpr(), right().toSExpr()});
    case TermKind::Mul:
      return SExpr::makeList({SExpr::makeAtom("*"), left().toSExpr(), right().toSExpr()});
  }
  return {};
}

Natural evalTerm(const Term& t) {
  switch (t.kind()) {
    case TermKind::Zero:
      return 0;
    case TermKind::One:
      return 1;
    case TermKind::Var:
      throw NotClosed("term contains a variable: " + t.str());
    case TermKind::Add:
      return evalTerm(t.left()) + evalTerm(t.right());
    case TermKind::Mul:
      return evalTerm(t.left()) * evalTerm(t.right());
  }
  return 0;
}

// ---- Formula -------------------------------------------------------------

namespace {

Natural literalCode(FormulaKind k, const Term& t, const Term& u) {
  return encodeSeq({Natural(static_cast<unsigned>(k)), t.code(), u.code()});
}

}  // namespace

Formula Formula::eq(Term t, Term u) {
  Natural c = literalCode(FormulaKind::Eq, t, u);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Eq, std::make_shared<const Term>(std::move(t)),
                                                   std::make_shared<const Term>(std::move(u)), nullptr, nullptr, std::move(c)}));
}

Formula Formula::neq(Term t, Term u) {
  Natural c = literalCode(FormulaKind::Neq, t, u);
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Neq, std::make_shared<const Term>(std::move(t)),
                                                   std::make_shared<const Term>(std::move(u)), nullptr, nullptr, std::move(c)}));
}

Formula Formula::conj(Formula a, Formula b) {
  Natural c = encodeSeq({2, a.code(), b.code()});
  return Formula(std::make_shared<const Node>(Node{FormulaKind::And, nullptr, nullptr, std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b)), std::move(c)}));
}

Formula Formula::disj(Formula a, Formula b) {
  Natural c = encodeSeq({3, a.code(), b.code()});
  return Formula(std::make_shared<const Node>(Node{FormulaKind::Or, nullptr, nullptr, std::make_shared<const Formula>(std::move(a)),
                                                   std::make_shared<const Formula>(std::move(b)), std::move(c)}));
}

Formula Formula::all(Formula body) {
  Natural c = encodeSeq({4, body.code()});
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::All, nullptr, nullptr, std::make_shared<const Formula>(std::move(body)), nullptr, std::move(c)}));
}

Formula Formula::ex(Formula body) {
  Natural c = encodeSeq({5, body.code()});
  return Formula(std::make_shared<const Node>(
      Node{FormulaKind::Ex, nullptr, nullptr, std::make_shared<const Formula>(std::move(body)), nullptr, std::move(c)}));
}

namespace {

bool termWithin(const Term& t, std::uint32_t depth) {
  switch (t.kind()) {
    case TermKind::Zero:
    case TermKind::One:
      return true;
    case TermKind::Var:
      return t.varIndex() < depth;
    default:
      return termWithin(t.left(), depth) && termWithin(t.right(), depth);
  }
}

bool formulaWithin(const Formula& a, std::uint32_t depth) {
  switch (a.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      return termWithin(a.lhs(), depth) && termWithin(a.rhs(), depth);
    case FormulaKind::And:
    case FormulaKind::Or:
      return formulaWithin(a.left(), depth) && formulaWithin(a.right(), depth);
    default:
      return formulaWithin(a.body(), depth + 1);
  }
}

}  // namespace

bool Formula::isSentence() const { return formulaWithin(*this, 0); }

Formula Formula::decode(const Natural& code) {
  auto xs = decodeSeq(code);
  if (xs.empty()) throw MalformedCode("empty formula code");
  auto tag = toU64(xs[0]);
  if (!tag) throw MalformedCode("bad formula tag");
  switch (*tag) {
    case 0:
    case 1:
      if (xs.size() == 3) {
        Term t = Term::decode(xs[1]);
        Term u = Term::decode(xs[2]);
        return *tag == 0 ? eq(std::move(t), std::move(u)) : neq(std::move(t), std::move(u));
      }
      break;
    case 2:
    case 3:
      if (xs.size() == 3) {
        Formula a = decode(xs[1]);
        Formula b = decode(xs[2]);
        return *tag == 2 ? conj(std::move(a), std::move(b)) : disj(std::move(a), std::move(b));
      }
      break;
    case 4:
    case 5:
      if (xs.size() == 2) return *tag == 4 ? all(decode(xs[1])) : ex(decode(xs[1]));
      break;
    default:
      break;
  }
  throw MalformedCode("malformed formula code");
}

Formula Formula::fromSExpr(const SExpr& e) {
  auto h = e.head();
  const auto n = e.items.size();
  if ((h == "=" || h == "!=") && n == 3) {
    Term t = Term::fromSExpr(e.items[1]);
    Term u = Term::fromSExpr(e.items[2]);
    return h == "=" ? eq(std::move(t), std::move(u)) : neq(std::move(t), std::move(u));
  }
  if ((h == "and" || h == "or") && n == 3) {
    Formula a = fromSExpr(e.items[1]);
    Formula b = fromSExpr(e.items[2]);
    return h == "and" ? conj(std::move(a), std::move(b)) : disj(std::move(a), std::move(b));
  }
  if ((h == "all" || h == "ex") && n == 2) {
    Formula b = fromSExpr(e.items[1]);
    return h == "all" ? all(std::move(b)) : ex(std::move(b));
  }
  throw MalformedCode("bad formula: " + e.str());
}

Formula Formula::parse(const std::string& text) { return fromSExpr(parseSExpr(text)); }

SExpr Formula::toSExpr() const {
  auto atom = SExpr::makeAtom;
  switch (kind()) {
    case FormulaKind::Eq:
      return SExpr::makeList({atom("="), lhs().toSExpr(), rhs().toSExpr()});
    case FormulaKind::Neq:
      return SExpr::makeList({atom("!="), lhs().toSExpr(), rhs().toSExpr()});
    case FormulaKind::And:
      return SExpr::makeList({atom("and"), left().toSExpr(), right().toSExpr()});
    case FormulaKind::Or:
      return SExpr::makeList({atom("or"), left().toSExpr(), right().toSExpr()});
    case FormulaKind::All:
      return SExpr::makeList({atom("all"), body().toSExpr()});
    case FormulaKind::Ex:
      return SExpr::makeList({atom("ex"), body().toSExpr()});
  }
  return {};
}

Formula negate(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Eq:
      return Formula::neq(a.lhs(), a.rhs());
    case FormulaKind::Neq:
      return Formula::eq(a.lhs(), a.rhs());
    case FormulaKind::And:
      return Formula::disj(negate(a.left()), negate(a.right()));
    case FormulaKind::Or:
      return Formula::conj(negate(a.left()), negate(a.right()));
    case FormulaKind::All:
      return Formula::ex(negate(a.body()));
    case FormulaKind::Ex:
      return Formula::all(negate(a.body()));
  }
  return a;
}

std::uint64_t rank(const Formula& a) {
  switch (a.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      return 0;
    case FormulaKind::And:
    case FormulaKind::Or:
      return 1 + std::max(rank(a.left()), rank(a.right()));
    default:
      return 1 + rank(a.body());
  }
}

namespace {

Term substTerm(const Term& t, std::uint32_t depth, const Term& value) {
  switch (t.kind()) {
    case TermKind::Zero:
    case TermKind::One:
      return t;
    case TermKind::Var:
      if (t.varIndex() == depth) return value;
      if (t.varIndex() > depth) return Term::var(t.varIndex() - 1);
      return t;
    case TermKind::Add:
      return Term::add(substTerm(t.left(), depth, value), substTerm(t.right(), depth, value));
    case TermKind::Mul:
      return Term::mul(substTerm(t.left(), depth, value), substTerm(t.right(), depth, value));
  }
  return t;
}

Formula substFormula(const Formula& a, std::uint32_t depth, const Term& value) {
  switch (a.kind()) {
    case FormulaKind::Eq:
      return Formula::eq(substTerm(a.lhs(), depth, value), substTerm(a.rhs(), depth, value));
    case FormulaKind::Neq:
      return Formula::neq(substTerm(a.lhs(), depth, value), substTerm(a.rhs(), depth, value));
    case FormulaKind::And:
      return Formula::conj(substFormula(a.left(), depth, value), substFormula(a.right(), depth, value));
    case FormulaKind::Or:
      return Formula::disj(substFormula(a.left(), depth, value), substFormula(a.right(), depth, value));
    case FormulaKind::All:
      return Formula::all(substFormula(a.body(), depth + 1, value));
    case FormulaKind::Ex:
      return Formula::ex(substFormula(a.body(), depth + 1, value));
  }
  return a;
}

// Matching b against body[x := ?]: the hole is bound to the first term seen.
bool matchTerm(const Term& pat, const Term& t, std::uint32_t depth, std::optional<Term>& hole) {
  if (pat.kind() == TermKind::Var) {
    if (pat.varIndex() == depth) {
      if (hole) return *hole == t;
      if (!t.closed()) return false;
      hole = t;
      return true;
    }
    std::uint32_t want = pat.varIndex() > depth ? pat.varIndex() - 1 : pat.varIndex();
    return t.kind() == TermKind::Var && t.varIndex() == want;
  }
  if (pat.kind() != t.kind()) return false;
  if (pat.kind() == TermKind::Add || pat.kind() == TermKind::Mul)
    return matchTerm(pat.left(), t.left(), depth, hole) && matchTerm(pat.right(), t.right(), depth, hole);
  return true;
}

bool matchFormula(const Formula& pat, const Formula& b, std::uint32_t depth, std::optional<Term>& hole) {
  if (pat.kind() != b.kind()) return false;
  switch (pat.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      return matchTerm(pat.lhs(), b.lhs(), depth, hole) && matchTerm(pat.rhs(), b.rhs(), depth, hole);
    case FormulaKind::And:
    case FormulaKind::Or:
      return matchFormula(pat.left(), b.left(), depth, hole) && matchFormula(pat.right(), b.right(), depth, hole);
    default:
      return matchFormula(pat.body(), b.body(), depth + 1, hole);
  }
}

}  // namespace

Formula substitute(const Formula& body, std::uint64_t n) { return substFormula(body, 0, Term::numeral(n)); }

Formula substitute(const Formula& body, const Term& closedTerm) {
  if (!closedTerm.closed()) throw NotClosed("substituted term must be closed");
  return substFormula(body, 0, closedTerm);
}

std::optional<std::uint64_t> instanceNumeral(const Formula& body, const Formula& b) {
  std::optional<Term> hole;
  if (!matchFormula(body, b, 0, hole)) return std::nullopt;
  // A vacuous body matches with any numeral; 0 is the canonical witness.
  if (!hole) return 0;
  return hole->numeralValue();
}

bool isTrueLiteral(const Formula& a) {
  if (!a.isLiteral()) return false;
  if (!a.lhs().closed() || !a.rhs().closed()) return false;
  bool same = evalTerm(a.lhs()) == evalTerm(a.rhs());
  return a.kind() == FormulaKind::Eq ? same : !same;
}

// ---- Sequent -------------------------------------------------------------

Sequent::Sequent(std::initializer_list<Formula> xs) : members_(xs) { normalise(); }
Sequent::Sequent(std::vector<Formula> xs) : members_(std::move(xs)) { normalise(); }

void Sequent::normalise() {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

bool Sequent::contains(const Formula& a) const { return std::binary_search(members_.begin(), members_.end(), a); }

Sequent Sequent::with(const Formula& a) const {
  if (contains(a)) return *this;
  Sequent s = *this;
  s.members_.insert(std::lower_bound(s.members_.begin(), s.members_.end(), a), a);
  return s;
}

Sequent Sequent::without(const Formula& a) const {
  Sequent s = *this;
  auto it = std::lower_bound(s.members_.begin(), s.members_.end(), a);
  if (it != s.members_.end() && *it == a) s.members_.erase(it);
  return s;
}

Sequent Sequent::unite(const Sequent& other) const {
  Sequent s;
  std::set_union(members_.begin(), members_.end(), other.members_.begin(), other.members_.end(),
                 std::back_inserter(s.members_));
  return s;
}

Natural Sequent::code() const {
  std::vector<Natural> cs;
  cs.reserve(members_.size());
  for (const auto& m : members_) cs.push_back(m.code());
  return encodeSeq(cs);
}

Sequent Sequent::decode(const Natural& code) {
  auto xs = decodeSeq(code);
  std::vector<Formula> fs;
  fs.reserve(xs.size());
  for (const auto& x : xs) fs.push_back(Formula::decode(x));
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (!(fs[i - 1] < fs[i])) throw MalformedCode("sequent code not canonically ordered");
  Sequent s;
  s.members_ = std::move(fs);
  return s;
}

Sequent Sequent::fromSExpr(const SExpr& e) {
  if (e.head() != "seq") throw MalformedCode("expected (seq ...): " + e.str());
  std::vector<Formula> fs;
  for (std::size_t i = 1; i < e.items.size(); ++i) fs.push_back(Formula::fromSExpr(e.items[i]));
  return Sequent(std::move(fs));
}

Sequent Sequent::parse(const std::string& text) { return fromSExpr(parseSExpr(text)); }

SExpr Sequent::toSExpr() const {
  std::vector<SExpr> items{SExpr::makeAtom("seq")};
  for (const auto& m : members_) items.push_back(m.toSExpr());
  return SExpr::makeList(std::move(items));
}

bool isAxiom(const Sequent& s) {
  return std::any_of(s.members().begin(), s.members().end(), [](const Formula& a) { return isTrueLiteral(a); });
}

std::optional<std::size_t> OrderedSequent::firstNonLiteral() const {
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (!items_[i].isLiteral()) return i;
  return std::nullopt;
}

Natural OrderedSequent::code() const {
  std::vector<Natural> cs;
  cs.reserve(items_.size());
  for (const auto& m : items_) cs.push_back(m.code());
  return encodeSeq(cs);
}

OrderedSequent OrderedSequent::decode(const Natural& code) {
  auto xs = decodeSeq(code);
  std::vector<Formula> fs;
  fs.reserve(xs.size());
  for (const auto& x : xs) fs.push_back(Formula::decode(x));
  return OrderedSequent(std::move(fs));
}

// ---- bounded truth -------------------------------------------------------

namespace {

Truth kleeneAnd(Truth a, Truth b) {
  if (a == Truth::False || b == Truth::False) return Truth::False;
  if (a == Truth::True && b == Truth::True) return Truth::True;
  return Truth::Unknown;
}

Truth kleeneOr(Truth a, Truth b) {
  if (a == Truth::True || b == Truth::True) return Truth::True;
  if (a == Truth::False && b == Truth::False) return Truth::False;
  return Truth::Unknown;
}

}  // namespace

Truth boundedTruth(const Formula& a, std::uint64_t bound) {
  switch (a.kind()) {
    case FormulaKind::Eq:
    case FormulaKind::Neq:
      return isTrueLiteral(a) ? Truth::True : Truth::False;
    case FormulaKind::And:
      return kleeneAnd(boundedTruth(a.left(), bound), boundedTruth(a.right(), bound));
    case FormulaKind::Or:
      return kleeneOr(boundedTruth(a.left(), bound), boundedTruth(a.right(), bound));
    case FormulaKind::All:
      for (std::uint64_t n = 0; n <= bound; ++n)
        if (boundedTruth(substitute(a.body(), n), bound) == Truth::False) return Truth::False;
      return Truth::Unknown;
    case FormulaKind::Ex:
      for (std::uint64_t n = 0; n <= bound; ++n)
        if (boundedTruth(substitute(a.body(), n), bound) == Truth::True) return Truth::True;
      return Truth::Unknown;
  }
  return Truth::Unknown;
}

}  // namespace omega
