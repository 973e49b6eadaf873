#include <cctype>
#include <cstring>
#include <functional>

#include "omega/builder.hpp"
#include "omega/eval.hpp"
#include "omega/kleeneo.hpp"

namespace omega {

namespace {

// Exponent k with x = base^k * rest, rest not divisible by base.
std::pair<unsigned long, Natural> strip(const Natural& x, unsigned long base) {
  Natural rest = x;
  unsigned long k = 0;
  while (rest != 0 && mpz_divisible_ui_p(rest.get_mpz_t(), base)) {
    rest /= base;
    ++k;
  }
  return {k, rest};
}

const Natural& oneCode() {
  static const Natural c = encodeSeq({0});
  return c;
}
const Natural& twoCode() {
  static const Natural c = encodeSeq({1, oneCode()});
  return c;
}

}  // namespace

OShape ONotation::shape() const {
  auto xs = tryDecodeSeq(code);
  if (!xs || xs->empty()) return OShape::Other;
  if ((*xs)[0] == 0 && xs->size() == 1) return OShape::One;
  if ((*xs)[0] == 1 && xs->size() == 2) return OShape::Pow;
  if ((*xs)[0] == 2 && xs->size() == 2) return OShape::Lim;
  return OShape::Other;
}

Natural ONotation::arg() const {
  auto xs = tryDecodeSeq(code);
  if (!xs || xs->size() < 2) return 0;
  return (*xs)[1];
}

ONotation ONotation::one() { return ONotation{oneCode()}; }
ONotation ONotation::pow(const ONotation& a) { return ONotation{encodeSeq({1, a.code})}; }
ONotation ONotation::lim(const Natural& e) { return ONotation{encodeSeq({2, e})}; }
ONotation ONotation::other(const Natural& v) { return ONotation{encodeSeq({3, v})}; }

ONotation ONotation::fromValue(const Natural& v) {
  if (v == 1) return one();
  if (v > 1 && mpz_popcount(v.get_mpz_t()) == 1)
    return pow(fromValue(Natural(static_cast<unsigned long>(mpz_scan1(v.get_mpz_t(), 0)))));
  if (v > 0 && mpz_divisible_ui_p(v.get_mpz_t(), 3)) {
    auto [k, rest] = strip(v / 3, 5);
    if (rest == 1) return lim(Natural(k));
  }
  return other(v);
}

std::optional<Natural> ONotation::value(std::size_t maxBits) const {
  switch (shape()) {
    case OShape::One:
      return Natural(1);
    case OShape::Pow: {
      auto a = ONotation{arg()}.value(maxBits);
      if (!a || *a >= maxBits) return std::nullopt;
      Natural r;
      mpz_ui_pow_ui(r.get_mpz_t(), 2, a->get_ui());
      return r;
    }
    case OShape::Lim: {
      // 5^e has about 2.33 e bits
      if (arg() * 7 / 3 + 3 > maxBits) return std::nullopt;
      Natural r;
      mpz_ui_pow_ui(r.get_mpz_t(), 5, arg().get_ui());
      return 3 * r;
    }
    case OShape::Other:
      return arg();
  }
  return std::nullopt;
}

namespace {

struct Parser {
  const std::string& s;
  std::size_t i = 0;

  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(const char* t) {
    skip();
    std::size_t n = std::strlen(t);
    if (s.compare(i, n, t) != 0) return false;
    i += n;
    return true;
  }
  std::optional<Natural> number() {
    skip();
    std::size_t j = i;
    while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
    if (j == i) return std::nullopt;
    Natural v(s.substr(i, j - i));
    i = j;
    return v;
  }
  std::optional<ONotation> expr() {
    if (eat("(")) {
      auto e = expr();
      if (!e || !eat(")")) return std::nullopt;
      return e;
    }
    std::size_t save = i;
    if (eat("3") && eat("*") && eat("5") && eat("^")) {
      auto e = number();
      if (!e) return std::nullopt;
      return ONotation::lim(*e);
    }
    i = save;
    if (eat("2") && eat("^")) {
      auto a = expr();
      if (!a) return std::nullopt;
      return ONotation::pow(*a);
    }
    i = save;
    auto v = number();
    if (!v) return std::nullopt;
    return ONotation::fromValue(*v);
  }
};

}  // namespace

std::optional<ONotation> ONotation::parse(const std::string& text) {
  Parser p{text};
  auto r = p.expr();
  p.skip();
  if (!r || p.i != text.size()) return std::nullopt;
  return r;
}

std::string ONotation::str() const {
  switch (shape()) {
    case OShape::One:
      return "1";
    case OShape::Pow: {
      ONotation a{arg()};
      std::string inner = a.str();
      return a.shape() == OShape::One ? "2^1" : "2^(" + inner + ")";
    }
    case OShape::Lim:
      return "3*5^" + toDecimal(arg());
    case OShape::Other:
      return toDecimal(arg());
  }
  return toDecimal(code);
}

namespace {

struct Exhausted {};
using W = std::shared_ptr<const LtWitness>;

class LtSearch {
 public:
  explicit LtSearch(std::uint64_t fuel) : fuel_(fuel) {}

  void spend(std::uint64_t k) {
    if (k > fuel_ - used_) throw Exhausted{};
    used_ += k;
  }

  static std::uint64_t evalFuel(std::uint32_t r) { return std::uint64_t{64} << std::min<std::uint32_t>(r, 40); }

  std::optional<Natural> value(const Natural& e, std::uint64_t n, std::uint32_t r) {
    spend(1);
    std::uint64_t f = evalFuel(r);
    if (f > fuel_ - used_) f = fuel_ - used_;
    auto res = evalIndex(e, {Natural(static_cast<unsigned long>(n))}, f);
    spend(res.steps);
    if (!res.ok()) {
      if (res.status == EvalStatus::Diverged && f < evalFuel(r)) throw Exhausted{};
      return std::nullopt;
    }
    return res.value;
  }

  static W mk(LtWitness::Rule rule, const Natural& a, const Natural& b, std::vector<W> prem = {}) {
    auto w = std::make_shared<LtWitness>();
    w->rule = rule;
    w->lhs = a;
    w->rhs = b;
    w->premises = std::move(prem);
    return w;
  }

  // Some x <' c, as a witness.
  W nonEmpty(const Natural& c, std::uint32_t r, std::uint32_t limDepth) {
    spend(1);
    ONotation o{c};
    if (o.shape() == OShape::Pow) {
      Natural d = o.arg();
      if (d == oneCode()) return mk(LtWitness::Rule::Base, oneCode(), twoCode());
      W inner = nonEmpty(d, r, limDepth);
      if (!inner) return nullptr;
      return mk(LtWitness::Rule::Pow, d, c, {inner});
    }
    if (o.shape() == OShape::Lim && limDepth < r) {
      Natural e = o.arg();
      for (std::uint64_t n = 0; n <= r; ++n)
        if (auto v = value(e, n, r)) return limWitness(*v, c, n, r);
    }
    return nullptr;
  }

  W limWitness(const Natural& v, const Natural& b, std::uint64_t n, std::uint32_t r) {
    auto w = std::make_shared<LtWitness>();
    w->rule = LtWitness::Rule::Lim;
    w->lhs = v;
    w->rhs = b;
    w->n = static_cast<unsigned long>(n);
    w->fuel = evalFuel(r);
    return w;
  }

  W lt(const Natural& a, const Natural& b, std::uint32_t r, std::uint32_t limDepth) {
    spend(1);
    ONotation o{b};
    if (o.shape() == OShape::Pow) {
      Natural c = o.arg();
      W step;
      if (c == oneCode()) {
        step = mk(LtWitness::Rule::Base, oneCode(), twoCode());
      } else {
        W below = nonEmpty(c, r, limDepth);
        if (!below) return nullptr;
        step = mk(LtWitness::Rule::Pow, c, b, {below});
      }
      if (a == c) return step;
      W rest = lt(a, c, r, limDepth);
      if (!rest) return nullptr;
      return mk(LtWitness::Rule::Trans, a, b, {rest, step});
    }
    if (o.shape() == OShape::Lim && limDepth < r) {
      Natural e = o.arg();
      for (std::uint64_t n = 0; n <= r; ++n) {
        auto v = value(e, n, r);
        if (!v) continue;
        W step = limWitness(*v, b, n, r);
        if (*v == a) return step;
        if (W rest = lt(a, *v, r, limDepth + 1)) return mk(LtWitness::Rule::Trans, a, b, {rest, step});
      }
    }
    return nullptr;
  }

  // A bound on rounds beyond which nothing new is reachable, for finite cases.
  bool involvesLimit(const Natural& b) {
    Natural x = b;
    for (;;) {
      ONotation o{x};
      if (o.shape() == OShape::Lim) return true;
      if (o.shape() != OShape::Pow) return false;
      x = o.arg();
    }
  }

  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
};

}  // namespace

LtResult ltPrimeO(const Natural& a, const Natural& b, std::uint64_t fuel) {
  LtSearch s(fuel);
  LtResult res;
  bool limits = s.involvesLimit(b);
  try {
    for (std::uint32_t r = 0;; ++r) {
      if (W w = s.lt(a, b, r, 0)) {
        res.holds = true;
        res.witness = w;
        return res;
      }
      res.rounds = r + 1;
      if (!limits) return res;  // finite search space fully explored
    }
  } catch (const Exhausted&) {
  }
  return res;
}

bool replayWitness(const LtWitness& w) {
  using R = LtWitness::Rule;
  switch (w.rule) {
    case R::Base:
      return w.lhs == oneCode() && w.rhs == twoCode() && w.premises.empty();
    case R::Pow: {
      ONotation o{w.rhs};
      if (o.shape() != OShape::Pow || o.arg() != w.lhs || w.premises.size() != 1) return false;
      const auto& p = *w.premises[0];
      return p.rhs == w.lhs && replayWitness(p);
    }
    case R::Lim: {
      ONotation o{w.rhs};
      if (o.shape() != OShape::Lim || !w.premises.empty()) return false;
      auto v = evalIndex(o.arg(), {w.n}, w.fuel);
      return v.ok() && v.value == w.lhs;
    }
    case R::Trans: {
      if (w.premises.size() != 2) return false;
      const auto& p = *w.premises[0];
      const auto& q = *w.premises[1];
      return p.lhs == w.lhs && q.rhs == w.rhs && p.rhs == q.lhs && replayWitness(p) && replayWitness(q);
    }
  }
  return false;
}

Natural iteratedPowerIndex() {
  using namespace dsl;
  static const Natural e = function(1, [](const Exprs& x) {
                             return iterate(x[0], lit(oneCode()), [](Expr, Expr acc) { return seq({lit(1), acc}); });
                           })->encode();
  return e;
}

Natural undefinedAtOneIndex() {
  using namespace dsl;
  static const Natural e =
      function(1, [](const Exprs& x) {
        return cases(x[0], {lit(oneCode()), search([](Expr) { return lit(1); })});
      })->encode();
  return e;
}

Natural flatPairIndex() {
  static const Natural e = prog::constant(1, twoCode())->encode();
  return e;
}

}  // namespace omega
