#include <doctest.h>

#include "omega/corpus.hpp"
#include "omega/recfun.hpp"

using namespace omega;

namespace {

Formula F(const char* s) { return Formula::parse(s); }

// The witness term of the exists node at <n, m>.
std::optional<std::uint64_t> witnessAt(const Natural& a, std::uint64_t n, std::uint64_t m) {
  auto node = codeAt(a, {Natural(static_cast<unsigned long>(n)), Natural(static_cast<unsigned long>(m))}, 10000000);
  if (!node) return std::nullopt;
  auto c = Code::decode(*node);
  if (c.rule != Rule::Ex) return std::nullopt;
  auto inst = Code::decode(c.subs[0]).main;
  return instanceNumeral(c.main->body(), *inst);
}

}  // namespace

TEST_CASE("fixture files load") {
  auto fs = loadFixtures(defaultFixtureDir());
  CHECK(fs.size() >= 30);
  for (const auto& f : fs) {
    CAPTURE(f.name);
    CHECK(f.truth.has_value());
    CHECK_FALSE(f.expect.empty());
  }
  auto ns = loadNotationFixtures(defaultNotationDir());
  CHECK(ns.size() >= 10);
  CHECK_THROWS_AS(parseFixture("bad", "(seq (= 0 0)) (assert (colour blue))"), MalformedCode);
  CHECK_THROWS_AS(parseNotationFixture("bad", "(notation (lim nowhere))"), MalformedCode);
  auto f = parseNotationFixture("x", "(notation (pow 2)) (assert (expect verified) (bounds 3 2 100) (note n))");
  CHECK(f.notation == ONotation::fromValue(4));
  CHECK(f.bounds.depth == 3);
  CHECK(f.bounds.breadth == 2);
}

TEST_CASE("ackermann oracle") {
  for (std::uint64_t m = 0; m < 6; ++m) {
    CHECK(*ackermann(0, m) == m + 1);
    CHECK(*ackermann(1, m) == m + 2);
    CHECK(*ackermann(2, m) == 2 * m + 3);
    CHECK(*ackermann(3, m) == (std::uint64_t{1} << (m + 3)) - 3);
  }
  CHECK(*ackermann(4, 0) == 13);
  CHECK_FALSE(ackermann(4, 2));
}

TEST_CASE("ackermann fixture") {
  Natural a = ackermannFixture();
  CHECK(endRule(a).end == Sequent{ackermannSentence()});
  auto root = Code::decode(a);
  CHECK(isPR(root.index()));
  for (std::uint64_t n = 0; n < 5; ++n) {
    auto inner = Code::decode(*codeAt(a, {Natural(static_cast<unsigned long>(n))}, 1000000));
    CHECK(inner.rule == Rule::Omega);
    CHECK(isPR(inner.index()));
  }
  CheckBounds b;
  b.depth = 6;
  b.breadth = 3;
  auto v = checkMembership(a, System::CprecCutFree, b);
  CHECK(v.status == VerdictStatus::VerifiedToBound);
  CHECK(v.height == 6);
  for (std::uint64_t n = 0; n < 4; ++n)
    for (std::uint64_t m = 0; m < 4; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      CHECK(witnessAt(a, n, m) == ackermann(n, m));
    }
  auto node = Code::decode(*codeAt(a, {Natural(2), Natural(3)}, 1000000));
  CHECK(node.rule == Rule::Ex);
  CHECK(*node.main == substitute(substitute(ackermannSentence().body(), 2).body(), 3));
  CHECK(witnessAt(a, 2, 3) == 9u);
}

TEST_CASE("mutation examples") {
  Sequent g{F("(= 0 1)")};
  Formula all = F("(all (= (v 0) (v 0)))");
  Natural a = mkOmega(g, all, reflIndex(g));
  auto m = mutate(a, {Natural(2)}, MutationKind::WrongNumeral);
  CHECK(m.reason == "WrongInstance");
  CHECK(m.path.empty());
  CheckBounds b;
  b.depth = 4;
  auto v = checkMembership(m.code, System::Crec, b);
  REQUIRE(v.refuted());
  CHECK(v.reason == "WrongInstance");
  auto id = mutate(a, {}, MutationKind::Identity);
  CHECK(checkMembership(id.code, System::Crec, b).line() == checkMembership(a, System::Crec, b).line());
  auto mu = mutate(a, {}, MutationKind::MuWrapOmega);
  auto vp = checkMembership(mu.code, System::Cprec, b);
  REQUIRE(vp.refuted());
  CHECK(vp.reason == "NotPR");
  CHECK(checkMembership(mu.code, System::Crec, b).verified());
  CHECK_THROWS_AS(mutate(a, {Natural(0), Natural(0)}, MutationKind::DropContext), BadSite);
}
