#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "omega/natural.hpp"
#include "omega/sexpr.hpp"
#include "omega/syntax.hpp"

namespace omega {

// Local proof codes:
//   <Ax, G>  <and, G, A&B, a, b>  <or, G, AvB, a>  <omega, G, all A, e>
//   <ex, G, ex A, a>  <cut, G, C, a, b>
// G is a sequent code, a/b are codes, e is a program index of arity 1.

enum class Rule : std::uint8_t { Ax = 0, And = 1, Or = 2, Omega = 3, Ex = 4, Cut = 5 };

std::string_view ruleName(Rule r);
std::optional<Rule> ruleFromName(std::string_view s);

struct Code {
  Rule rule = Rule::Ax;
  Sequent ctx;
  std::optional<Formula> main;  // absent for Ax
  std::vector<Natural> subs;    // premise codes, or the index for omega
  Natural code;

  std::size_t premiseCount() const;
  const Natural& index() const { return subs.at(0); }

  /// Throws MalformedCode, including a main formula of the wrong shape.
  static Code decode(const Natural& a);
};

Natural mkAx(const Sequent& g);
Natural mkAnd(const Sequent& g, const Formula& main, const Natural& a, const Natural& b);
Natural mkOr(const Sequent& g, const Formula& main, const Natural& a);
Natural mkOmega(const Sequent& g, const Formula& main, const Natural& e);
Natural mkEx(const Sequent& g, const Formula& main, const Natural& a);
Natural mkCut(const Sequent& g, const Formula& cutFormula, const Natural& a, const Natural& b);

struct EndRule {
  Rule rule;
  Sequent end;
};

/// Throws MalformedCode.
EndRule endRule(const Natural& a);
Sequent endOf(const Code& c);

/// Ends of the premises, keyed by position (n for an omega premise).
using PremiseEnds = std::vector<std::pair<Natural, Sequent>>;

/// Empty on success, otherwise the violated clause.
std::optional<std::string> localCheck(const Code& a, const PremiseEnds& premEnds);

enum class System { Crec, Cprec, CrecCutFree, CprecCutFree };
std::string_view systemName(System s);
std::optional<System> systemFromName(std::string_view s);

struct CheckBounds {
  std::uint32_t depth = 8;
  std::uint32_t breadth = 6;
  std::uint64_t seed = 0;
  std::uint64_t fuel = 1000000;
  std::uint64_t maxNodes = 200000;

  /// Omega premises explored. Seed 0 gives 0..breadth-1; otherwise 0, 1 and
  /// breadth-2 values drawn from the seed.
  std::vector<std::uint64_t> sample() const;
};

enum class VerdictStatus { VerifiedComplete, VerifiedToBound, Refuted, ResourceExhausted };
std::string_view statusName(VerdictStatus s);

using Path = std::vector<Natural>;
std::string pathStr(const Path& p);

struct Verdict {
  VerdictStatus status = VerdictStatus::VerifiedToBound;
  std::uint32_t depth = 0;
  std::uint64_t seed = 0;
  std::optional<Path> path;
  std::string reason;
  bool maxDepthBranch = false;  // some branch was cut off at the depth limit
  std::uint64_t nodes = 0;
  std::uint32_t height = 0;  // nodes on the longest explored path

  bool verified() const {
    return status == VerdictStatus::VerifiedComplete || status == VerdictStatus::VerifiedToBound;
  }
  bool refuted() const { return status == VerdictStatus::Refuted; }
  std::string line() const;
};

Verdict checkMembership(const Natural& a, System sys, const CheckBounds& bounds);

/// Re-checks the single inference at the refutation path.
bool replayRefutation(const Natural& a, System sys, const CheckBounds& bounds, const Verdict& v);

/// Node reached from a by following path, or nullopt when the path leaves
/// the code or an evaluation fails.
std::optional<Natural> codeAt(const Natural& a, const Path& path, std::uint64_t fuel);

/// Realised prefix of the branch picked by choices.
std::vector<Natural> pathWalk(const Natural& a, const std::vector<std::uint64_t>& choices, std::uint64_t fuel);

enum class ProofValueStatus { Node, Diverged };
struct ProofValue {
  ProofValueStatus status = ProofValueStatus::Node;
  Natural node;  // 0 outside the tree
};

/// pi(a)(sigma) for a sequence code sigma.
ProofValue proofValue(const Natural& a, const Natural& sigma, std::uint64_t fuel);
/// <Ax, G> or <R, G, A> of a code.
Natural nodeOf(const Code& c);

/// Bounded audit of an index sigma -> node.
Verdict checkProofIndex(const Natural& p, const CheckBounds& bounds);

SExpr codeToSExpr(const Natural& a);
Natural codeFromSExpr(const SExpr& e);

/// Graph of the explored prefix; nodes show rule and end sequent.
std::string codeToDot(const Natural& a, const CheckBounds& bounds);

}  // namespace omega
