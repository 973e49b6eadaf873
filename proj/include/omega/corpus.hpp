#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omega/codes.hpp"
#include "omega/kleeneo.hpp"
#include "omega/syntax.hpp"

namespace omega {

// A fixture file holds one (seq ...) expression followed by an
// (assert (key value...)...) trailer. Recognised keys: truth, expect,
// branch, reason, note.

struct Fixture {
  std::string name;
  Sequent sentence;
  std::optional<bool> truth;
  std::string expect;  // code, deadend, diverged or refuted
  std::optional<Path> branch;
  std::string reason;
  std::string note;  // hand argument for the asserted truth value
};

Fixture parseFixture(const std::string& name, const std::string& text);
Fixture loadFixture(const std::string& file);
/// Every *.seq file under dir, sorted by name.
std::vector<Fixture> loadFixtures(const std::string& dir);
/// Fixture directory of the source tree.
std::string defaultFixtureDir();

// Notation fixtures (*.ord) hold (notation X) with X a number, (pow X) or
// (lim NAME) for a hand-built index, and an assert trailer with keys expect,
// bounds (depth breadth fuel), height, code-height, branch, reason,
// code-branch, code-reason, note. The code keys describe oToCode.

struct NotationFixture {
  std::string name;
  ONotation notation;
  std::string expect;  // verified or refuted
  CheckBounds bounds;
  std::optional<std::uint32_t> height, codeHeight;
  std::optional<Path> branch, codeBranch;
  std::string reason, codeReason;
  std::string note;
};

/// iterated-power, flat-pair, undefined-at-one.
std::optional<Natural> namedLimitIndex(const std::string& name);
ONotation notationFromSExpr(const SExpr& e);
NotationFixture parseNotationFixture(const std::string& name, const std::string& text);
/// Every *.ord file under dir, sorted by name.
std::vector<NotationFixture> loadNotationFixtures(const std::string& dir);
std::string defaultNotationDir();

struct CorpusCode {
  std::string name;
  Natural code;
  bool hasCut = false;
};

/// psi codes of the true fixtures, followed by a few hand-built cut codes.
std::vector<CorpusCode> corpusCodes(const std::vector<Fixture>& fixtures, std::uint64_t fuel = 1000000);

/// Index n -> <Ax, G + {n = n}>, certified.
Natural reflIndex(const Sequent& g);

/// Code of forall x forall y exists z ((x = x and y = y) and z = z): premise n
/// of the root is an omega node whose premise m is the exists node with
/// witness f(n, m) for the Ackermann function f. Branch n evaluates a
/// program built by n nested iterations.
Natural ackermannFixture();
const Formula& ackermannSentence();
/// Host-side Ackermann function: f(0,m)=m+1, f(n+1,0)=f(n,1),
/// f(n+1,m+1)=f(n,f(n+1,m)). nullopt once a value exceeds limit.
std::optional<std::uint64_t> ackermann(std::uint64_t n, std::uint64_t m, std::uint64_t limit = 100000);

// ---- mutations -------------------------------------------------------------

enum class MutationKind { Identity, WrongNumeral, DropContext, SwapCutDual, MuWrapOmega };
std::string_view mutationName(MutationKind k);

class BadSite : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Mutation {
  MutationKind kind = MutationKind::Identity;
  Path site;
  Natural code;
  /// Expected refutation of the mutated code (empty reason for Identity).
  std::string reason;
  Path path;
  /// Where a strict weakening of the mutated code fails: the failing check
  /// cut back to the premise of the nearest omega node above it.
  Path strictPath;
};

/// WrongNumeral: site is an omega premise s+<n>, replaced by premise n+1.
/// DropContext: drops the first context member other than the main formula
/// of the non-root node at site. SwapCutDual: site is a cut node. MuWrapOmega:
/// site is an omega node whose index is rewrapped through an unbounded search.
Mutation mutate(const Natural& a, const Path& site, MutationKind kind, std::uint64_t fuel = 1000000);

/// Sites in the prefix reached with premises 0..breadth-1 up to depth where
/// the mutation applies, in depth-first order.
std::vector<Path> mutationSites(const Natural& a, MutationKind kind, std::uint32_t depth, std::uint32_t breadth,
                                std::uint64_t fuel = 1000000);

/// Replaces the node at path, rebuilding omega indices on the way.
Natural replaceAt(const Natural& a, const Path& path, const Natural& replacement, std::uint64_t fuel = 1000000);

}  // namespace omega
