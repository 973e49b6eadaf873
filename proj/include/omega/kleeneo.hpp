#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omega/codes.hpp"
#include "omega/natural.hpp"
#include "omega/syntax.hpp"

namespace omega {

// Kleene's O. A notation is 1, 2^a or 3*5^e. The number 3*5^e is far too
// large to write out once e is a program index, so notations are kept as
// codes <0> (1), <1, a> (2^a), <2, e> (3*5^e) and <3, v> (any other v).
// Indices of limit notations return notation codes.

enum class OShape { One, Pow, Lim, Other };

struct ONotation {
  Natural code;

  OShape shape() const;
  /// The code of a for 2^a, e for 3*5^e, v for Other.
  Natural arg() const;

  static ONotation one();
  static ONotation pow(const ONotation& a);
  static ONotation lim(const Natural& e);
  static ONotation other(const Natural& v);

  /// Exact decoding of a number: powers of two and 3*5^k are recognised.
  static ONotation fromValue(const Natural& v);
  /// The number denoted, when it has at most maxBits bits.
  std::optional<Natural> value(std::size_t maxBits = 4096) const;

  /// Accepts a decimal number, 2^X, 3*5^N and parentheses.
  static std::optional<ONotation> parse(const std::string& text);
  std::string str() const;

  friend bool operator==(const ONotation& a, const ONotation& b) { return a.code == b.code; }
};

/// One derivation step of the generated relation, with its premises.
struct LtWitness {
  enum class Rule { Base, Pow, Lim, Trans };
  Rule rule = Rule::Base;
  Natural lhs, rhs;          // notation codes
  Natural n;                 // Lim: the argument with <e>(n) = lhs
  std::uint64_t fuel = 0;    // Lim: evaluation budget used
  std::vector<std::shared_ptr<const LtWitness>> premises;
};

/// Checks each step against the generating clauses.
bool replayWitness(const LtWitness& w);

struct LtResult {
  bool holds = false;
  std::shared_ptr<const LtWitness> witness;
  std::uint32_t rounds = 0;  // completed search rounds when Unknown
};

/// Bounded search for a <'_O b on notation codes. Monotone in fuel.
LtResult ltPrimeO(const Natural& a, const Natural& b, std::uint64_t fuel);

/// Pow steps are premise 0, Lim steps premise n. Reasons: NotNotation,
/// Undefined (<e>(n) not found within fuel), NotIncreasing (<e>(n-1) <'
/// <e>(n) not found within fuel), reported at the premise.
Verdict checkO(const ONotation& a, const CheckBounds& bounds);

/// <omega, {}, forall x (x = x), e_d> with <e_d>(n) = <Ax, {n = n}>.
Natural baseProofD();
/// forall x (x = x)
const Formula& reflAll();

/// Certified arity 1 index of f.
Natural oToCodeIndex();
Natural oToCode(const ONotation& a);

/// Cut-free code of {B, not B}.
Natural dualCodeIndex();
Natural dualCode(const Formula& b);

/// Code of A ending in a cut on forall x A against exists x not A, the omega
/// branch iterating on a. base is a code of {A}.
Natural oToCodeCut(const ONotation& a, const Formula& fixture, const Natural& base);

/// Hand-built limit notations.
Natural iteratedPowerIndex();   // <e>(n) = n-fold 2^ iterate of 1
Natural undefinedAtOneIndex();  // <e>(0) = 1, <e>(1) undefined
Natural flatPairIndex();        // <e>(n) = 2

}  // namespace omega
