#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace omega {

/// Arbitrary precision natural number. Every Gödel number in the system is one.
using Natural = mpz_class;

class MalformedCode : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArityMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string toDecimal(const Natural& n) { return n.get_str(10); }
Natural parseNatural(const std::string& text);

std::size_t bitLength(const Natural& n);

/// Byte-exact key for hashing naturals.
std::string naturalKey(const Natural& n);

struct NaturalHash {
  std::size_t operator()(const Natural& n) const;
};

/// Saturating conversion; returns nullopt when the value does not fit.
std::optional<std::uint64_t> toU64(const Natural& n);

// Sequence coding. A finite sequence <x1,...,xk> is the natural whose binary
// form is a leading 1 followed by the concatenated self-delimiting codes of
// x1..xk. The empty sequence is 1; 0 is never a code.

Natural encodeSeq(std::span<const Natural> xs);
Natural encodeSeq(std::initializer_list<Natural> xs);
std::optional<std::vector<Natural>> tryDecodeSeq(const Natural& code);
/// Throws MalformedCode.
std::vector<Natural> decodeSeq(const Natural& code);
bool isSeq(const Natural& code);

/// Bit string (MSB first) of the self-delimiting code of one natural.
void appendNaturalBits(std::string& out, const Natural& m);

}  // namespace omega
