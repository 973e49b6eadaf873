#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "omega/eval.hpp"
#include "omega/program.hpp"

namespace omega {

/// Freezes the first k arguments of e: C(e, K f1, ..., K fk, P 0, ..., P m-1).
/// Throws ArityMismatch when e has fewer than k arguments.
ProgramPtr lambdaProgram(const ProgramPtr& e, std::span<const Natural> frozen);
Index lambdaIndex(const Index& e, std::span<const Natural> frozen);
Index lambdaIndex(const Index& e, std::initializer_list<Natural> frozen);

/// Recursion theorem: fix(g)(xs) = g(fix(g), xs). Throws ArityMismatch on arity 0.
Index fix(const Index& g);
ProgramPtr fixProgram(const ProgramPtr& g);

enum class Justification { MuFree, CVRecGuarded, CompositionOfCertified };
std::string_view justificationName(Justification j);

/// Decidable primitive recursive certificate. Registry of certified indices,
/// append-only; lookups and registration are serialised internally.
class PrRegistry {
 public:
  static PrRegistry& global();

  /// Certifies e (all arguments unknown) and registers it on success.
  std::optional<Justification> certify(const Natural& e);
  /// Certification under known values for some argument positions.
  bool certifyWith(const Natural& e, const std::vector<std::optional<Natural>>& known);
  std::optional<Justification> lookup(const Natural& e) const;
  std::size_t size() const;

 private:
  PrRegistry() = default;
  struct Impl;
  Impl& impl() const;
};

/// Throws MalformedCode on undecodable indices.
bool isPR(const Natural& e);

/// Names of the certified library programs.
std::vector<std::string> libNames();
/// Throws std::out_of_range (UnknownName) for unregistered names.
Index libIndex(std::string_view name);

}  // namespace omega
