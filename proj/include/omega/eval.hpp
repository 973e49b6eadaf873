#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "omega/program.hpp"

namespace omega {

enum class EvalStatus { Value, Diverged, Error };

struct EvalResult {
  EvalStatus status = EvalStatus::Error;
  Natural value;
  std::string error;     // for Error: "ArityMismatch", "MalformedCode", "GuardViolation"
  std::uint64_t steps = 0;

  bool ok() const { return status == EvalStatus::Value; }
};

/// Fuel-bounded interpreter. One unit of fuel per constructor reduction;
/// primitives also pay one unit per kBitsPerUnit bits of input and output.
/// Single use per top-level call.
class Evaluator {
 public:
  /// Nesting limit for applications and self calls; hitting it counts as divergence.
  static constexpr std::uint32_t kMaxDepth = 60000;
  static constexpr std::uint64_t kBitsPerUnit = 64;

  explicit Evaluator(std::uint64_t fuel) : fuel_(fuel) {}

  EvalResult run(const ProgramPtr& p, std::span<const Natural> args);

  /// Throws the internal out-of-fuel signal when the budget is exceeded.
  void charge(std::uint64_t units);
  std::uint64_t used() const { return used_; }

 private:
  struct Frame {
    const Program* rec;
    std::vector<Natural> args;
  };

  Natural eval(const Program& p, std::span<const Natural> env, const Frame* frame);
  std::vector<Natural> evalArgs(const Program& p, std::size_t from, std::span<const Natural> env, const Frame* frame);
  Natural call(const Program& target, std::vector<Natural> args);

  std::uint64_t fuel_;
  std::uint64_t used_ = 0;
  std::uint32_t depth_ = 0;
};

EvalResult evalIndex(const Natural& index, std::span<const Natural> args, std::uint64_t fuel);
EvalResult evalIndex(const Natural& index, std::initializer_list<Natural> args, std::uint64_t fuel);

/// Kleene's T: the computation halts within z steps.
bool kleeneT(const Natural& index, std::span<const Natural> args, std::uint64_t z);
/// The output when kleeneT holds, otherwise nullopt.
std::optional<Natural> extractU(const Natural& index, std::span<const Natural> args, std::uint64_t z);
/// Least z with kleeneT, searching up to limit.
std::optional<std::uint64_t> haltingSteps(const Natural& index, std::span<const Natural> args, std::uint64_t limit);

}  // namespace omega
