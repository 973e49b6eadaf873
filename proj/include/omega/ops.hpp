#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>

#include "omega/natural.hpp"

namespace omega {

class Evaluator;

/// Native primitives of the kernel. Every one is a total function with a
/// primitive recursive bound; an empty result means a resource cap was hit
/// and is reported by the evaluator as divergence.
struct OpInfo {
  std::string_view name;
  std::uint32_t arity;
  /// Result is a component of the first argument and strictly smaller than it
  /// whenever the first argument is a valid code. Used by the cvrec guard.
  bool extractor;
};

using OpFn = std::function<std::optional<Natural>(std::span<const Natural>, Evaluator&)>;

std::size_t opCount();
const OpInfo& opInfo(std::uint32_t id);
std::optional<std::uint32_t> opByName(std::string_view name);
/// Throws std::out_of_range on unknown names.
std::uint32_t opId(std::string_view name);

/// Executes a primitive; charges its fuel through the evaluator.
std::optional<Natural> runOp(std::uint32_t id, std::span<const Natural> args, Evaluator& ev);

}  // namespace omega
