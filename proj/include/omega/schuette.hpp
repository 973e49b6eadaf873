#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "omega/codes.hpp"
#include "omega/syntax.hpp"

namespace omega {

// Schütte deduction chains over ordered sequents. The first non-literal A of
// Γ,A,Δ is expanded in place; for ∃xA the instance A(n) replaces A and two
// copies of ∃xA are appended, n being the number of copies of ∃xA behind the
// processed one. The copies count instantiations; as sets nothing changes.

enum class SchuetteKind { Axiom, DeadEnd, And, Or, All, Ex };

struct SchuetteStep {
  SchuetteKind kind = SchuetteKind::Axiom;
  std::size_t pos = 0;  // position of the expanded formula
  Natural node;         // proof node code
};

SchuetteStep schuetteExpand(const OrderedSequent& s);
/// Child j of s, or nullopt when j is not a premise position.
std::optional<OrderedSequent> schuetteChild(const OrderedSequent& s, std::uint64_t j);
/// Ordered sequent at tree position path, nullopt outside the tree.
std::optional<OrderedSequent> schuetteAt(const OrderedSequent& root, const Path& path);
/// Node at path (0 outside the tree). Dead ends are leaves <Ax, G> with G not an axiom.
Natural schuetteNode(const OrderedSequent& root, const Path& path);

/// Certified index computing sigma -> node of the Schütte tree of g.
Natural schuetteIndex(const OrderedSequent& g);
inline Natural schuetteIndex(const Sequent& g) { return schuetteIndex(OrderedSequent::fromSequent(g)); }

/// Index of the kernel proof-search function (arity 1, on ordered sequent codes).
Natural psiIndex();

enum class PsiStatus { Code, Diverged, DeadEnd };
struct PsiResult {
  PsiStatus status = PsiStatus::Diverged;
  Natural code;
  Path deadEnd;  // position of the dead end in the finitary prefix
};

/// Runs the kernel proof search on s.
PsiResult psi(const OrderedSequent& s, std::uint64_t fuel);
inline PsiResult psi(const Sequent& s, std::uint64_t fuel) { return psi(OrderedSequent::fromSequent(s), fuel); }

/// Host-side structural recursion building the same code; nullopt if a
/// finitary chain does not close within the budget (each step costs 1 plus
/// the sequent length).
std::optional<Natural> psiReference(const OrderedSequent& s, std::uint64_t budget = 20000);

}  // namespace omega
