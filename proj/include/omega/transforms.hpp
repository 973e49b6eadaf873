#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "omega/codes.hpp"
#include "omega/program.hpp"
#include "omega/syntax.hpp"

namespace omega {

class TransformError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- weakening -------------------------------------------------------------
//
// weak(a, D) adds D to every context. The strict form checks each inference
// before rebuilding it and yields 0 on a mismatch, so a broken node turns
// into a malformed premise of the nearest omega node above it (or a
// malformed root). Omega nodes of the result carry the index
// n -> weak(<e>(n), D), which is certified whenever e is.

/// Arity 2 kernel indices (a, D) -> weak(a, D).
Natural weakSimpleIndex();
Natural weakStrictIndex();

Natural weakSimple(const Natural& a, const Sequent& delta);
Natural weakStrict(const Natural& a, const Sequent& delta);

/// Host-side structural versions used as oracles.
Natural weakSimpleReference(const Natural& a, const Sequent& delta);
Natural weakStrictReference(const Natural& a, const Sequent& delta);

// ---- indices and codes -----------------------------------------------------

/// Index p with <p>(sigma) = pi(a)(sigma).
Natural codeToIndex(const Natural& a);

/// Code denoting the same proof as the index p; nullopt when the finitary
/// prefix does not finish within fuel. Throws TransformError("MalformedNode")
/// when p yields something that is not a node.
std::optional<Natural> indexToCodeExact(const Natural& p, std::uint64_t fuel);

/// Index sigma -> code of the cut translation of p above sigma. Certified
/// whenever p is.
Natural cutTranslationIndex(const Natural& p);

/// Code of the cut translation: every premise of a finitary rule is reached
/// through a cut on forall x (x != x). Throws TransformError("NotPR") for
/// uncertified p; nullopt when evaluation does not finish.
std::optional<Natural> indexToCodeCut(const Natural& p, std::uint64_t fuel);

/// forall x (x != x), the cut formula of the translation.
const Formula& cutGadgetFormula();

// ---- general recursive to primitive recursive ----------------------------
//
// f keeps every finitary inference and replaces <omega, G, F, e> by
// <omega, G + F, F, b>. Premise n of b waits on <e>(n) through a chain of
// omega nodes on F, one per evaluation step, and then continues with the
// strict weakening of f(<e>(n)). The number of waiting nodes above premise
// n is the least z with T(e, n, z).

/// Certified arity 1 index a -> f(a).
Natural recToPrecIndex();
Natural recToPrec(const Natural& a);
/// Host-side structural version.
Natural recToPrecReference(const Natural& a);

// ---- Pi2 sentences ---------------------------------------------------------
//
// For F = forall x exists y A(x, y) with A quantifier free, G_sigma is
// F, exists y A(n0, y), ..., exists y A(nl, y) for sigma = <n0, ..., nl>.
// The node at sigma is <ex, G_sigma, exists y A(n0, y), g(sigma, m)> when
// m < |sigma| is the least witness for n0, and otherwise an omega node on F
// whose premise n is the node at sigma + n.

/// Arity 2 index (sigma, m) -> <Ax, G_sigma + A(n0, m)>, for literal A.
Natural pi2AxiomLeaves(const Formula& f);

/// Certified index sigma -> node of the construction.
Natural pi2Index(const Formula& f, const Natural& leafBuilder);

/// Code of F. witness must compute a witness for every n; it and leafBuilder
/// must be certified (TransformError "NotPR"). A is checked to be quantifier
/// free and the witnesses are spot-checked for n < 8 (TransformError).
Natural pi2Code(const Formula& f, const Natural& witness, const Natural& leafBuilder);

}  // namespace omega
