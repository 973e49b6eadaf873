#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "omega/natural.hpp"
#include "omega/sexpr.hpp"

namespace omega {

/// Constructors of the partial-recursive program language.
///
///   (Z k)          zero of arity k
///   S              successor
///   (P k i)        projection onto argument i (0-based) of k
///   (C f g1 ...)   composition f(g1(x), ..., gm(x))
///   (R base step)  primitive recursion on the first argument:
///                    f(0, xs) = base(xs), f(y+1, xs) = step(y, f(y, xs), xs)
///   (Mu f)         least z with f(z, xs) = 0
///   (A idx g1 ...) application of a literal index
///   (cvrec body)   course-of-values recursion; (cvself g1 ...) inside the body
///                  re-enters the innermost enclosing cvrec, and must strictly
///                  decrease the first argument
///   (K k n)        constant n of arity k
///   (op name g1 ...) native library primitive
///   (case s b0 ... bm) evaluates s, then only branch min(s, m)
///   (app t g1 ...) application of a computed index
enum class ProgKind : std::uint8_t {
  Zero = 0,
  Succ = 1,
  Proj = 2,
  Comp = 3,
  PrimRec = 4,
  Mu = 5,
  ApplyLit = 6,
  CVRec = 7,
  CVSelf = 8,
  Const = 9,
  Op = 10,
  Case = 11,
  App = 12,
};

struct Program;
using ProgramPtr = std::shared_ptr<const Program>;

struct Program {
  ProgKind kind;
  std::uint32_t arity = 0;
  std::uint32_t index = 0;  // Proj: argument index; Op: primitive id
  Natural value;            // Const: the constant; ApplyLit: the index
  std::vector<ProgramPtr> kids;
  Natural code;  // Gödel number, fixed at construction

  const Natural& encode() const { return code; }
  SExpr toSExpr() const;
  std::string str() const { return toSExpr().str(); }
};

/// Constructors validating arities. Throw ArityMismatch.
namespace prog {
ProgramPtr zero(std::uint32_t k);
ProgramPtr succ();
ProgramPtr proj(std::uint32_t k, std::uint32_t i);
ProgramPtr comp(ProgramPtr f, std::vector<ProgramPtr> gs);
ProgramPtr primRec(ProgramPtr base, ProgramPtr step);
ProgramPtr mu(ProgramPtr f);
/// Target arity is checked against the decoded index.
ProgramPtr applyLit(const Natural& index, std::vector<ProgramPtr> gs);
ProgramPtr cvrec(ProgramPtr body);
/// Arity is that of the arguments; matching the enclosing cvrec is checked by cvrec().
ProgramPtr cvself(std::vector<ProgramPtr> gs);
ProgramPtr constant(std::uint32_t k, Natural n);
ProgramPtr op(std::uint32_t opId, std::vector<ProgramPtr> gs);
ProgramPtr cases(ProgramPtr selector, std::vector<ProgramPtr> branches);
ProgramPtr app(ProgramPtr target, std::vector<ProgramPtr> gs);
}  // namespace prog

/// Decodes with a process-wide cache. Throws MalformedCode.
ProgramPtr decodeProgram(const Natural& code);
ProgramPtr programFromSExpr(const SExpr& e);

/// Gödel number of a program, with its arity.
struct Index {
  Natural code;
  std::uint32_t arity = 0;

  static Index of(const ProgramPtr& p) { return Index{p->encode(), p->arity}; }
  static Index of(const Natural& code);
  ProgramPtr program() const { return decodeProgram(code); }
};

}  // namespace omega
