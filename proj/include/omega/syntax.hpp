#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "omega/natural.hpp"
#include "omega/sexpr.hpp"

namespace omega {

// Terms of the language 0, 1, +, x. Variables are de Bruijn references to
// enclosing quantifiers: (v 0) is the innermost binder.

enum class TermKind : std::uint8_t { Zero = 0, One = 1, Var = 2, Add = 3, Mul = 4 };

class Term {
 public:
  static Term zero();
  static Term one();
  static Term var(std::uint32_t k);
  static Term add(Term l, Term r);
  static Term mul(Term l, Term r);
  /// Canonical numeral: 0 is zero, n > 0 is 1+(1+(...+1)).
  static Term numeral(std::uint64_t n);

  TermKind kind() const { return node_->kind; }
  std::uint32_t varIndex() const { return node_->var; }
  const Term& left() const { return *node_->l; }
  const Term& right() const { return *node_->r; }
  const Natural& code() const { return node_->code; }

  bool closed() const;
  /// Value of n when this is the canonical numeral n.
  std::optional<std::uint64_t> numeralValue() const;

  static Term decode(const Natural& code);
  static Term fromSExpr(const SExpr& e);
  SExpr toSExpr() const;
  std::string str() const { return toSExpr().str(); }

  friend bool operator==(const Term& a, const Term& b) { return a.code() == b.code(); }

 private:
  struct Node {
    TermKind kind;
    std::uint32_t var = 0;
    std::shared_ptr<const Term> l, r;
    Natural code;
  };
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class NotClosed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Standard-model value of a closed term. Throws NotClosed.
Natural evalTerm(const Term& t);

enum class FormulaKind : std::uint8_t { Eq = 0, Neq = 1, And = 2, Or = 3, All = 4, Ex = 5 };

/// Negation normal form formula; quantifiers bind de Bruijn index 0 in their body.
class Formula {
 public:
  static Formula eq(Term t, Term u);
  static Formula neq(Term t, Term u);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula all(Formula body);
  static Formula ex(Formula body);

  FormulaKind kind() const { return node_->kind; }
  bool isLiteral() const { return kind() == FormulaKind::Eq || kind() == FormulaKind::Neq; }
  bool isQuantifier() const { return kind() == FormulaKind::All || kind() == FormulaKind::Ex; }
  const Term& lhs() const { return *node_->t; }
  const Term& rhs() const { return *node_->u; }
  const Formula& left() const { return *node_->a; }
  const Formula& right() const { return *node_->b; }
  const Formula& body() const { return *node_->a; }
  const Natural& code() const { return node_->code; }

  /// No variable reference escapes its binders.
  bool isSentence() const;

  static Formula decode(const Natural& code);
  static Formula fromSExpr(const SExpr& e);
  static Formula parse(const std::string& text);
  SExpr toSExpr() const;
  std::string str() const { return toSExpr().str(); }

  friend bool operator==(const Formula& a, const Formula& b) { return a.code() == b.code(); }
  friend bool operator<(const Formula& a, const Formula& b) { return a.code() < b.code(); }

 private:
  struct Node {
    FormulaKind kind;
    std::shared_ptr<const Term> t, u;
    std::shared_ptr<const Formula> a, b;
    Natural code;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

Formula negate(const Formula& a);
std::uint64_t rank(const Formula& a);

/// Instantiates de Bruijn index 0 of a quantifier body with the numeral n.
Formula substitute(const Formula& body, std::uint64_t n);
Formula substitute(const Formula& body, const Term& closedTerm);

/// If b is body[x := n] for a numeral n, returns n.
std::optional<std::uint64_t> instanceNumeral(const Formula& body, const Formula& b);

/// True iff a is a closed literal whose sides satisfy the relation it claims.
bool isTrueLiteral(const Formula& a);

/// Finite set of sentences, kept sorted by Gödel number without duplicates.
class Sequent {
 public:
  Sequent() = default;
  Sequent(std::initializer_list<Formula> xs);
  explicit Sequent(std::vector<Formula> xs);

  const std::vector<Formula>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool empty() const { return members_.empty(); }
  bool contains(const Formula& a) const;

  Sequent with(const Formula& a) const;
  Sequent without(const Formula& a) const;
  Sequent unite(const Sequent& other) const;

  Natural code() const;
  static Sequent decode(const Natural& code);
  static Sequent fromSExpr(const SExpr& e);
  static Sequent parse(const std::string& text);
  SExpr toSExpr() const;
  std::string str() const { return toSExpr().str(); }

  friend bool operator==(const Sequent& a, const Sequent& b) { return a.members_ == b.members_; }

 private:
  void normalise();
  std::vector<Formula> members_;
};

bool isAxiom(const Sequent& s);

/// Ordered list of sentences used by proof search.
class OrderedSequent {
 public:
  OrderedSequent() = default;
  explicit OrderedSequent(std::vector<Formula> xs) : items_(std::move(xs)) {}
  static OrderedSequent fromSequent(const Sequent& s) { return OrderedSequent(s.members()); }

  const std::vector<Formula>& items() const { return items_; }
  std::size_t size() const { return items_.size(); }
  Sequent toSet() const { return Sequent(items_); }
  /// Position of the first non-literal member.
  std::optional<std::size_t> firstNonLiteral() const;
  /// Γ or Γ,A,Δ with Γ all literals: always true, the split point being firstNonLiteral.
  bool hasNormalShape() const { return true; }

  Natural code() const;
  static OrderedSequent decode(const Natural& code);

  friend bool operator==(const OrderedSequent& a, const OrderedSequent& b) { return a.items_ == b.items_; }

 private:
  std::vector<Formula> items_;
};

enum class Truth { True, False, Unknown };

/// Three-valued evaluation with quantifier witnesses searched in 0..bound.
Truth boundedTruth(const Formula& a, std::uint64_t bound);

}  // namespace omega
