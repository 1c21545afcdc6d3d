#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "votepos/rational.hpp"

namespace votepos {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct Constraint {
  std::vector<Rational> coefficients;
  Relation relation = Relation::LessEqual;
  Rational bound;
};

/// maximize objective . x subject to the constraints and x >= 0.
/// Every variable is implicitly nonnegative.
struct LinearProgram {
  std::vector<std::string> variables;
  std::vector<Rational> objective;
  std::vector<Constraint> constraints;

  /// Exact check of every constraint and of nonnegativity.
  bool satisfied_by(std::span<const Rational> point) const;
  Rational objective_at(std::span<const Rational> point) const;

  /// Debug dump, one constraint per line.
  std::string dump() const;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

std::string_view to_string(LpStatus status);

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  Rational value;              // when Optimal
  std::vector<Rational> point; // when Optimal
};

/// Exact two-phase simplex with Bland's smallest-index rule. The optimal
/// point is re-substituted into every constraint before returning.
/// Throws Error{DimensionMismatch} for ragged input.
LpOutcome solve(const LinearProgram& lp);

/// c + sum_i a_i * x_i over a fixed number of unknowns. Used to expand
/// payoff expressions symbolically in the unknown cluster positions.
class AffineForm {
 public:
  AffineForm() = default;
  AffineForm(std::size_t unknowns, Rational constant = {})
      : coef_(unknowns), constant_(std::move(constant)) {}

  static AffineForm variable(std::size_t unknowns, std::size_t index);

  std::size_t unknowns() const { return coef_.size(); }
  const std::vector<Rational>& coefficients() const { return coef_; }
  const Rational& constant() const { return constant_; }

  Rational evaluate(std::span<const Rational> values) const;

  AffineForm& operator+=(const AffineForm& o);
  AffineForm& operator-=(const AffineForm& o);
  AffineForm& operator*=(const Rational& k);

  friend AffineForm operator+(AffineForm a, const AffineForm& b) { return a += b; }
  friend AffineForm operator-(AffineForm a, const AffineForm& b) { return a -= b; }
  friend AffineForm operator*(AffineForm a, const Rational& k) { return a *= k; }
  friend AffineForm operator+(AffineForm a, const Rational& k) {
    a.constant_ += k;
    return a;
  }

  friend bool operator==(const AffineForm&, const AffineForm&) = default;

 private:
  std::vector<Rational> coef_;
  Rational constant_;
};

}  // namespace votepos
