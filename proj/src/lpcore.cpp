#include "votepos/lpcore.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "votepos/error.hpp"

namespace votepos {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "Optimal";
    case LpStatus::Infeasible: return "Infeasible";
    case LpStatus::Unbounded: return "Unbounded";
  }
  return "Unknown";
}

namespace {

Rational dot(std::span<const Rational> a, std::span<const Rational> b) {
  Rational t;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!a[i].is_zero()) t += a[i] * b[i];
  return t;
}

void check_dimensions(const LinearProgram& lp) {
  const std::size_t n = lp.variables.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "linear program has no variables");
  if (lp.objective.size() != n) throw Error(ErrorCode::DimensionMismatch, "objective width differs from variable count");
  for (std::size_t i = 0; i < lp.constraints.size(); ++i) {
    if (lp.constraints[i].coefficients.size() != n)
      throw Error(ErrorCode::DimensionMismatch, "constraint " + std::to_string(i) + " has the wrong width");
  }
}

// Dictionary simplex over mpq_class. Layout follows the usual
// (rows + 2) x (cols + 2) tableau: column n is the phase-one artificial,
// column n + 1 the right-hand side, row m the objective and row m + 1 the
// phase-one objective. Variable ids: 0..n-1 structural, n.. slack, -1
// artificial.
class Tableau {
 public:
  Tableau(const std::vector<std::vector<mpq_class>>& a, const std::vector<mpq_class>& b,
          const std::vector<mpq_class>& c)
      : m_(b.size()), n_(c.size()), basic_(m_), nonbasic_(n_ + 1),
        d_(m_ + 2, std::vector<mpq_class>(n_ + 2)) {
    for (std::size_t i = 0; i < m_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) d_[i][j] = a[i][j];
      basic_[i] = static_cast<long>(n_ + i);
      d_[i][n_] = -1;
      d_[i][n_ + 1] = b[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      nonbasic_[j] = static_cast<long>(j);
      d_[m_][j] = -c[j];
    }
    nonbasic_[n_] = -1;
    d_[m_ + 1][n_] = 1;
  }

  LpStatus run(std::vector<mpq_class>& x, mpq_class& value) {
    if (m_ > 0) {
      std::size_t r = 0;
      for (std::size_t i = 1; i < m_; ++i)
        if (d_[i][n_ + 1] < d_[r][n_ + 1]) r = i;
      if (sgn(d_[r][n_ + 1]) < 0) {
        pivot(r, n_);
        if (!iterate(2) || sgn(d_[m_ + 1][n_ + 1]) < 0) return LpStatus::Infeasible;
        for (std::size_t i = 0; i < m_; ++i) {
          if (basic_[i] != -1) continue;
          // Drive the artificial out; an all-zero row is redundant and may keep it.
          std::size_t s = n_ + 1;
          for (std::size_t j = 0; j <= n_; ++j)
            if (sgn(d_[i][j]) != 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
          if (s != n_ + 1) pivot(i, s);
        }
      }
    }
    const bool bounded = iterate(1);
    x.assign(n_, 0);
    for (std::size_t i = 0; i < m_; ++i)
      if (basic_[i] >= 0 && basic_[i] < static_cast<long>(n_)) x[static_cast<std::size_t>(basic_[i])] = d_[i][n_ + 1];
    value = d_[m_][n_ + 1];
    return bounded ? LpStatus::Optimal : LpStatus::Unbounded;
  }

 private:
  void pivot(std::size_t r, std::size_t s) {
    const mpq_class inv = 1 / d_[r][s];
    auto& pivot_row = d_[r];
    for (std::size_t i = 0; i < m_ + 2; ++i) {
      if (i == r || sgn(d_[i][s]) == 0) continue;
      auto& row = d_[i];
      const mpq_class factor = row[s] * inv;
      for (std::size_t j = 0; j < n_ + 2; ++j)
        if (j != s && sgn(pivot_row[j]) != 0) row[j] -= pivot_row[j] * factor;
      row[s] = -factor;
    }
    for (std::size_t j = 0; j < n_ + 2; ++j)
      if (j != s) pivot_row[j] *= inv;
    pivot_row[s] = inv;
    std::swap(basic_[r], nonbasic_[s]);
  }

  // Bland: entering column = eligible improving column with the smallest
  // variable id; leaving row = minimum ratio, ties to the smallest basic id.
  bool iterate(int phase) {
    const std::size_t obj = m_ + static_cast<std::size_t>(phase) - 1;
    for (;;) {
      std::size_t s = n_ + 1;
      for (std::size_t j = 0; j <= n_; ++j) {
        if (nonbasic_[j] == -phase) continue;
        if (sgn(d_[obj][j]) < 0 && (s == n_ + 1 || nonbasic_[j] < nonbasic_[s])) s = j;
      }
      if (s == n_ + 1) return true;

      std::size_t r = m_;
      for (std::size_t i = 0; i < m_; ++i) {
        if (sgn(d_[i][s]) <= 0) continue;
        if (r == m_) {
          r = i;
          continue;
        }
        // d[i][rhs] / d[i][s] vs d[r][rhs] / d[r][s], both divisors positive.
        const int c = cmp(d_[i][n_ + 1] * d_[r][s], d_[r][n_ + 1] * d_[i][s]);
        if (c < 0 || (c == 0 && basic_[i] < basic_[r])) r = i;
      }
      if (r == m_) return false;
      pivot(r, s);
    }
  }

  std::size_t m_, n_;
  std::vector<long> basic_, nonbasic_;
  std::vector<std::vector<mpq_class>> d_;
};

}  // namespace

bool LinearProgram::satisfied_by(std::span<const Rational> point) const {
  if (point.size() != variables.size()) return false;
  for (const auto& v : point)
    if (v.sign() < 0) return false;
  for (const auto& c : constraints) {
    const Rational lhs = dot(c.coefficients, point);
    switch (c.relation) {
      case Relation::LessEqual: if (lhs > c.bound) return false; break;
      case Relation::GreaterEqual: if (lhs < c.bound) return false; break;
      case Relation::Equal: if (lhs != c.bound) return false; break;
    }
  }
  return true;
}

Rational LinearProgram::objective_at(std::span<const Rational> point) const { return dot(objective, point); }

std::string LinearProgram::dump() const {
  std::ostringstream os;
  auto term_list = [&](const std::vector<Rational>& coef) {
    bool any = false;
    for (std::size_t j = 0; j < coef.size(); ++j) {
      if (coef[j].is_zero()) continue;
      if (any) os << (coef[j].sign() < 0 ? " - " : " + ");
      else if (coef[j].sign() < 0) os << "-";
      os << abs(coef[j]) << "*" << variables[j];
      any = true;
    }
    if (!any) os << "0";
  };
  os << "maximize ";
  term_list(objective);
  os << "\n";
  for (std::size_t i = 0; i < constraints.size(); ++i) {
    os << "c" << i << ": ";
    term_list(constraints[i].coefficients);
    switch (constraints[i].relation) {
      case Relation::LessEqual: os << " <= "; break;
      case Relation::GreaterEqual: os << " >= "; break;
      case Relation::Equal: os << " = "; break;
    }
    os << constraints[i].bound << "\n";
  }
  return os.str();
}

LpOutcome solve(const LinearProgram& lp) {
  check_dimensions(lp);
  std::vector<std::vector<mpq_class>> a;
  std::vector<mpq_class> b;
  auto add_row = [&](const Constraint& c, bool negate) {
    std::vector<mpq_class> row;
    row.reserve(c.coefficients.size());
    for (const auto& v : c.coefficients) row.push_back(negate ? mpq_class(-v.raw()) : v.raw());
    a.push_back(std::move(row));
    b.push_back(negate ? mpq_class(-c.bound.raw()) : c.bound.raw());
  };
  for (const auto& c : lp.constraints) {
    if (c.relation != Relation::GreaterEqual) add_row(c, false);
    if (c.relation != Relation::LessEqual) add_row(c, true);
  }
  std::vector<mpq_class> obj;
  for (const auto& v : lp.objective) obj.push_back(v.raw());

  Tableau tableau(a, b, obj);
  std::vector<mpq_class> x;
  mpq_class value;
  LpOutcome out;
  out.status = tableau.run(x, value);
  if (out.status != LpStatus::Optimal) return out;

  for (auto& v : x) out.point.emplace_back(v);
  out.value = Rational(value);
  if (!lp.satisfied_by(out.point) || lp.objective_at(out.point) != out.value)
    throw std::logic_error("simplex returned a point that fails re-substitution");
  return out;
}

AffineForm AffineForm::variable(std::size_t unknowns, std::size_t index) {
  AffineForm f(unknowns);
  f.coef_[index] = Rational(1);
  return f;
}

Rational AffineForm::evaluate(std::span<const Rational> values) const { return constant_ + dot(coef_, values); }

AffineForm& AffineForm::operator+=(const AffineForm& o) {
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] += o.coef_[i];
  constant_ += o.constant_;
  return *this;
}

AffineForm& AffineForm::operator-=(const AffineForm& o) {
  for (std::size_t i = 0; i < coef_.size(); ++i) coef_[i] -= o.coef_[i];
  constant_ -= o.constant_;
  return *this;
}

AffineForm& AffineForm::operator*=(const Rational& k) {
  for (auto& c : coef_) c *= k;
  constant_ *= k;
  return *this;
}

}  // namespace votepos
