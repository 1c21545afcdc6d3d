#include "oracles.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace votepos::testkit {

Rational sweep_score(const ScoringRule& rule, const std::vector<Rational>& positions, std::size_t focus) {
  const Rational& p = positions[focus];
  // closer(y) changes by +1 / -1 at each midpoint; count at y = 0 first.
  int tied = 0, closer_at_zero = 0;
  std::map<Rational, int> events;
  for (std::size_t c = 0; c < positions.size(); ++c) {
    if (c == focus) continue;
    const Rational& x = positions[c];
    if (x == p) {
      ++tied;
      continue;
    }
    const Rational mid = (x + p) / Rational(2);
    if (x < p) {
      ++closer_at_zero;  // voters left of mid prefer x
      events[mid] -= 1;
    } else {
      events[mid] += 1;
    }
  }
  const auto s = rule.scores();
  auto share = [&](int closer) {
    Rational sum;
    for (int r = closer; r <= closer + tied; ++r) sum += s[static_cast<std::size_t>(r)];
    return sum / Rational(tied + 1);
  };

  Rational total, from(0);
  int closer = closer_at_zero;
  for (const auto& [at, delta] : events) {
    if (at > Rational(1)) break;
    total += share(closer) * (at - from);
    from = at;
    closer += delta;
  }
  total += share(closer) * (Rational(1) - from);
  return total;
}

std::vector<Rational> expand(const Profile& profile) {
  std::vector<Rational> out;
  for (const auto& c : profile.clusters())
    for (int k = 0; k < c.count; ++k) out.push_back(c.position);
  return out;
}

namespace {

std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col].is_zero()) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

}  // namespace

VertexResult vertex_enumeration(const LinearProgram& lp) {
  const std::size_t n = lp.variables.size();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& c : lp.constraints) {
    rows.push_back(c.coefficients);
    rhs.push_back(c.bound);
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> e(n);
    e[i] = Rational(1);
    rows.push_back(e);
    rhs.push_back(Rational(0));
  }

  VertexResult best;
  std::vector<bool> pick(rows.size(), false);
  std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(std::min(n, rows.size())), true);
  do {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (pick[i]) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
    const auto x = solve_square(a, b);
    if (!x || !lp.satisfied_by(*x)) continue;
    const Rational v = lp.objective_at(*x);
    if (!best.feasible || v > best.best) best = {true, v};
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return best;
}

}  // namespace votepos::testkit
