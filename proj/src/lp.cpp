#include "kwfeas/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace kwfeas {

const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Feasible: return "feasible";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::IterationLimit: return "iteration limit";
    case LpStatus::TimeLimit: return "time limit";
    case LpStatus::TooLarge: return "too large";
  }
  return "?";
}

LpResult solve_feasibility(const LpProblem& problem, const LpOptions& options) {
  const std::size_t m = problem.rows;
  const std::size_t n = problem.columns.size();
  if (problem.rhs.size() != m) throw std::invalid_argument("LP right-hand side has wrong length");
  for (double b : problem.rhs)
    if (b < 0) throw std::invalid_argument("LP right-hand side must be nonnegative");

  LpResult result;
  if (m * n > options.max_cells) {
    result.status = LpStatus::TooLarge;
    return result;
  }

  // Columns are scaled to unit max-norm; x is unscaled on the way out.
  std::vector<double> scale(n, 1.0);
  std::vector<double> T(m * n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double big = 0.0;
    for (const auto& [r, v] : problem.columns[j]) {
      if (r >= m) throw std::invalid_argument("LP column entry outside the row range");
      big = std::max(big, std::fabs(v));
    }
    if (big > 0.0) scale[j] = 1.0 / big;
    for (const auto& [r, v] : problem.columns[j]) T[r * n + j] += v * scale[j];
  }
  // Tableau over structural columns only; artificial columns never re-enter,
  // so they need not be stored. basis[i] >= n marks artificial n + i.
  std::vector<double> rhs = problem.rhs;
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) basis[i] = n + i;

  // Phase-one reduced costs are minus the column sums over rows whose basic
  // variable is still artificial.
  std::vector<double> cost(n, 0.0);
  auto refresh_costs = [&] {
    std::fill(cost.begin(), cost.end(), 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < n) continue;
      const double* row = &T[i * n];
      for (std::size_t j = 0; j < n; ++j) cost[j] -= row[j];
    }
  };

  const double eps = options.pivot_tolerance;
  std::size_t degenerate_streak = 0;
  bool bland = false;
  std::vector<std::size_t> nz;
  nz.reserve(n);

  for (result.iterations = 0;; ++result.iterations) {
    if (result.iterations >= options.max_iterations) {
      result.status = LpStatus::IterationLimit;
      return result;
    }
    if ((result.iterations & 31U) == 0 && std::chrono::steady_clock::now() > options.deadline) {
      result.status = LpStatus::TimeLimit;
      return result;
    }
    if (result.iterations % 64 == 0) refresh_costs();

    std::size_t q = n;
    double best = -eps;
    for (std::size_t j = 0; j < n; ++j) {
      if (cost[j] < best) {
        q = j;
        if (bland) break;
        best = cost[j];
      }
    }
    if (q == n) {
      refresh_costs();
      for (std::size_t j = 0; j < n && q == n; ++j)
        if (cost[j] < -eps) q = j;
      if (q == n) break;
    }

    // Harris two-pass ratio test: find the loosened bound, then the largest
    // pivot within it. Under Bland's rule, the smallest basic index instead.
    double bound = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
      const double a = T[i * n + q];
      if (a > eps) bound = std::min(bound, (std::max(rhs[i], 0.0) + 1e-12) / a);
    }
    std::size_t p = m;
    double pick = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double a = T[i * n + q];
      if (a <= eps || std::max(rhs[i], 0.0) / a > bound) continue;
      const bool better = p == m || (bland ? basis[i] < basis[p] : a > pick);
      if (better) {
        p = i;
        pick = a;
      }
    }
    if (p == m) {
      // Unbounded direction cannot occur for a phase-one objective bounded
      // below by zero; treat as numerical breakdown.
      result.status = LpStatus::Infeasible;
      return result;
    }

    const double pivot = T[p * n + q];
    const bool degenerate = std::max(rhs[p], 0.0) / pivot <= 1e-12;
    double* prow = &T[p * n];
    for (std::size_t j = 0; j < n; ++j) prow[j] /= pivot;
    rhs[p] = std::max(rhs[p], 0.0) / pivot;
    prow[q] = 1.0;
    nz.clear();
    for (std::size_t j = 0; j < n; ++j)
      if (prow[j] != 0.0) nz.push_back(j);

    for (std::size_t i = 0; i < m; ++i) {
      if (i == p) continue;
      double* row = &T[i * n];
      const double f = row[q];
      if (f == 0.0) continue;
      for (std::size_t j : nz) row[j] -= f * prow[j];
      row[q] = 0.0;
      rhs[i] -= f * rhs[p];
      if (rhs[i] < 0.0 && rhs[i] > -1e-11) rhs[i] = 0.0;
    }
    const double fc = cost[q];
    for (std::size_t j : nz) cost[j] -= fc * prow[j];
    cost[q] = 0.0;
    basis[p] = q;

    if (!degenerate) {
      degenerate_streak = 0;
      bland = false;
    } else if (++degenerate_streak > 200) {
      bland = true;
    }
  }

  result.x.assign(n, 0.0);
  double residual = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < n) {
      result.x[basis[i]] = rhs[i] * scale[basis[i]];
      result.basic.push_back(basis[i]);
    } else {
      residual += rhs[i];
    }
  }
  result.residual = residual;
  double rhs_scale = 1.0;
  for (double b : problem.rhs) rhs_scale = std::max(rhs_scale, b);
  result.status = residual <= options.feasibility_tolerance * rhs_scale ? LpStatus::Feasible : LpStatus::Infeasible;
  return result;
}

}  // namespace kwfeas
