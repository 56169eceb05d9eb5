#pragma once

// Dense-tableau phase-one simplex for feasibility of
//   A x = b,  x >= 0,  b >= 0
// in double precision. Results are only hints: callers re-derive exact
// solutions from the returned basis.

#include <chrono>
#include <cstddef>
#include <utility>
#include <vector>

namespace kwfeas {

struct LpProblem {
  std::size_t rows = 0;
  // Column j as (row, value) pairs.
  std::vector<std::vector<std::pair<std::size_t, double>>> columns;
  std::vector<double> rhs;
};

enum class LpStatus { Feasible, Infeasible, IterationLimit, TimeLimit, TooLarge };

struct LpOptions {
  std::size_t max_iterations = 200000;
  std::size_t max_cells = 20'000'000;
  double pivot_tolerance = 1e-9;
  double feasibility_tolerance = 1e-9;
  std::chrono::steady_clock::time_point deadline = std::chrono::steady_clock::time_point::max();
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> x;               // structural values
  std::vector<std::size_t> basic;      // structural columns in the final basis
  std::size_t iterations = 0;
  double residual = 0.0;               // sum of artificial values at the end
};

LpResult solve_feasibility(const LpProblem& problem, const LpOptions& options = {});

const char* to_string(LpStatus s);

}  // namespace kwfeas
