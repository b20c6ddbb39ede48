#include "framesched/lp.hpp"

#include <cmath>
#include <stdexcept>

namespace framesched {

SimplexResult solve_feasibility(int m, int n, const std::vector<double>& A,
                                const std::vector<double>& b) {
  if (static_cast<int>(A.size()) != m * n || static_cast<int>(b.size()) != m)
    throw std::invalid_argument("simplex dimensions inconsistent");
  for (double v : b)
    if (v < 0.0) throw std::invalid_argument("simplex requires b >= 0");

  const int cols = n + m;  // real variables then one artificial per row
  const double eps = 1e-11;
  std::vector<double> tab(static_cast<std::size_t>(m + 1) * (cols + 1), 0.0);
  auto at = [&](int r, int c) -> double& {
    return tab[static_cast<std::size_t>(r) * (cols + 1) + c];
  };

  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) at(i, j) = A[static_cast<std::size_t>(i) * n + j];
    at(i, n + i) = 1.0;
    at(i, cols) = b[i];
  }
  // Phase-1 objective: minimize the sum of artificials. With the artificial
  // basis, reduced costs of the real columns are -(column sums).
  for (int j = 0; j < n; ++j) {
    double sum = 0.0;
    for (int i = 0; i < m; ++i) sum += at(i, j);
    at(m, j) = -sum;
  }
  double bsum = 0.0;
  for (int i = 0; i < m; ++i) bsum += b[i];
  at(m, cols) = -bsum;

  std::vector<int> basis(m);
  for (int i = 0; i < m; ++i) basis[i] = n + i;

  const long max_iter = 4000L * (cols + 1);
  long iter = 0;
  while (true) {
    if (++iter > max_iter) throw std::runtime_error("simplex iteration limit exceeded");
    int enter = -1;  // Bland: lowest-index improving column
    for (int j = 0; j < cols; ++j) {
      if (at(m, j) < -eps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    int leave = -1;
    double best = 0.0;
    for (int i = 0; i < m; ++i) {
      if (at(i, enter) <= eps) continue;
      double ratio = at(i, cols) / at(i, enter);
      if (leave < 0 || ratio < best - 1e-15 ||
          (ratio < best + 1e-15 && basis[i] < basis[leave])) {
        best = ratio;
        leave = i;
      }
    }
    if (leave < 0) throw std::runtime_error("phase-1 simplex unbounded");
    double pivot = at(leave, enter);
    for (int j = 0; j <= cols; ++j) at(leave, j) /= pivot;
    for (int r = 0; r <= m; ++r) {
      if (r == leave) continue;
      double factor = at(r, enter);
      if (factor == 0.0) continue;
      for (int j = 0; j <= cols; ++j) at(r, j) -= factor * at(leave, j);
    }
    basis[leave] = enter;
  }

  SimplexResult res;
  res.infeasibility = -at(m, cols);
  if (res.infeasibility < 0.0) res.infeasibility = 0.0;
  res.feasible = res.infeasibility <= 1e-9;
  res.primal.assign(n, 0.0);
  for (int i = 0; i < m; ++i)
    if (basis[i] < n) res.primal[basis[i]] = at(i, cols);
  res.dual.assign(m, 0.0);
  for (int i = 0; i < m; ++i) res.dual[i] = 1.0 - at(m, n + i);
  return res;
}

}  // namespace framesched
