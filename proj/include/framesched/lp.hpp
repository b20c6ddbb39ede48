#ifndef FRAMESCHED_LP_HPP
#define FRAMESCHED_LP_HPP

#include <vector>

namespace framesched {

/// Result of a linear feasibility solve for A x = b, x >= 0.
/// On infeasible instances, dual holds y with y^T A <= 0 (componentwise over
/// the real columns) and y^T b = infeasibility > 0, a Farkas certificate.
struct SimplexResult {
  bool feasible = false;
  double infeasibility = 0.0;
  std::vector<double> primal;  // length n, valid when feasible
  std::vector<double> dual;    // length m, valid when infeasible
};

/// Phase-1 dense simplex (Bland's rule) for the feasibility system
/// A x = b, x >= 0, with A row-major m x n and b >= 0 required.
/// Throws std::runtime_error on numerical failure (iteration limit).
/// The instance is declared feasible when the residual infeasibility is
/// at most 1e-9.
SimplexResult solve_feasibility(int m, int n, const std::vector<double>& A,
                                const std::vector<double>& b);

}  // namespace framesched

#endif
