#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace bec::manybody {

/// y = A x for a real symmetric operator of dimension n.
using LinearOperator = std::function<void(const double* x, double* y)>;

struct LanczosOptions {
  int krylov_dimension = 40;
  int max_restarts = 400;
  /// Stop when ||A x - lambda x|| <= tol for the unit Ritz vector.
  double tol = 1e-9;
};

struct Eigenpair {
  double value = 0.0;
  std::vector<double> vector;
  double residual = 0.0;
  int matvecs = 0;
  int restarts = 0;
};

/// Lowest eigenpair by thick-free restarted Lanczos with full
/// reorthogonalization; every cycle restarts from the current Ritz vector.
/// Vectors in `deflate` (orthonormal) are projected out of the Krylov space.
/// Throws SolverFailure when the residual target is not met.
Eigenpair lowest_eigenpair(const LinearOperator& op, std::size_t n, std::vector<double> start,
                           const LanczosOptions& options = {},
                           const std::vector<std::vector<double>>& deflate = {});

}  // namespace bec::manybody
