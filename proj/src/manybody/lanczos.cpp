#include "bec/manybody/lanczos.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "bec/errors.hpp"

namespace bec::manybody {

namespace {

double dot(const double* a, const double* b, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += a[i] * b[i];
  return s;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void project_out(const std::vector<std::vector<double>>& basis, double* v, std::size_t n) {
  // Two passes of classical Gram-Schmidt keep the basis orthogonal to round-off.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& b : basis) axpy(-dot(b.data(), v, n), b.data(), v, n);
}

double normalize(double* v, std::size_t n) {
  const double nrm = std::sqrt(dot(v, v, n));
  if (nrm > 0.0)
    for (std::size_t i = 0; i < n; ++i) v[i] /= nrm;
  return nrm;
}

}  // namespace

Eigenpair lowest_eigenpair(const LinearOperator& op, std::size_t n, std::vector<double> start,
                           const LanczosOptions& options,
                           const std::vector<std::vector<double>>& deflate) {
  if (n == 0) throw InvalidParameter("eigenproblem of dimension 0");
  if (start.size() != n) throw InvalidParameter("start vector has the wrong dimension");
  if (deflate.size() >= n) throw InvalidParameter("deflation space fills the whole space");

  Eigenpair result;
  project_out(deflate, start.data(), n);
  if (normalize(start.data(), n) == 0.0) {
    // Deterministic fallback: first unit vector not in the deflated span.
    for (std::size_t i = 0; i < n; ++i) {
      std::fill(start.begin(), start.end(), 0.0);
      start[i] = 1.0;
      project_out(deflate, start.data(), n);
      if (normalize(start.data(), n) > 1e-8) break;
    }
  }

  const int kmax = static_cast<int>(std::min<std::size_t>(options.krylov_dimension, n - deflate.size()));
  std::vector<std::vector<double>> q;
  std::vector<double> w(n);
  std::vector<double> ritz = std::move(start);

  for (int restart = 0; restart <= options.max_restarts; ++restart) {
    q.clear();
    q.push_back(ritz);
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(kmax, kmax);
    int k = 0;
    for (; k < kmax; ++k) {
      op(q[k].data(), w.data());
      ++result.matvecs;
      project_out(deflate, w.data(), n);
      t(k, k) = dot(q[k].data(), w.data(), n);
      // Full reorthogonalization against the whole Krylov basis.
      for (int pass = 0; pass < 2; ++pass) {
        for (int j = 0; j <= k; ++j) axpy(-dot(q[j].data(), w.data(), n), q[j].data(), w.data(), n);
      }
      if (k + 1 == kmax) break;
      const double beta = normalize(w.data(), n);
      if (beta < 1e-14 * std::max(1.0, std::abs(t(k, k)))) {
        ++k;
        break;  // invariant subspace
      }
      t(k + 1, k) = t(k, k + 1) = beta;
      q.push_back(w);
    }
    const int m = std::min<int>(k + 1, static_cast<int>(q.size()));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(t.topLeftCorner(m, m));
    const Eigen::VectorXd y = eig.eigenvectors().col(0);
    result.value = eig.eigenvalues()(0);

    std::fill(ritz.begin(), ritz.end(), 0.0);
    for (int j = 0; j < m; ++j) axpy(y(j), q[j].data(), ritz.data(), n);
    project_out(deflate, ritz.data(), n);
    normalize(ritz.data(), n);

    op(ritz.data(), w.data());
    ++result.matvecs;
    project_out(deflate, w.data(), n);
    result.value = dot(ritz.data(), w.data(), n);
    axpy(-result.value, ritz.data(), w.data(), n);
    result.residual = std::sqrt(dot(w.data(), w.data(), n));
    result.restarts = restart;
    if (result.residual <= options.tol) {
      result.vector = std::move(ritz);
      return result;
    }
  }
  std::ostringstream msg;
  msg << "Lanczos stagnated: residual " << result.residual << " > " << options.tol << " after "
      << options.max_restarts << " restarts (" << result.matvecs << " products)";
  throw SolverFailure(msg.str());
}

}  // namespace bec::manybody
