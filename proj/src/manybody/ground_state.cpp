#include "bec/manybody/ground_state.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "bec/errors.hpp"
#include "bec/manybody/hamiltonian.hpp"
#include "bec/manybody/lanczos.hpp"

namespace bec::manybody {

Eigen::MatrixXd one_body_density(const FockBasis& basis, const std::vector<double>& x) {
  const int m = basis.modes();
  if (basis.particles() == 0) return Eigen::MatrixXd::Zero(m, m);
  const Ladder ladder = single_ladder(basis);
  const std::size_t rows = ladder.lower.size();
  // Y[r, i] = <r| a_i |x>; gamma = Y^T Y.
  Eigen::MatrixXd y(static_cast<Eigen::Index>(rows), m);
  for (std::size_t r = 0; r < rows; ++r)
    for (int i = 0; i < m; ++i)
      y(static_cast<Eigen::Index>(r), i) = ladder.amplitude[r * m + i] * x[ladder.target[r * m + i]];
  Eigen::MatrixXd gamma = y.transpose() * y;
  return 0.5 * (gamma + gamma.transpose());
}

ManyBodyGround ground_state(const ModeBasis& modes, const InteractionTensor& tensor, int particles,
                            const ManyBodyOptions& options) {
  if (particles < 1) throw InvalidParameter("particle number must be >= 1");
  const std::size_t dim = fock_dimension(particles, modes.size());
  if (dim > options.dimension_cap) {
    std::ostringstream msg;
    msg << "Fock dimension C(N+M-1, N) = " << dim << " for N = " << particles << ", M = " << modes.size()
        << " exceeds the cap " << options.dimension_cap;
    throw CapacityError(msg.str());
  }
  const FockBasis basis(particles, modes.size());
  const Hamiltonian h(basis, modes.energies, tensor);

  std::vector<double> start(dim);
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> noise(-1.0, 1.0);
  for (double& v : start) v = 1e-3 * noise(rng);
  start[0] += 1.0;  // all particles in the lowest mode

  LanczosOptions lanczos;
  lanczos.krylov_dimension = options.krylov_dimension;
  lanczos.max_restarts = options.max_restarts;
  lanczos.tol = options.tol;
  const auto pair = lowest_eigenpair([&h](const double* x, double* y) { h.apply(x, y); }, dim,
                                     std::move(start), lanczos);

  ManyBodyGround ground;
  ground.particles = particles;
  ground.energy = pair.value;
  ground.coefficients = pair.vector;
  // Fix the overall sign so the condensed component is positive.
  if (ground.coefficients[0] < 0.0)
    for (double& v : ground.coefficients) v = -v;
  ground.residual = pair.residual;
  ground.dimension = dim;
  ground.matvecs = pair.matvecs;
  ground.gamma = one_body_density(basis, ground.coefficients);
  return ground;
}

}  // namespace bec::manybody
