#include "bec/manybody/condensate.hpp"

#include <cmath>
#include <sstream>

#include "bec/errors.hpp"
#include "bec/manybody/hamiltonian.hpp"

namespace bec::manybody {

GPProjection project_gp(const ModeBasis& basis, const std::vector<double>& phi_gp, double minimum) {
  GPProjection p;
  p.coefficients = basis.project(phi_gp);
  p.truncation_weight = p.coefficients.squaredNorm();
  if (!(p.truncation_weight >= minimum)) {
    std::ostringstream msg;
    msg << "the mode basis captures only " << p.truncation_weight << " of the GP state (minimum "
        << minimum << "); raise the truncation";
    throw BasisInsufficient(msg.str());
  }
  p.coefficients /= std::sqrt(p.truncation_weight);
  if (p.coefficients.sum() < 0.0) p.coefficients = -p.coefficients;
  return p;
}

double pair_moment(const FockBasis& basis, const std::vector<double>& x, const Eigen::VectorXd& c) {
  const int n = basis.particles();
  if (n < 2) return 0.0;
  const int m = basis.modes();
  const Ladder ladder = pair_ladder(basis);
  std::vector<double> weight(ladder.columns);
  for (int k = 0; k < m; ++k)
    for (int l = k; l < m; ++l) weight[pair_index(k, l, m)] = (k == l ? 1.0 : 2.0) * c(k) * c(l);
  // (a^2 x)_r = sum_P weight_P <r| A_P |x>.
  double norm2 = 0.0;
  for (std::size_t r = 0; r < ladder.lower.size(); ++r) {
    double s = 0.0;
    const std::size_t base = r * ladder.columns;
    for (int col = 0; col < ladder.columns; ++col)
      s += weight[col] * ladder.amplitude[base + col] * x[ladder.target[base + col]];
    norm2 += s * s;
  }
  return norm2 / (static_cast<double>(n) * n);
}

CondensateReport condensate_metrics(const ManyBodyGround& ground, const GPProjection& gp,
                                    const ModeBasis& basis, const ModeMomentum& momentum) {
  const int m = basis.size();
  const double n = ground.particles;
  if (ground.gamma.rows() != m || gp.coefficients.size() != m) {
    throw InvalidParameter("ground state, GP projection and mode basis disagree on M");
  }
  CondensateReport r;
  r.truncation_weight = gp.truncation_weight;
  const Eigen::MatrixXd reduced = ground.gamma / n;
  const Eigen::VectorXd& c = gp.coefficients;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> occ(reduced);
  r.occupations = occ.eigenvalues().reverse();
  r.condensate_fraction = r.occupations(0);
  r.gp_overlap = c.dot(reduced * c);

  const Eigen::MatrixXd difference = reduced - c * c.transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> diff(difference, Eigen::EigenvaluesOnly);
  r.trace_distance = diff.eigenvalues().cwiseAbs().sum();

  r.momentum_l1 = momentum_l1_norm(momentum, momentum_density(momentum, difference));
  const auto rho = momentum_density(momentum, reduced);
  r.momentum_coverage = 0.0;
  for (std::size_t p = 0; p < rho.size(); ++p) r.momentum_coverage += momentum.weight[p] * rho[p];
  r.coverage_warning = r.momentum_coverage < 0.999;

  const FockBasis basis_n(ground.particles, m);
  r.pair_moment = pair_moment(basis_n, ground.coefficients, c);
  r.pair_moment_lower_bound = r.gp_overlap * r.gp_overlap - r.pair_moment_constant / n;
  return r;
}

HartreeEnergy hartree_energy(const ModeBasis& basis, const InteractionTensor& tensor,
                             const Eigen::VectorXd& c, int particles) {
  const int m = basis.size();
  HartreeEnergy out;

  const FockBasis fock(particles, m);
  std::vector<double> x(fock.size());
  std::vector<double> log_factorial(particles + 1, 0.0);
  for (int k = 1; k <= particles; ++k) log_factorial[k] = log_factorial[k - 1] + std::log(k);
  for (std::size_t idx = 0; idx < fock.size(); ++idx) {
    // sqrt(N! / prod n_i!) prod c_i^{n_i}, sign tracked separately from the magnitude.
    double log_mag = 0.5 * log_factorial[particles];
    double sign = 1.0;
    bool zero = false;
    for (int i = 0; i < m; ++i) {
      const int ni = fock.occupation(idx, i);
      if (ni == 0) continue;
      if (c(i) == 0.0) {
        zero = true;
        break;
      }
      log_mag += ni * std::log(std::abs(c(i))) - 0.5 * log_factorial[ni];
      if (c(i) < 0.0 && ni % 2 == 1) sign = -sign;
    }
    x[idx] = zero ? 0.0 : sign * std::exp(log_mag);
  }
  const Hamiltonian h(fock, basis.energies, tensor);
  out.via_fock_state = h.expectation(x) / particles;

  double one_body = 0.0;
  for (int i = 0; i < m; ++i) one_body += basis.energies[i] * c(i) * c(i);
  Eigen::VectorXd u(m * (m + 1) / 2);
  for (int i = 0; i < m; ++i)
    for (int k = i; k < m; ++k) u(pair_index(i, k, m)) = (i == k ? 1.0 : 2.0) * c(i) * c(k);
  const double quartic = u.dot(tensor.pair_matrix * u);
  out.via_formula = one_body + 0.5 * (particles - 1) * quartic;
  return out;
}

EnergySplit energy_split(const ManyBodyGround& ground, const ModeBasis& basis) {
  const int m = basis.size();
  const double n = ground.particles;
  const Eigen::MatrixXd trap = basis.trap_matrix();
  double one_body = 0.0;
  for (int i = 0; i < m; ++i) one_body += ground.gamma(i, i) * basis.energies[i];
  const double potential = (ground.gamma.cwiseProduct(trap)).sum();
  EnergySplit s;
  s.potential = potential / n;
  s.kinetic = (one_body - potential) / n;
  s.interaction = (ground.energy - one_body) / n;
  return s;
}

}  // namespace bec::manybody
