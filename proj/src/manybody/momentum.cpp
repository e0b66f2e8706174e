#include "bec/manybody/momentum.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "bec/errors.hpp"

namespace bec::manybody {

namespace {

using cd = std::complex<double>;

constexpr int kDefaultPoints = 61;
constexpr double kDefaultReach = 7.5;  // in units of the inverse oscillator length

cd minus_i_power(int n) {
  switch (n % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

ModeMomentum analytic_harmonic(const ModeBasis& basis, const MomentumGrid& request) {
  const int points = request.points > 0 ? request.points : kDefaultPoints;
  if (points % 2 == 0 || points < 3) throw InvalidParameter("momentum grid needs an odd point count >= 3");
  const int m = basis.size();
  std::array<std::vector<double>, 3> axis_k;
  std::array<double, 3> dk{};
  // Per-axis tables of psi^_n(k) without the (-i)^n phase.
  std::array<std::vector<std::vector<double>>, 3> table;
  for (int axis = 0; axis < 3; ++axis) {
    const double scale = std::pow(basis.trap.stiffness()[axis], 0.25);  // 1 / length
    const double k_max = request.k_max > 0.0 ? request.k_max : kDefaultReach * scale;
    dk[axis] = 2.0 * k_max / (points - 1);
    for (int p = 0; p < points; ++p) {
      const double kk = -k_max + p * dk[axis];
      axis_k[axis].push_back(kk);
      auto h = hermite_functions(basis.max_quanta, kk / scale);
      for (double& v : h) v *= std::sqrt(2.0 * std::numbers::pi / scale);
      table[axis].push_back(std::move(h));
    }
  }
  ModeMomentum out;
  out.analytic = true;
  const std::size_t total = static_cast<std::size_t>(points) * points * points;
  out.k.resize(total);
  out.weight.assign(total, dk[0] * dk[1] * dk[2] / std::pow(2.0 * std::numbers::pi, 3));
  out.amplitudes.resize(static_cast<Eigen::Index>(total), m);
  std::vector<cd> phase(m);
  for (int i = 0; i < m; ++i) {
    const auto& q = basis.quanta[i];
    phase[i] = minus_i_power(q[0] + q[1] + q[2]);
  }
  std::size_t p = 0;
  for (int a = 0; a < points; ++a)
    for (int b = 0; b < points; ++b)
      for (int c = 0; c < points; ++c, ++p) {
        out.k[p] = {axis_k[0][a], axis_k[1][b], axis_k[2][c]};
        for (int i = 0; i < m; ++i) {
          const auto& q = basis.quanta[i];
          out.amplitudes(static_cast<Eigen::Index>(p), i) =
              phase[i] * (table[0][a][q[0]] * table[1][b][q[1]] * table[2][c][q[2]]);
        }
      }
  return out;
}

ModeMomentum discrete(const ModeBasis& basis) {
  const auto& grid = basis.grid;
  const int n0 = grid.points(0), n1 = grid.points(1), n2 = grid.points(2);
  const std::size_t total = grid.size();
  const int m = basis.size();
  fftw_complex* buf = fftw_alloc_complex(total);
  fftw_plan plan = fftw_plan_dft_3d(n0, n1, n2, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);

  ModeMomentum out;
  out.k.resize(total);
  std::array<double, 3> period{};
  for (int axis = 0; axis < 3; ++axis) period[axis] = grid.points(axis) * grid.spacing(axis);
  // Measure d^3k / (2 pi)^3 on the reciprocal lattice is 1 / (periodic volume).
  out.weight.assign(total, 1.0 / (period[0] * period[1] * period[2]));
  std::size_t p = 0;
  auto freq = [](int idx, int n, double length) {
    const int s = idx <= n / 2 ? idx : idx - n;
    return 2.0 * std::numbers::pi * s / length;
  };
  for (int a = 0; a < n0; ++a)
    for (int b = 0; b < n1; ++b)
      for (int c = 0; c < n2; ++c, ++p) out.k[p] = {freq(a, n0, period[0]), freq(b, n1, period[1]), freq(c, n2, period[2])};

  out.amplitudes.resize(static_cast<Eigen::Index>(total), m);
  const double h3 = grid.cell_volume();
  for (int i = 0; i < m; ++i) {
    for (std::size_t q = 0; q < total; ++q) {
      buf[q][0] = basis.values(i, static_cast<Eigen::Index>(q));
      buf[q][1] = 0.0;
    }
    fftw_execute(plan);
    for (std::size_t q = 0; q < total; ++q) {
      // Shift the phase origin from the first node to r = 0.
      const auto& kv = out.k[q];
      const double shift = kv[0] * grid.lower(0) + kv[1] * grid.lower(1) + kv[2] * grid.lower(2);
      out.amplitudes(static_cast<Eigen::Index>(q), i) = h3 * cd(buf[q][0], buf[q][1]) * std::polar(1.0, -shift);
    }
  }
  fftw_destroy_plan(plan);
  fftw_free(buf);
  return out;
}

}  // namespace

ModeMomentum mode_momentum(const ModeBasis& basis, const MomentumGrid& grid) {
  if (basis.trap.kind() == model::TrapKind::harmonic) return analytic_harmonic(basis, grid);
  return discrete(basis);
}

std::vector<double> momentum_density(const ModeMomentum& momentum, const Eigen::MatrixXd& density) {
  const Eigen::Index rows = momentum.amplitudes.rows();
  if (density.rows() != momentum.amplitudes.cols()) throw InvalidParameter("density matrix size mismatch");
  // rho = Re(u^T D conj(u)) row by row, evaluated as Re(sum_j (u D)_j conj(u_j)).
  const Eigen::MatrixXcd ud = momentum.amplitudes * density.cast<std::complex<double>>();
  std::vector<double> rho(static_cast<std::size_t>(rows));
  for (Eigen::Index p = 0; p < rows; ++p) {
    rho[static_cast<std::size_t>(p)] = (ud.row(p).cwiseProduct(momentum.amplitudes.row(p).conjugate())).sum().real();
  }
  return rho;
}

double momentum_l1_norm(const ModeMomentum& momentum, const std::vector<double>& values) {
  double s = 0.0;
  for (std::size_t p = 0; p < values.size(); ++p) s += momentum.weight[p] * std::abs(values[p]);
  return s;
}

}  // namespace bec::manybody
