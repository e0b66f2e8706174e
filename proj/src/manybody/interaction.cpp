#include "bec/manybody/interaction.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "bec/errors.hpp"

namespace bec::manybody {

namespace {

constexpr double kDropRelative = 1e-12;  // amplitude, relative to the largest

struct R2C {
  double* in = nullptr;
  fftw_complex* out = nullptr;
  fftw_plan plan = nullptr;
  R2C(int n0, int n1, int n2) {
    const std::size_t real = static_cast<std::size_t>(n0) * n1 * n2;
    const std::size_t cplx = static_cast<std::size_t>(n0) * n1 * (n2 / 2 + 1);
    in = fftw_alloc_real(real);
    out = fftw_alloc_complex(cplx);
    plan = fftw_plan_dft_r2c_3d(n0, n1, n2, in, out, FFTW_ESTIMATE);
  }
  ~R2C() {
    fftw_destroy_plan(plan);
    fftw_free(in);
    fftw_free(out);
  }
  R2C(const R2C&) = delete;
  R2C& operator=(const R2C&) = delete;
};

double wavenumber(int index, int n, double period) {
  const int signed_index = index <= n / 2 ? index : index - n;
  return 2.0 * std::numbers::pi * signed_index / period;
}

}  // namespace

InteractionTensor interaction_tensor(const ModeBasis& basis, const model::PairPotential& v) {
  if (v.has_hard_core()) {
    throw InvalidParameter("hard cores have no mode matrix elements; substitute a soft sphere");
  }
  const int m = basis.size();
  const int pairs = m * (m + 1) / 2;
  InteractionTensor tensor;
  tensor.modes = m;
  tensor.pair_matrix = Eigen::MatrixXd::Zero(pairs, pairs);
  if (v.is_zero()) return tensor;

  const auto& grid = basis.grid;
  const int n0 = grid.points(0), n1 = grid.points(1), n2 = grid.points(2);
  const int h2 = n2 / 2 + 1;
  const std::size_t real = grid.size();
  const std::size_t cplx = static_cast<std::size_t>(n0) * n1 * h2;
  R2C fft(n0, n1, n2);

  // Transform weight of each half-spectrum entry: planes k2 = 0 and (even n2) k2 = n2/2
  // appear once in the full spectrum, every other plane twice.
  std::vector<double> vhat(cplx), multiplicity(cplx);
  std::vector<bool> nyquist(cplx, false);
  {
    std::size_t idx = 0;
    for (int a = 0; a < n0; ++a) {
      const double qa = wavenumber(a, n0, n0 * grid.spacing(0));
      for (int b = 0; b < n1; ++b) {
        const double qb = wavenumber(b, n1, n1 * grid.spacing(1));
        for (int c = 0; c < h2; ++c, ++idx) {
          const double qc = wavenumber(c, n2, n2 * grid.spacing(2));
          vhat[idx] = v.fourier_transform(std::sqrt(qa * qa + qb * qb + qc * qc));
          multiplicity[idx] = (c == 0 || (n2 % 2 == 0 && c == n2 / 2)) ? 1.0 : 2.0;
          nyquist[idx] = std::abs(a - n0 / 2) <= 1 || std::abs(b - n1 / 2) <= 1 || c >= h2 - 2;
        }
      }
    }
  }

  // Pass 1: spectral envelope of all products, to pick the wavevectors worth keeping.
  std::vector<double> envelope(cplx, 0.0);
  auto transform_product = [&](int i, int k) {
    for (std::size_t p = 0; p < real; ++p) fft.in[p] = basis.values(i, static_cast<Eigen::Index>(p)) * basis.values(k, static_cast<Eigen::Index>(p));
    fftw_execute(fft.plan);
  };
  double peak = 0.0;
  for (int i = 0; i < m; ++i)
    for (int k = i; k < m; ++k) {
      transform_product(i, k);
      double total = 0.0, edge = 0.0;
      for (std::size_t p = 0; p < cplx; ++p) {
        const double mag2 = fft.out[p][0] * fft.out[p][0] + fft.out[p][1] * fft.out[p][1];
        envelope[p] = std::max(envelope[p], mag2);
        total += multiplicity[p] * mag2;
        if (nyquist[p]) edge += multiplicity[p] * mag2;
        peak = std::max(peak, mag2);
      }
      if (total > 0.0) tensor.nyquist_weight = std::max(tensor.nyquist_weight, edge / total);
    }
  if (tensor.nyquist_weight > 1e-8) {
    std::ostringstream msg;
    msg << "mode products are under-resolved: " << tensor.nyquist_weight
        << " of their spectral weight sits at the grid's Nyquist shell; refine the grid";
    throw ResolutionError(msg.str());
  }
  std::vector<std::size_t> keep;
  for (std::size_t p = 0; p < cplx; ++p)
    if (envelope[p] > kDropRelative * kDropRelative * peak && vhat[p] != 0.0) keep.push_back(p);
  tensor.retained_wavevectors = keep.size();

  // Pass 2: T = (h^3 / n^3) sum_q vhat(q) Re(conj(F_a) F_b).
  const Eigen::Index nq = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd re(nq, pairs), im(nq, pairs);
  for (int i = 0; i < m; ++i)
    for (int k = i; k < m; ++k) {
      transform_product(i, k);
      const int col = pair_index(i, k, m);
      for (Eigen::Index r = 0; r < nq; ++r) {
        re(r, col) = fft.out[keep[r]][0];
        im(r, col) = fft.out[keep[r]][1];
      }
    }
  const double h3 = grid.cell_volume();
  Eigen::VectorXd weight(nq);
  for (Eigen::Index r = 0; r < nq; ++r) weight(r) = multiplicity[keep[r]] * vhat[keep[r]] * h3 / static_cast<double>(real);
  Eigen::MatrixXd t = re.transpose() * weight.asDiagonal() * re;
  t.noalias() += im.transpose() * weight.asDiagonal() * im;
  tensor.asymmetry = (t - t.transpose()).cwiseAbs().maxCoeff();
  tensor.pair_matrix = 0.5 * (t + t.transpose());
  return tensor;
}

}  // namespace bec::manybody
