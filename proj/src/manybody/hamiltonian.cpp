#include "bec/manybody/hamiltonian.hpp"

#include <cmath>
#include <limits>

#include "bec/errors.hpp"

namespace bec::manybody {

namespace {

Ladder build_ladder(const FockBasis& basis, int removed) {
  const int m = basis.modes();
  Ladder ladder{FockBasis(basis.particles() - removed, m), removed == 1 ? m : m * (m + 1) / 2, {}, {}};
  const std::size_t rows = ladder.lower.size();
  if (basis.size() > std::numeric_limits<std::uint32_t>::max()) throw CapacityError("Fock basis too large to index");
  ladder.target.resize(rows * ladder.columns);
  ladder.amplitude.resize(rows * ladder.columns);
  std::vector<std::uint8_t> occ(m);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::uint8_t* low = ladder.lower.state(r);
    std::copy(low, low + m, occ.begin());
    if (removed == 1) {
      for (int i = 0; i < m; ++i) {
        const double amp = std::sqrt(occ[i] + 1.0);
        ++occ[i];
        ladder.target[r * m + i] = static_cast<std::uint32_t>(basis.rank(occ.data()));
        ladder.amplitude[r * m + i] = amp;
        --occ[i];
      }
      continue;
    }
    for (int i = 0; i < m; ++i)
      for (int j = i; j < m; ++j) {
        const double amp = std::sqrt((occ[i] + 1.0) * (occ[j] + 1.0 + (i == j ? 1.0 : 0.0)));
        ++occ[i];
        ++occ[j];
        const std::size_t c = r * ladder.columns + pair_index(i, j, m);
        ladder.target[c] = static_cast<std::uint32_t>(basis.rank(occ.data()));
        ladder.amplitude[c] = amp;
        --occ[i];
        --occ[j];
      }
  }
  return ladder;
}

}  // namespace

Ladder single_ladder(const FockBasis& basis) {
  if (basis.particles() < 1) throw InvalidParameter("no particle to annihilate");
  return build_ladder(basis, 1);
}

Ladder pair_ladder(const FockBasis& basis) {
  if (basis.particles() < 2) throw InvalidParameter("no pair to annihilate");
  return build_ladder(basis, 2);
}

Eigen::MatrixXd pair_couplings(const InteractionTensor& tensor) {
  const int m = tensor.modes;
  const int pairs = m * (m + 1) / 2;
  Eigen::MatrixXd w(pairs, pairs);
  for (int i = 0; i < m; ++i)
    for (int j = i; j < m; ++j)
      for (int k = 0; k < m; ++k)
        for (int l = k; l < m; ++l) {
          double value;
          if (i < j && k < l) value = tensor(i, j, k, l) + tensor(i, j, l, k);
          else if (i == j && k < l) value = tensor(i, i, k, l);
          else if (i < j && k == l) value = tensor(i, j, k, k);
          else value = 0.5 * tensor(i, i, k, k);
          w(pair_index(i, j, m), pair_index(k, l, m)) = value;
        }
  return w;
}

Hamiltonian::Hamiltonian(const FockBasis& basis, std::vector<double> mode_energies,
                         const InteractionTensor& tensor)
    : basis_(basis), ladder_{FockBasis(0, 1), 0, {}, {}} {
  const int m = basis.modes();
  if (static_cast<int>(mode_energies.size()) != m || tensor.modes != m) {
    throw InvalidParameter("mode energies, interaction tensor and Fock basis disagree on M");
  }
  diagonal_.resize(basis.size());
  for (std::size_t n = 0; n < basis.size(); ++n) {
    double e = 0.0;
    for (int i = 0; i < m; ++i) e += mode_energies[i] * basis.occupation(n, i);
    diagonal_[n] = e;
  }
  interacting_ = basis.particles() >= 2 && tensor.pair_matrix.cwiseAbs().maxCoeff() > 0.0;
  if (interacting_) {
    couplings_ = pair_couplings(tensor);
    ladder_ = pair_ladder(basis);
    y_.resize(static_cast<Eigen::Index>(ladder_.lower.size()), ladder_.columns);
  }
}

void Hamiltonian::apply(const double* x, double* y) const {
  const std::size_t dim = basis_.size();
  for (std::size_t n = 0; n < dim; ++n) y[n] = diagonal_[n] * x[n];
  if (!interacting_) return;
  const std::size_t rows = ladder_.lower.size();
  const int cols = ladder_.columns;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * cols;
    for (int c = 0; c < cols; ++c) y_(static_cast<Eigen::Index>(r), c) = ladder_.amplitude[base + c] * x[ladder_.target[base + c]];
  }
  z_.noalias() = y_ * couplings_;
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t base = r * cols;
    for (int c = 0; c < cols; ++c) y[ladder_.target[base + c]] += ladder_.amplitude[base + c] * z_(static_cast<Eigen::Index>(r), c);
  }
}

double Hamiltonian::expectation(const std::vector<double>& x) const {
  std::vector<double> hx(x.size());
  apply(x.data(), hx.data());
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    num += x[n] * hx[n];
    den += x[n] * x[n];
  }
  return num / den;
}

}  // namespace bec::manybody
