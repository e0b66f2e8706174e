#pragma once

#include <functional>

namespace oracle {

namespace detail {

using Occupation = std::vector<int>;

inline void enumerate(int modes, int remaining, Occupation& current, int mode, std::vector<Occupation>& out) {
  if (mode == modes - 1) {
    current[mode] = remaining;
    out.push_back(current);
    return;
  }
  for (int n = remaining; n >= 0; --n) {
    current[mode] = n;
    enumerate(modes, remaining - n, current, mode + 1, out);
  }
}

// a_m on an occupation; returns the amplitude (0 when empty).
inline double annihilate(Occupation& s, int m) {
  if (s[m] == 0) return 0.0;
  const double amp = std::sqrt(static_cast<double>(s[m]));
  --s[m];
  return amp;
}

inline double create(Occupation& s, int m) {
  ++s[m];
  return std::sqrt(static_cast<double>(s[m]));
}

}  // namespace detail

template <class Tensor>
DenseGround dense_ground(const std::vector<double>& energies, const Tensor& v, int particles) {
  const int m = static_cast<int>(energies.size());
  std::vector<detail::Occupation> states;
  detail::Occupation cur(m, 0);
  detail::enumerate(m, particles, cur, 0, states);
  std::map<detail::Occupation, std::size_t> index;
  for (std::size_t s = 0; s < states.size(); ++s) index[states[s]] = s;

  const auto dim = static_cast<Eigen::Index>(states.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t col = 0; col < states.size(); ++col) {
    for (int i = 0; i < m; ++i) h(col, col) += energies[i] * states[col][i];
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) {
        detail::Occupation s = states[col];
        double amp = detail::annihilate(s, k);
        if (amp == 0.0) continue;
        amp *= detail::annihilate(s, l);
        if (amp == 0.0) continue;
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            const double vijkl = v(i, j, k, l);
            if (vijkl == 0.0) continue;
            detail::Occupation t = s;
            double a2 = amp * detail::create(t, j);
            a2 *= detail::create(t, i);
            h(index.at(t), col) += 0.5 * vijkl * a2;
          }
      }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  DenseGround out;
  out.dimension = states.size();
  out.energy = es.eigenvalues()[0];
  const Eigen::VectorXd x = es.eigenvectors().col(0);
  out.gamma = Eigen::MatrixXd::Zero(m, m);
  // gamma[i, j] = <x| a*_j a_i |x>
  for (std::size_t col = 0; col < states.size(); ++col) {
    if (x[col] == 0.0) continue;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        detail::Occupation s = states[col];
        double amp = detail::annihilate(s, i);
        if (amp == 0.0) continue;
        amp *= detail::create(s, j);
        out.gamma(i, j) += x[index.at(s)] * amp * x[col];
      }
  }
  return out;
}

}  // namespace oracle
