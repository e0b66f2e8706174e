#include "bec/manybody/fock_basis.hpp"

#include <limits>

#include "bec/errors.hpp"

namespace bec::manybody {

std::size_t fock_dimension(int particles, int modes) {
  if (particles == 0) return 1;
  if (modes == 0) return 0;
  // C(n + m - 1, n) with exact intermediate products.
  unsigned __int128 c = 1;
  for (int k = 1; k <= particles; ++k) {
    c = c * static_cast<unsigned>(modes - 1 + k) / static_cast<unsigned>(k);
    if (c > std::numeric_limits<std::size_t>::max()) throw CapacityError("Fock dimension overflows");
  }
  return static_cast<std::size_t>(c);
}

FockBasis::FockBasis(int particles, int modes) : n_(particles), m_(modes) {
  if (particles < 0 || modes < 1) throw InvalidParameter("Fock basis needs N >= 0 and M >= 1");
  if (particles > 255) throw InvalidParameter("at most 255 particles per mode are representable");
  size_ = fock_dimension(particles, modes);

  const int w = n_ + 1;
  offset_.assign(static_cast<std::size_t>(m_) * w * w, 0);
  for (int p = 0; p < m_; ++p) {
    const int tail = m_ - p - 1;  // modes after position p
    for (int r = 0; r <= n_; ++r) {
      // States with a larger value at position p come first.
      std::size_t acc = 0;
      for (int v = r; v >= 0; --v) {
        offset_[(static_cast<std::size_t>(p) * w + r) * w + v] = acc;
        acc += (tail == 0) ? (v == r ? 1 : 0) : fock_dimension(r - v, tail);
      }
    }
  }

  table_.resize(size_ * m_);
  std::vector<int> occ(m_, 0);
  occ[0] = n_;
  for (std::size_t idx = 0; idx < size_; ++idx) {
    for (int p = 0; p < m_; ++p) table_[idx * m_ + p] = static_cast<std::uint8_t>(occ[p]);
    // Next state in descending lexicographic order: move one particle from
    // the last nonzero position before the tail one step right and gather the tail there.
    int p = m_ - 2;
    while (p >= 0 && occ[p] == 0) --p;
    if (p < 0) break;
    const int tail = occ[m_ - 1];
    occ[m_ - 1] = 0;
    occ[p] -= 1;
    occ[p + 1] = 1 + tail;
  }
}

std::size_t FockBasis::rank(const std::uint8_t* occupations) const {
  const int w = n_ + 1;
  std::size_t idx = 0;
  int remaining = n_;
  for (int p = 0; p + 1 < m_; ++p) {
    const int v = occupations[p];
    idx += offset_[(static_cast<std::size_t>(p) * w + remaining) * w + v];
    remaining -= v;
  }
  return idx;
}

std::size_t FockBasis::rank(const std::vector<int>& occupations) const {
  if (static_cast<int>(occupations.size()) != m_) throw InvalidParameter("occupation vector has the wrong length");
  std::vector<std::uint8_t> occ(occupations.begin(), occupations.end());
  int sum = 0;
  for (int v : occupations) {
    if (v < 0) throw InvalidParameter("negative occupation");
    sum += v;
  }
  if (sum != n_) throw InvalidParameter("occupations do not sum to N");
  return rank(occ.data());
}

}  // namespace bec::manybody
