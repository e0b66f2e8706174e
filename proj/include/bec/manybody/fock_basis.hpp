#pragma once

#include <cstdint>
#include <vector>

namespace bec::manybody {

/// Occupation vectors of N bosons in M modes, in descending lexicographic
/// order (|N,0,...,0> first). Ranks come from a table of partial counts, so
/// lookups cost O(M).
class FockBasis {
 public:
  FockBasis(int particles, int modes);

  int particles() const { return n_; }
  int modes() const { return m_; }
  std::size_t size() const { return size_; }

  /// Occupations of state `index` (row of the flat table).
  const std::uint8_t* state(std::size_t index) const { return &table_[index * m_]; }
  int occupation(std::size_t index, int mode) const { return table_[index * m_ + mode]; }

  /// Dense index of an occupation vector summing to N.
  std::size_t rank(const std::uint8_t* occupations) const;
  std::size_t rank(const std::vector<int>& occupations) const;

 private:
  int n_;
  int m_;
  std::size_t size_;
  // offset_[(p * (n_ + 1) + remaining) * (n_ + 1) + value]
  std::vector<std::size_t> offset_;
  std::vector<std::uint8_t> table_;
};

/// C(n + m - 1, n), or 0 for m == 0 and n > 0.
std::size_t fock_dimension(int particles, int modes);

}  // namespace bec::manybody
