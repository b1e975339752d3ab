#pragma once
/**
 * @file tensor.hpp
 * @brief Dense fixed-extent tensors and permutation symbols.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace octograv {

template <std::size_t Dim>
using Matrix = Eigen::Matrix<double, static_cast<int>(Dim), static_cast<int>(Dim)>;

template <std::size_t Dim>
using Point = std::array<double, Dim>;

namespace detail {

constexpr std::size_t ipow(std::size_t base, std::size_t exp) {
  std::size_t r = 1;
  for (std::size_t k = 0; k < exp; ++k) r *= base;
  return r;
}

}  // namespace detail

/// Rank-`Rank` tensor with every index running over 0..Dim-1, row-major.
template <class T, std::size_t Dim, std::size_t Rank>
class DenseTensor {
 public:
  static constexpr std::size_t dim = Dim;
  static constexpr std::size_t rank = Rank;
  static constexpr std::size_t extent = detail::ipow(Dim, Rank);

  DenseTensor() : data_(extent, T{}) {}

  template <class... I>
    requires(sizeof...(I) == Rank)
  T& operator()(I... idx) {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  template <class... I>
    requires(sizeof...(I) == Rank)
  const T& operator()(I... idx) const {
    return data_[offset({static_cast<std::size_t>(idx)...})];
  }

  T& at(const std::array<std::size_t, Rank>& idx) { return data_[offset(idx)]; }
  const T& at(const std::array<std::size_t, Rank>& idx) const {
    return data_[offset(idx)];
  }

  std::span<T> flat() noexcept { return data_; }
  std::span<const T> flat() const noexcept { return data_; }

  /// Multi-index of flat position `k`.
  static std::array<std::size_t, Rank> unflatten(std::size_t k) {
    std::array<std::size_t, Rank> idx{};
    for (std::size_t r = Rank; r-- > 0;) {
      idx[r] = k % Dim;
      k /= Dim;
    }
    return idx;
  }

  friend bool operator==(const DenseTensor& a, const DenseTensor& b) {
    return a.data_ == b.data_;
  }

 private:
  static std::size_t offset(const std::array<std::size_t, Rank>& idx) {
    std::size_t k = 0;
    for (std::size_t r = 0; r < Rank; ++r) k = k * Dim + idx[r];
    return k;
  }

  std::vector<T> data_;
};

/// Sign of the permutation taking (0, 1, ..., n-1) to `idx`; 0 on repeats.
inline int permutation_sign(std::span<const std::size_t> idx) {
  const std::size_t n = idx.size();
  for (std::size_t a = 0; a < n; ++a) {
    if (idx[a] >= n) return 0;
    for (std::size_t b = a + 1; b < n; ++b) {
      if (idx[a] == idx[b]) return 0;
    }
  }
  int sign = 1;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      if (idx[a] > idx[b]) sign = -sign;
    }
  }
  return sign;
}

/// Sign of the permutation sorting `idx` (values need not be 0..n-1); 0 on repeats.
inline int sorting_sign(std::span<const std::size_t> idx) {
  int sign = 1;
  for (std::size_t a = 0; a < idx.size(); ++a) {
    for (std::size_t b = a + 1; b < idx.size(); ++b) {
      if (idx[a] == idx[b]) return 0;
      if (idx[a] > idx[b]) sign = -sign;
    }
  }
  return sign;
}

/// Minkowski metric diag(-1, +1, ..., +1).
template <std::size_t Dim>
constexpr double eta(std::size_t a, std::size_t b) {
  if (a != b) return 0.0;
  return a == 0 ? -1.0 : 1.0;
}

template <std::size_t Dim>
Matrix<Dim> minkowski() {
  Matrix<Dim> m = Matrix<Dim>::Identity();
  m(0, 0) = -1.0;
  return m;
}

/// All 24 orderings of four slots, as index permutations.
inline std::vector<std::array<std::size_t, 4>> permutations4() {
  std::vector<std::array<std::size_t, 4>> out;
  std::array<std::size_t, 4> p{0, 1, 2, 3};
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace octograv
