#pragma once
/**
 * @file tables.hpp
 * @brief Structure constants read off the multiplication table.
 *
 * Nothing here is typed in: epsilon_ijk, psi_ijk and phi_ijkl come from
 * commutators and associators of basis units, epsilon_abcd and chi_abcd
 * from the triple cross products and the inner product. The only
 * convention is the Cayley-Dickson doubling rule in algebra.hpp.
 *
 * Imaginary-unit indices i, j, k, l run over 1..n-1 and are stored at
 * their own positions (slot 0 of the rank-3/rank-4 imaginary tables is
 * always zero). Frame indices a, b, c, d run over 0..n-1 with unit 0 = i.
 */

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "octograv/algebra.hpp"
#include "octograv/check.hpp"
#include "octograv/errors.hpp"
#include "octograv/tensor.hpp"

namespace octograv {

struct Epsilon3 {
  DenseTensor<int, 4, 3> values;
  int operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values(i, j, k);
  }
};

struct PsiTable {
  DenseTensor<int, 8, 3> values;
  int operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return values(i, j, k);
  }
};

struct PhiTable {
  DenseTensor<int, 8, 4> values;
  int operator()(std::size_t i, std::size_t j, std::size_t k,
                 std::size_t l) const {
    return values(i, j, k, l);
  }
};

/// Frame-index epsilon_abcd (lower indices), [0123] = +1.
struct Epsilon4 {
  DenseTensor<int, 4, 4> values;
  int operator()(std::size_t a, std::size_t b, std::size_t c,
                 std::size_t d) const {
    return values(a, b, c, d);
  }
};

/// chi_abcd = i <X(E_a, E_b, E_c), E_d> for one chirality (lower indices).
struct ChiTable {
  Chirality chirality = Chirality::left;
  DenseTensor<ComplexScalar, 8, 4> values;
  ComplexScalar operator()(std::size_t a, std::size_t b, std::size_t c,
                           std::size_t d) const {
    return values(a, b, c, d);
  }
};

/// Integer value of `v`; throws unless v is an exact real integer.
inline int exact_integer(ComplexScalar v, const std::string& what) {
  const double r = std::round(v.real());
  if (v.imag() != 0.0 || v.real() != r) {
    throw ExtractionFailure(what + ": non-integer coefficient (" +
                            std::to_string(v.real()) + ", " +
                            std::to_string(v.imag()) + ")");
  }
  return static_cast<int>(r);
}

/// `v` with signed zeros cleared; throws unless both parts are exact integers.
inline ComplexScalar exact_gaussian(ComplexScalar v, const std::string& what) {
  if (v.real() != std::round(v.real()) || v.imag() != std::round(v.imag())) {
    throw ExtractionFailure(what + ": not a Gaussian integer (" +
                            std::to_string(v.real()) + ", " +
                            std::to_string(v.imag()) + ")");
  }
  return {v.real() + 0.0, v.imag() + 0.0};
}

namespace detail {

/// Reads c_ij^k off 2 c_ij^k u_k = [u_i, u_j] (or the associator for rank 4).
template <std::size_t N>
DenseTensor<int, N, 3> extract_commutator_constants(Kind kind,
                                                    const std::string& name) {
  const auto units = basis_frame(kind);
  DenseTensor<int, N, 3> out;
  for (std::size_t i = 1; i < N; ++i) {
    for (std::size_t j = 1; j < N; ++j) {
      const auto half = commutator(units[i], units[j]) / 2.0;
      if (half[0] != 0.0) {
        throw ExtractionFailure(name + ": commutator has a real part");
      }
      for (std::size_t k = 1; k < N; ++k) {
        out(i, j, k) = exact_integer(half[k], name);
      }
    }
  }
  return out;
}

}  // namespace detail

inline Epsilon3 extract_epsilon3() {
  return {detail::extract_commutator_constants<4>(Kind::quaternionic,
                                                  "epsilon3")};
}

inline PsiTable extract_psi() {
  return {detail::extract_commutator_constants<8>(Kind::octonionic, "psi")};
}

/// 2 phi_ijk^l E_l = [E_i, E_j, E_k].
inline PhiTable extract_phi() {
  const auto units = basis_frame(Kind::octonionic);
  PhiTable out;
  for (std::size_t i = 1; i < 8; ++i) {
    for (std::size_t j = 1; j < 8; ++j) {
      for (std::size_t k = 1; k < 8; ++k) {
        const auto half = associator(units[i], units[j], units[k]) / 2.0;
        if (half[0] != 0.0) {
          throw ExtractionFailure("phi: associator has a real part");
        }
        for (std::size_t l = 1; l < 8; ++l) {
          out.values(i, j, k, l) = exact_integer(half[l], "phi");
        }
      }
    }
  }
  return out;
}

/// Orientation of R^7 in which phi is the dual of psi: with the doubling rule
/// above, phi_ijkl = -(1/6) [ijklmnp] psi^mnp when [1234567] = +1.
inline constexpr int kSevenDimOrientation = -1;

/// (1/6) [ijklmnp] psi^mnp with [1234567] = +1.
inline PhiTable hodge_dual(const PsiTable& psi) {
  PhiTable out;
  for (std::size_t i = 1; i < 8; ++i)
    for (std::size_t j = 1; j < 8; ++j)
      for (std::size_t k = 1; k < 8; ++k)
        for (std::size_t l = 1; l < 8; ++l) {
          int sum = 0;
          for (std::size_t m = 1; m < 8; ++m)
            for (std::size_t n = 1; n < 8; ++n)
              for (std::size_t p = 1; p < 8; ++p) {
                const int s = psi(m, n, p);
                if (s == 0) continue;
                const std::array<std::size_t, 7> idx{i, j, k, l, m, n, p};
                sum += sorting_sign(idx) * s;
              }
          out.values(i, j, k, l) = sum / 6;
        }
  return out;
}

/// The permutation symbol [abcd] with [0123] = +1.
inline Epsilon4 epsilon4_symbol() {
  Epsilon4 out;
  for (std::size_t k = 0; k < out.values.extent; ++k) {
    const auto idx = decltype(out.values)::unflatten(k);
    out.values.flat()[k] = permutation_sign(idx);
  }
  return out;
}

/// i <X(e_a, e_b, e_c), e_d> for all frame indices, unchecked.
inline DenseTensor<ComplexScalar, 4, 4> epsilon4_cross_values() {
  const auto e = basis_frame(Kind::quaternionic);
  const ComplexScalar i_unit{0.0, 1.0};
  DenseTensor<ComplexScalar, 4, 4> out;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c) {
        const auto x = cross_left(e[a], e[b], e[c]);
        for (std::size_t d = 0; d < 4; ++d) out(a, b, c, d) = i_unit * inner(x, e[d]);
      }
  return out;
}

/// epsilon_abcd = i <X(e_a, e_b, e_c), e_d>, checked against [abcd].
inline Epsilon4 epsilon4_from_cross() {
  const auto values = epsilon4_cross_values();
  const auto symbol = epsilon4_symbol();
  Epsilon4 out;
  for (std::size_t k = 0; k < values.extent; ++k) {
    const int v = exact_integer(values.flat()[k], "epsilon4");
    if (v != symbol.values.flat()[k]) {
      const auto i = decltype(values)::unflatten(k);
      throw IdentityFailure("epsilon4: i<X(e_a,e_b,e_c),e_d> != [abcd] at (" +
                            std::to_string(i[0]) + "," + std::to_string(i[1]) + "," +
                            std::to_string(i[2]) + "," + std::to_string(i[3]) + ")");
    }
    out.values.flat()[k] = v;
  }
  return out;
}

inline ChiTable build_chi(Chirality chirality) {
  const auto E = basis_frame(Kind::octonionic);
  const ComplexScalar i_unit{0.0, 1.0};
  ChiTable out{chirality, {}};
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t b = 0; b < 8; ++b)
      for (std::size_t c = 0; c < 8; ++c) {
        const auto x = cross(chirality, E[a], E[b], E[c]);
        for (std::size_t d = 0; d < 8; ++d) {
          out.values(a, b, c, d) =
              exact_gaussian(i_unit * inner(x, E[d]), "chi");
        }
      }
  return out;
}

/// Raise every frame index with eta = diag(-1, +1, ..., +1).
template <class T, std::size_t Dim>
DenseTensor<T, Dim, 4> raise_frame_indices(const DenseTensor<T, Dim, 4>& lower) {
  DenseTensor<T, Dim, 4> upper;
  for (std::size_t k = 0; k < upper.extent; ++k) {
    const auto idx = DenseTensor<T, Dim, 4>::unflatten(k);
    double s = 1.0;
    for (auto a : idx) s *= eta<Dim>(a, a);
    upper.flat()[k] = lower.flat()[k] * static_cast<T>(s);
  }
  return upper;
}

/// max |T(sigma(idx)) - sgn(sigma) T(idx)| over all entries and all 24 sigma.
template <class T, std::size_t Dim>
double antisymmetry_residual(const DenseTensor<T, Dim, 4>& t) {
  static const auto perms = permutations4();
  double worst = 0.0;
  for (std::size_t k = 0; k < t.extent; ++k) {
    const auto idx = DenseTensor<T, Dim, 4>::unflatten(k);
    for (const auto& p : perms) {
      const std::array<std::size_t, 4> moved{idx[p[0]], idx[p[1]], idx[p[2]],
                                             idx[p[3]]};
      const double s = permutation_sign(p);
      worst = std::max(worst, std::abs(static_cast<ComplexScalar>(t.at(moved)) -
                                       s * static_cast<ComplexScalar>(t.at(idx))));
    }
  }
  return worst;
}

template <class T, std::size_t Dim>
double antisymmetry_residual(const DenseTensor<T, Dim, 3>& t) {
  double worst = 0.0;
  for (std::size_t i = 0; i < Dim; ++i)
    for (std::size_t j = 0; j < Dim; ++j)
      for (std::size_t k = 0; k < Dim; ++k) {
        const double v = static_cast<double>(t(i, j, k));
        for (double d : {static_cast<double>(t(j, i, k)) + v,
                         static_cast<double>(t(i, k, j)) + v,
                         static_cast<double>(t(k, j, i)) + v}) {
          worst = std::max(worst, std::abs(d));
        }
      }
  return worst;
}

/// -1/2 eps^{abmn} eps_{abrs} = delta^{mn}_{rs} for all m, n, r, s, exact.
inline CheckResult verify_kronecker_identity(const Epsilon4& eps) {
  const auto upper = raise_frame_indices(eps.values);
  double worst = 0.0;
  std::size_t checked = 0;
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) {
          int contraction = 0;
          for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b)
              contraction += upper(a, b, m, n) * eps(a, b, r, s);
          const int delta =
              int(m == r) * int(n == s) - int(m == s) * int(n == r);
          // -contraction / 2 == delta  <=>  contraction == -2 delta
          worst = std::max(worst, std::abs(contraction + 2.0 * delta) / 2.0);
          ++checked;
        }
  return make_check("kronecker_identity", worst, 0.0, checked);
}

inline CheckResult verify_kronecker_identity() {
  return verify_kronecker_identity(epsilon4_from_cross());
}

/// One nonzero table entry for dumps: (indices, re, im).
struct TableEntry {
  std::vector<std::size_t> indices;
  double re = 0.0;
  double im = 0.0;
};

/// Nonzero entries in lexicographic index order.
template <class T, std::size_t Dim, std::size_t Rank>
std::vector<TableEntry> nonzero_entries(const DenseTensor<T, Dim, Rank>& t) {
  std::vector<TableEntry> out;
  for (std::size_t k = 0; k < t.extent; ++k) {
    const auto v = static_cast<ComplexScalar>(t.flat()[k]);
    if (v == ComplexScalar{}) continue;
    const auto idx = DenseTensor<T, Dim, Rank>::unflatten(k);
    out.push_back({{idx.begin(), idx.end()}, v.real() + 0.0, v.imag() + 0.0});
  }
  return out;
}

}  // namespace octograv
