#pragma once
/**
 * @file verification.hpp
 * @brief Randomized and exhaustive invariant suites for the algebra and tables.
 *
 * Random residuals are relative to the Hermitian magnitudes of the inputs
 * (complex composition algebras have zero divisors, so the algebra norm
 * itself is no scale).
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "octograv/algebra.hpp"
#include "octograv/check.hpp"
#include "octograv/random.hpp"
#include "octograv/tables.hpp"

namespace octograv {

inline constexpr std::uint64_t kDefaultSeed = 20061018;

/// Coefficients uniform in [-1, 1] for both real and imaginary parts.
inline CayleyElement random_element(Kind kind, Rng& rng) {
  CayleyElement x(kind);
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double re = rng.uniform(-1.0, 1.0);
    const double im = rng.uniform(-1.0, 1.0);
    x[k] = {re, im};
  }
  return x;
}

/// det <x_i, x_j> over the three arguments.
inline ComplexScalar gram_determinant(const CayleyElement& x1, const CayleyElement& x2,
                                      const CayleyElement& x3) {
  const std::array<const CayleyElement*, 3> xs{&x1, &x2, &x3};
  std::array<std::array<ComplexScalar, 3>, 3> m{};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m[i][j] = inner(*xs[i], *xs[j]);
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

struct SuiteOptions {
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 10000;
};

/// Composition, alternativity, associativity, inner-product and cross-product laws.
inline std::vector<CheckResult> algebra_suite(const SuiteOptions& opt = {}) {
  std::vector<CheckResult> out;
  const std::size_t n = opt.samples;

  for (Kind kind : {Kind::quaternionic, Kind::octonionic}) {
    const std::string tag = to_string(kind);
    Rng rng(opt.seed + (kind == Kind::quaternionic ? 0 : 1));
    double composition = 0.0, two_sided = 0.0, assoc = 0.0, alt = 0.0;
    double antisym = 0.0, lr_equal = 0.0;
    double orth[2] = {0.0, 0.0}, pyth[2] = {0.0, 0.0};
    for (std::size_t s = 0; s < n; ++s) {
      const auto x = random_element(kind, rng);
      const auto y = random_element(kind, rng);
      const auto z = random_element(kind, rng);
      const double mx = magnitude(x), my = magnitude(y), mz = magnitude(z);

      composition = std::max(composition, std::abs(norm(x * y) - norm(x) * norm(y)) /
                                              (mx * mx * my * my));
      two_sided = std::max(two_sided,
                           std::abs(inner(x, y) - inner_conjugate_left(x, y)) / (mx * my));
      if (kind == Kind::quaternionic) {
        assoc = std::max(assoc, magnitude(associator(x, y, z)) / (mx * my * mz));
      } else {
        alt = std::max({alt, magnitude(associator(x, x, y)) / (mx * mx * my),
                        magnitude(associator(x, y, y)) / (mx * my * my)});
      }
      for (Chirality ch : {Chirality::left, Chirality::right}) {
        const int c = ch == Chirality::left ? 0 : 1;
        const auto X = cross(ch, x, y, z);
        const double scale3 = mx * my * mz;
        for (const auto* xi : {&x, &y, &z}) {
          orth[c] = std::max(orth[c], std::abs(inner(X, *xi)) / (scale3 * magnitude(*xi)));
        }
        pyth[c] = std::max(pyth[c], std::abs(gram_determinant(x, y, z) - inner(X, X)) /
                                        (scale3 * scale3));
        antisym = std::max({antisym,
                            magnitude(cross(ch, y, x, z) + X) / scale3,
                            magnitude(cross(ch, x, z, y) + X) / scale3,
                            magnitude(cross(ch, z, y, x) + X) / scale3});
      }
      if (kind == Kind::quaternionic) {
        lr_equal = std::max(lr_equal, magnitude(cross_left(x, y, z) - cross_right(x, y, z)) /
                                          (mx * my * mz));
      }
    }
    out.push_back(make_check("composition_law/" + tag, composition, 1e-12, n));
    out.push_back(make_check("two_sided_inner/" + tag, two_sided, 1e-12, n));
    if (kind == Kind::quaternionic) {
      out.push_back(make_check("associativity/" + tag, assoc, 1e-10, n));
      out.push_back(make_check("cross_left_equals_right/" + tag, lr_equal, 1e-12, n));
    } else {
      out.push_back(make_check("alternativity/" + tag, alt, 1e-10, n));
    }
    out.push_back(make_check("cross_orthogonality_L/" + tag, orth[0], 1e-10, n));
    out.push_back(make_check("cross_orthogonality_R/" + tag, orth[1], 1e-10, n));
    out.push_back(make_check("cross_pythagorean_L/" + tag, pyth[0], 1e-10, n));
    out.push_back(make_check("cross_pythagorean_R/" + tag, pyth[1], 1e-10, n));
    out.push_back(make_check("cross_antisymmetry/" + tag, antisym, 1e-12, n));

    // Exhaustive basis-level checks, exact.
    const auto units = basis_frame(kind);
    const std::size_t dim = units.size();
    double eta_res = 0.0, inner_res = 0.0, basis_assoc = 0.0, basis_comp = 0.0;
    std::size_t count = 0;
    for (std::size_t a = 0; a < dim; ++a) {
      for (std::size_t b = 0; b < dim; ++b) {
        const double expected = a == b ? (a == 0 ? -1.0 : 1.0) : 0.0;
        eta_res = std::max(eta_res, std::abs(inner(units[a], units[b]) - expected));
        inner_res = std::max(inner_res, std::abs(inner(units[a], units[b]) -
                                                 inner_conjugate_left(units[a], units[b])));
        basis_comp = std::max(basis_comp, std::abs(norm(units[a] * units[b]) -
                                                   norm(units[a]) * norm(units[b])));
        for (std::size_t c = 0; c < dim; ++c) {
          const auto& u = units[a];
          const auto& v = units[b];
          const auto& w = units[c];
          if (kind == Kind::quaternionic) {
            basis_assoc = std::max(basis_assoc, magnitude(associator(u, v, w)));
          } else if (a == b || b == c) {
            basis_assoc = std::max(basis_assoc, magnitude(associator(u, v, w)));
          }
          ++count;
        }
      }
    }
    out.push_back(make_check("minkowski_orthonormality/" + tag, eta_res, 0.0, dim * dim));
    out.push_back(make_check("two_sided_inner_basis/" + tag, inner_res, 0.0, dim * dim));
    out.push_back(make_check("composition_law_basis/" + tag, basis_comp, 0.0, dim * dim));
    out.push_back(make_check((kind == Kind::quaternionic ? "associativity_basis/"
                                                         : "alternativity_basis/") +
                                 tag,
                             basis_assoc, 0.0, count));
  }
  return out;
}

/// Every structure table, in one place so tests can corrupt them.
struct TableSet {
  Epsilon3 eps3;
  PsiTable psi;
  PhiTable phi;
  DenseTensor<ComplexScalar, 4, 4> eps4_cross;  // i<X(e_a,e_b,e_c),e_d>, unchecked
  ChiTable chi_left;
  ChiTable chi_right;
};

inline TableSet build_tables() {
  return {extract_epsilon3(),       extract_psi(),
          extract_phi(),            epsilon4_cross_values(),
          build_chi(Chirality::left), build_chi(Chirality::right)};
}

/// Flips the sign of one nonzero entry of the named table.
inline void inject_fault(TableSet& t, const std::string& table) {
  if (table == "eps3") {
    t.eps3.values(1, 2, 3) = -t.eps3.values(1, 2, 3);
  } else if (table == "psi") {
    t.psi.values(1, 4, 5) = -t.psi.values(1, 4, 5);
  } else if (table == "phi") {
    t.phi.values(1, 2, 4, 7) = -t.phi.values(1, 2, 4, 7);
  } else if (table == "eps4") {
    t.eps4_cross(0, 1, 2, 3) = -t.eps4_cross(0, 1, 2, 3);
  } else if (table == "chiL") {
    t.chi_left.values(0, 1, 4, 5) = -t.chi_left.values(0, 1, 4, 5);
  } else if (table == "chiR") {
    t.chi_right.values(1, 2, 4, 7) = -t.chi_right.values(1, 2, 4, 7);
  } else {
    throw UsageError("unknown table '" + table + "'");
  }
}

/// Structure-table identities; all exact (tolerance 0).
inline std::vector<CheckResult> tables_suite(const TableSet& t) {
  std::vector<CheckResult> out;
  auto count_nonzero = [](const auto& tensor) {
    std::size_t c = 0;
    for (const auto& v : tensor.flat()) c += (v != std::remove_cvref_t<decltype(v)>{}) ? 1 : 0;
    return c;
  };

  {
    double r = antisymmetry_residual(t.eps3.values);
    r = std::max(r, std::abs(t.eps3(1, 2, 3) - 1.0));
    const auto nz = count_nonzero(t.eps3.values);
    out.push_back(make_check("epsilon3", r + (nz == 6 ? 0.0 : 1.0), 0.0, 27,
                             std::to_string(nz) + " nonzero"));
  }
  {
    double r = antisymmetry_residual(t.psi.values);
    const auto nz = count_nonzero(t.psi.values);
    // quaternions sit in E_1..E_3
    for (std::size_t i = 1; i < 4; ++i)
      for (std::size_t j = 1; j < 4; ++j)
        for (std::size_t k = 1; k < 4; ++k)
          r = std::max(r, std::abs(double(t.psi(i, j, k) - t.eps3(i, j, k))));
    out.push_back(make_check("psi", r + (nz == 42 ? 0.0 : 1.0), 0.0, 343,
                             std::to_string(nz) + " nonzero"));
  }
  {
    const double r = antisymmetry_residual(t.phi.values);
    const auto dual = hodge_dual(t.psi);
    double d = 0.0;
    for (std::size_t k = 0; k < dual.values.extent; ++k) {
      d = std::max(d, std::abs(double(t.phi.values.flat()[k] -
                                      kSevenDimOrientation * dual.values.flat()[k])));
    }
    out.push_back(make_check("phi_antisymmetry", r, 0.0, t.phi.values.extent));
    out.push_back(make_check("phi_dual_of_psi", d, 0.0, dual.values.extent));
  }
  {
    const auto symbol = epsilon4_symbol();
    double r = 0.0;
    for (std::size_t k = 0; k < t.eps4_cross.extent; ++k) {
      r = std::max(r, std::abs(t.eps4_cross.flat()[k] -
                               ComplexScalar(symbol.values.flat()[k])));
    }
    out.push_back(make_check("epsilon4_from_cross_product", r, 0.0, 256));
    out.push_back(make_check("epsilon4_antisymmetry", antisymmetry_residual(t.eps4_cross), 0.0,
                             256 * 24));
  }
  {
    out.push_back(make_check("chiL_antisymmetry", antisymmetry_residual(t.chi_left.values), 0.0,
                             4096 * 24));
    out.push_back(make_check("chiR_antisymmetry", antisymmetry_residual(t.chi_right.values), 0.0,
                             4096 * 24));
    double conj_res = 0.0;
    for (std::size_t k = 0; k < t.chi_left.values.extent; ++k) {
      conj_res = std::max(conj_res, std::abs(t.chi_left.values.flat()[k] -
                                             std::conj(t.chi_right.values.flat()[k])));
    }
    out.push_back(make_check("chi_conjugacy", conj_res, 0.0, 4096));

    const ComplexScalar i_unit{0.0, 1.0};
    double rel0 = 0.0, rel_ijkl = 0.0;
    for (std::size_t i = 1; i < 8; ++i)
      for (std::size_t j = 1; j < 8; ++j)
        for (std::size_t k = 1; k < 8; ++k) {
          const ComplexScalar psi(t.psi(i, j, k));
          rel0 = std::max({rel0, std::abs(t.chi_left(0, i, j, k) - psi),
                           std::abs(t.chi_right(0, i, j, k) - psi)});
          for (std::size_t l = 1; l < 8; ++l) {
            const ComplexScalar phi(t.phi(i, j, k, l));
            rel_ijkl = std::max({rel_ijkl, std::abs(t.chi_left(i, j, k, l) - i_unit * phi),
                                 std::abs(t.chi_right(i, j, k, l) + i_unit * phi)});
          }
        }
    out.push_back(make_check("chi_0ijk_equals_psi", rel0, 0.0, 343));
    out.push_back(make_check("chi_ijkl_equals_i_phi", rel_ijkl, 0.0, 2401));

    double restrict_res = 0.0;
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b)
        for (std::size_t c = 0; c < 4; ++c)
          for (std::size_t d = 0; d < 4; ++d)
            restrict_res = std::max(restrict_res, std::abs(t.chi_left(a, b, c, d) -
                                                           t.eps4_cross(a, b, c, d)));
    out.push_back(make_check("chiL_restricts_to_epsilon4", restrict_res, 0.0, 256));
  }
  {
    Epsilon4 eps;
    double r = 0.0;
    for (std::size_t k = 0; k < t.eps4_cross.extent; ++k) {
      const auto v = t.eps4_cross.flat()[k];
      eps.values.flat()[k] = static_cast<int>(std::lround(v.real()));
      r = std::max(r, std::abs(v - ComplexScalar(eps.values.flat()[k])));
    }
    auto k = verify_kronecker_identity(eps);
    k.max_residual = std::max(k.max_residual, r);
    k.passed = k.max_residual <= k.tolerance;
    out.push_back(k);
  }
  return out;
}

inline std::vector<CheckResult> tables_suite() { return tables_suite(build_tables()); }

inline bool all_passed(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const CheckResult& c) { return c.passed; });
}

}  // namespace octograv
