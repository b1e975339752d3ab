#pragma once
/**
 * @file action.hpp
 * @brief Pointwise Lagrangian densities.
 *
 * kappa = c^4 / (16 pi G); the c^4 / (64 pi G) prefactor is kappa / 4.
 *
 *   double dual (4D):  -(kappa/4) eps^{abmn} R_{mn}^{rs} eps_{rsab} sqrt(-g)
 *                      with tensor-density epsilons and the Christoffel Riemann tensor
 *   vierbein    (4D):  -(kappa/4) eps^{abmn} e^r_c e^s_d R_{mn}^{cd} eps_{rsab} e
 *                      with frame-pulled epsilons and the spin-connection curvature
 *   chi dual    (8D):  -(kappa/4) chiL^{abmn} E^r_c E^s_d R_{mn}^{cd} chiR_{rsab} E
 *   standard EH (4D):  kappa R sqrt(-g)
 */

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <vector>

#include "octograv/errors.hpp"
#include "octograv/frame.hpp"
#include "octograv/geometry.hpp"
#include "octograv/tables.hpp"

namespace octograv {

struct CouplingConstants {
  double kappa = 1.0;

  void validate() const {
    if (!(kappa > 0.0) || !std::isfinite(kappa)) {
      throw UsageError("kappa must be positive and finite");
    }
  }
};

struct LagrangianReport {
  std::string form;
  std::vector<double> point;
  ComplexScalar value;
  double oracle = 0.0;
  double abs_delta = 0.0;
  double rel_delta = 0.0;
  double imag_magnitude = 0.0;
  /// sign of the frame determinant; the integrand uses e, not |e|.
  int orientation = 1;
  /// kappa * max|R_{cd}^{ab}| * |det e|: the size against which zero is judged.
  double scale = 0.0;
};

/// |a - b| / max(|a|, |b|), or 0 when both vanish.
inline double relative_difference(ComplexScalar a, ComplexScalar b) {
  const double d = std::abs(a - b);
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : d / m;
}

/// sum U^{ab mn} R_{mn}^{rs} W_{rs ab}, evaluated in O(Dim^6).
template <class U, class W, std::size_t Dim>
auto double_dual_contract(const DenseTensor<U, Dim, 4>& upper,
                          const DenseTensor<double, Dim, 4>& curvature,
                          const DenseTensor<W, Dim, 4>& lower) {
  using T = std::common_type_t<U, W, double>;
  constexpr std::size_t D2 = Dim * Dim;
  // upper and curvature viewed as D2 x D2 matrices over index pairs.
  const auto u = upper.flat();
  const auto r = curvature.flat();
  const auto w = lower.flat();
  std::vector<T> t(D2 * D2, T{});  // t(ab, rs) = sum_mn U(ab, mn) R(mn, rs)
  for (std::size_t ab = 0; ab < D2; ++ab)
    for (std::size_t mn = 0; mn < D2; ++mn) {
      const T umn = static_cast<T>(u[ab * D2 + mn]);
      if (umn == T{}) continue;
      for (std::size_t rs = 0; rs < D2; ++rs) t[ab * D2 + rs] += umn * r[mn * D2 + rs];
    }
  T total{};
  for (std::size_t ab = 0; ab < D2; ++ab)
    for (std::size_t rs = 0; rs < D2; ++rs) total += t[ab * D2 + rs] * static_cast<T>(w[rs * D2 + ab]);
  return total;
}

template <std::size_t Dim>
double curvature_scale(const GeometryAtPoint<Dim>& geo, const CouplingConstants& c) {
  const auto rf = frame_curvature(geo);
  return c.kappa * max_abs<double>(rf.flat()) * std::abs(geo.frame_determinant);
}

inline std::vector<double> point_vector(std::span<const double> x) {
  return {x.begin(), x.end()};
}

/// kappa R sqrt(-g), R = R_{mn}^{mn} from the Christoffel Riemann tensor.
inline double lagrangian_standard_eh(const GeometryAtPoint<4>& geo,
                                     const CouplingConstants& c) {
  c.validate();
  return c.kappa * ricci_scalar_from_christoffel(geo) * geo.sqrt_minus_g;
}

inline double lagrangian_standard_eh(const FrameField<4>& frame, const Point<4>& x,
                                     const CouplingConstants& c) {
  return lagrangian_standard_eh(geometry_at(frame, x), c);
}

namespace detail {

inline void finish_report(LagrangianReport& rep) {
  rep.abs_delta = std::abs(rep.value - ComplexScalar(rep.oracle));
  rep.rel_delta = relative_difference(rep.value, rep.oracle);
  rep.imag_magnitude = std::abs(rep.value.imag());
}

}  // namespace detail

inline LagrangianReport lagrangian_double_dual_4d(const GeometryAtPoint<4>& geo,
                                                  const CouplingConstants& c) {
  c.validate();
  const auto lc = levi_civita_density_at(geo);
  LagrangianReport rep;
  rep.form = "dd4";
  rep.point = point_vector(geo.point);
  const double l = -0.25 * c.kappa * double_dual_contract(lc.upper, geo.riemann, lc.lower);
  rep.value = l * geo.sqrt_minus_g;
  rep.oracle = lagrangian_standard_eh(geo, c);
  rep.scale = curvature_scale(geo, c);
  detail::finish_report(rep);
  return rep;
}

inline LagrangianReport lagrangian_double_dual_4d(const FrameField<4>& frame,
                                                  const Point<4>& x,
                                                  const CouplingConstants& c) {
  return lagrangian_double_dual_4d(geometry_at(frame, x), c);
}

/// L e with e = det(e^a_mu). For e < 0 the oracle carries the same sign
/// (orientation = -1) so the delta compares like with like.
inline LagrangianReport lagrangian_vierbein_4d(const GeometryAtPoint<4>& geo,
                                               const CouplingConstants& c,
                                               const Epsilon4& eps) {
  c.validate();
  const auto lc = levi_civita_from_frame(geo, eps);
  const auto curv = coordinate_curvature(geo);
  LagrangianReport rep;
  rep.form = "vierbein4";
  rep.point = point_vector(geo.point);
  const double l = -0.25 * c.kappa * double_dual_contract(lc.upper, curv, lc.lower);
  rep.value = l * geo.frame_determinant;
  rep.orientation = geo.frame_determinant < 0.0 ? -1 : 1;
  rep.oracle = rep.orientation * lagrangian_standard_eh(geo, c);
  rep.scale = curvature_scale(geo, c);
  detail::finish_report(rep);
  return rep;
}

inline LagrangianReport lagrangian_vierbein_4d(const FrameField<4>& frame,
                                               const Point<4>& x,
                                               const CouplingConstants& c) {
  static const Epsilon4 eps = epsilon4_from_cross();
  return lagrangian_vierbein_4d(geometry_at(frame, x), c, eps);
}

inline LagrangianReport lagrangian_eh_report(const GeometryAtPoint<4>& geo,
                                             const CouplingConstants& c) {
  LagrangianReport rep;
  rep.form = "eh4";
  rep.point = point_vector(geo.point);
  rep.value = lagrangian_standard_eh(geo, c);
  rep.oracle = rep.value.real();
  rep.scale = curvature_scale(geo, c);
  detail::finish_report(rep);
  return rep;
}

/// Same contraction entirely in frame indices: chiL^{abcd} R_{cd}^{ef} chiR_{efab}.
inline ComplexScalar chi_dual_frame_route(const GeometryAtPoint<8>& geo,
                                          const CouplingConstants& c,
                                          const ChiTable& chi_left,
                                          const ChiTable& chi_right) {
  const auto upper = raise_frame_indices(chi_left.values);
  const auto rf = frame_curvature(geo);
  return -0.25 * c.kappa * double_dual_contract(upper, rf, chi_right.values) *
         geo.frame_determinant;
}

/// L E for the chi-dual action. `first` supplies the raised tensor and
/// `second` the lowered one; passing (R, L) instead of (L, R) gives the
/// conjugate value.
inline LagrangianReport lagrangian_chi_dual_8d(const GeometryAtPoint<8>& geo,
                                               const CouplingConstants& c,
                                               const ChiTable& first,
                                               const ChiTable& second) {
  c.validate();
  const auto up = chi_coordinate_at(geo, first).upper;
  const auto down = chi_coordinate_at(geo, second).lower;
  const auto curv = coordinate_curvature(geo);
  LagrangianReport rep;
  rep.form = "chi8";
  rep.point = point_vector(geo.point);
  rep.value = -0.25 * c.kappa * double_dual_contract(up, curv, down) * geo.frame_determinant;
  rep.orientation = geo.frame_determinant < 0.0 ? -1 : 1;
  const ComplexScalar frame_route = chi_dual_frame_route(geo, c, first, second);
  rep.oracle = frame_route.real();
  rep.scale = curvature_scale(geo, c);
  rep.abs_delta = std::abs(rep.value - frame_route);
  rep.rel_delta = relative_difference(rep.value, frame_route);
  rep.imag_magnitude = std::abs(rep.value.imag());
  return rep;
}

inline LagrangianReport lagrangian_chi_dual_8d(const FrameField<8>& frame,
                                               const Point<8>& x,
                                               const CouplingConstants& c,
                                               const ChiTable& chi_left,
                                               const ChiTable& chi_right) {
  return lagrangian_chi_dual_8d(geometry_at(frame, x), c, chi_left, chi_right);
}

struct ReductionReport {
  double contracted = 0.0;  // eps^{abmn} eps_{rsab} R_{mn}^{rs}
  double reduced = 0.0;     // -2 (R_{mn}^{mn} - R_{mn}^{nm})
  double abs_delta = 0.0;
  double rel_delta = 0.0;
};

/// The epsilon-epsilon contraction reduces the double dual to -4 R.
inline ReductionReport kronecker_reduction_check(const GeometryAtPoint<4>& geo) {
  const auto lc = levi_civita_density_at(geo);
  ReductionReport rep;
  rep.contracted = double_dual_contract(lc.upper, geo.riemann, lc.lower);
  double direct = 0.0;
  double swapped = 0.0;
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n) {
      direct += geo.riemann(m, n, m, n);
      swapped += geo.riemann(m, n, n, m);
    }
  rep.reduced = -2.0 * (direct - swapped);
  rep.abs_delta = std::abs(rep.contracted - rep.reduced);
  rep.rel_delta = relative_difference(rep.contracted, rep.reduced);
  return rep;
}

inline ReductionReport kronecker_reduction_check(const FrameField<4>& frame,
                                                 const Point<4>& x) {
  return kronecker_reduction_check(geometry_at(frame, x));
}

struct RotationResponse {
  ComplexScalar original;
  ComplexScalar rotated;
  double rel_change = 0.0;
};

/// Measures (does not assert) how the 8D value changes under a constant
/// frame rotation E -> L E.
inline RotationResponse chi_rotation_response(const FrameField<8>& frame,
                                              const Point<8>& x,
                                              const CouplingConstants& c,
                                              const ChiTable& chi_left,
                                              const ChiTable& chi_right,
                                              const Matrix<8>& lorentz) {
  RotationResponse out;
  out.original = lagrangian_chi_dual_8d(frame, x, c, chi_left, chi_right).value;
  out.rotated =
      lagrangian_chi_dual_8d(rotate_frame(frame, lorentz), x, c, chi_left, chi_right).value;
  out.rel_change = relative_difference(out.original, out.rotated);
  return out;
}

}  // namespace octograv
