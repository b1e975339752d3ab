#pragma once
/**
 * @file geometry.hpp
 * @brief Pointwise geometry of a frame field.
 *
 * Conventions (fixed once, used everywhere):
 *   g_{mu nu}          = eta_ab e^a_mu e^b_nu,   eta = diag(-1, +1, ..., +1)
 *   christoffel(l,m,n) = Gamma^l_{mn}
 *   spin(mu, a, b)     = omega_mu^{ab} = g^{rs} e^a_r nabla_mu e^b_s
 *   curvature(m,n,a,b) = R_{mn}^{ab} = d_m omega_n^{ab} - d_n omega_m^{ab}
 *                        + omega_m^a_c omega_n^{cb} - omega_n^a_c omega_m^{cb}
 *   riemann(m,n,r,s)   = R_{mn}^{rs} built from Christoffel symbols alone
 *
 * With these signs R_{mn}^{mn} is the Ricci scalar, positive on de Sitter.
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>

#include "octograv/errors.hpp"
#include "octograv/frame.hpp"
#include "octograv/tables.hpp"
#include "octograv/tensor.hpp"

namespace octograv {

/// Frames with |det e| below this are rejected.
inline constexpr double kDegenerateFrameThreshold = 1e-12;

template <std::size_t Dim>
struct MetricAtPoint {
  Matrix<Dim> frame;
  Matrix<Dim> inverse_frame;  // (mu, a) = e_a^mu
  double frame_determinant = 0.0;
  Matrix<Dim> metric;
  Matrix<Dim> inverse_metric;
  double sqrt_minus_g = 0.0;
};

template <std::size_t Dim>
struct GeometryAtPoint : MetricAtPoint<Dim> {
  Point<Dim> point{};
  DenseTensor<double, Dim, 3> christoffel;      // Gamma^l_{mn}
  DenseTensor<double, Dim, 3> spin_connection;  // omega_mu^{ab}
  DenseTensor<double, Dim, 4> curvature;        // R_{mn}^{ab}
  DenseTensor<double, Dim, 4> riemann;          // R_{mn}^{rs}
};

template <std::size_t Dim>
MetricAtPoint<Dim> metric_from_frame(const Matrix<Dim>& e) {
  if (!e.allFinite()) throw DegenerateFrame("frame has non-finite entries");
  MetricAtPoint<Dim> m;
  m.frame = e;
  m.frame_determinant = e.determinant();
  if (!(std::abs(m.frame_determinant) >= kDegenerateFrameThreshold)) {
    throw DegenerateFrame("frame determinant " +
                          std::to_string(m.frame_determinant) +
                          " below degeneracy threshold");
  }
  m.inverse_frame = e.inverse();
  m.metric = e.transpose() * minkowski<Dim>() * e;
  m.metric = 0.5 * (m.metric + m.metric.transpose()).eval();
  m.inverse_metric = m.inverse_frame * minkowski<Dim>() * m.inverse_frame.transpose();
  const double minus_g = -m.metric.determinant();
  if (!(minus_g > 0.0)) throw SignatureError("metric has -g <= 0");
  m.sqrt_minus_g = std::sqrt(minus_g);
  return m;
}

template <std::size_t Dim>
MetricAtPoint<Dim> metric_at(const FrameField<Dim>& frame, const Point<Dim>& x) {
  return metric_from_frame<Dim>(frame.value(x));
}

/// Full pointwise geometry from a frame jet (value + two derivatives).
template <std::size_t Dim>
GeometryAtPoint<Dim> geometry_from_jet(const FrameJet<Dim>& jet,
                                       const Point<Dim>& x = {}) {
  GeometryAtPoint<Dim> geo;
  static_cast<MetricAtPoint<Dim>&>(geo) = metric_from_frame<Dim>(jet.value);
  geo.point = x;
  const Matrix<Dim> eta_m = minkowski<Dim>();
  const auto& E = jet.value;
  const auto& gi = geo.inverse_metric;

  std::array<Matrix<Dim>, Dim> dg;
  std::array<Matrix<Dim>, Dim> dgi;
  for (std::size_t l = 0; l < Dim; ++l) {
    dg[l] = jet.d[l].transpose() * eta_m * E + E.transpose() * eta_m * jet.d[l];
    dgi[l] = -gi * dg[l] * gi;
  }
  std::array<std::array<Matrix<Dim>, Dim>, Dim> ddg;
  for (std::size_t k = 0; k < Dim; ++k)
    for (std::size_t l = 0; l < Dim; ++l)
      ddg[k][l] = jet.dd[k][l].transpose() * eta_m * E +
                  jet.d[l].transpose() * eta_m * jet.d[k] +
                  jet.d[k].transpose() * eta_m * jet.d[l] +
                  E.transpose() * eta_m * jet.dd[k][l];

  // Gamma_{r m n} (first index lowered) and its derivative.
  DenseTensor<double, Dim, 3> gamma_low;
  DenseTensor<double, Dim, 4> d_gamma_low;  // (k, r, m, n)
  for (std::size_t r = 0; r < Dim; ++r)
    for (std::size_t m = 0; m < Dim; ++m)
      for (std::size_t n = 0; n < Dim; ++n) {
        gamma_low(r, m, n) = 0.5 * (dg[m](r, n) + dg[n](r, m) - dg[r](m, n));
        for (std::size_t k = 0; k < Dim; ++k) {
          d_gamma_low(k, r, m, n) =
              0.5 * (ddg[k][m](r, n) + ddg[k][n](r, m) - ddg[k][r](m, n));
        }
      }

  DenseTensor<double, Dim, 4> d_gamma;  // (k, l, m, n) = d_k Gamma^l_{mn}
  for (std::size_t l = 0; l < Dim; ++l)
    for (std::size_t m = 0; m < Dim; ++m)
      for (std::size_t n = 0; n < Dim; ++n) {
        double s = 0.0;
        for (std::size_t r = 0; r < Dim; ++r) s += gi(l, r) * gamma_low(r, m, n);
        geo.christoffel(l, m, n) = s;
        for (std::size_t k = 0; k < Dim; ++k) {
          double ds = 0.0;
          for (std::size_t r = 0; r < Dim; ++r) {
            ds += dgi[k](l, r) * gamma_low(r, m, n) +
                  gi(l, r) * d_gamma_low(k, r, m, n);
          }
          d_gamma(k, l, m, n) = ds;
        }
      }
  const auto& G = geo.christoffel;

  // R^r_{s m n} = d_m Gamma^r_{ns} - d_n Gamma^r_{ms}
  //              + Gamma^r_{ml} Gamma^l_{ns} - Gamma^r_{nl} Gamma^l_{ms}
  DenseTensor<double, Dim, 4> mixed;  // (r, s, m, n)
  for (std::size_t r = 0; r < Dim; ++r)
    for (std::size_t s = 0; s < Dim; ++s)
      for (std::size_t m = 0; m < Dim; ++m)
        for (std::size_t n = 0; n < Dim; ++n) {
          double v = d_gamma(m, r, n, s) - d_gamma(n, r, m, s);
          for (std::size_t l = 0; l < Dim; ++l) {
            v += G(r, m, l) * G(l, n, s) - G(r, n, l) * G(l, m, s);
          }
          mixed(r, s, m, n) = v;
        }
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t r = 0; r < Dim; ++r)
        for (std::size_t s = 0; s < Dim; ++s) {
          double v = 0.0;
          for (std::size_t a = 0; a < Dim; ++a) v += mixed(r, a, m, n) * gi(a, s);
          geo.riemann(m, n, r, s) = v;
        }

  // nabla_mu e^b_s = d_mu e^b_s - Gamma^l_{mu s} e^b_l, and its derivative.
  DenseTensor<double, Dim, 3> cov;     // (mu, b, s)
  DenseTensor<double, Dim, 4> d_cov;   // (nu, mu, b, s)
  for (std::size_t mu = 0; mu < Dim; ++mu)
    for (std::size_t b = 0; b < Dim; ++b)
      for (std::size_t s = 0; s < Dim; ++s) {
        double v = jet.d[mu](b, s);
        for (std::size_t l = 0; l < Dim; ++l) v -= G(l, mu, s) * E(b, l);
        cov(mu, b, s) = v;
        for (std::size_t nu = 0; nu < Dim; ++nu) {
          double dv = jet.dd[nu][mu](b, s);
          for (std::size_t l = 0; l < Dim; ++l) {
            dv -= d_gamma(nu, l, mu, s) * E(b, l) + G(l, mu, s) * jet.d[nu](b, l);
          }
          d_cov(nu, mu, b, s) = dv;
        }
      }

  // e^{a s} = g^{r s} e^a_r and its derivative.
  const Matrix<Dim> e_up = E * gi;
  std::array<Matrix<Dim>, Dim> d_e_up;
  for (std::size_t nu = 0; nu < Dim; ++nu) {
    d_e_up[nu] = jet.d[nu] * gi + E * dgi[nu];
  }

  DenseTensor<double, Dim, 4> d_omega;  // (nu, mu, a, b) = d_nu omega_mu^{ab}
  for (std::size_t mu = 0; mu < Dim; ++mu)
    for (std::size_t a = 0; a < Dim; ++a)
      for (std::size_t b = 0; b < Dim; ++b) {
        double w = 0.0;
        for (std::size_t s = 0; s < Dim; ++s) w += e_up(a, s) * cov(mu, b, s);
        geo.spin_connection(mu, a, b) = w;
        for (std::size_t nu = 0; nu < Dim; ++nu) {
          double dw = 0.0;
          for (std::size_t s = 0; s < Dim; ++s) {
            dw += d_e_up[nu](a, s) * cov(mu, b, s) +
                  e_up(a, s) * d_cov(nu, mu, b, s);
          }
          d_omega(nu, mu, a, b) = dw;
        }
      }
  const auto& W = geo.spin_connection;

  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t a = 0; a < Dim; ++a)
        for (std::size_t b = 0; b < Dim; ++b) {
          double v = d_omega(m, n, a, b) - d_omega(n, m, a, b);
          for (std::size_t c = 0; c < Dim; ++c) {
            const double ec = eta<Dim>(c, c);
            v += ec * (W(m, a, c) * W(n, c, b) - W(n, a, c) * W(m, c, b));
          }
          geo.curvature(m, n, a, b) = v;
        }
  return geo;
}

template <std::size_t Dim>
GeometryAtPoint<Dim> geometry_at(const FrameField<Dim>& frame,
                                 const Point<Dim>& x) {
  return geometry_from_jet<Dim>(frame_jet(frame, x), x);
}

template <std::size_t Dim>
DenseTensor<double, Dim, 3> christoffel_at(const FrameField<Dim>& frame,
                                           const Point<Dim>& x) {
  return geometry_at(frame, x).christoffel;
}

template <std::size_t Dim>
DenseTensor<double, Dim, 3> spin_connection_at(const FrameField<Dim>& frame,
                                               const Point<Dim>& x) {
  return geometry_at(frame, x).spin_connection;
}

template <std::size_t Dim>
DenseTensor<double, Dim, 4> curvature_at(const FrameField<Dim>& frame,
                                         const Point<Dim>& x) {
  return geometry_at(frame, x).curvature;
}

/// Frame-frame curvature R_{cd}^{ab} = e_c^m e_d^n R_{mn}^{ab}.
template <std::size_t Dim>
DenseTensor<double, Dim, 4> frame_curvature(const GeometryAtPoint<Dim>& geo) {
  DenseTensor<double, Dim, 4> half;  // (c, n, a, b)
  const auto& inv = geo.inverse_frame;
  for (std::size_t c = 0; c < Dim; ++c)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t a = 0; a < Dim; ++a)
        for (std::size_t b = 0; b < Dim; ++b) {
          double v = 0.0;
          for (std::size_t m = 0; m < Dim; ++m) v += inv(m, c) * geo.curvature(m, n, a, b);
          half(c, n, a, b) = v;
        }
  DenseTensor<double, Dim, 4> out;
  for (std::size_t c = 0; c < Dim; ++c)
    for (std::size_t d = 0; d < Dim; ++d)
      for (std::size_t a = 0; a < Dim; ++a)
        for (std::size_t b = 0; b < Dim; ++b) {
          double v = 0.0;
          for (std::size_t n = 0; n < Dim; ++n) v += inv(n, d) * half(c, n, a, b);
          out(c, d, a, b) = v;
        }
  return out;
}

/// Coordinate-index spin curvature R_{mn}^{rs} = e_a^r e_b^s R_{mn}^{ab}.
template <std::size_t Dim>
DenseTensor<double, Dim, 4> coordinate_curvature(const GeometryAtPoint<Dim>& geo) {
  DenseTensor<double, Dim, 4> half;  // (m, n, r, b)
  const auto& inv = geo.inverse_frame;
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t r = 0; r < Dim; ++r)
        for (std::size_t b = 0; b < Dim; ++b) {
          double v = 0.0;
          for (std::size_t a = 0; a < Dim; ++a) v += inv(r, a) * geo.curvature(m, n, a, b);
          half(m, n, r, b) = v;
        }
  DenseTensor<double, Dim, 4> out;
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t r = 0; r < Dim; ++r)
        for (std::size_t s = 0; s < Dim; ++s) {
          double v = 0.0;
          for (std::size_t b = 0; b < Dim; ++b) v += inv(s, b) * half(m, n, r, b);
          out(m, n, r, s) = v;
        }
  return out;
}

/// All-lower R_{mnrs} = e_{ar} e_{bs} R_{mn}^{ab}, e_{ar} = eta_ac e^c_r.
template <std::size_t Dim>
DenseTensor<double, Dim, 4> lowered_curvature(const GeometryAtPoint<Dim>& geo) {
  const Matrix<Dim> e_low = minkowski<Dim>() * geo.frame;
  DenseTensor<double, Dim, 4> half;  // (m, n, r, b)
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t r = 0; r < Dim; ++r)
        for (std::size_t b = 0; b < Dim; ++b) {
          double v = 0.0;
          for (std::size_t a = 0; a < Dim; ++a) v += e_low(a, r) * geo.curvature(m, n, a, b);
          half(m, n, r, b) = v;
        }
  DenseTensor<double, Dim, 4> out;
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t r = 0; r < Dim; ++r)
        for (std::size_t s = 0; s < Dim; ++s) {
          double v = 0.0;
          for (std::size_t b = 0; b < Dim; ++b) v += e_low(b, s) * half(m, n, r, b);
          out(m, n, r, s) = v;
        }
  return out;
}

/// R = e_a^m e_b^n R_{mn}^{ab}.
template <std::size_t Dim>
double ricci_scalar(const GeometryAtPoint<Dim>& geo) {
  double r = 0.0;
  const auto& inv = geo.inverse_frame;
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n)
      for (std::size_t a = 0; a < Dim; ++a)
        for (std::size_t b = 0; b < Dim; ++b)
          r += inv(m, a) * inv(n, b) * geo.curvature(m, n, a, b);
  return r;
}

/// R = R_{mn}^{mn} from the Christoffel-built Riemann tensor.
template <std::size_t Dim>
double ricci_scalar_from_christoffel(const GeometryAtPoint<Dim>& geo) {
  double r = 0.0;
  for (std::size_t m = 0; m < Dim; ++m)
    for (std::size_t n = 0; n < Dim; ++n) r += geo.riemann(m, n, m, n);
  return r;
}

/// max |R_{mnrs} - R_{rsmn}|.
template <std::size_t Dim>
double pair_symmetry_residual(const DenseTensor<double, Dim, 4>& lower) {
  double worst = 0.0;
  for (std::size_t k = 0; k < lower.extent; ++k) {
    const auto i = DenseTensor<double, Dim, 4>::unflatten(k);
    worst = std::max(worst, std::abs(lower(i[0], i[1], i[2], i[3]) -
                                     lower(i[2], i[3], i[0], i[1])));
  }
  return worst;
}

/// max |R_{mnrs} + R_{nrms} + R_{rmns}| (cyclic sum over the first three).
template <std::size_t Dim>
double first_bianchi_residual(const DenseTensor<double, Dim, 4>& lower) {
  double worst = 0.0;
  for (std::size_t k = 0; k < lower.extent; ++k) {
    const auto i = DenseTensor<double, Dim, 4>::unflatten(k);
    worst = std::max(worst, std::abs(lower(i[0], i[1], i[2], i[3]) +
                                     lower(i[1], i[2], i[0], i[3]) +
                                     lower(i[2], i[0], i[1], i[3])));
  }
  return worst;
}

/// max |omega_mu^{ab} + omega_mu^{ba}|.
template <std::size_t Dim>
double spin_antisymmetry_residual(const GeometryAtPoint<Dim>& geo) {
  double worst = 0.0;
  for (std::size_t mu = 0; mu < Dim; ++mu)
    for (std::size_t a = 0; a < Dim; ++a)
      for (std::size_t b = 0; b < Dim; ++b)
        worst = std::max(worst, std::abs(geo.spin_connection(mu, a, b) +
                                         geo.spin_connection(mu, b, a)));
  return worst;
}

template <class T>
double max_abs(std::span<const T> values) {
  double worst = 0.0;
  for (const auto& v : values) worst = std::max(worst, static_cast<double>(std::abs(v)));
  return worst;
}

/// out(i0..i3) = sum M(a0, i0) ... M(a3, i3) t(a0..a3), one slot at a time.
template <class T, std::size_t Dim>
DenseTensor<T, Dim, 4> transform_indices(const DenseTensor<T, Dim, 4>& t,
                                         const Matrix<Dim>& m) {
  DenseTensor<T, Dim, 4> cur = t;
  for (std::size_t slot = 0; slot < 4; ++slot) {
    DenseTensor<T, Dim, 4> next;
    for (std::size_t k = 0; k < next.extent; ++k) {
      auto idx = DenseTensor<T, Dim, 4>::unflatten(k);
      const std::size_t target = idx[slot];
      T v{};
      for (std::size_t a = 0; a < Dim; ++a) {
        const double w = m(a, target);
        if (w == 0.0) continue;
        idx[slot] = a;
        v += static_cast<T>(w) * cur.at(idx);
      }
      next.flat()[k] = v;
    }
    cur = std::move(next);
  }
  return cur;
}

/// Levi-Civita tensor densities (4D): lower = +sqrt(-g)[mnrs], upper = -[mnrs]/sqrt(-g).
struct LeviCivitaDensityAtPoint {
  DenseTensor<double, 4, 4> lower;
  DenseTensor<double, 4, 4> upper;
};

inline LeviCivitaDensityAtPoint levi_civita_density_at(const MetricAtPoint<4>& geo) {
  if (!(geo.sqrt_minus_g > 0.0)) throw SignatureError("levi-civita: -g <= 0");
  const auto symbol = epsilon4_symbol();
  LeviCivitaDensityAtPoint out;
  for (std::size_t k = 0; k < out.lower.extent; ++k) {
    const double s = symbol.values.flat()[k];
    out.lower.flat()[k] = geo.sqrt_minus_g * s;
    out.upper.flat()[k] = -s / geo.sqrt_minus_g;
  }
  return out;
}

/// Frame pullbacks eps_{mnrs} = e^a_m e^b_n e^c_r e^d_s eps_abcd and
/// eps^{mnrs} = e_a^m e_b^n e_c^r e_d^s eps^abcd.
inline LeviCivitaDensityAtPoint levi_civita_from_frame(const MetricAtPoint<4>& geo,
                                                       const Epsilon4& eps) {
  DenseTensor<double, 4, 4> lower_frame;
  for (std::size_t k = 0; k < lower_frame.extent; ++k)
    lower_frame.flat()[k] = eps.values.flat()[k];
  const auto upper_frame = raise_frame_indices(lower_frame);
  return {transform_indices(lower_frame, geo.frame),
          transform_indices(upper_frame, Matrix<4>(geo.inverse_frame.transpose()))};
}

/// chi_{mnrs} = E^a_m E^b_n E^c_r E^d_s chi_abcd and the raised counterpart.
struct ChiCoordinateAtPoint {
  Chirality chirality = Chirality::left;
  DenseTensor<ComplexScalar, 8, 4> lower;
  DenseTensor<ComplexScalar, 8, 4> upper;
};

inline ChiCoordinateAtPoint chi_coordinate_at(const MetricAtPoint<8>& geo,
                                              const ChiTable& chi) {
  return {chi.chirality, transform_indices(chi.values, geo.frame),
          transform_indices(raise_frame_indices(chi.values),
                            Matrix<8>(geo.inverse_frame.transpose()))};
}

inline ChiCoordinateAtPoint chi_coordinate_at(const FrameField<8>& frame,
                                              const Point<8>& x,
                                              const ChiTable& chi) {
  return chi_coordinate_at(metric_at(frame, x), chi);
}

}  // namespace octograv
