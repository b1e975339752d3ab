#pragma once
/**
 * @file frame.hpp
 * @brief Frame fields (vierbein / achtbein) and their derivative providers.
 *
 * A frame is stored as the matrix e(a, mu) = e^a_mu: row = frame index,
 * column = coordinate index. Derivatives are indexed by the differentiating
 * coordinate first: d[nu](a, mu) = d_nu e^a_mu and
 * dd[nu][rho](a, mu) = d_nu d_rho e^a_mu.
 */

#include <array>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <variant>

#include "octograv/errors.hpp"
#include "octograv/tensor.hpp"

namespace octograv {

template <std::size_t Dim>
using FirstDerivatives = std::array<Matrix<Dim>, Dim>;

template <std::size_t Dim>
using SecondDerivatives = std::array<std::array<Matrix<Dim>, Dim>, Dim>;

/// Frame value plus first and second derivatives at one point.
template <std::size_t Dim>
struct FrameJet {
  Matrix<Dim> value;
  FirstDerivatives<Dim> d;
  SecondDerivatives<Dim> dd;
};

template <std::size_t Dim>
struct AnalyticDerivatives {
  std::function<FirstDerivatives<Dim>(const Point<Dim>&)> first;
  std::function<SecondDerivatives<Dim>(const Point<Dim>&)> second;
};

/// Central differences. First derivatives use `step`; second derivatives
/// difference the first-derivative estimate again with `second_step`.
struct FiniteDifference {
  double step = 1e-5;
  double second_step = 1e-4;
};

enum class ProviderKind { analytic, finite_difference };

inline std::string to_string(ProviderKind p) {
  return p == ProviderKind::analytic ? "analytic" : "fd";
}

template <std::size_t Dim>
struct FrameField {
  std::function<Matrix<Dim>(const Point<Dim>&)> value;
  std::variant<AnalyticDerivatives<Dim>, FiniteDifference> derivatives;

  ProviderKind provider() const noexcept {
    return std::holds_alternative<FiniteDifference>(derivatives)
               ? ProviderKind::finite_difference
               : ProviderKind::analytic;
  }
};

/// Same frame, derivatives by central differences of the value callback.
template <std::size_t Dim>
FrameField<Dim> with_finite_differences(FrameField<Dim> frame,
                                        FiniteDifference fd = {}) {
  if (!(fd.step > 0.0) || !(fd.second_step > 0.0)) {
    throw UsageError("finite-difference steps must be positive");
  }
  frame.derivatives = fd;
  return frame;
}

namespace detail {

template <std::size_t Dim>
FirstDerivatives<Dim> central_first(
    const std::function<Matrix<Dim>(const Point<Dim>&)>& f,
    const Point<Dim>& x, double h) {
  FirstDerivatives<Dim> d;
  for (std::size_t nu = 0; nu < Dim; ++nu) {
    auto plus = x;
    auto minus = x;
    plus[nu] += h;
    minus[nu] -= h;
    d[nu] = (f(plus) - f(minus)) / (2.0 * h);
  }
  return d;
}

}  // namespace detail

/// Evaluates value and derivatives with the frame's provider.
template <std::size_t Dim>
FrameJet<Dim> frame_jet(const FrameField<Dim>& frame, const Point<Dim>& x) {
  FrameJet<Dim> jet;
  jet.value = frame.value(x);
  if (const auto* analytic = std::get_if<AnalyticDerivatives<Dim>>(&frame.derivatives)) {
    jet.d = analytic->first(x);
    jet.dd = analytic->second(x);
    return jet;
  }
  const auto& fd = std::get<FiniteDifference>(frame.derivatives);
  jet.d = detail::central_first<Dim>(frame.value, x, fd.step);
  const double h2 = fd.second_step;
  SecondDerivatives<Dim> raw;
  for (std::size_t rho = 0; rho < Dim; ++rho) {
    auto plus = x;
    auto minus = x;
    plus[rho] += h2;
    minus[rho] -= h2;
    const auto dp = detail::central_first<Dim>(frame.value, plus, fd.step);
    const auto dm = detail::central_first<Dim>(frame.value, minus, fd.step);
    for (std::size_t nu = 0; nu < Dim; ++nu) {
      raw[rho][nu] = (dp[nu] - dm[nu]) / (2.0 * h2);
    }
  }
  // Partial derivatives commute; average the two difference orders.
  for (std::size_t nu = 0; nu < Dim; ++nu)
    for (std::size_t rho = 0; rho < Dim; ++rho)
      jet.dd[nu][rho] = 0.5 * (raw[nu][rho] + raw[rho][nu]);
  return jet;
}

/// Constant local frame rotation: e'^a_mu = L^a_b e^b_mu.
template <std::size_t Dim>
FrameField<Dim> rotate_frame(const FrameField<Dim>& frame,
                             const Matrix<Dim>& lorentz) {
  FrameField<Dim> out;
  auto base = frame.value;
  out.value = [base, lorentz](const Point<Dim>& x) -> Matrix<Dim> {
    return lorentz * base(x);
  };
  if (const auto* a = std::get_if<AnalyticDerivatives<Dim>>(&frame.derivatives)) {
    auto first = a->first;
    auto second = a->second;
    out.derivatives = AnalyticDerivatives<Dim>{
        [first, lorentz](const Point<Dim>& x) {
          auto d = first(x);
          for (auto& m : d) m = lorentz * m;
          return d;
        },
        [second, lorentz](const Point<Dim>& x) {
          auto dd = second(x);
          for (auto& row : dd)
            for (auto& m : row) m = lorentz * m;
          return dd;
        }};
  } else {
    out.derivatives = frame.derivatives;
  }
  return out;
}

/// Coordinate rescaling x' = s x; the frame transforms as a covector:
/// e'^a_mu(x') = e^a_mu(x' / s) / s.
template <std::size_t Dim>
FrameField<Dim> rescale_coordinates(const FrameField<Dim>& frame, double s) {
  auto shrink = [s](Point<Dim> x) {
    for (auto& c : x) c /= s;
    return x;
  };
  FrameField<Dim> out;
  auto base = frame.value;
  out.value = [base, shrink, s](const Point<Dim>& x) -> Matrix<Dim> {
    return base(shrink(x)) / s;
  };
  if (const auto* a = std::get_if<AnalyticDerivatives<Dim>>(&frame.derivatives)) {
    auto first = a->first;
    auto second = a->second;
    out.derivatives = AnalyticDerivatives<Dim>{
        [first, shrink, s](const Point<Dim>& x) {
          auto d = first(shrink(x));
          for (auto& m : d) m /= s * s;
          return d;
        },
        [second, shrink, s](const Point<Dim>& x) {
          auto dd = second(shrink(x));
          for (auto& row : dd)
            for (auto& m : row) m /= s * s * s;
          return dd;
        }};
  } else {
    out.derivatives = frame.derivatives;
  }
  return out;
}

}  // namespace octograv
