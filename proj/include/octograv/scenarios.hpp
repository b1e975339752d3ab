#pragma once
/**
 * @file scenarios.hpp
 * @brief Built-in frame fields with analytic first and second derivatives.
 *
 *   flat-4d              identity vierbein
 *   schwarzschild        (t, r, theta, phi), parameter M
 *   de-sitter            (t, x, y, z), flat slicing, parameter H
 *   flat-8d              identity achtbein
 *   diagonal-warped-8d   E^a_mu = delta^a_mu (1 + A sin(k_a . x + p_a)), parameter A
 *   random-smooth-8d     identity plus a seeded quadratic polynomial, parameter A
 */

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "octograv/errors.hpp"
#include "octograv/frame.hpp"
#include "octograv/random.hpp"

namespace octograv {

/// Value, gradient and Hessian of one scalar function.
template <std::size_t Dim>
struct ScalarJet {
  double value = 0.0;
  std::array<double, Dim> grad{};
  std::array<std::array<double, Dim>, Dim> hess{};
};

/// Frame diag(s_0(x), ..., s_{Dim-1}(x)) from the jets of its entries.
template <std::size_t Dim>
FrameField<Dim> diagonal_frame(
    std::function<std::array<ScalarJet<Dim>, Dim>(const Point<Dim>&)> entries) {
  FrameField<Dim> f;
  f.value = [entries](const Point<Dim>& x) {
    const auto s = entries(x);
    Matrix<Dim> m = Matrix<Dim>::Zero();
    for (std::size_t a = 0; a < Dim; ++a) m(a, a) = s[a].value;
    return m;
  };
  f.derivatives = AnalyticDerivatives<Dim>{
      [entries](const Point<Dim>& x) {
        const auto s = entries(x);
        FirstDerivatives<Dim> d;
        for (std::size_t nu = 0; nu < Dim; ++nu) {
          d[nu] = Matrix<Dim>::Zero();
          for (std::size_t a = 0; a < Dim; ++a) d[nu](a, a) = s[a].grad[nu];
        }
        return d;
      },
      [entries](const Point<Dim>& x) {
        const auto s = entries(x);
        SecondDerivatives<Dim> dd;
        for (std::size_t nu = 0; nu < Dim; ++nu)
          for (std::size_t rho = 0; rho < Dim; ++rho) {
            dd[nu][rho] = Matrix<Dim>::Zero();
            for (std::size_t a = 0; a < Dim; ++a) dd[nu][rho](a, a) = s[a].hess[nu][rho];
          }
        return dd;
      }};
  return f;
}

template <std::size_t Dim>
FrameField<Dim> flat_frame() {
  return diagonal_frame<Dim>([](const Point<Dim>&) {
    std::array<ScalarJet<Dim>, Dim> s{};
    for (auto& j : s) j.value = 1.0;
    return s;
  });
}

/// diag(f^{1/2}, f^{-1/2}, r, r sin(theta)), f = 1 - 2M/r.
inline FrameField<4> schwarzschild_frame(double mass) {
  return diagonal_frame<4>([mass](const Point<4>& x) {
    const double r = x[1];
    const double th = x[2];
    const double f = 1.0 - 2.0 * mass / r;
    const double fp = 2.0 * mass / (r * r);
    const double fpp = -4.0 * mass / (r * r * r);
    const double sf = std::sqrt(f);  // NaN inside the horizon
    std::array<ScalarJet<4>, 4> s{};
    s[0].value = sf;
    s[0].grad[1] = fp / (2.0 * sf);
    s[0].hess[1][1] = fpp / (2.0 * sf) - fp * fp / (4.0 * f * sf);
    s[1].value = 1.0 / sf;
    s[1].grad[1] = -0.5 * fp / (f * sf);
    s[1].hess[1][1] = 0.75 * fp * fp / (f * f * sf) - 0.5 * fpp / (f * sf);
    s[2].value = r;
    s[2].grad[1] = 1.0;
    s[3].value = r * std::sin(th);
    s[3].grad[1] = std::sin(th);
    s[3].grad[2] = r * std::cos(th);
    s[3].hess[1][2] = s[3].hess[2][1] = std::cos(th);
    s[3].hess[2][2] = -r * std::sin(th);
    return s;
  });
}

/// diag(1, e^{Ht}, e^{Ht}, e^{Ht}).
inline FrameField<4> de_sitter_frame(double hubble) {
  return diagonal_frame<4>([hubble](const Point<4>& x) {
    const double a = std::exp(hubble * x[0]);
    std::array<ScalarJet<4>, 4> s{};
    s[0].value = 1.0;
    for (std::size_t i = 1; i < 4; ++i) {
      s[i].value = a;
      s[i].grad[0] = hubble * a;
      s[i].hess[0][0] = hubble * hubble * a;
    }
    return s;
  });
}

/// Wave vector and phase of the warped-8D entry a.
inline double warp_wave_number(std::size_t a, std::size_t nu) {
  return 0.5 * std::cos(static_cast<double>(a) + 2.3 * static_cast<double>(nu));
}
inline double warp_phase(std::size_t a) { return 0.7 * static_cast<double>(a); }

inline FrameField<8> diagonal_warped_frame(double amplitude) {
  return diagonal_frame<8>([amplitude](const Point<8>& x) {
    std::array<ScalarJet<8>, 8> s{};
    for (std::size_t a = 0; a < 8; ++a) {
      double phase = warp_phase(a);
      for (std::size_t nu = 0; nu < 8; ++nu) phase += warp_wave_number(a, nu) * x[nu];
      const double sn = std::sin(phase);
      const double cs = std::cos(phase);
      s[a].value = 1.0 + amplitude * sn;
      for (std::size_t nu = 0; nu < 8; ++nu) {
        s[a].grad[nu] = amplitude * warp_wave_number(a, nu) * cs;
        for (std::size_t rho = 0; rho < 8; ++rho) {
          s[a].hess[nu][rho] = -amplitude * warp_wave_number(a, nu) *
                               warp_wave_number(a, rho) * sn;
        }
      }
    }
    return s;
  });
}

/// E^a_mu = delta^a_mu + A (c + b_nu x^nu + 1/2 q_{nu rho} x^nu x^rho), coefficients in [-1, 1].
inline FrameField<8> random_smooth_frame(double amplitude, std::uint64_t seed) {
  struct Coefficients {
    Matrix<8> c;
    std::array<Matrix<8>, 8> b;                     // b[nu](a, mu)
    std::array<std::array<Matrix<8>, 8>, 8> q;      // q[nu][rho](a, mu), symmetric in nu rho
  };
  auto coef = std::make_shared<Coefficients>();
  Rng rng(seed);
  for (std::size_t a = 0; a < 8; ++a)
    for (std::size_t mu = 0; mu < 8; ++mu) coef->c(a, mu) = amplitude * rng.uniform(-1, 1);
  for (std::size_t nu = 0; nu < 8; ++nu)
    for (std::size_t a = 0; a < 8; ++a)
      for (std::size_t mu = 0; mu < 8; ++mu) coef->b[nu](a, mu) = amplitude * rng.uniform(-1, 1);
  for (std::size_t nu = 0; nu < 8; ++nu)
    for (std::size_t rho = nu; rho < 8; ++rho)
      for (std::size_t a = 0; a < 8; ++a)
        for (std::size_t mu = 0; mu < 8; ++mu) {
          const double v = amplitude * rng.uniform(-1, 1);
          coef->q[nu][rho](a, mu) = v;
          coef->q[rho][nu](a, mu) = v;
        }

  FrameField<8> f;
  f.value = [coef](const Point<8>& x) {
    Matrix<8> m = Matrix<8>::Identity() + coef->c;
    for (std::size_t nu = 0; nu < 8; ++nu) {
      m += coef->b[nu] * x[nu];
      for (std::size_t rho = 0; rho < 8; ++rho) m += 0.5 * coef->q[nu][rho] * x[nu] * x[rho];
    }
    return m;
  };
  f.derivatives = AnalyticDerivatives<8>{
      [coef](const Point<8>& x) {
        FirstDerivatives<8> d;
        for (std::size_t nu = 0; nu < 8; ++nu) {
          d[nu] = coef->b[nu];
          for (std::size_t rho = 0; rho < 8; ++rho) d[nu] += coef->q[nu][rho] * x[rho];
        }
        return d;
      },
      [coef](const Point<8>&) {
        SecondDerivatives<8> dd;
        for (std::size_t nu = 0; nu < 8; ++nu)
          for (std::size_t rho = 0; rho < 8; ++rho) dd[nu][rho] = coef->q[nu][rho];
        return dd;
      }};
  return f;
}

/// Named scenario plus how to evaluate it.
struct ScenarioSpec {
  std::string name = "flat-4d";
  std::map<std::string, double> parameters;
  std::size_t points = 10;
  std::uint64_t seed = 1;
  std::vector<std::vector<double>> explicit_points;
  ProviderKind provider = ProviderKind::analytic;
  FiniteDifference fd;
  double kappa = 1.0;

  double parameter(const std::string& key, double fallback) const {
    const auto it = parameters.find(key);
    return it == parameters.end() ? fallback : it->second;
  }
};

struct ScenarioInfo {
  std::string name;
  std::size_t dimension;
  std::map<std::string, double> defaults;
};

inline const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> catalog{
      {"flat-4d", 4, {}},
      {"schwarzschild", 4, {{"M", 1.0}}},
      {"de-sitter", 4, {{"H", 0.1}}},
      {"flat-8d", 8, {}},
      {"diagonal-warped-8d", 8, {{"A", 0.2}}},
      {"random-smooth-8d", 8, {{"A", 0.05}}},
  };
  return catalog;
}

inline const ScenarioInfo& scenario_info(const std::string& name) {
  for (const auto& s : scenario_catalog()) {
    if (s.name == name) return s;
  }
  throw UsageError("unknown scenario '" + name + "'");
}

inline std::size_t scenario_dimension(const std::string& name) {
  return scenario_info(name).dimension;
}

/// Checks parameter ranges; throws UsageError.
inline void validate_scenario(const ScenarioSpec& spec) {
  const auto& info = scenario_info(spec.name);
  for (const auto& [key, value] : spec.parameters) {
    if (!info.defaults.contains(key)) {
      throw UsageError("scenario '" + spec.name + "' has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) throw UsageError("parameter '" + key + "' is not finite");
  }
  if (spec.name == "schwarzschild" && !(spec.parameter("M", 1.0) > 0.0)) {
    throw UsageError("schwarzschild: M must be positive");
  }
  if (spec.name == "de-sitter" && !(spec.parameter("H", 0.1) > 0.0)) {
    throw UsageError("de-sitter: H must be positive");
  }
  if (spec.name == "diagonal-warped-8d") {
    const double a = spec.parameter("A", 0.2);
    if (!(a >= 0.0 && a < 1.0)) throw UsageError("diagonal-warped-8d: A must be in [0, 1)");
  }
  if (spec.name == "random-smooth-8d") {
    const double a = spec.parameter("A", 0.05);
    if (!(a >= 0.0 && a <= 0.1)) throw UsageError("random-smooth-8d: A must be in [0, 0.1]");
  }
  if (!(spec.kappa > 0.0)) throw UsageError("kappa must be positive");
  for (const auto& p : spec.explicit_points) {
    if (p.size() != info.dimension) {
      throw UsageError("explicit point has " + std::to_string(p.size()) +
                       " coordinates, scenario needs " + std::to_string(info.dimension));
    }
  }
}

template <std::size_t Dim>
FrameField<Dim> apply_provider(FrameField<Dim> frame, const ScenarioSpec& spec) {
  if (spec.provider == ProviderKind::finite_difference) {
    return with_finite_differences(std::move(frame), spec.fd);
  }
  return frame;
}

inline FrameField<4> make_frame4(const ScenarioSpec& spec) {
  validate_scenario(spec);
  FrameField<4> f;
  if (spec.name == "flat-4d") {
    f = flat_frame<4>();
  } else if (spec.name == "schwarzschild") {
    f = schwarzschild_frame(spec.parameter("M", 1.0));
  } else if (spec.name == "de-sitter") {
    f = de_sitter_frame(spec.parameter("H", 0.1));
  } else {
    throw UsageError("scenario '" + spec.name + "' is not four-dimensional");
  }
  return apply_provider(std::move(f), spec);
}

inline FrameField<8> make_frame8(const ScenarioSpec& spec) {
  validate_scenario(spec);
  FrameField<8> f;
  if (spec.name == "flat-8d") {
    f = flat_frame<8>();
  } else if (spec.name == "diagonal-warped-8d") {
    f = diagonal_warped_frame(spec.parameter("A", 0.2));
  } else if (spec.name == "random-smooth-8d") {
    f = random_smooth_frame(spec.parameter("A", 0.05), spec.seed);
  } else {
    throw UsageError("scenario '" + spec.name + "' is not eight-dimensional");
  }
  return apply_provider(std::move(f), spec);
}

template <std::size_t Dim>
FrameField<Dim> make_frame(const ScenarioSpec& spec) {
  if constexpr (Dim == 4) {
    return make_frame4(spec);
  } else {
    return make_frame8(spec);
  }
}

/// Explicit points if given, else `spec.points` seeded samples from the
/// scenario's regular region (Schwarzschild: r in [3M, 20M], theta in [0.2, pi - 0.2]).
template <std::size_t Dim>
std::vector<Point<Dim>> scenario_points(const ScenarioSpec& spec) {
  std::vector<Point<Dim>> out;
  if (!spec.explicit_points.empty()) {
    for (const auto& p : spec.explicit_points) {
      if (p.size() != Dim) throw UsageError("explicit point has wrong dimension");
      Point<Dim> x{};
      std::copy(p.begin(), p.end(), x.begin());
      out.push_back(x);
    }
    return out;
  }
  // Point stream is decorrelated from the random-smooth-8d coefficient stream.
  Rng rng(spec.seed ^ 0x9e3779b97f4a7c15ULL);
  for (std::size_t k = 0; k < spec.points; ++k) {
    Point<Dim> x{};
    if (spec.name == "schwarzschild") {
      const double m = spec.parameter("M", 1.0);
      x = Point<Dim>{rng.uniform(-10.0, 10.0), rng.uniform(3.0 * m, 20.0 * m),
                     rng.uniform(0.2, std::numbers::pi - 0.2),
                     rng.uniform(0.0, 2.0 * std::numbers::pi)};
    } else if (spec.name == "random-smooth-8d") {
      for (auto& c : x) c = rng.uniform(-0.5, 0.5);
    } else {
      for (auto& c : x) c = rng.uniform(-1.0, 1.0);
    }
    out.push_back(x);
  }
  return out;
}

}  // namespace octograv
