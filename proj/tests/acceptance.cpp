// Acceptance gate: one PASS/FAIL line per criterion, exit 0 iff all pass.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "octograv/action.hpp"
#include "octograv/commands.hpp"
#include "octograv/geometry.hpp"
#include "octograv/scenarios.hpp"
#include "octograv/tables.hpp"
#include "octograv/verification.hpp"

namespace {

using namespace octograv;

// Pinned tolerances.
constexpr double kLawTolerance = 1e-10;           // criteria 1, 2 (relative)
constexpr double kAlgebraSeconds = 5.0;           // criterion 1
constexpr std::size_t kSamples = 10000;           // criteria 1, 2
constexpr double kEquivalenceTolerance = 1e-8;    // criterion 6 (relative)
constexpr double kDeSitterTolerance = 1e-8;       // criterion 6, value 0.12
constexpr double kSchwarzschildAbsolute = 1e-8;   // criterion 6
constexpr double kEquivalenceSeconds = 10.0;      // criterion 6
constexpr double kRatioLow = 3.5, kRatioHigh = 4.5;  // criterion 7
constexpr double kRealityTolerance = 1e-8;        // criterion 8
constexpr double kPairTolerance = 1e-8;           // criterion 9 (relative)

struct Outcome {
  bool passed = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

int symbol4(std::size_t a, std::size_t b, std::size_t c, std::size_t d) {
  const std::size_t v[4] = {a, b, c, d};
  int sign = 1;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) {
      if (v[i] == v[j]) return 0;
      if (v[i] > v[j]) sign = -sign;
    }
  return sign;
}

const std::vector<CheckResult>& algebra_results(double* elapsed = nullptr) {
  static double seconds = 0.0;
  static const std::vector<CheckResult> results = [] {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = algebra_suite({kDefaultSeed, kSamples});
    seconds = seconds_since(t0);
    return r;
  }();
  if (elapsed) *elapsed = seconds;
  return results;
}

Outcome worst_of(const std::vector<std::string>& prefixes, double tol) {
  double worst = 0.0;
  std::size_t matched = 0;
  bool ok = true;
  for (const auto& c : algebra_results()) {
    for (const auto& p : prefixes) {
      if (c.name.rfind(p, 0) != 0) continue;
      ++matched;
      const bool exact = c.tolerance == 0.0;
      ok = ok && (exact ? c.max_residual == 0.0 : c.max_residual < tol);
      if (!exact) worst = std::max(worst, c.max_residual);
    }
  }
  return {ok && matched > 0, "checks=" + std::to_string(matched) + " max_residual=" + sci(worst)};
}

Outcome criterion1() {
  double elapsed = 0.0;
  algebra_results(&elapsed);
  auto o = worst_of({"composition_law", "alternativity", "associativity"}, kLawTolerance);
  o.passed = o.passed && elapsed < kAlgebraSeconds;
  o.detail += " samples=" + std::to_string(kSamples) + " time=" + sci(elapsed) + "s";
  return o;
}

Outcome criterion2() {
  return worst_of({"cross_orthogonality_L/", "cross_orthogonality_R/", "cross_pythagorean_L/",
                   "cross_pythagorean_R/"},
                  kLawTolerance);
}

Outcome criterion3() {
  const auto values = epsilon4_cross_values();
  std::size_t mismatches = 0;
  for (std::size_t a = 0; a < 4; ++a)
    for (std::size_t b = 0; b < 4; ++b)
      for (std::size_t c = 0; c < 4; ++c)
        for (std::size_t d = 0; d < 4; ++d)
          mismatches += values(a, b, c, d) != ComplexScalar(symbol4(a, b, c, d));
  const bool anchor = values(0, 1, 2, 3) == ComplexScalar(1.0);
  return {mismatches == 0 && anchor,
          "entries=256 mismatches=" + std::to_string(mismatches) +
              " eps_0123=" + sci(values(0, 1, 2, 3).real())};
}

Outcome criterion4() {
  const auto l = build_chi(Chirality::left);
  const auto r = build_chi(Chirality::right);
  const auto psi = extract_psi();
  const auto phi = extract_phi();
  const double anti = std::max(antisymmetry_residual(l.values), antisymmetry_residual(r.values));
  std::size_t conj_bad = 0, comp_bad = 0;
  for (std::size_t k = 0; k < l.values.extent; ++k)
    conj_bad += l.values.flat()[k] != std::conj(r.values.flat()[k]);
  const ComplexScalar i{0.0, 1.0};
  for (std::size_t a = 1; a < 8; ++a)
    for (std::size_t b = 1; b < 8; ++b)
      for (std::size_t c = 1; c < 8; ++c) {
        comp_bad += l(0, a, b, c) != ComplexScalar(psi(a, b, c));
        comp_bad += r(0, a, b, c) != ComplexScalar(psi(a, b, c));
        for (std::size_t d = 1; d < 8; ++d) {
          comp_bad += l(a, b, c, d) != i * double(phi(a, b, c, d));
          comp_bad += r(a, b, c, d) != -i * double(phi(a, b, c, d));
        }
      }
  return {anti == 0.0 && conj_bad == 0 && comp_bad == 0,
          "antisymmetry=" + sci(anti) + " conjugacy_mismatches=" + std::to_string(conj_bad) +
              " component_mismatches=" + std::to_string(comp_bad)};
}

Outcome criterion5() {
  const auto eps = epsilon4_from_cross();
  const auto up = raise_frame_indices(eps.values);
  std::size_t bad = 0;
  for (std::size_t m = 0; m < 4; ++m)
    for (std::size_t n = 0; n < 4; ++n)
      for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t s = 0; s < 4; ++s) {
          int sum = 0;
          for (std::size_t a = 0; a < 4; ++a)
            for (std::size_t b = 0; b < 4; ++b) sum += up(a, b, m, n) * eps(a, b, r, s);
          const int delta = int(m == r && n == s) - int(m == s && n == r);
          bad += -sum != 2 * delta;
        }
  return {bad == 0, "index_sets=256 mismatches=" + std::to_string(bad)};
}

Outcome criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  std::string detail;
  const std::vector<ScenarioSpec> specs{
      {.name = "flat-4d", .points = 50},
      {.name = "schwarzschild", .parameters = {{"M", 1.0}}, .points = 50},
      {.name = "de-sitter", .parameters = {{"H", 0.1}}, .points = 50}};
  for (const auto& spec : specs) {
    const auto res = crosscheck(spec, kEquivalenceTolerance);
    ok = ok && res.passed && res.skipped == 0 && res.points.size() == 50;
    worst = std::max(worst, res.max_delta);
  }
  detail += "max_rel_delta=" + sci(worst);

  // Schwarzschild values against the Ricci-flat oracle.
  double sw_max = 0.0;
  for (const auto& p : crosscheck(specs[1], kEquivalenceTolerance).points)
    sw_max = std::max({sw_max, std::abs(p.double_dual), std::abs(p.vierbein), std::abs(p.standard)});
  ok = ok && sw_max < kSchwarzschildAbsolute;
  detail += " schwarzschild_max=" + sci(sw_max);

  // de Sitter at t = 0: kappa 12 H^2 = 0.12.
  ScenarioSpec ds{.name = "de-sitter", .parameters = {{"H", 0.1}}, .kappa = 1.0};
  ds.explicit_points = {{0.0, 0.0, 0.0, 0.0}, {0.0, 0.7, -0.3, 0.9}};
  double ds_dev = 0.0;
  for (const auto& p : crosscheck(ds, kEquivalenceTolerance).points)
    ds_dev = std::max({ds_dev, std::abs(p.double_dual - 0.12), std::abs(p.vierbein - 0.12),
                       std::abs(p.standard - 0.12)});
  ok = ok && ds_dev < kDeSitterTolerance;
  detail += " de_sitter_t0_dev=" + sci(ds_dev);

  const double elapsed = seconds_since(t0);
  ok = ok && elapsed < kEquivalenceSeconds;
  detail += " time=" + sci(elapsed) + "s";
  return {ok, detail};
}

Outcome criterion7() {
  // Large H keeps truncation error above round-off at these steps.
  const double hubble = 10.0;
  const auto analytic = de_sitter_frame(hubble);
  std::vector<Point<4>> points{{0.0, 0.0, 0.0, 0.0}, {0.05, 0.3, -0.2, 0.1}, {-0.04, -0.5, 0.4, 0.8}};
  auto discrepancy = [&](double h) {
    const auto fd = with_finite_differences(analytic, {h, h});
    double worst = 0.0;
    for (const auto& x : points) {
      const auto a = geometry_at(analytic, x).curvature;
      const auto f = geometry_at(fd, x).curvature;
      for (std::size_t k = 0; k < a.extent; ++k)
        worst = std::max(worst, std::abs(a.flat()[k] - f.flat()[k]));
    }
    return worst;
  };
  const double coarse = discrepancy(1e-4);
  const double fine = discrepancy(5e-5);
  const double ratio = coarse / fine;
  return {ratio >= kRatioLow && ratio <= kRatioHigh,
          "H=10 err(1e-4)=" + sci(coarse) + " err(5e-5)=" + sci(fine) + " ratio=" + sci(ratio)};
}

Outcome criterion8() {
  const auto l = build_chi(Chirality::left);
  const auto r = build_chi(Chirality::right);
  const CouplingConstants constants{1.0};
  double worst = 0.0;
  std::size_t evaluated = 0;
  bool ok = true;
  for (const char* name : {"flat-8d", "diagonal-warped-8d", "random-smooth-8d"}) {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
      const ScenarioSpec spec{.name = name, .points = 20, .seed = seed};
      const auto frame = make_frame8(spec);
      for (const auto& x : scenario_points<8>(spec)) {
        const auto rep = lagrangian_chi_dual_8d(frame, x, constants, l, r);
        const double bound = kRealityTolerance * std::max(std::abs(rep.value.real()), rep.scale);
        // <= so that an identically zero value on a flat frame passes.
        ok = ok && rep.imag_magnitude <= bound;
        const double denom = std::max(std::abs(rep.value.real()), rep.scale);
        if (denom > 0.0) worst = std::max(worst, rep.imag_magnitude / denom);
        ++evaluated;
      }
    }
  }
  return {ok && evaluated == 180, "points=" + std::to_string(evaluated) + " max_imag_ratio=" + sci(worst)};
}

template <std::size_t Dim>
double pair_ratio(const ScenarioSpec& spec) {
  const auto frame = make_frame<Dim>(spec);
  double worst = 0.0;
  for (const auto& x : scenario_points<Dim>(spec)) {
    const auto low = lowered_curvature(geometry_at(frame, x));
    const double scale = max_abs<double>(low.flat());
    const double res = pair_symmetry_residual(low);
    if (scale > 0.0) {
      worst = std::max(worst, res / scale);
    } else if (res > 0.0) {
      return INFINITY;
    }
  }
  return worst;
}

Outcome criterion9() {
  double worst = 0.0;
  std::string detail;
  for (const auto& info : scenario_catalog()) {
    const ScenarioSpec spec{.name = info.name, .points = 20, .seed = 7};
    const double w = info.dimension == 4 ? pair_ratio<4>(spec) : pair_ratio<8>(spec);
    worst = std::max(worst, w);
    detail += info.name + "=" + sci(w) + " ";
  }
  return {worst < kPairTolerance, detail + "max=" + sci(worst)};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"1 algebra laws", criterion1},
      {"2 cross-product properties", criterion2},
      {"3 epsilon from cross product", criterion3},
      {"4 chi structure", criterion4},
      {"5 kronecker identity", criterion5},
      {"6 4D equivalence", criterion6},
      {"7 FD convergence", criterion7},
      {"8 8D reality", criterion8},
      {"9 curvature pair symmetry", criterion9},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failures += !o.passed;
    std::printf("%s criterion %s: %s\n", o.passed ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
