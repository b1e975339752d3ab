#pragma once
/**
 * @file commands.hpp
 * @brief The command-line operations as plain functions over streams.
 *
 * Exit codes: 0 pass, 1 invariant failure, 2 usage error, 3 numerical
 * degeneracy encountered. Complex numbers are always written as
 * {"re": .., "im": ..}. Output depends only on the inputs (no clocks).
 */

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "octograv/action.hpp"
#include "octograv/geometry.hpp"
#include "octograv/scenarios.hpp"
#include "octograv/tables.hpp"
#include "octograv/verification.hpp"

namespace octograv {

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode : int {
  kExitPass = 0,
  kExitInvariantFailure = 1,
  kExitUsage = 2,
  kExitDegenerate = 3,
};

enum class OutputFormat { text, json, csv };

inline OutputFormat parse_format(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  if (s == "csv") return OutputFormat::csv;
  throw UsageError("unknown output format '" + s + "'");
}

inline nlohmann::ordered_json complex_json(ComplexScalar z) {
  return {{"re", z.real() + 0.0}, {"im", z.imag() + 0.0}};
}

/// %.17g: round-trips doubles, stable across runs.
inline std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

inline std::string fmt_short(double v) {
  std::ostringstream os;
  os << std::scientific << std::setprecision(3) << v;
  return os.str();
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
  SuiteOptions suite;
  OutputFormat format = OutputFormat::text;
  std::optional<std::string> inject_fault;
};

inline int cmd_verify_algebra(const VerifyOptions& opt, std::ostream& out) {
  if (opt.format == OutputFormat::csv) throw UsageError("verify-algebra supports text or json");
  auto checks = algebra_suite(opt.suite);
  auto tables = build_tables();
  if (opt.inject_fault) inject_fault(tables, *opt.inject_fault);
  for (auto& c : tables_suite(tables)) checks.push_back(std::move(c));
  const bool ok = all_passed(checks);

  if (opt.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["tool"] = "octograv";
    j["version"] = kVersion;
    j["command"] = "verify-algebra";
    j["seed"] = opt.suite.seed;
    j["samples"] = opt.suite.samples;
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : checks) {
      j["checks"].push_back({{"name", c.name},
                             {"max_residual", c.max_residual},
                             {"tolerance", c.tolerance},
                             {"samples", c.samples},
                             {"passed", c.passed}});
    }
    j["passed"] = ok;
    out << j.dump(2) << "\n";
  } else {
    out << "octograv " << kVersion << " verify-algebra seed=" << opt.suite.seed
        << " samples=" << opt.suite.samples << "\n";
    for (const auto& c : checks) {
      out << (c.passed ? "PASS " : "FAIL ") << std::left << std::setw(40) << c.name
          << " max_residual=" << fmt_short(c.max_residual)
          << " tolerance=" << fmt_short(c.tolerance) << " n=" << c.samples << "\n";
    }
    out << "RESULT " << (ok ? "pass" : "fail") << "\n";
  }
  return ok ? kExitPass : kExitInvariantFailure;
}

// ---------------------------------------------------------------- dump

inline const std::vector<std::string>& table_names() {
  static const std::vector<std::string> names{"eps3", "psi", "phi", "eps4", "chiL", "chiR"};
  return names;
}

/// Nonzero entries of a named table, lexicographically sorted.
inline std::vector<TableEntry> table_entries(const std::string& which) {
  if (which == "eps3") return nonzero_entries(extract_epsilon3().values);
  if (which == "psi") return nonzero_entries(extract_psi().values);
  if (which == "phi") return nonzero_entries(extract_phi().values);
  if (which == "eps4") return nonzero_entries(epsilon4_from_cross().values);
  if (which == "chiL") return nonzero_entries(build_chi(Chirality::left).values);
  if (which == "chiR") return nonzero_entries(build_chi(Chirality::right).values);
  throw UsageError("unknown table '" + which + "' (expected eps3|psi|phi|eps4|chiL|chiR)");
}

inline nlohmann::ordered_json table_json(const std::string& which,
                                 const std::vector<TableEntry>& entries) {
  nlohmann::ordered_json j;
  j["table"] = which;
  j["entries"] = nlohmann::ordered_json::array();
  for (const auto& e : entries) {
    j["entries"].push_back({{"indices", e.indices}, {"re", e.re}, {"im", e.im}});
  }
  return j;
}

/// Inverse of table_json.
inline std::vector<TableEntry> parse_table_json(const nlohmann::json& j) {
  std::vector<TableEntry> out;
  for (const auto& e : j.at("entries")) {
    out.push_back({e.at("indices").get<std::vector<std::size_t>>(), e.at("re").get<double>(),
                   e.at("im").get<double>()});
  }
  return out;
}

/// Dense complex tensor from dumped entries.
template <std::size_t Dim, std::size_t Rank>
DenseTensor<ComplexScalar, Dim, Rank> densify(const std::vector<TableEntry>& entries) {
  DenseTensor<ComplexScalar, Dim, Rank> t;
  for (const auto& e : entries) {
    if (e.indices.size() != Rank) throw UsageError("table entry has wrong rank");
    std::array<std::size_t, Rank> idx{};
    for (std::size_t r = 0; r < Rank; ++r) {
      if (e.indices[r] >= Dim) throw UsageError("table index out of range");
      idx[r] = e.indices[r];
    }
    t.at(idx) = {e.re, e.im};
  }
  return t;
}

inline int cmd_dump_tables(const std::string& which, OutputFormat format, std::ostream& out) {
  const auto entries = table_entries(which);
  if (format == OutputFormat::json) {
    out << table_json(which, entries).dump(2) << "\n";
  } else if (format == OutputFormat::text) {
    for (const auto& e : entries) {
      for (auto i : e.indices) out << i << " ";
      out << fmt(e.re) << " " << fmt(e.im) << "\n";
    }
  } else {
    throw UsageError("dump-tables supports text or json");
  }
  return kExitPass;
}

// ---------------------------------------------------------------- lagrangian

enum class Form { dd4, vierbein4, eh4, chi8 };

inline Form parse_form(const std::string& s) {
  if (s == "dd4") return Form::dd4;
  if (s == "vierbein4") return Form::vierbein4;
  if (s == "eh4") return Form::eh4;
  if (s == "chi8") return Form::chi8;
  throw UsageError("unknown form '" + s + "' (expected dd4|vierbein4|eh4|chi8)");
}

inline std::string to_string(Form f) {
  switch (f) {
    case Form::dd4: return "dd4";
    case Form::vierbein4: return "vierbein4";
    case Form::eh4: return "eh4";
    case Form::chi8: return "chi8";
  }
  return "?";
}

inline std::size_t form_dimension(Form f) { return f == Form::chi8 ? 8 : 4; }

inline nlohmann::ordered_json scenario_json(const ScenarioSpec& spec) {
  const auto& info = scenario_info(spec.name);
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : info.defaults) params[k] = spec.parameter(k, v);
  nlohmann::ordered_json j{{"name", spec.name},
                   {"dimension", info.dimension},
                   {"parameters", params},
                   {"seed", spec.seed},
                   {"provider", to_string(spec.provider)},
                   {"kappa", spec.kappa}};
  if (spec.provider == ProviderKind::finite_difference) {
    j["h"] = spec.fd.step;
    j["h2"] = spec.fd.second_step;
  }
  if (spec.explicit_points.empty()) {
    j["points"] = spec.points;
  } else {
    j["points"] = spec.explicit_points;
  }
  return j;
}

/// One evaluated (or skipped) point.
struct PointRecord {
  std::size_t index = 0;
  std::vector<double> point;
  std::optional<LagrangianReport> report;
  std::string warning;
};

/// |Im| / max(|Re|, scale); zero when all vanish.
inline double imag_ratio(const LagrangianReport& r) {
  const double denom = std::max(std::abs(r.value.real()), r.scale);
  return denom == 0.0 ? (r.imag_magnitude == 0.0 ? 0.0 : std::numeric_limits<double>::infinity())
                      : r.imag_magnitude / denom;
}

template <std::size_t Dim>
std::vector<PointRecord> evaluate_form(const ScenarioSpec& spec, Form form) {
  const CouplingConstants constants{spec.kappa};
  constants.validate();
  const auto frame = make_frame<Dim>(spec);
  const auto points = scenario_points<Dim>(spec);
  static const Epsilon4 eps = epsilon4_from_cross();
  std::optional<ChiTable> chi_l, chi_r;
  if constexpr (Dim == 8) {
    chi_l = build_chi(Chirality::left);
    chi_r = build_chi(Chirality::right);
  }
  std::vector<PointRecord> out;
  for (std::size_t i = 0; i < points.size(); ++i) {
    PointRecord rec;
    rec.index = i;
    rec.point = point_vector(points[i]);
    try {
      const auto geo = geometry_at(frame, points[i]);
      if constexpr (Dim == 4) {
        switch (form) {
          case Form::dd4: rec.report = lagrangian_double_dual_4d(geo, constants); break;
          case Form::vierbein4: rec.report = lagrangian_vierbein_4d(geo, constants, eps); break;
          case Form::eh4: rec.report = lagrangian_eh_report(geo, constants); break;
          case Form::chi8: throw UsageError("chi8 needs an eight-dimensional scenario");
        }
      } else {
        rec.report = lagrangian_chi_dual_8d(geo, constants, *chi_l, *chi_r);
      }
    } catch (const DegenerateFrame& e) {
      rec.warning = std::string("degenerate frame: ") + e.what();
    } catch (const SignatureError& e) {
      rec.warning = std::string("signature: ") + e.what();
    }
    out.push_back(std::move(rec));
  }
  return out;
}

struct LagrangianOptions {
  ScenarioSpec scenario;
  Form form = Form::dd4;
  OutputFormat format = OutputFormat::json;
};

inline int cmd_lagrangian(const LagrangianOptions& opt, std::ostream& out) {
  const auto dim = scenario_dimension(opt.scenario.name);
  if (dim != form_dimension(opt.form)) {
    throw UsageError("form " + to_string(opt.form) + " needs a " +
                     std::to_string(form_dimension(opt.form)) + "-dimensional scenario, '" +
                     opt.scenario.name + "' is " + std::to_string(dim) + "-dimensional");
  }
  const auto records = dim == 4 ? evaluate_form<4>(opt.scenario, opt.form)
                                : evaluate_form<8>(opt.scenario, opt.form);

  std::size_t evaluated = 0, skipped = 0;
  double max_abs = 0.0, max_rel = 0.0, max_imag = 0.0, max_ratio = 0.0;
  for (const auto& r : records) {
    if (!r.report) {
      ++skipped;
      continue;
    }
    ++evaluated;
    max_abs = std::max(max_abs, r.report->abs_delta);
    max_rel = std::max(max_rel, r.report->rel_delta);
    max_imag = std::max(max_imag, r.report->imag_magnitude);
    max_ratio = std::max(max_ratio, imag_ratio(*r.report));
  }

  if (opt.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["tool"] = "octograv";
    j["version"] = kVersion;
    j["command"] = "lagrangian";
    j["form"] = to_string(opt.form);
    j["scenario"] = scenario_json(opt.scenario);
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& r : records) {
      nlohmann::ordered_json p{{"index", r.index}, {"point", r.point}};
      if (r.report) {
        const auto& rep = *r.report;
        p["value"] = complex_json(rep.value);
        p["oracle"] = rep.oracle;
        p["abs_delta"] = rep.abs_delta;
        p["rel_delta"] = rep.rel_delta;
        p["imag_magnitude"] = rep.imag_magnitude;
        p["imag_ratio"] = imag_ratio(rep);
        p["orientation"] = rep.orientation;
        p["scale"] = rep.scale;
      } else {
        p["warning"] = r.warning;
      }
      j["points"].push_back(std::move(p));
    }
    j["summary"] = {{"evaluated", evaluated},   {"skipped", skipped},
                    {"max_abs_delta", max_abs}, {"max_rel_delta", max_rel},
                    {"max_imag_magnitude", max_imag}, {"max_imag_ratio", max_ratio}};
    out << j.dump(2) << "\n";
  } else if (opt.format == OutputFormat::csv) {
    out << "index";
    for (std::size_t k = 0; k < dim; ++k) out << ",x" << k;
    out << ",value_re,value_im,oracle,abs_delta,rel_delta,imag_magnitude,imag_ratio,"
           "orientation,scale,warning\n";
    for (const auto& r : records) {
      out << r.index;
      for (double c : r.point) out << "," << fmt(c);
      if (r.report) {
        const auto& rep = *r.report;
        out << "," << fmt(rep.value.real() + 0.0) << "," << fmt(rep.value.imag() + 0.0) << ","
            << fmt(rep.oracle) << "," << fmt(rep.abs_delta) << "," << fmt(rep.rel_delta) << ","
            << fmt(rep.imag_magnitude) << "," << fmt(imag_ratio(rep)) << "," << rep.orientation
            << "," << fmt(rep.scale) << ",\n";
      } else {
        out << ",,,,,,,,,,\"" << r.warning << "\"\n";
      }
    }
    out << "summary";
    for (std::size_t k = 0; k < dim; ++k) out << ",";
    out << ",,," << ",," << fmt(max_abs) << "," << fmt(max_rel) << "," << fmt(max_imag) << ","
        << fmt(max_ratio) << ",,," << "evaluated=" << evaluated << " skipped=" << skipped
        << "\n";
  } else {
    out << "octograv " << kVersion << " lagrangian form=" << to_string(opt.form)
        << " scenario=" << opt.scenario.name << "\n";
    for (const auto& r : records) {
      out << "#" << r.index << " (";
      for (std::size_t k = 0; k < r.point.size(); ++k) out << (k ? ", " : "") << fmt(r.point[k]);
      out << ")";
      if (r.report) {
        out << " value=" << fmt(r.report->value.real()) << (r.report->value.imag() < 0 ? "-" : "+")
            << fmt(std::abs(r.report->value.imag())) << "i oracle=" << fmt(r.report->oracle)
            << " rel_delta=" << fmt_short(r.report->rel_delta) << "\n";
      } else {
        out << " SKIPPED " << r.warning << "\n";
      }
    }
    out << "summary evaluated=" << evaluated << " skipped=" << skipped
        << " max_rel_delta=" << fmt_short(max_rel) << " max_imag_ratio=" << fmt_short(max_ratio)
        << "\n";
  }
  return skipped > 0 ? kExitDegenerate : kExitPass;
}

// ---------------------------------------------------------------- crosscheck

/// |a - b| / max(|a|, |b|, scale): relative, with the curvature scale as
/// the floor so that Ricci-flat points compare against the curvature size.
inline double scaled_difference(double a, double b, double scale) {
  const double m = std::max({std::abs(a), std::abs(b), scale});
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

struct CrosscheckPoint {
  std::size_t index = 0;
  std::vector<double> point;
  double double_dual = 0.0;
  double vierbein = 0.0;
  double standard = 0.0;
  double scale = 0.0;
  double worst_delta = 0.0;
  std::string warning;
};

struct CrosscheckResult {
  std::vector<CrosscheckPoint> points;
  double tolerance = 0.0;
  double max_delta = 0.0;
  std::size_t worst_index = 0;
  std::size_t skipped = 0;
  bool passed = false;
};

/// Default agreement tolerance: 1e-8 analytic, 1e-4 finite differences.
inline double default_crosscheck_tolerance(const ScenarioSpec& spec) {
  return spec.provider == ProviderKind::analytic ? 1e-8 : 1e-4;
}

/// Evaluates all three 4D forms pointwise. The vierbein form is compared
/// with its orientation sign removed.
inline CrosscheckResult crosscheck(const ScenarioSpec& spec, std::optional<double> tolerance = {}) {
  if (scenario_dimension(spec.name) != 4) {
    throw UsageError("crosscheck needs a four-dimensional scenario");
  }
  const CouplingConstants constants{spec.kappa};
  constants.validate();
  const auto frame = make_frame4(spec);
  const auto pts = scenario_points<4>(spec);
  const Epsilon4 eps = epsilon4_from_cross();
  CrosscheckResult res;
  res.tolerance = tolerance.value_or(default_crosscheck_tolerance(spec));
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CrosscheckPoint p;
    p.index = i;
    p.point = point_vector(pts[i]);
    try {
      const auto geo = geometry_at(frame, pts[i]);
      const auto dd = lagrangian_double_dual_4d(geo, constants);
      const auto vb = lagrangian_vierbein_4d(geo, constants, eps);
      p.double_dual = dd.value.real();
      p.vierbein = vb.orientation * vb.value.real();
      p.standard = lagrangian_standard_eh(geo, constants);
      p.scale = dd.scale;
      p.worst_delta = std::max({scaled_difference(p.double_dual, p.vierbein, p.scale),
                                scaled_difference(p.double_dual, p.standard, p.scale),
                                scaled_difference(p.vierbein, p.standard, p.scale)});
      if (p.worst_delta >= res.max_delta) {
        res.max_delta = p.worst_delta;
        res.worst_index = i;
      }
    } catch (const DegenerateFrame& e) {
      p.warning = e.what();
      ++res.skipped;
    } catch (const SignatureError& e) {
      p.warning = e.what();
      ++res.skipped;
    }
    res.points.push_back(std::move(p));
  }
  res.passed = res.max_delta <= res.tolerance;
  return res;
}

struct CrosscheckOptions {
  ScenarioSpec scenario;
  std::optional<double> tolerance;
  OutputFormat format = OutputFormat::text;
};

inline int cmd_crosscheck(const CrosscheckOptions& opt, std::ostream& out) {
  const auto res = crosscheck(opt.scenario, opt.tolerance);
  if (opt.format == OutputFormat::json) {
    nlohmann::ordered_json j;
    j["tool"] = "octograv";
    j["version"] = kVersion;
    j["command"] = "crosscheck";
    j["scenario"] = scenario_json(opt.scenario);
    j["tolerance"] = res.tolerance;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : res.points) {
      nlohmann::ordered_json jp{{"index", p.index}, {"point", p.point}};
      if (p.warning.empty()) {
        jp["dd4"] = p.double_dual;
        jp["vierbein4"] = p.vierbein;
        jp["eh4"] = p.standard;
        jp["scale"] = p.scale;
        jp["max_delta"] = p.worst_delta;
      } else {
        jp["warning"] = p.warning;
      }
      j["points"].push_back(std::move(jp));
    }
    j["summary"] = {{"max_delta", res.max_delta},
                    {"worst_index", res.worst_index},
                    {"skipped", res.skipped},
                    {"passed", res.passed}};
    out << j.dump(2) << "\n";
  } else if (opt.format == OutputFormat::text) {
    out << "octograv " << kVersion << " crosscheck scenario=" << opt.scenario.name
        << " provider=" << to_string(opt.scenario.provider) << " points=" << res.points.size()
        << "\n";
    const auto& w = res.points.empty() ? CrosscheckPoint{} : res.points[res.worst_index];
    out << "max_delta=" << fmt_short(res.max_delta) << " tolerance=" << fmt_short(res.tolerance)
        << " skipped=" << res.skipped << "\n";
    out << "worst point #" << w.index << " (";
    for (std::size_t k = 0; k < w.point.size(); ++k) out << (k ? ", " : "") << fmt(w.point[k]);
    out << ") dd4=" << fmt(w.double_dual) << " vierbein4=" << fmt(w.vierbein)
        << " eh4=" << fmt(w.standard) << "\n";
    out << "RESULT " << (res.passed ? "pass" : "fail") << "\n";
  } else {
    throw UsageError("crosscheck supports text or json");
  }
  if (!res.passed) return kExitInvariantFailure;
  return res.skipped > 0 ? kExitDegenerate : kExitPass;
}

// ---------------------------------------------------------------- scenario file

/// Reads a JSON scenario file into `spec`. Keys: scenario, parameters,
/// points (count or list), seed, provider, h, h2, kappa.
inline void apply_scenario_json(const nlohmann::json& j, ScenarioSpec& spec) {
  try {
    if (j.contains("scenario")) spec.name = j.at("scenario").get<std::string>();
    if (j.contains("parameters")) {
      for (const auto& [k, v] : j.at("parameters").items()) spec.parameters[k] = v.get<double>();
    }
    if (j.contains("points")) {
      const auto& p = j.at("points");
      if (p.is_array()) {
        spec.explicit_points = p.get<std::vector<std::vector<double>>>();
      } else {
        spec.points = p.get<std::size_t>();
      }
    }
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("provider")) {
      const auto s = j.at("provider").get<std::string>();
      if (s == "analytic") {
        spec.provider = ProviderKind::analytic;
      } else if (s == "fd") {
        spec.provider = ProviderKind::finite_difference;
      } else {
        throw UsageError("unknown provider '" + s + "'");
      }
    }
    if (j.contains("h")) spec.fd.step = j.at("h").get<double>();
    if (j.contains("h2")) spec.fd.second_step = j.at("h2").get<double>();
    if (j.contains("kappa")) spec.kappa = j.at("kappa").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("scenario file: ") + e.what());
  }
}

}  // namespace octograv
