#ifndef WEYLUNC_ANALYSIS_HPP
#define WEYLUNC_ANALYSIS_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "weylunc/families.hpp"
#include "weylunc/fock.hpp"

namespace weylunc::analysis {

using families::BuildOptions;
using families::FamilySpec;

struct ScanRow {
  double param = 0.0;
  double U = 0.0;
  double U_prime = 0.0;
  double U_double_prime = 0.0;
  double V = 0.0;
  double abs_phi = 0.0;
  double abs_phi_tilde = 0.0;
  double abs_omega = 0.0;
  double pi_k = 0.0;
  double nbar = 0.0;
};

inline constexpr std::string_view kCsvHeader = "param,U,Uprime,Udoubleprime,V,absPhi,absPhiTilde,absOmega,Pik,nbar";

enum class Spacing { linear, log };

struct ScanTable {
  FamilySpec family;
  std::string param_name;
  int k = 1;
  double phi = kPi;
  bool applicable = true;
  std::vector<ScanRow> rows;
};

enum class Functional { U, U_prime, U_double_prime, V };
enum class ExtremumKind { min, max };

inline std::string_view to_string(Functional f) {
  switch (f) {
    case Functional::U: return "U";
    case Functional::U_prime: return "Uprime";
    case Functional::U_double_prime: return "Udoubleprime";
    default: return "V";
  }
}

inline std::string_view to_string(ExtremumKind k) { return k == ExtremumKind::min ? "min" : "max"; }

inline double functional_value(const ScanRow& r, Functional f) {
  switch (f) {
    case Functional::U: return r.U;
    case Functional::U_prime: return r.U_prime;
    case Functional::U_double_prime: return r.U_double_prime;
    default: return r.V;
  }
}

/// Copy of `templ` with one named parameter replaced. For gaussian states
/// the pseudo-parameter "ak2" sets a = value / k^2.
inline FamilySpec with_parameter(const FamilySpec& templ, std::string_view name, double value, int k) {
  auto bad = [&]() -> FamilySpec {
    throw DomainError("family '" + families::family_tag(templ) + "' has no parameter '" + std::string(name) + "'");
  };
  FamilySpec out = templ;
  if (auto* s = std::get_if<families::NumberState>(&out)) {
    if (name != "n") return bad();
    s->n = static_cast<int>(std::lround(value));
  } else if (auto* s = std::get_if<families::PhaseCoherent>(&out)) {
    if (name != "xi") return bad();
    s->xi = std::polar(value, std::arg(s->xi));
  } else if (auto* s = std::get_if<families::GaussianNumber>(&out)) {
    if (name == "nbar") s->nbar = value;
    else if (name == "a") s->a = value;
    else if (name == "b") s->b = value;
    else if (name == "ak2") s->a = value / (static_cast<double>(k) * k);
    else return bad();
  } else if (auto* s = std::get_if<families::BesselEigenstate>(&out)) {
    if (name != "lambda") return bad();
    s->lambda = value;
  } else if (auto* s = std::get_if<families::Intermediate>(&out)) {
    if (name == "alpha2") {
      if (value < 0.0 || value > 1.0) throw DomainError("alpha2 must lie in [0, 1]");
      s->alpha = std::sqrt(value);
      s->beta = std::sqrt(1.0 - value);
    } else if (name == "xi") {
      s->xi = std::polar(value, std::arg(s->xi));
    } else if (name == "n") {
      s->n = static_cast<int>(std::lround(value));
    } else {
      return bad();
    }
  }
  return out;
}

inline ScanRow evaluate_row(const FamilySpec& templ, std::string_view name, double value, int k, double phi,
                            const BuildOptions& options = {}) {
  const auto state = families::build(with_parameter(templ, name, value, k), options);
  const auto cs = fock::char_set(state, k, phi);
  const auto rep = fock::report(cs);
  ScanRow r;
  r.param = value;
  r.U = rep.U;
  r.U_prime = *rep.U_prime;
  r.U_double_prime = *rep.U_double_prime;
  r.V = rep.V;
  r.abs_phi = std::abs(cs.phi);
  r.abs_phi_tilde = std::abs(cs.phi_tilde);
  r.abs_omega = std::abs(cs.omega);
  r.pi_k = cs.pi_k;
  r.nbar = fock::mean_photon(state);
  return r;
}

inline std::vector<double> grid(double lo, double hi, int steps, Spacing spacing) {
  std::vector<double> g(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / (steps - 1);
    g[static_cast<std::size_t>(i)] =
        spacing == Spacing::linear ? lo + (hi - lo) * f : std::exp(std::log(lo) + (std::log(hi) - std::log(lo)) * f);
  }
  g.back() = hi;
  return g;
}

/// One row per grid point, each computed independently of the others.
inline ScanTable scan(const FamilySpec& templ, std::string_view name, double lo, double hi, int steps, int k,
                      double phi, Spacing spacing = Spacing::linear, const BuildOptions& options = {}) {
  if (steps < 2) throw DomainError("scan: steps must be >= 2");
  if (!(lo < hi)) throw DomainError("scan: need from < to");
  if (spacing == Spacing::log && !(lo > 0.0)) throw DomainError("scan: log spacing needs from > 0");
  ScanTable table{templ, std::string(name), k, phi, fock::is_stringent(k, phi), {}};
  table.rows.reserve(static_cast<std::size_t>(steps));
  for (double v : grid(lo, hi, steps, spacing)) {
    try {
      table.rows.push_back(evaluate_row(templ, name, v, k, phi, options));
    } catch (const std::exception& e) {
      throw DomainError("scan: " + std::string(name) + " = " + families::detail::fmt17(v) + ": " + e.what());
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Extremum search

struct GoldenResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

/// Golden-section minimization of a unimodal f on [lo, hi] down to an
/// interval width of `tol`.
template <class F>
GoldenResult golden_section_minimize(F&& f, double lo, double hi, double tol, int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > tol && it < max_iterations) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  const double x = 0.5 * (a + b);
  return {x, f(x), it};
}

struct ExtremumResult {
  double param = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::min;
  Functional functional = Functional::U;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  int iterations = 0;
  /// The coarse grid put the extremum at an end of the search interval.
  bool on_boundary = false;
};

inline constexpr int kCoarseGridPoints = 64;
inline constexpr double kParamTolerance = 1e-6;

/// Coarse 64-point scan to bracket the extremum, then golden-section
/// refinement to 1e-6 in the parameter.
inline ExtremumResult find_extremum(const FamilySpec& templ, std::string_view name, Functional functional,
                                    ExtremumKind kind, double lo, double hi, int k, double phi,
                                    const BuildOptions& options = {}) {
  if (!(lo < hi)) throw DomainError("find_extremum: need from < to");
  const double sign = kind == ExtremumKind::min ? 1.0 : -1.0;
  auto objective = [&](double x) {
    return sign * functional_value(evaluate_row(templ, name, x, k, phi, options), functional);
  };

  const auto g = grid(lo, hi, kCoarseGridPoints, Spacing::linear);
  std::size_t best = 0;
  double best_val = objective(g[0]);
  for (std::size_t i = 1; i < g.size(); ++i) {
    const double v = objective(g[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  ExtremumResult res;
  res.kind = kind;
  res.functional = functional;
  res.on_boundary = best == 0 || best + 1 == g.size();
  res.bracket_lo = g[best == 0 ? 0 : best - 1];
  res.bracket_hi = g[std::min(best + 1, g.size() - 1)];

  const GoldenResult gr = golden_section_minimize(objective, res.bracket_lo, res.bracket_hi, kParamTolerance);
  res.iterations = gr.iterations;
  if (gr.fx <= best_val) {
    res.param = gr.x;
  } else {
    res.param = g[best];
  }
  res.value = functional_value(evaluate_row(templ, name, res.param, k, phi, options), functional);
  return res;
}

// ---------------------------------------------------------------------------
// Figure datasets

struct FigureSetup {
  FamilySpec family;
  std::string param;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;
  int k = 1;
  double phi = kPi;
  Spacing spacing = Spacing::linear;
};

/// Sweep definitions behind the four figures.
///
///  1  phase-coherent |xi| in [0.01, 0.995], k = 1, phi = pi
///  2  gaussian b = 0 against a k^2 in [0.05, 20] (log axis), nbar = 400,
///     realized with k = 16 and phi = pi/16 so that a = ak2/256 stays in the
///     Gaussian validity window over the whole axis
///  3  gaussian variance 10 (a = 1/40), nbar = 400, b in [-0.5, 2.5], k = 1
///  4  bessel lambda in [0.1, 3], k = 1, phi = pi
inline FigureSetup figure_setup(int id) {
  switch (id) {
    case 1: return {families::PhaseCoherent{0.5}, "xi", 0.01, 0.995, 198, 1, kPi, Spacing::linear};
    case 2: return {families::GaussianNumber{400.0, 0.005, 0.0}, "ak2", 0.05, 20.0, 128, 16, kPi / 16.0, Spacing::log};
    case 3: return {families::GaussianNumber{400.0, 1.0 / 40.0, 0.0}, "b", -0.5, 2.5, 121, 1, kPi, Spacing::linear};
    case 4: return {families::BesselEigenstate{0.77}, "lambda", 0.1, 3.0, 146, 1, kPi, Spacing::linear};
    default: throw DomainError("figure id must be 1, 2, 3 or 4, got " + std::to_string(id));
  }
}

inline ScanTable figure_dataset(int id, const BuildOptions& options = {}) {
  const FigureSetup f = figure_setup(id);
  return scan(f.family, f.param, f.lo, f.hi, f.steps, f.k, f.phi, f.spacing, options);
}

inline std::size_t argmin_row(const ScanTable& t, Functional f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (functional_value(t.rows[i], f) < functional_value(t.rows[best], f)) best = i;
  return best;
}

inline std::size_t argmax_row(const ScanTable& t, Functional f) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < t.rows.size(); ++i)
    if (functional_value(t.rows[i], f) > functional_value(t.rows[best], f)) best = i;
  return best;
}

}  // namespace weylunc::analysis

#endif  // WEYLUNC_ANALYSIS_HPP
