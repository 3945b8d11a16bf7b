#ifndef WEYLUNC_FAMILIES_HPP
#define WEYLUNC_FAMILIES_HPP

// Single-mode state families with known characteristic functions:
//
//   number         |n>
//   phase-coherent sqrt(1-|xi|^2) sum xi^n |n>          (E|xi> = xi|xi>)
//   gaussian       <n|psi> ~ exp(-(a+ib)(n-nbar)^2)      (lattice-normalized)
//   bessel         I0(2 lambda)^{-1/2} sum (-i lambda)^n/n! |n>
//                  (kernel of n + i lambda E^+)
//   intermediate   alpha|n> + beta|xi>, exactly normalized
//
// Textual form: `tag:key=value,...` with no spaces, e.g.
//   number:n=3   phase-coherent:xi=0.49,arg=0   gaussian:nbar=100,a=0.005,b=0
//   bessel:lambda=0.77   intermediate:alpha2=0.5,n=3,xi=0.999
// Keys left out take the defaults in the structs below.

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

#include "weylunc/fock.hpp"
#include "weylunc/numerics.hpp"

namespace weylunc::families {

struct NumberState {
  int n = 0;
};

struct PhaseCoherent {
  Complex xi{0.5, 0.0};
};

/// a = 1/(4 variance); b couples phase and number.
struct GaussianNumber {
  double nbar = 400.0;
  double a = 0.005;
  double b = 0.0;
};

struct BesselEigenstate {
  double lambda = 0.77;
};

struct Intermediate {
  Complex alpha{std::sqrt(0.5), 0.0};
  Complex beta{std::sqrt(0.5), 0.0};
  int n = 3;
  Complex xi{0.999, 0.0};
};

using FamilySpec = std::variant<NumberState, PhaseCoherent, GaussianNumber, BesselEigenstate, Intermediate>;

inline constexpr double kMaxXi = 1.0 - 1e-6;
inline constexpr double kGaussianMaxA = 0.1;
inline constexpr double kIntermediateAsymptoticXi = 0.99;

inline std::string family_tag(const FamilySpec& spec) {
  switch (spec.index()) {
    case 0: return "number";
    case 1: return "phase-coherent";
    case 2: return "gaussian";
    case 3: return "bessel";
    default: return "intermediate";
  }
}

namespace detail {

inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace detail

inline std::string to_string(const FamilySpec& spec) {
  using detail::fmt17;
  return std::visit(
      detail::overloaded{
          [](const NumberState& s) { return "number:n=" + std::to_string(s.n); },
          [](const PhaseCoherent& s) {
            std::string out = "phase-coherent:xi=" + fmt17(std::abs(s.xi));
            if (std::arg(s.xi) != 0.0) out += ",arg=" + fmt17(std::arg(s.xi));
            return out;
          },
          [](const GaussianNumber& s) {
            return "gaussian:nbar=" + fmt17(s.nbar) + ",a=" + fmt17(s.a) + ",b=" + fmt17(s.b);
          },
          [](const BesselEigenstate& s) { return "bessel:lambda=" + fmt17(s.lambda); },
          [](const Intermediate& s) {
            std::string out = "intermediate:alpha2=" + fmt17(std::norm(s.alpha)) + ",n=" + std::to_string(s.n) +
                              ",xi=" + fmt17(std::abs(s.xi));
            if (std::arg(s.xi) != 0.0) out += ",arg=" + fmt17(std::arg(s.xi));
            return out;
          },
      },
      spec);
}

// ---------------------------------------------------------------------------
// Parsing

/// Parse failure; `position` is the 0-based offset of the offending text.
class FamilyParseError : public std::invalid_argument {
public:
  FamilyParseError(const std::string& what, std::size_t position)
      : std::invalid_argument(what + " (at position " + std::to_string(position) + ")"), position_(position) {}
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

namespace detail {

struct KeyValue {
  std::string_view key;
  double value = 0.0;
  std::size_t key_pos = 0;
};

inline double parse_number(std::string_view text, std::size_t pos) {
  if (text.empty()) throw FamilyParseError("missing value", pos);
  // std::from_chars for double is available in libstdc++ 11.
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (*first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    throw FamilyParseError("invalid number '" + std::string(text) + "'", pos);
  }
  return v;
}

inline int as_integer(const KeyValue& kv) {
  if (kv.value != std::floor(kv.value) || std::abs(kv.value) > 1e9) {
    throw FamilyParseError("key '" + std::string(kv.key) + "' needs an integer value", kv.key_pos);
  }
  return static_cast<int>(kv.value);
}

}  // namespace detail

inline FamilySpec parse_family(std::string_view text) {
  using detail::KeyValue;
  const std::size_t colon = text.find(':');
  const std::string_view tag = text.substr(0, colon);

  std::vector<KeyValue> kvs;
  if (colon != std::string_view::npos) {
    std::size_t pos = colon + 1;
    if (pos >= text.size()) throw FamilyParseError("expected key=value after ':'", pos);
    while (pos <= text.size()) {
      std::size_t end = text.find(',', pos);
      if (end == std::string_view::npos) end = text.size();
      const std::string_view item = text.substr(pos, end - pos);
      const std::size_t eq = item.find('=');
      if (item.empty() || eq == std::string_view::npos || eq == 0) {
        throw FamilyParseError("expected key=value", pos);
      }
      kvs.push_back({item.substr(0, eq), detail::parse_number(item.substr(eq + 1), pos + eq + 1), pos});
      if (end == text.size()) break;
      pos = end + 1;
    }
  }

  auto reject_unknown = [&](std::initializer_list<std::string_view> allowed) {
    for (const auto& kv : kvs) {
      bool ok = false;
      for (auto a : allowed) ok = ok || kv.key == a;
      if (!ok) {
        throw FamilyParseError("unknown key '" + std::string(kv.key) + "' for family '" + std::string(tag) + "'",
                               kv.key_pos);
      }
    }
  };

  if (tag == "number") {
    reject_unknown({"n"});
    NumberState s;
    for (const auto& kv : kvs) s.n = detail::as_integer(kv);
    return s;
  }
  if (tag == "phase-coherent") {
    reject_unknown({"xi", "arg"});
    double r = std::abs(PhaseCoherent{}.xi), arg = 0.0;
    for (const auto& kv : kvs) (kv.key == "xi" ? r : arg) = kv.value;
    return PhaseCoherent{std::polar(r, arg)};
  }
  if (tag == "gaussian") {
    reject_unknown({"nbar", "a", "b"});
    GaussianNumber s;
    for (const auto& kv : kvs) {
      if (kv.key == "nbar") s.nbar = kv.value;
      else if (kv.key == "a") s.a = kv.value;
      else s.b = kv.value;
    }
    return s;
  }
  if (tag == "bessel") {
    reject_unknown({"lambda"});
    BesselEigenstate s;
    for (const auto& kv : kvs) s.lambda = kv.value;
    return s;
  }
  if (tag == "intermediate") {
    reject_unknown({"alpha2", "n", "xi", "arg"});
    Intermediate s;
    double alpha2 = std::norm(s.alpha), r = std::abs(s.xi), arg = 0.0;
    for (const auto& kv : kvs) {
      if (kv.key == "alpha2") {
        alpha2 = kv.value;
        if (alpha2 < 0.0 || alpha2 > 1.0) throw FamilyParseError("alpha2 must lie in [0, 1]", kv.key_pos);
      } else if (kv.key == "n") {
        s.n = detail::as_integer(kv);
      } else if (kv.key == "xi") {
        r = kv.value;
      } else {
        arg = kv.value;
      }
    }
    s.alpha = std::sqrt(alpha2);
    s.beta = std::sqrt(1.0 - alpha2);
    s.xi = std::polar(r, arg);
    return s;
  }
  throw FamilyParseError("unknown family '" + std::string(tag) +
                             "' (expected number, phase-coherent, gaussian, bessel or intermediate)",
                         0);
}

// ---------------------------------------------------------------------------
// Validation and construction

inline void validate(const FamilySpec& spec) {
  std::visit(detail::overloaded{
                 [](const NumberState& s) {
                   if (s.n < 0) throw DomainError("number: n must be >= 0");
                 },
                 [](const PhaseCoherent& s) {
                   if (!(std::abs(s.xi) <= kMaxXi)) throw DomainError("phase-coherent: |xi| must be <= 1 - 1e-6");
                 },
                 [](const GaussianNumber& s) {
                   if (!(s.a > 0.0 && s.a <= kGaussianMaxA)) throw DomainError("gaussian: need 0 < a <= 0.1");
                   if (!(s.nbar >= 5.0 / std::sqrt(s.a))) {
                     throw DomainError("gaussian: need nbar >= 5/sqrt(a) = " + detail::fmt17(5.0 / std::sqrt(s.a)));
                   }
                   if (!std::isfinite(s.b)) throw DomainError("gaussian: b must be finite");
                 },
                 [](const BesselEigenstate& s) {
                   if (!(s.lambda > 0.0 && s.lambda <= 0.5 * kBesselMaxArg)) {
                     throw DomainError("bessel: need 0 < lambda <= 50");
                   }
                 },
                 [](const Intermediate& s) {
                   if (s.n <= 0) throw DomainError("intermediate: n must be > 0");
                   if (!(std::abs(std::norm(s.alpha) + std::norm(s.beta) - 1.0) <= 1e-6)) {
                     throw DomainError("intermediate: need |alpha|^2 + |beta|^2 = 1");
                   }
                   if (!(std::abs(s.xi) <= kMaxXi)) throw DomainError("intermediate: |xi| must be <= 1 - 1e-6");
                 },
             },
             spec);
}

/// Truncation policy for family constructors.
struct BuildOptions {
  int max_n_max = 4096;
  double tail_target = 1e-14;
  /// Every state gets at least this many levels so that shift powers used
  /// by the figures fit.
  int min_n_max = 64;

  /// Defaults, with max_n_max taken from WEYL_UNCERT_MAX_NMAX when set.
  static BuildOptions from_environment() {
    BuildOptions o;
    if (const char* v = std::getenv("WEYL_UNCERT_MAX_NMAX"); v != nullptr && *v != '\0') {
      char* end = nullptr;
      const long n = std::strtol(v, &end, 10);
      if (end == v || *end != '\0' || n < 1 || n > 100'000'000) {
        throw DomainError(std::string("WEYL_UNCERT_MAX_NMAX must be a positive integer, got '") + v + "'");
      }
      o.max_n_max = static_cast<int>(n);
    }
    return o;
  }
};

namespace detail {

inline void check_cap(long long needed, const BuildOptions& o, const std::string& what) {
  if (needed > o.max_n_max) {
    throw DomainError(what + ": truncation needs n_max = " + std::to_string(needed) + " > cap " +
                      std::to_string(o.max_n_max) + " (raise WEYL_UNCERT_MAX_NMAX)");
  }
}

/// Smallest N with t^{N+1} < target, i.e. the geometric tail above N.
inline long long geometric_cutoff(double t, double target) {
  if (t <= 0.0) return 0;
  const double need = std::log(target) / std::log(t);
  long long n1 = static_cast<long long>(std::ceil(need));
  if (n1 < 1) n1 = 1;
  while (n1 > 1 && std::pow(t, static_cast<double>(n1 - 1)) < target) --n1;
  while (std::pow(t, static_cast<double>(n1)) >= target) ++n1;
  return n1 - 1;
}

inline fock::Amplitudes phase_coherent_amplitudes(Complex xi, long long n_top) {
  fock::Amplitudes a(static_cast<std::size_t>(n_top) + 1);
  Complex c = std::sqrt(1.0 - std::norm(xi));
  for (auto& v : a) {
    v = c;
    c *= xi;
  }
  return a;
}

inline fock::FockState build_number(const NumberState& s, const BuildOptions& o) {
  const long long n_max = std::max<long long>(s.n, o.min_n_max);
  check_cap(n_max, o, "number");
  return fock::FockState::number(s.n, static_cast<int>(n_max));
}

inline fock::FockState build_phase_coherent(const PhaseCoherent& s, const BuildOptions& o) {
  const double t = std::norm(s.xi);
  const long long cut = geometric_cutoff(t, o.tail_target);
  check_cap(cut, o, "phase-coherent");
  const long long n_max = std::max<long long>(cut, o.min_n_max);
  auto a = phase_coherent_amplitudes(s.xi, n_max);
  const double tail = std::pow(t, static_cast<double>(n_max + 1));
  return fock::FockState(std::move(a), tail);
}

inline fock::FockState build_gaussian(const GaussianNumber& s, const BuildOptions& o) {
  // Weight exp(-2a x^2), x = n - nbar; cut where the weight is ~1e-4 of target.
  const double x_cut = std::sqrt((std::log(1.0 / o.tail_target) + 10.0) / (2.0 * s.a));
  const long long cut = static_cast<long long>(std::ceil(s.nbar + x_cut));
  check_cap(cut, o, "gaussian");
  const long long n_max = std::max<long long>(cut, o.min_n_max);

  fock::Amplitudes amps(static_cast<std::size_t>(n_max) + 1);
  double kept = 0.0;
  for (long long n = 0; n <= n_max; ++n) {
    const double x = static_cast<double>(n) - s.nbar;
    const Complex v = std::exp(Complex{-s.a * x * x, -s.b * x * x});
    amps[static_cast<std::size_t>(n)] = v;
    kept += std::norm(v);
  }
  // Mass above n_max: weights decrease monotonically past nbar, and the ratio
  // of successive weights only shrinks, so the last computed ratio bounds
  // the remainder geometrically.
  double tail = 0.0;
  double prev = std::exp(-2.0 * s.a * std::pow(static_cast<double>(n_max) - s.nbar, 2));
  for (long long n = n_max + 1;; ++n) {
    const double x = static_cast<double>(n) - s.nbar;
    const double w = std::exp(-2.0 * s.a * x * x);
    tail += w;
    const double ratio = prev > 0.0 ? w / prev : 0.0;
    prev = w;
    if (w == 0.0 || (ratio < 1.0 && w / (1.0 - ratio) < 1e-6 * tail)) {
      if (ratio > 0.0 && ratio < 1.0) tail += w * ratio / (1.0 - ratio);
      break;
    }
  }
  return fock::FockState::normalized(std::move(amps), tail / kept);
}

inline fock::FockState build_bessel(const BesselEigenstate& s, const BuildOptions& o) {
  const double lam = s.lambda;
  const double i0 = std::real(bessel_I(0, 2.0 * lam));
  // |c_n|^2 I0 = lambda^{2n}/(n!)^2; stop once the geometric bound on the
  // remaining weight drops below the target.
  double w = 1.0;
  long long n = 0;
  for (;; ++n) {
    const double next = w * lam * lam / static_cast<double>((n + 1) * (n + 1));
    const double r = lam * lam / static_cast<double>((n + 2) * (n + 2));
    if (r < 1.0 && next / (1.0 - r) / i0 < o.tail_target) break;
    w = next;
    check_cap(n + 1, o, "bessel");
  }
  const long long n_max = std::max<long long>(n, o.min_n_max);
  check_cap(n_max, o, "bessel");

  fock::Amplitudes amps(static_cast<std::size_t>(n_max) + 1);
  Complex c = 1.0 / std::sqrt(i0);
  double kept = 0.0;
  for (long long m = 0; m <= n_max; ++m) {
    amps[static_cast<std::size_t>(m)] = c;
    kept += std::norm(c);
    c *= Complex{0.0, -lam} / static_cast<double>(m + 1);
  }
  return fock::FockState(std::move(amps), std::max(0.0, 1.0 - kept));
}

inline fock::FockState build_intermediate(const Intermediate& s, const BuildOptions& o) {
  const double t = std::norm(s.xi);
  const long long cut = geometric_cutoff(t, o.tail_target);
  check_cap(cut, o, "intermediate");
  const long long n_max = std::max<long long>({cut, static_cast<long long>(s.n), static_cast<long long>(o.min_n_max)});
  check_cap(n_max, o, "intermediate");

  auto amps = phase_coherent_amplitudes(s.xi, n_max);
  for (auto& v : amps) v *= s.beta;
  amps[static_cast<std::size_t>(s.n)] += s.alpha;
  // <n|xi> = sqrt(1-|xi|^2) xi^n
  const Complex overlap = std::sqrt(1.0 - t) * std::pow(s.xi, s.n);
  const double norm2 = std::norm(s.alpha) + std::norm(s.beta) + 2.0 * std::real(std::conj(s.alpha) * s.beta * overlap);
  if (!(norm2 > 0.0)) throw DomainError("intermediate: superposition has zero norm");
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& v : amps) v *= inv;
  const double tail = std::norm(s.beta) * std::pow(t, static_cast<double>(n_max + 1)) / norm2;
  return fock::FockState(std::move(amps), tail);
}

}  // namespace detail

/// Normalized truncated state for `spec`; the truncation keeps the removed
/// mass below options.tail_target.
inline fock::FockState build(const FamilySpec& spec, const BuildOptions& options = {}) {
  validate(spec);
  return std::visit(detail::overloaded{
                        [&](const NumberState& s) { return detail::build_number(s, options); },
                        [&](const PhaseCoherent& s) { return detail::build_phase_coherent(s, options); },
                        [&](const GaussianNumber& s) { return detail::build_gaussian(s, options); },
                        [&](const BesselEigenstate& s) { return detail::build_bessel(s, options); },
                        [&](const Intermediate& s) { return detail::build_intermediate(s, options); },
                    },
                    spec);
}

// ---------------------------------------------------------------------------
// Closed forms

/// Closed-form characteristic functions, or the reason none applies.
/// With `magnitudes_only` the complex fields hold |.| as real numbers
/// (the Gaussian forms fix only the moduli).
struct ClosedForm {
  std::optional<fock::FockCharSet> values;
  bool magnitudes_only = false;
  std::string unavailable_reason;

  bool available() const { return values.has_value(); }
};

namespace detail {

inline ClosedForm unavailable(std::string why) {
  ClosedForm cf;
  cf.unavailable_reason = std::move(why);
  return cf;
}

inline fock::FockCharSet blank(int k, double phi) {
  fock::FockCharSet cs;
  cs.k = k;
  cs.phase_arg = phi;
  return cs;
}

}  // namespace detail

/// Squared moduli of the gaussian characteristic functions with k treated
/// as a continuous variable. On integer n only the angles mod 2 pi matter, so
/// each angle is taken at its nearest image.
struct GaussianModel {
  double abs_phi2 = 0.0;
  double abs_phi_tilde2 = 0.0;
  double abs_omega2 = 0.0;
};

inline GaussianModel gaussian_model(const GaussianNumber& s, double k, double phi) {
  const double wp = std::remainder(phi, kTwoPi);
  const double wt = std::remainder(2.0 * s.b * k, kTwoPi);
  const double wo = std::remainder(2.0 * s.b * k - phi, kTwoPi);
  return {std::exp(-wp * wp / (4.0 * s.a)), std::exp(-s.a * k * k - wt * wt / (4.0 * s.a)),
          std::exp(-s.a * k * k - wo * wo / (4.0 * s.a))};
}

inline ClosedForm closed_form_char(const FamilySpec& spec, int k, double phi) {
  if (k < 1) return detail::unavailable("k must be >= 1");
  try {
    validate(spec);
  } catch (const DomainError& e) {
    return detail::unavailable(e.what());
  }
  const Complex i{0.0, 1.0};
  return std::visit(
      detail::overloaded{
          [&](const NumberState& s) {
            auto cs = detail::blank(k, phi);
            cs.phi = std::polar(1.0, phi * s.n);
            cs.pi_k = s.n < k ? 1.0 : 0.0;
            return ClosedForm{cs, false, {}};
          },
          [&](const PhaseCoherent& s) {
            const double t = std::norm(s.xi);
            auto cs = detail::blank(k, phi);
            cs.phi = (1.0 - t) / (1.0 - t * std::exp(i * phi));
            cs.phi_tilde = std::pow(std::conj(s.xi), k);
            cs.pi_k = 1.0 - std::pow(t, k);
            cs.omega = std::exp(-i * (k * phi)) * cs.phi_tilde * std::conj(cs.phi);
            return ClosedForm{cs, false, {}};
          },
          [&](const GaussianNumber& s) {
            if (k > std::sqrt(s.nbar)) return detail::unavailable("gaussian: closed forms need k <= sqrt(nbar)");
            auto cs = detail::blank(k, phi);
            const GaussianModel m = gaussian_model(s, k, phi);
            cs.phi = std::sqrt(m.abs_phi2);
            cs.phi_tilde = std::sqrt(m.abs_phi_tilde2);
            cs.omega = std::sqrt(m.abs_omega2);
            cs.pi_k = 0.0;
            return ClosedForm{cs, true, {}};
          },
          [&](const BesselEigenstate& s) {
            const double lam = s.lambda;
            const double i0 = std::real(bessel_I(0, 2.0 * lam));
            const Complex z = 2.0 * lam * std::exp(i * (0.5 * phi));
            auto cs = detail::blank(k, phi);
            cs.phi = bessel_I(0, z) / i0;
            cs.phi_tilde = std::pow(i, k) * bessel_I(k, 2.0 * lam) / i0;
            cs.omega = std::pow(i, k) * std::exp(-i * (0.5 * k * phi)) * bessel_I(k, std::conj(z)) / i0;
            double w = 1.0, pi = 0.0;
            for (int n = 0; n < k; ++n) {
              pi += w;
              w *= lam * lam / static_cast<double>((n + 1) * (n + 1));
            }
            cs.pi_k = pi / i0;
            return ClosedForm{cs, false, {}};
          },
          [&](const Intermediate& s) {
            if (std::abs(s.xi) < kIntermediateAsymptoticXi) {
              return detail::unavailable("intermediate: closed forms need |xi| >= 0.99");
            }
            auto cs = detail::blank(k, phi);
            cs.phi = std::norm(s.alpha) * std::polar(1.0, phi * s.n);
            cs.phi_tilde = std::norm(s.beta) * std::pow(std::conj(s.xi), k);
            cs.omega = 0.0;
            cs.pi_k = 0.0;
            return ClosedForm{cs, false, {}};
          },
      },
      spec);
}

/// Agreement threshold for oracle_check per family.
inline double oracle_threshold(const FamilySpec& spec) {
  switch (spec.index()) {
    case 0: return 1e-12;
    case 1: return 1e-10;
    case 2: return 1e-2;
    case 3: return 1e-8;
    default: return 5e-2;
  }
}

/// Floor on the denominator of the Gaussian relative comparison.
inline constexpr double kGaussianRelativeFloor = 1e-6;

/// Largest deviation between the numeric characteristic functions of
/// build(spec) and the closed forms. Exact families compare the complex
/// values and Pi_k absolutely. Gaussian states compare the squared moduli
/// relatively (denominator floored at 1e-6) and Pi_k absolutely.
inline double oracle_check(const FamilySpec& spec, int k, double phi, const BuildOptions& options = {}) {
  const ClosedForm cf = closed_form_char(spec, k, phi);
  if (!cf.available()) throw DomainError("oracle_check: closed form unavailable: " + cf.unavailable_reason);
  const fock::FockCharSet num = fock::char_set(build(spec, options), k, phi);
  const fock::FockCharSet& ref = *cf.values;
  double dev = std::abs(num.pi_k - ref.pi_k);
  if (cf.magnitudes_only) {
    auto rel = [](double x, double y) { return std::abs(x - y) / std::max(std::abs(y), kGaussianRelativeFloor); };
    dev = std::max({dev, rel(std::norm(num.phi), std::norm(ref.phi)),
                    rel(std::norm(num.phi_tilde), std::norm(ref.phi_tilde)),
                    rel(std::norm(num.omega), std::norm(ref.omega))});
  } else {
    dev = std::max({dev, std::abs(num.phi - ref.phi), std::abs(num.phi_tilde - ref.phi_tilde),
                    std::abs(num.omega - ref.omega)});
  }
  return dev;
}

}  // namespace weylunc::families

#endif  // WEYLUNC_FAMILIES_HPP
