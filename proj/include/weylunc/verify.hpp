#ifndef WEYLUNC_VERIFY_HPP
#define WEYLUNC_VERIFY_HPP

// Property suites run by `weyl_uncert verify`. Each check keeps the worst
// value seen and, on the first violation, a description of the offending
// state including its amplitudes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <deque>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "weylunc/families.hpp"
#include "weylunc/fock.hpp"
#include "weylunc/random.hpp"
#include "weylunc/spin.hpp"

namespace weylunc::verify {

struct CheckResult {
  std::string name;
  /// Worst observed value of the checked quantity.
  double worst = 0.0;
  /// Pass iff worst <= limit (or >= limit for lower-bound checks).
  double limit = 0.0;
  bool lower_bound = false;
  long long evaluations = 0;
  bool passed = true;
  std::string failure;

  void observe(double value, const std::function<std::string()>& describe) {
    ++evaluations;
    const bool first = evaluations == 1;
    if (lower_bound ? (first || value < worst) : (first || value > worst)) worst = value;
    const bool ok = lower_bound ? value >= limit : value <= limit;
    if (!ok && passed) {
      passed = false;
      failure = describe();
    }
    if (!std::isfinite(value) && passed) {
      passed = false;
      failure = "non-finite value; " + describe();
    }
  }
};

struct SuiteResult {
  std::string suite;
  std::deque<CheckResult> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
  CheckResult& add(std::string name, double limit, bool lower_bound = false) {
    checks.push_back(CheckResult{std::move(name), 0.0, limit, lower_bound, 0, true, {}});
    return checks.back();
  }
};

inline std::string serialize_amplitudes(std::span<const Complex> a) {
  std::string out = "[";
  char buf[96];
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%s(%.17g,%.17g)", i ? "," : "", a[i].real(), a[i].imag());
    out += buf;
  }
  return out + "]";
}

inline SuiteResult verify_spin(std::uint64_t seed, int samples) {
  SuiteResult res{"spin", {}};
  auto& gram = res.add("gram determinants >= -1e-10", -1e-10, true);
  auto& sum = res.add("U - B(gamma) <= 1e-9", 1e-9);
  auto& prod = res.add("V - B(gamma)/2 <= 1e-9", 1e-9);
  auto& triple = res.add("U' - 1 <= 1e-9 at gamma = pi", 1e-9);
  auto& excursion = res.add("cyclic excursion phase error <= 1e-12", 1e-12);
  auto& weyl = res.add("Weyl defect <= 1e-12 (d <= 64, |k|,|l| <= 2d)", 1e-12);

  std::mt19937_64 rng(seed);
  for (int d : {2, 3, 4, 5, 8, 16}) {
    const spin::SpinSystem sys(d);
    for (int sample = 0; sample < samples; ++sample) {
      const auto psi = random_qudit(sys, rng);
      auto describe = [&](int k, int l) {
        return "d=" + std::to_string(d) + " k=" + std::to_string(k) + " l=" + std::to_string(l) +
               " state=" + serialize_amplitudes(psi.amplitudes());
      };
      // E^k psi and F^l psi for every power, once per state.
      std::vector<std::vector<Complex>> ek(static_cast<std::size_t>(2 * d + 1)), fl(static_cast<std::size_t>(2 * d + 1));
      for (int p = -d; p <= d; ++p) {
        ek[static_cast<std::size_t>(p + d)] = spin::apply_E_pow(psi, p);
        fl[static_cast<std::size_t>(p + d)] = spin::apply_F_pow(psi, p);
      }
      const auto c = psi.amplitudes();
      auto chars = [&](int k, int l) {
        spin::SpinCharSet cs;
        const auto& e = ek[static_cast<std::size_t>(k + d)];
        const auto& f = fl[static_cast<std::size_t>(l + d)];
        for (std::size_t i = 0; i < c.size(); ++i) {
          cs.phi += std::conj(c[i]) * f[i];
          cs.phi_tilde += std::conj(c[i]) * e[i];
          cs.omega += std::conj(f[i]) * e[i];
        }
        return cs;
      };
      for (int k = 1; k <= d; ++k) {
        for (int l = 1; l <= d; ++l) {
          const auto plus = chars(k, l);
          const auto minus = chars(-k, -l);
          const double dp = det3(spin::gram_matrix(plus));
          const double dm = det3(spin::gram_matrix(minus));
          gram.observe(std::min(dp, dm), [&] { return describe(k, l); });
          const double gamma = spin::gamma_angle(sys, k, l);
          const double b = spin::bound_B(gamma);
          const double p2 = std::norm(plus.phi), t2 = std::norm(plus.phi_tilde);
          sum.observe(p2 + t2 - b, [&] { return describe(k, l); });
          prod.observe(std::sqrt(p2 * t2) - 0.5 * b, [&] { return describe(k, l); });
          if (spin::is_gamma_pi(gamma)) {
            triple.observe(p2 + t2 + std::norm(plus.omega) - 1.0, [&] { return describe(k, l); });
          }
        }
      }
      // <E^{+k} F^{+l} E^k F^l> = exp(-i 2pi k l / d) for a few (k, l).
      for (int k : {1, d - 1}) {
        for (int l : {1, 2}) {
          auto v = spin::apply_F_pow(sys, psi.amplitudes(), l);
          v = spin::apply_E_pow(sys, v, k);
          v = spin::apply_F_pow(sys, v, -l);
          v = spin::apply_E_pow(sys, v, -k);
          Complex z{};
          for (std::size_t i = 0; i < c.size(); ++i) z += std::conj(c[i]) * v[i];
          excursion.observe(std::abs(z - unit_phase(-static_cast<long long>(k) * l, d)),
                            [&] { return describe(k, l); });
        }
      }
    }
  }

  for (int d : {2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 32, 64}) {
    const spin::SpinSystem sys(d);
    for (int k = -2 * d; k <= 2 * d; ++k) {
      const CMatrix ek = spin::op_E_pow(sys, k);
      for (int l = -2 * d; l <= 2 * d; ++l) {
        weyl.observe(spin::weyl_defect(sys, ek, k, l), [&] {
          return "d=" + std::to_string(d) + " k=" + std::to_string(k) + " l=" + std::to_string(l);
        });
      }
    }
  }
  return res;
}

inline SuiteResult verify_fock(std::uint64_t seed, int samples) {
  SuiteResult res{"fock", {}};
  auto& gram = res.add("Gram determinants >= -1e-10", -1e-10, true);
  auto& u = res.add("U - 1 <= 1e-9 at k phi = pi", 1e-9);
  auto& up = res.add("U' - 1 <= 1e-9 at k phi = pi", 1e-9);
  auto& upp = res.add("U'' - 1 <= 1e-9 at k phi = pi", 1e-9);
  auto& v = res.add("V - 1/2 <= 1e-9 at k phi = pi", 1e-9);
  auto& weyl = res.add("single-mode Weyl residual <= 1e-12", 1e-12);
  auto& unitary = res.add("one-sided unitarity residual <= 1e-12", 1e-12);
  auto& herm = res.add("|Phi(-phi) - conj Phi(phi)| <= 1e-12", 1e-12);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int n_max : {8, 32, 128}) {
    for (int sample = 0; sample < samples; ++sample) {
      const auto psi = random_fock(n_max, rng);
      auto describe = [&](int k, double phi) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "n_max=%d k=%d phi=%.17g", n_max, k, phi);
        return std::string(buf) + " state=" + serialize_amplitudes(psi.amplitudes());
      };
      for (int k : {1, 2, 4}) {
        const double phi = kPi / k;
        const auto cs = fock::char_set(psi, k, phi);
        const auto rep = fock::report(cs);
        gram.observe(std::min(rep.det_plus, rep.det_minus), [&] { return describe(k, phi); });
        u.observe(rep.U - 1.0, [&] { return describe(k, phi); });
        up.observe(*rep.U_prime - 1.0, [&] { return describe(k, phi); });
        upp.observe(*rep.U_double_prime - 1.0, [&] { return describe(k, phi); });
        v.observe(rep.V - 0.5, [&] { return describe(k, phi); });
      }
      // Determinant positivity also away from k phi = pi.
      const double phi_r = angle(rng);
      for (int k = 1; k <= std::min(8, n_max); ++k) {
        const auto dets = fock::gram_dets(psi, k, phi_r);
        gram.observe(std::min(dets.det_plus, dets.det_minus), [&] { return describe(k, phi_r); });

        const auto lhs = fock::apply_E_pow(fock::phase_shift(psi.amplitudes(), phi_r), k);
        auto rhs = fock::phase_shift(fock::apply_E_pow(psi, k), phi_r);
        const Complex twist = std::polar(1.0, k * phi_r);
        for (auto& x : rhs) x *= twist;
        weyl.observe(fock::vector_distance(lhs, rhs), [&] { return describe(k, phi_r); });

        const auto up_down = fock::apply_E_pow(fock::apply_E_dag_pow(psi, k), k);
        unitary.observe(fock::vector_distance(up_down, psi.amplitudes()), [&] { return describe(k, phi_r); });
        const auto down_up = fock::apply_E_dag_pow(fock::apply_E_pow(psi, k), k);
        auto expected = psi.vector();
        for (int n = 0; n < k; ++n) expected[static_cast<std::size_t>(n)] = 0.0;
        unitary.observe(fock::vector_distance(down_up, expected), [&] { return describe(k, phi_r); });
      }
      const auto a = fock::char_set(psi, 1, phi_r);
      const auto b = fock::char_set(psi, 1, -phi_r);
      herm.observe(std::abs(b.phi - std::conj(a.phi)), [&] { return describe(1, phi_r); });
    }
  }
  return res;
}

inline SuiteResult verify_families(std::uint64_t seed, int samples) {
  using namespace families;
  SuiteResult res{"families", {}};
  auto& pc = res.add("phase-coherent closed forms <= 1e-10", 1e-10);
  auto& pc_eigen = res.add("phase-coherent E psi = xi psi residual <= 1e-6", 1e-6);
  auto& bes = res.add("bessel closed forms <= 1e-8", 1e-8);
  auto& bes_eigen = res.add("bessel (n + i lambda E^+) psi residual <= 1e-8", 1e-8);
  auto& gauss = res.add("gaussian closed forms (relative, floored) <= 1e-2", 1e-2);
  auto& inter = res.add("intermediate asymptotic forms at |xi| = 0.999 <= 5e-2", 5e-2);
  auto& bounds = res.add("family functionals within bounds (max excess) <= 1e-9", 1e-9);

  BuildOptions wide;
  wide.max_n_max = 1 << 15;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto describe = [](const FamilySpec& s, int k, double phi) {
    char buf[64];
    std::snprintf(buf, sizeof buf, " k=%d phi=%.17g", k, phi);
    return to_string(s) + buf;
  };
  auto check_bounds = [&](const FamilySpec& s, const fock::FockState& st, int k) {
    const auto r = fock::report(st, k, kPi / k);
    const double excess = std::max({r.U - 1.0, *r.U_prime - 1.0, *r.U_double_prime - 1.0, r.V - 0.5});
    bounds.observe(excess, [&] { return describe(s, k, kPi / k) + " amplitudes=" + serialize_amplitudes(st.amplitudes()); });
  };

  std::vector<Complex> xis{0.1, 0.49, 0.7, 0.9, std::polar(0.99, kPi / 3)};
  for (int i = 0; i < samples; ++i) xis.push_back(std::polar(0.98 * unit(rng), kTwoPi * unit(rng)));
  for (Complex xi : xis) {
    const FamilySpec s = PhaseCoherent{xi};
    for (int k : {1, 2, 3})
      for (double phi : {kPi, kPi / 2})
        pc.observe(oracle_check(s, k, phi), [&] { return describe(s, k, phi); });
    const auto st = build(s);
    auto e = fock::apply_E_pow(st, 1);
    double r2 = 0.0;
    for (int n = 0; n < st.n_max(); ++n) r2 += std::norm(e[static_cast<std::size_t>(n)] - xi * st.amplitude(n));
    // The top entry of E psi is lost to truncation; its weight is the tail.
    pc_eigen.observe(std::sqrt(r2), [&] { return describe(s, 1, 0.0); });
    check_bounds(s, st, 1);
  }

  std::vector<double> lambdas{0.1, 0.5, 0.77, 0.88, 1.5, 3.0};
  for (int i = 0; i < samples; ++i) lambdas.push_back(0.05 + 4.0 * unit(rng));
  for (double lam : lambdas) {
    const FamilySpec s = BesselEigenstate{lam};
    for (int k : {1, 2, 3})
      for (double phi : {kPi, kPi / 2, 1.0})
        bes.observe(oracle_check(s, k, phi), [&] { return describe(s, k, phi); });
    const auto st = build(s);
    const auto up = fock::apply_E_dag_pow(st, 1);
    double r2 = 0.0;
    for (std::size_t n = 0; n < up.size(); ++n) {
      const Complex lhs = static_cast<double>(n) * st.amplitude(static_cast<int>(n)) + Complex{0.0, lam} * up[n];
      r2 += std::norm(lhs);
    }
    bes_eigen.observe(std::sqrt(r2), [&] { return describe(s, 1, 0.0); });
    check_bounds(s, st, 1);
  }

  for (double a : {0.002, 0.01, 0.05}) {
    const FamilySpec s = GaussianNumber{400.0, a, 0.0};
    gauss.observe(oracle_check(s, 1, kPi), [&] { return describe(s, 1, kPi); });
    gauss.observe(oracle_check(s, 16, kPi / 16), [&] { return describe(s, 16, kPi / 16); });
    check_bounds(s, build(s), 1);
  }
  for (double b : {-0.5, 0.5, kPi / 2, 2.5}) {
    const FamilySpec s = GaussianNumber{400.0, 1.0 / 40.0, b};
    gauss.observe(oracle_check(s, 1, kPi), [&] { return describe(s, 1, kPi); });
    check_bounds(s, build(s), 1);
  }

  for (double alpha2 : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    Intermediate im;
    im.alpha = std::sqrt(alpha2);
    im.beta = std::sqrt(1.0 - alpha2);
    im.n = 3;
    im.xi = 0.999;
    const FamilySpec s = im;
    inter.observe(oracle_check(s, 1, kPi, wide), [&] { return describe(s, 1, kPi); });
    check_bounds(s, build(s, wide), 1);
  }
  return res;
}

}  // namespace weylunc::verify

#endif  // WEYLUNC_VERIFY_HPP
