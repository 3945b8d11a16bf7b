#ifndef WEYLUNC_FOCK_HPP
#define WEYLUNC_FOCK_HPP

// Single field mode on a truncated number basis 0..n_max.
//
// E = sum_n |n><n+1| (Susskind-Glogower) acts by index shifts: E^k moves
// amplitudes down by k and keeps the length, E^{+k} moves them up by k and
// grows the vector by k so nothing is truncated. Dense operators are never
// formed here.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weylunc/numerics.hpp"
#include "weylunc/report.hpp"

namespace weylunc::fock {

using Amplitudes = std::vector<Complex>;

inline constexpr double kNormTolerance = 1e-12;

/// Unit-norm state over photon numbers 0..n_max. `tail_bound` bounds the
/// probability mass the truncation removed (0 for states that are exact in
/// the truncated space).
class FockState {
public:
  explicit FockState(Amplitudes amplitudes, double tail_bound = 0.0)
      : amps_(std::move(amplitudes)), tail_bound_(tail_bound) {
    if (amps_.empty()) throw DomainError("FockState: need at least one amplitude");
    const double n2 = norm_squared(amps_);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
      throw DomainError("FockState: state is not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
  }

  static FockState normalized(Amplitudes amplitudes, double tail_bound = 0.0) {
    const double n2 = norm_squared(amplitudes);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError("FockState: cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : amplitudes) c *= inv;
    return FockState(std::move(amplitudes), tail_bound);
  }

  static FockState number(int n, int n_max) {
    if (n < 0 || n > n_max) throw DomainError("FockState::number: need 0 <= n <= n_max");
    Amplitudes a(static_cast<std::size_t>(n_max) + 1);
    a[static_cast<std::size_t>(n)] = 1.0;
    return FockState(std::move(a));
  }

  int n_max() const { return static_cast<int>(amps_.size()) - 1; }
  std::span<const Complex> amplitudes() const { return amps_; }
  const Amplitudes& vector() const { return amps_; }
  Complex amplitude(int n) const {
    return (n < 0 || n > n_max()) ? Complex{} : amps_[static_cast<std::size_t>(n)];
  }
  double tail_bound() const { return tail_bound_; }

  static double norm_squared(std::span<const Complex> a) {
    double s = 0.0;
    for (const auto& c : a) s += std::norm(c);
    return s;
  }

private:
  Amplitudes amps_;
  double tail_bound_ = 0.0;
};

namespace detail {

inline void check_shift(std::size_t size, int k) {
  if (k < 1) throw DomainError("shift power k must be >= 1, got " + std::to_string(k));
  if (static_cast<std::size_t>(k) > size - 1) {
    throw DomainError("shift power k = " + std::to_string(k) + " exceeds n_max = " + std::to_string(size - 1));
  }
}

/// exp(i phi n), with phi n reduced into [-pi, pi) before the polar call.
inline Complex number_phase(double phi, double n) {
  return std::polar(1.0, std::remainder(phi * n, kTwoPi));
}

}  // namespace detail

/// E^k: c'_n = c_{n+k}; the top k entries become zero.
inline Amplitudes apply_E_pow(std::span<const Complex> c, int k) {
  detail::check_shift(c.size(), k);
  Amplitudes out(c.size());
  for (std::size_t n = 0; n + static_cast<std::size_t>(k) < c.size(); ++n) out[n] = c[n + static_cast<std::size_t>(k)];
  return out;
}

/// E^{+k}: c'_n = c_{n-k}; the bottom k entries are zero and the result has
/// k more entries than the input.
inline Amplitudes apply_E_dag_pow(std::span<const Complex> c, int k) {
  detail::check_shift(c.size(), k);
  Amplitudes out(c.size() + static_cast<std::size_t>(k));
  for (std::size_t n = 0; n < c.size(); ++n) out[n + static_cast<std::size_t>(k)] = c[n];
  return out;
}

inline Amplitudes apply_E_pow(const FockState& s, int k) { return apply_E_pow(s.amplitudes(), k); }
inline Amplitudes apply_E_dag_pow(const FockState& s, int k) { return apply_E_dag_pow(s.amplitudes(), k); }

/// exp(i phi n) applied to a vector.
inline Amplitudes phase_shift(std::span<const Complex> c, double phi) {
  Amplitudes out(c.begin(), c.end());
  for (std::size_t n = 0; n < out.size(); ++n) out[n] *= detail::number_phase(phi, static_cast<double>(n));
  return out;
}

inline FockState apply_phase_shift(const FockState& s, double phi) {
  return FockState(phase_shift(s.amplitudes(), phi), s.tail_bound());
}

/// Orthogonal projection onto fewer than k photons.
inline Amplitudes apply_projector(std::span<const Complex> c, int k) {
  Amplitudes out(c.size());
  for (std::size_t n = 0; n < c.size() && n < static_cast<std::size_t>(k); ++n) out[n] = c[n];
  return out;
}

/// Characteristic functions at (k, phi):
///   phi       = <exp(i phi n)>
///   phi_tilde = <E^{+k}>
///   omega     = <exp(-i phi n) E^{+k}>
///   pi_k      = <Pi_k>, the weight below k photons.
struct FockCharSet {
  Complex phi;
  Complex phi_tilde;
  Complex omega;
  double pi_k = 0.0;
  int k = 1;
  double phase_arg = 0.0;

  Complex theta() const { return omega * phi * std::conj(phi_tilde); }
};

inline FockCharSet char_set(const FockState& s, int k, double phi) {
  const auto c = s.amplitudes();
  detail::check_shift(c.size(), k);
  const auto uk = static_cast<std::size_t>(k);
  FockCharSet out;
  out.k = k;
  out.phase_arg = phi;
  for (std::size_t n = 0; n < c.size(); ++n) {
    const double p = std::norm(c[n]);
    out.phi += p * detail::number_phase(phi, static_cast<double>(n));
    if (n < uk) out.pi_k += p;
    if (n + uk < c.size()) {
      const Complex overlap = std::conj(c[n + uk]) * c[n];
      out.phi_tilde += overlap;
      out.omega += overlap * detail::number_phase(-phi, static_cast<double>(n + uk));
    }
  }
  return out;
}

/// Gram matrix of {psi, exp(i phi n) psi, E^{+k} psi}.
inline Hermitian3 gram_plus(const FockCharSet& cs) {
  return Hermitian3({1.0, 1.0, 1.0}, cs.phi, cs.phi_tilde, cs.omega);
}

/// Gram matrix of {psi, exp(-i phi n) psi, E^k psi}. The Weyl relation
/// E^k exp(i phi n) = exp(i k phi) exp(i phi n) E^k gives the (1,2) entry and
/// E^{+k} E^k = 1 - Pi_k the (2,2) entry.
inline Hermitian3 gram_minus(const FockCharSet& cs) {
  const Complex twist = detail::number_phase(-cs.phase_arg, static_cast<double>(cs.k));
  return Hermitian3({1.0, 1.0, 1.0 - cs.pi_k}, std::conj(cs.phi), std::conj(cs.phi_tilde),
                    twist * std::conj(cs.omega));
}

inline GramDeterminants gram_dets(const FockCharSet& cs) { return {det3(gram_plus(cs)), det3(gram_minus(cs))}; }

inline GramDeterminants gram_dets(const FockState& s, int k, double phi) { return gram_dets(char_set(s, k, phi)); }

/// True when k phi = pi (mod 2 pi) within 1e-9.
inline bool is_stringent(int k, double phi) {
  return std::abs(std::remainder(static_cast<double>(k) * phi - kPi, kTwoPi)) < 1e-9;
}

inline UncertaintyReport report(const FockCharSet& cs) {
  const GramDeterminants dets = gram_dets(cs);
  const double p2 = std::norm(cs.phi);
  const double t2 = std::norm(cs.phi_tilde);

  UncertaintyReport r;
  r.U = p2 + t2;
  r.U_prime = r.U + std::norm(cs.omega);
  r.U_double_prime = *r.U_prime + 0.5 * cs.pi_k * (1.0 - p2);
  r.V = std::sqrt(p2 * t2);
  r.det_plus = dets.det_plus;
  r.det_minus = dets.det_minus;
  r.bound = 1.0;
  r.applicable = is_stringent(cs.k, cs.phase_arg);
  if (r.applicable) {
    r.slack_U = 1.0 - r.U;
    r.slack_U_prime = 1.0 - *r.U_prime;
    r.slack_U_double_prime = 1.0 - *r.U_double_prime;
    r.slack_V = 0.5 - r.V;
  }
  return r;
}

inline UncertaintyReport report(const FockState& s, int k, double phi) { return report(char_set(s, k, phi)); }

/// M equally spaced points covering [-pi, pi).
inline std::vector<double> uniform_phase_grid(int m) {
  if (m < 2) throw DomainError("uniform_phase_grid: need at least 2 points");
  std::vector<double> g(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = -kPi + kTwoPi * i / m;
  return g;
}

/// Canonical phase density P(phi) = |<phi|psi>|^2 = |sum_n c_n e^{-i n phi}|^2 / 2pi.
inline std::vector<double> phase_distribution(const FockState& s, std::span<const double> grid) {
  if (grid.size() < 2) throw DomainError("phase_distribution: need at least 2 grid points");
  const auto c = s.amplitudes();
  std::vector<double> out;
  out.reserve(grid.size());
  for (double phi : grid) {
    // Horner in z = e^{-i phi}.
    const Complex z = std::polar(1.0, -phi);
    Complex acc{};
    for (std::size_t n = c.size(); n-- > 0;) acc = acc * z + c[n];
    out.push_back(std::norm(acc) / kTwoPi);
  }
  return out;
}

inline double mean_photon(const FockState& s) {
  double m = 0.0;
  const auto c = s.amplitudes();
  for (std::size_t n = 1; n < c.size(); ++n) m += static_cast<double>(n) * std::norm(c[n]);
  return m;
}

inline double vector_distance(std::span<const Complex> a, std::span<const Complex> b) {
  const std::size_t n = std::max(a.size(), b.size());
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex x = i < a.size() ? a[i] : Complex{};
    const Complex y = i < b.size() ? b[i] : Complex{};
    s += std::norm(x - y);
  }
  return std::sqrt(s);
}

}  // namespace weylunc::fock

#endif  // WEYLUNC_FOCK_HPP
