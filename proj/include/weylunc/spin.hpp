#ifndef WEYLUNC_SPIN_HPP
#define WEYLUNC_SPIN_HPP

// Finite-dimensional Weyl pair for a spin j system (dimension d = 2j+1).
//
// Basis convention: |m>, m = -j..j, stored at index m + j (ascending).
// F = exp(i 2pi j3 / d) is diagonal; E is diagonal in the phase basis
//   |mt> = d^{-1/2} sum_m exp(-i 2pi m mt / d) |m>,   E|mt> = exp(i 2pi mt / d)|mt>.
// Products m*mt can be quarter-integers, so phases are formed from the
// doubled labels 2m, 2mt and reduced modulo 4d in integer arithmetic.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "weylunc/numerics.hpp"
#include "weylunc/report.hpp"

namespace weylunc::spin {

class SpinSystem {
public:
  explicit SpinSystem(int dim) : dim_(dim) {
    if (dim < 2) throw DomainError("SpinSystem: dimension must be >= 2, got " + std::to_string(dim));
  }

  int dim() const { return dim_; }
  double j() const { return 0.5 * (dim_ - 1); }
  /// 2m for the basis index i.
  long long twice_m(int index) const { return 2LL * index - (dim_ - 1); }
  double m(int index) const { return 0.5 * static_cast<double>(twice_m(index)); }

  friend bool operator==(const SpinSystem&, const SpinSystem&) = default;

private:
  int dim_;
};

inline constexpr double kNormTolerance = 1e-12;

/// Pure state, unit norm within 1e-12.
class QuditState {
public:
  QuditState(SpinSystem system, std::vector<Complex> amplitudes)
      : system_(system), amps_(std::move(amplitudes)) {
    if (static_cast<int>(amps_.size()) != system_.dim()) {
      throw DomainError("QuditState: expected " + std::to_string(system_.dim()) + " amplitudes, got " +
                        std::to_string(amps_.size()));
    }
    double n2 = 0.0;
    for (const auto& c : amps_) n2 += std::norm(c);
    if (!(std::abs(n2 - 1.0) <= kNormTolerance)) {
      throw DomainError("QuditState: state is not normalized (norm^2 = " + std::to_string(n2) + ")");
    }
  }

  /// Divides by the norm first; rejects the zero vector.
  static QuditState normalized(SpinSystem system, std::vector<Complex> amplitudes) {
    double n2 = 0.0;
    for (const auto& c : amplitudes) n2 += std::norm(c);
    if (!(n2 > 0.0) || !std::isfinite(n2)) throw DomainError("QuditState: cannot normalize a zero vector");
    const double inv = 1.0 / std::sqrt(n2);
    for (auto& c : amplitudes) c *= inv;
    return QuditState(system, std::move(amplitudes));
  }

  const SpinSystem& system() const { return system_; }
  int dim() const { return system_.dim(); }
  std::span<const Complex> amplitudes() const { return amps_; }
  const std::vector<Complex>& vector() const { return amps_; }

private:
  SpinSystem system_;
  std::vector<Complex> amps_;
};

/// Characteristic functions for one (k, l):
///   phi = <F^l>, phi_tilde = <E^k>, omega = <F^{+l} E^k>.
struct SpinCharSet {
  Complex phi;
  Complex phi_tilde;
  Complex omega;
  int k = 1;
  int ell = 1;

  /// Theta = Omega Phi PhiTilde^*
  Complex theta() const { return omega * phi * std::conj(phi_tilde); }
};

namespace detail {

/// <m|mt> = d^{-1/2} exp(-i 2pi m mt / d), both labels passed doubled.
inline Complex basis_overlap(long long twice_m, long long twice_mt, int d) {
  return unit_phase(-twice_m * twice_mt, 4LL * d) / std::sqrt(static_cast<double>(d));
}

inline void check_label(const SpinSystem& s, long long twice_label, const char* what) {
  const long long lo = -(s.dim() - 1);
  const long long hi = s.dim() - 1;
  if (twice_label < lo || twice_label > hi || ((twice_label - lo) % 2) != 0) {
    throw DomainError(std::string(what) + " = " + std::to_string(0.5 * static_cast<double>(twice_label)) +
                      " is not in -j..j for dimension " + std::to_string(s.dim()));
  }
}

}  // namespace detail

/// Phase state |mt> by its 0-based index (mt = index - j).
inline QuditState phase_state_at(const SpinSystem& s, int index) {
  if (index < 0 || index >= s.dim()) {
    throw DomainError("phase_state: index " + std::to_string(index) + " out of range for dimension " +
                      std::to_string(s.dim()));
  }
  const long long tmt = s.twice_m(index);
  std::vector<Complex> amps(static_cast<std::size_t>(s.dim()));
  for (int i = 0; i < s.dim(); ++i) amps[static_cast<std::size_t>(i)] = detail::basis_overlap(s.twice_m(i), tmt, s.dim());
  return QuditState::normalized(s, std::move(amps));
}

/// Phase state |mt>, mt in -j..j (half-integer when d is even).
inline QuditState phase_state(const SpinSystem& s, double m_tilde) {
  const double twice = 2.0 * m_tilde;
  const long long t = std::llround(twice);
  if (std::abs(twice - static_cast<double>(t)) > 1e-9) {
    throw DomainError("phase_state: m_tilde must be an integer or half-integer");
  }
  detail::check_label(s, t, "m_tilde");
  return phase_state_at(s, static_cast<int>((t + s.dim() - 1) / 2));
}

/// Eigenstate |m> of j3 by index.
inline QuditState number_state_at(const SpinSystem& s, int index) {
  if (index < 0 || index >= s.dim()) throw DomainError("number_state: index out of range");
  std::vector<Complex> amps(static_cast<std::size_t>(s.dim()));
  amps[static_cast<std::size_t>(index)] = 1.0;
  return QuditState(s, std::move(amps));
}

inline CMatrix op_F(const SpinSystem& s) {
  CMatrix f(s.dim());
  for (int i = 0; i < s.dim(); ++i) f(i, i) = unit_phase(s.twice_m(i), 2LL * s.dim());
  return f;
}

/// E^k from the spectral sum over phase states; k may be any integer.
inline CMatrix op_E_pow(const SpinSystem& s, int k) {
  const int d = s.dim();
  const auto ud = static_cast<std::size_t>(d);
  std::vector<Complex> overlap(ud * ud);
  for (int a = 0; a < d; ++a)
    for (int t = 0; t < d; ++t) overlap[static_cast<std::size_t>(a) * ud + static_cast<std::size_t>(t)] =
        detail::basis_overlap(s.twice_m(a), s.twice_m(t), d);
  CMatrix e(d);
  for (int t = 0; t < d; ++t) {
    const Complex eig = unit_phase(static_cast<long long>(k) * s.twice_m(t), 2LL * d);
    for (int a = 0; a < d; ++a) {
      const Complex ua = eig * overlap[static_cast<std::size_t>(a) * ud + static_cast<std::size_t>(t)];
      for (int b = 0; b < d; ++b)
        e(a, b) += ua * std::conj(overlap[static_cast<std::size_t>(b) * ud + static_cast<std::size_t>(t)]);
    }
  }
  return e;
}

/// E = sum_mt exp(i 2pi mt/d) |mt><mt|, assembled from the phase states.
inline CMatrix op_E(const SpinSystem& s) { return op_E_pow(s, 1); }

/// For d = 2: the operators after the relabelling F -> iF, E -> iE and the
/// basis change diag(1, -i), which brings them to F = sigma_z, E = sigma_x
/// (index 0 is the sigma_z = +1 state).
inline std::pair<CMatrix, CMatrix> pauli_frame(const SpinSystem& s) {
  if (s.dim() != 2) throw DomainError("pauli_frame: only defined for dimension 2");
  CMatrix u(2);
  u(0, 0) = 1.0;
  u(1, 1) = Complex{0.0, -1.0};
  const Complex i{0.0, 1.0};
  const CMatrix f = u * (i * op_F(s)) * u.adjoint();
  const CMatrix e = u * (i * op_E(s)) * u.adjoint();
  return {f, e};
}

/// Weyl defect given a precomputed E^k; F^l is diagonal so both products
/// are row or column scalings.
inline double weyl_defect(const SpinSystem& s, const CMatrix& e_pow_k, int k, int ell) {
  const int d = s.dim();
  const Complex phase = unit_phase(-static_cast<long long>(k) * ell, d);
  std::vector<Complex> f(static_cast<std::size_t>(d));
  for (int a = 0; a < d; ++a) f[static_cast<std::size_t>(a)] = unit_phase(static_cast<long long>(ell) * s.twice_m(a), 2LL * d);
  double worst = 0.0;
  for (int a = 0; a < d; ++a) {
    const Complex fa = phase * f[static_cast<std::size_t>(a)];
    for (int b = 0; b < d; ++b) {
      worst = std::max(worst, std::norm(e_pow_k(a, b)) * std::norm(f[static_cast<std::size_t>(b)] - fa));
    }
  }
  return std::sqrt(worst);
}

/// max |(E^k F^l - exp(-i 2pi k l/d) F^l E^k)_{ab}|
inline double weyl_defect(const SpinSystem& s, int k, int ell) { return weyl_defect(s, op_E_pow(s, k), k, ell); }

/// gamma = 2 pi k l / d reduced to (-pi, pi].
inline double gamma_angle(const SpinSystem& s, int k, int ell) {
  const long long d = s.dim();
  long long r = (static_cast<long long>(k) * ell) % d;
  if (r < 0) r += d;
  if (2 * r == d) return kPi;
  const double g = kTwoPi * static_cast<double>(r) / static_cast<double>(d);
  return 2 * r > d ? g - kTwoPi : g;
}

/// Right-hand side of the sum relation,
///   B = 2 sqrt2 (sqrt2 - sqrt(1 - cos g)) / (1 + cos g),
/// evaluated in the equivalent form 2 / (1 + |sin(g/2)|).
/// B runs from 2 (g -> 0) down to 1 (g = pi).
inline double bound_B(double gamma) {
  if (std::abs(1.0 + std::cos(gamma)) < 1e-8) return 1.0;
  return 2.0 / (1.0 + std::abs(std::sin(0.5 * gamma)));
}

inline bool is_gamma_pi(double gamma) { return std::abs(std::abs(gamma) - kPi) < 1e-9; }

/// Components of |psi> in the phase basis: <mt|psi>.
inline std::vector<Complex> to_phase_basis(const SpinSystem& s, std::span<const Complex> c) {
  const int d = s.dim();
  std::vector<Complex> out(static_cast<std::size_t>(d));
  for (int t = 0; t < d; ++t) {
    const long long tmt = s.twice_m(t);
    Complex acc{};
    for (int i = 0; i < d; ++i) acc += std::conj(detail::basis_overlap(s.twice_m(i), tmt, d)) * c[static_cast<std::size_t>(i)];
    out[static_cast<std::size_t>(t)] = acc;
  }
  return out;
}

inline std::vector<Complex> from_phase_basis(const SpinSystem& s, std::span<const Complex> a) {
  const int d = s.dim();
  std::vector<Complex> out(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    const long long tm = s.twice_m(i);
    Complex acc{};
    for (int t = 0; t < d; ++t) acc += detail::basis_overlap(tm, s.twice_m(t), d) * a[static_cast<std::size_t>(t)];
    out[static_cast<std::size_t>(i)] = acc;
  }
  return out;
}

/// E^k v through the phase basis (k may be negative).
inline std::vector<Complex> apply_E_pow(const SpinSystem& s, std::span<const Complex> v, int k) {
  auto a = to_phase_basis(s, v);
  for (int t = 0; t < s.dim(); ++t) a[static_cast<std::size_t>(t)] *= unit_phase(static_cast<long long>(k) * s.twice_m(t), 2LL * s.dim());
  return from_phase_basis(s, a);
}

/// F^l v (l may be negative).
inline std::vector<Complex> apply_F_pow(const SpinSystem& s, std::span<const Complex> v, int ell) {
  std::vector<Complex> out(v.begin(), v.end());
  for (int i = 0; i < s.dim(); ++i) out[static_cast<std::size_t>(i)] *= unit_phase(static_cast<long long>(ell) * s.twice_m(i), 2LL * s.dim());
  return out;
}

inline std::vector<Complex> apply_E_pow(const QuditState& psi, int k) {
  return apply_E_pow(psi.system(), psi.amplitudes(), k);
}

inline std::vector<Complex> apply_F_pow(const QuditState& psi, int ell) {
  return apply_F_pow(psi.system(), psi.amplitudes(), ell);
}

inline SpinCharSet char_set_spin(const QuditState& psi, int k, int ell) {
  const auto c = psi.amplitudes();
  const auto fl = apply_F_pow(psi, ell);
  const auto ek = apply_E_pow(psi, k);
  SpinCharSet out;
  out.k = k;
  out.ell = ell;
  for (std::size_t i = 0; i < c.size(); ++i) {
    out.phi += std::conj(c[i]) * fl[i];
    out.phi_tilde += std::conj(c[i]) * ek[i];
    out.omega += std::conj(fl[i]) * ek[i];
  }
  return out;
}

/// Gram matrix of {psi, F^l psi, E^k psi}.
inline Hermitian3 gram_matrix(const SpinCharSet& cs) {
  return Hermitian3({1.0, 1.0, 1.0}, cs.phi, cs.phi_tilde, cs.omega);
}

/// Determinants for (k, l) and for (-k, -l).
inline GramDeterminants gram_dets_spin(const QuditState& psi, int k, int ell) {
  return {det3(gram_matrix(char_set_spin(psi, k, ell))), det3(gram_matrix(char_set_spin(psi, -k, -ell)))};
}

/// U <= B(gamma) and V <= B(gamma)/2 for every (k, l); U' <= 1 is only
/// reported when gamma = pi, the one case where it has been derived.
/// `applicable` is true when gamma = pi.
inline UncertaintyReport spin_report(const QuditState& psi, int k, int ell) {
  const SpinCharSet cs = char_set_spin(psi, k, ell);
  const GramDeterminants dets = gram_dets_spin(psi, k, ell);
  const double gamma = gamma_angle(psi.system(), k, ell);
  const double p2 = std::norm(cs.phi);
  const double t2 = std::norm(cs.phi_tilde);

  UncertaintyReport r;
  r.U = p2 + t2;
  r.V = std::sqrt(p2 * t2);
  r.det_plus = dets.det_plus;
  r.det_minus = dets.det_minus;
  r.bound = bound_B(gamma);
  r.applicable = is_gamma_pi(gamma);
  r.slack_U = r.bound - r.U;
  r.slack_V = 0.5 * r.bound - r.V;
  if (r.applicable) {
    r.U_prime = r.U + std::norm(cs.omega);
    r.slack_U_prime = 1.0 - *r.U_prime;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Qubit in the Bloch representation, rho = (1 + s.sigma)/2, with F = sigma_z
// and E = sigma_x.

using Bloch = std::array<double, 3>;

inline double bloch_norm(const Bloch& s) { return std::sqrt(s[0] * s[0] + s[1] * s[1] + s[2] * s[2]); }

/// Phi = <sigma_z^l>, PhiTilde = <sigma_x^k>, Omega = <sigma_z^l sigma_x^k>
/// as traces against rho. For odd k and l: (s_z, s_x, i s_y).
inline SpinCharSet qubit_char(const Bloch& s, int k = 1, int ell = 1) {
  if (!(bloch_norm(s) <= 1.0 + 1e-12)) {
    throw DomainError("qubit_char: Bloch vector must satisfy |s| <= 1, got |s| = " + std::to_string(bloch_norm(s)));
  }
  const bool k_odd = (k % 2) != 0;
  const bool l_odd = (ell % 2) != 0;
  SpinCharSet cs;
  cs.k = k;
  cs.ell = ell;
  cs.phi = l_odd ? s[2] : 1.0;
  cs.phi_tilde = k_odd ? s[0] : 1.0;
  if (k_odd && l_odd) {
    cs.omega = Complex{0.0, s[1]};
  } else if (l_odd) {
    cs.omega = s[2];
  } else if (k_odd) {
    cs.omega = s[0];
  } else {
    cs.omega = 1.0;
  }
  return cs;
}

/// Sum, triple and product relation values for a qubit at k = l = 1, plus
/// the triple-sum value as printed in the literature, s_x^2 + s_z^2 +
/// s_x^2 s_y^2 s_z^2, which follows from Omega = i s_x s_y s_z rather than
/// from the trace definition.
struct QubitRelations {
  double U = 0.0;
  double U_prime = 0.0;
  double V = 0.0;
  double published_triple = 0.0;
};

inline QubitRelations qubit_relations(const Bloch& s) {
  const SpinCharSet cs = qubit_char(s);
  QubitRelations r;
  r.U = std::norm(cs.phi) + std::norm(cs.phi_tilde);
  r.U_prime = r.U + std::norm(cs.omega);
  r.V = std::abs(cs.phi) * std::abs(cs.phi_tilde);
  r.published_triple = s[0] * s[0] + s[2] * s[2] + s[0] * s[0] * s[1] * s[1] * s[2] * s[2];
  return r;
}

}  // namespace weylunc::spin

#endif  // WEYLUNC_SPIN_HPP
