#ifndef WEYLUNC_TESTS_ORACLES_HPP
#define WEYLUNC_TESTS_ORACLES_HPP

// Reference computations used by the tests. They avoid the library's code
// paths: extended-precision series, explicit dense matrices, and closed-form
// calculus results.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using CL = std::complex<long double>;
using Mat = std::vector<std::vector<C>>;

/// I_n(z) from 80 terms of the power series in long double.
inline C bessel_I(int n, C z) {
  const CL h = CL(z) / 2.0L;
  CL term = 1.0L;
  for (int i = 1; i <= n; ++i) term *= h / static_cast<long double>(i);
  CL sum = term;
  for (int m = 1; m < 80; ++m) {
    term *= h * h / (static_cast<long double>(m) * static_cast<long double>(m + n));
    sum += term;
  }
  return C(static_cast<double>(sum.real()), static_cast<double>(sum.imag()));
}

/// J_0(x) by its alternating series in long double.
inline double bessel_J0(double x) {
  long double term = 1.0L, sum = 1.0L;
  const long double q = -(static_cast<long double>(x) * x) / 4.0L;
  for (int m = 1; m < 80; ++m) {
    term *= q / (static_cast<long double>(m) * m);
    sum += term;
  }
  return static_cast<double>(sum);
}

inline Mat zeros(int n) { return Mat(static_cast<std::size_t>(n), std::vector<C>(static_cast<std::size_t>(n))); }

inline Mat mul(const Mat& a, const Mat& b) {
  const int n = static_cast<int>(a.size());
  Mat c = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Mat power(const Mat& a, int e) {
  Mat r = zeros(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i][i] = 1.0;
  for (int i = 0; i < e; ++i) r = mul(r, a);
  return r;
}

inline std::vector<C> apply(const Mat& a, const std::vector<C>& v) {
  std::vector<C> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size() && j < a[i].size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

inline C dot(const std::vector<C>& a, const std::vector<C>& b) {
  C s = 0.0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

/// Spin-like E on the number basis m = -j..j (index m + j): a cyclic raise,
/// E|m> = |m+1>, with E|j> = (-1)^{d-1} |-j>. The sign comes from summing
/// exp(i 2 pi mt / d) over half-integer mt when d is even.
inline Mat spin_E(int d) {
  Mat e = zeros(d);
  for (int i = 0; i + 1 < d; ++i) e[i + 1][i] = 1.0;
  e[0][d - 1] = (d % 2 == 0) ? -1.0 : 1.0;
  return e;
}

/// F = diag(exp(i 2 pi m / d)).
inline Mat spin_F(int d) {
  Mat f = zeros(d);
  const double j = 0.5 * (d - 1);
  for (int i = 0; i < d; ++i) f[i][i] = std::polar(1.0, 2.0 * M_PI * (i - j) / d);
  return f;
}

/// Truncated Susskind-Glogower E on 0..n_max: <n|E|n+1> = 1.
inline Mat fock_E(int n_max) {
  Mat e = zeros(n_max + 1);
  for (int n = 0; n < n_max; ++n) e[n][n + 1] = 1.0;
  return e;
}

inline Mat adjoint(const Mat& a) {
  const int n = static_cast<int>(a.size());
  Mat b = zeros(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) b[i][j] = std::conj(a[j][i]);
  return b;
}

/// Gram matrix of three vectors.
inline std::array<std::array<C, 3>, 3> gram(const std::vector<C>& a, const std::vector<C>& b, const std::vector<C>& c) {
  const std::vector<C>* v[3] = {&a, &b, &c};
  std::array<std::array<C, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = dot(*v[i], *v[j]);
  return g;
}

/// Determinant by cofactor expansion.
inline C det(const std::array<std::array<C, 3>, 3>& g) {
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

/// Eigenvalues of a Hermitian 3x3 via cyclic Jacobi on its 6x6 real
/// symmetric embedding [[Re, -Im], [Im, Re]]; every eigenvalue appears
/// twice there.
inline std::array<double, 3> hermitian_eigs(const std::array<std::array<C, 3>, 3>& h) {
  double a[6][6];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      a[i][j] = a[i + 3][j + 3] = h[i][j].real();
      a[i][j + 3] = -h[i][j].imag();
      a[i + 3][j] = h[i][j].imag();
    }
  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < 6; ++p)
      for (int q = p + 1; q < 6; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-30) break;
    for (int p = 0; p < 6; ++p)
      for (int q = p + 1; q < 6; ++q) {
        if (std::abs(a[p][q]) < 1e-300) continue;
        const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0), s = t * c;
        for (int k = 0; k < 6; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < 6; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  std::array<double, 6> d{};
  for (int i = 0; i < 6; ++i) d[i] = a[i][i];
  std::sort(d.begin(), d.end());
  return {d[0], d[2], d[4]};
}

/// Qubit expectation tr(rho sigma_z^l sigma_x^k), rho = (1 + s.sigma)/2.
inline C qubit_trace(double sx, double sy, double sz, int k, int l) {
  using M2 = std::array<std::array<C, 2>, 2>;
  const C i(0.0, 1.0);
  const M2 id{{{1.0, 0.0}, {0.0, 1.0}}};
  const M2 px{{{0.0, 1.0}, {1.0, 0.0}}};
  const M2 pz{{{1.0, 0.0}, {0.0, -1.0}}};
  auto mm = [](const M2& a, const M2& b) {
    M2 c{};
    for (int r = 0; r < 2; ++r)
      for (int q = 0; q < 2; ++q)
        for (int t = 0; t < 2; ++t) c[r][q] += a[r][t] * b[t][q];
    return c;
  };
  M2 op = id;
  for (int n = 0; n < l; ++n) op = mm(op, pz);
  for (int n = 0; n < k; ++n) op = mm(op, px);
  const M2 rho{{{0.5 * (1.0 + sz), 0.5 * (sx - i * sy)}, {0.5 * (sx + i * sy), 0.5 * (1.0 - sz)}}};
  const M2 p = mm(rho, op);
  return p[0][0] + p[1][1];
}

/// Root of (1+t)^3 = 4(1-t) in (0, 1): stationary point of
/// U(t) = ((1-t)/(1+t))^2 + t for phase-coherent states at k = 1, phi = pi.
inline double phase_coherent_u_argmin_t() {
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (lo + hi);
    ((1 + m) * (1 + m) * (1 + m) - 4 * (1 - m) < 0 ? lo : hi) = m;
  }
  return 0.5 * (lo + hi);
}

/// |xi|^2 maximizing V = (1-t)/(1+t) sqrt(t).
inline double phase_coherent_v_argmax_t() { return std::sqrt(5.0) - 2.0; }

}  // namespace oracle

#endif  // WEYLUNC_TESTS_ORACLES_HPP
