#ifndef WEYLUNC_NUMERICS_HPP
#define WEYLUNC_NUMERICS_HPP

// Numeric kernels shared by the rest of the library: modified Bessel
// functions of complex argument, closed-form 3x3 Hermitian determinant and
// eigenvalues, and a minimal dense complex matrix for the spin operators.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace weylunc {

using Complex = std::complex<double>;

/// Raised when an argument lies outside the domain an operation supports.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// e^{i 2 pi num / den}, with the numerator reduced modulo den in integers
/// first so large products do not lose phase accuracy.
inline Complex unit_phase(long long num, long long den) {
  long long r = num % den;
  if (r < 0) r += den;
  return std::polar(1.0, kTwoPi * static_cast<double>(r) / static_cast<double>(den));
}

// ---------------------------------------------------------------------------
// Modified Bessel functions

inline constexpr int kBesselMaxOrder = 64;
inline constexpr double kBesselMaxArg = 100.0;
inline constexpr int kBesselMaxTerms = 500;

/// I_order(z) by its power series
///   sum_m (z/2)^{2m+order} / (m! (m+order)!)
/// The sum stops once a term drops below 1e-16 of the partial sum (with a
/// 1e-300 floor), or after 500 terms.
inline Complex bessel_I(int order, Complex z) {
  if (order < 0 || order > kBesselMaxOrder) {
    throw DomainError("bessel_I: order must lie in [0, 64], got " + std::to_string(order));
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("bessel_I: argument must be finite");
  }
  if (std::abs(z) > kBesselMaxArg) {
    throw DomainError("bessel_I: |z| must be <= 100, got " + std::to_string(std::abs(z)));
  }
  const Complex half = 0.5 * z;
  const Complex half_sq = half * half;
  Complex term{1.0, 0.0};
  for (int i = 1; i <= order; ++i) term *= half / static_cast<double>(i);

  Complex sum = term;
  for (int m = 1; m < kBesselMaxTerms; ++m) {
    term *= half_sq / (static_cast<double>(m) * static_cast<double>(m + order));
    sum += term;
    if (std::abs(term) < 1e-16 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// ---------------------------------------------------------------------------
// 3x3 Hermitian matrices

/// Hermitian 3x3 matrix stored as its real diagonal and upper triangle;
/// the lower triangle is the conjugate by construction.
class Hermitian3 {
public:
  Hermitian3() = default;
  Hermitian3(std::array<double, 3> diag, Complex a01, Complex a02, Complex a12)
      : diag_(diag), a01_(a01), a02_(a02), a12_(a12) {}

  static Hermitian3 identity() { return Hermitian3({1.0, 1.0, 1.0}, {}, {}, {}); }

  double diag(int i) const { return diag_[static_cast<std::size_t>(i)]; }

  Complex operator()(int i, int j) const {
    if (i == j) return diag(i);
    if (i > j) return std::conj((*this)(j, i));
    if (i == 0 && j == 1) return a01_;
    if (i == 0 && j == 2) return a02_;
    return a12_;
  }

  /// Frobenius norm.
  double norm() const {
    return std::sqrt(diag_[0] * diag_[0] + diag_[1] * diag_[1] + diag_[2] * diag_[2] +
                     2.0 * (std::norm(a01_) + std::norm(a02_) + std::norm(a12_)));
  }

  Hermitian3 shifted(double s) const {
    return Hermitian3({diag_[0] - s, diag_[1] - s, diag_[2] - s}, a01_, a02_, a12_);
  }

private:
  std::array<double, 3> diag_{};
  Complex a01_{}, a02_{}, a12_{};
};

/// Cofactor expansion of a Hermitian 3x3 determinant. The conjugate pairs of
/// the expansion are combined so the result is real exactly.
inline double det3(const Hermitian3& g) {
  const double d0 = g.diag(0), d1 = g.diag(1), d2 = g.diag(2);
  const Complex a01 = g(0, 1), a02 = g(0, 2), a12 = g(1, 2);
  return d0 * d1 * d2 + 2.0 * std::real(a01 * a12 * std::conj(a02)) - d0 * std::norm(a12) -
         d1 * std::norm(a02) - d2 * std::norm(a01);
}

namespace detail {

using CVec3 = std::array<Complex, 3>;

inline CVec3 bilinear_cross(const CVec3& u, const CVec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline double vnorm(const CVec3& v) {
  return std::sqrt(std::norm(v[0]) + std::norm(v[1]) + std::norm(v[2]));
}

inline CVec3 normalized(CVec3 v) {
  const double n = vnorm(v);
  for (auto& x : v) x /= n;
  return v;
}

/// <u| A |v>
inline Complex sandwich(const CVec3& u, const Hermitian3& a, const CVec3& v) {
  Complex s{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += std::conj(u[static_cast<std::size_t>(i)]) * a(i, j) * v[static_cast<std::size_t>(j)];
  return s;
}

}  // namespace detail

/// Eigenvalues in ascending order.
///
/// The characteristic cubic is solved with the trigonometric method. Near a
/// double root that solve only carries about sqrt(eps) relative accuracy, so
/// the most isolated root is then polished: its eigenvector comes from a
/// cross product of two rows of (A - lambda I), the root is replaced by the
/// Rayleigh quotient, and the remaining pair is the closed-form spectrum of
/// A restricted to the orthogonal complement.
inline std::array<double, 3> eigenvalues3(const Hermitian3& a) {
  const double mean = (a.diag(0) + a.diag(1) + a.diag(2)) / 3.0;
  const Hermitian3 b = a.shifted(mean);
  const double p = b.norm() / std::sqrt(6.0);
  if (p <= 1e-300 || p <= 1e-15 * std::abs(mean)) return {mean, mean, mean};

  const double r = std::clamp(det3(b) / (2.0 * p * p * p), -1.0, 1.0);
  const double angle = std::acos(r) / 3.0;
  const double hi = mean + 2.0 * p * std::cos(angle);
  const double lo = mean + 2.0 * p * std::cos(angle + kTwoPi / 3.0);
  const double mid = 3.0 * mean - hi - lo;

  const double isolated = (hi - mid >= mid - lo) ? hi : lo;

  // Null vector of (A - isolated I) from the best-conditioned row pair.
  const Hermitian3 m = a.shifted(isolated);
  std::array<detail::CVec3, 3> rows;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = m(i, j);
  detail::CVec3 best{};
  double best_norm = -1.0;
  for (auto [i, j] : {std::pair{0, 1}, std::pair{0, 2}, std::pair{1, 2}}) {
    auto c = detail::bilinear_cross(rows[static_cast<std::size_t>(i)], rows[static_cast<std::size_t>(j)]);
    const double n = detail::vnorm(c);
    if (n > best_norm) {
      best_norm = n;
      best = c;
    }
  }
  if (!(best_norm > 0.0)) return {lo, mid, hi};
  const detail::CVec3 v = detail::normalized(best);
  const double refined = std::real(detail::sandwich(v, a, v));

  // Orthonormal basis {u1, u2} of the complement of v.
  std::size_t kmin = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (std::abs(v[i]) < std::abs(v[kmin])) kmin = i;
  detail::CVec3 u1{};
  for (std::size_t i = 0; i < 3; ++i) u1[i] = -v[i] * std::conj(v[kmin]);
  u1[kmin] += 1.0;
  u1 = detail::normalized(u1);
  detail::CVec3 u2 = detail::bilinear_cross(v, u1);
  for (auto& x : u2) x = std::conj(x);
  u2 = detail::normalized(u2);

  const double h11 = std::real(detail::sandwich(u1, a, u1));
  const double h22 = std::real(detail::sandwich(u2, a, u2));
  const Complex h12 = detail::sandwich(u1, a, u2);
  const double centre = 0.5 * (h11 + h22);
  const double radius = std::hypot(0.5 * (h11 - h22), std::abs(h12));

  std::array<double, 3> out{refined, centre - radius, centre + radius};
  std::sort(out.begin(), out.end());
  return out;
}

inline double min_eig3(const Hermitian3& g) { return eigenvalues3(g)[0]; }

// ---------------------------------------------------------------------------
// Dense complex matrices (small; spin operators and test oracles only)

class CMatrix {
public:
  CMatrix() = default;
  explicit CMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * static_cast<std::size_t>(n)) {}

  static CMatrix identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int size() const { return n_; }
  Complex& operator()(int i, int j) { return a_[index(i, j)]; }
  const Complex& operator()(int i, int j) const { return a_[index(i, j)]; }

  CMatrix adjoint() const {
    CMatrix m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = std::conj((*this)(j, i));
    return m;
  }

  friend CMatrix operator*(const CMatrix& x, const CMatrix& y) {
    CMatrix m(x.n_);
    for (int i = 0; i < x.n_; ++i)
      for (int l = 0; l < x.n_; ++l) {
        const Complex xil = x(i, l);
        if (xil == Complex{}) continue;
        for (int j = 0; j < x.n_; ++j) m(i, j) += xil * y(l, j);
      }
    return m;
  }

  friend CMatrix operator*(Complex s, CMatrix x) {
    for (auto& v : x.a_) v *= s;
    return x;
  }

  friend CMatrix operator-(CMatrix x, const CMatrix& y) {
    for (std::size_t i = 0; i < x.a_.size(); ++i) x.a_[i] -= y.a_[i];
    return x;
  }

  std::vector<Complex> apply(const std::vector<Complex>& v) const {
    std::vector<Complex> out(static_cast<std::size_t>(n_));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) out[static_cast<std::size_t>(i)] += (*this)(i, j) * v[static_cast<std::size_t>(j)];
    return out;
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
  }

private:
  std::size_t index(int i, int j) const {
    return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(j);
  }

  int n_ = 0;
  std::vector<Complex> a_;
};

/// Integer power; negative exponents use the adjoint, so `m` must be unitary
/// for those.
inline CMatrix matrix_power(const CMatrix& m, int e) {
  CMatrix base = e < 0 ? m.adjoint() : m;
  unsigned n = static_cast<unsigned>(e < 0 ? -e : e);
  CMatrix result = CMatrix::identity(m.size());
  while (n != 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n != 0) base = base * base;
  }
  return result;
}

}  // namespace weylunc

#endif  // WEYLUNC_NUMERICS_HPP
