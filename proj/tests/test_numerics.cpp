#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "weylunc/numerics.hpp"

using namespace weylunc;

TEST(Bessel, SeriesValues) {
  EXPECT_EQ(bessel_I(0, 0.0), Complex(1.0, 0.0));
  EXPECT_NEAR(bessel_I(0, 2.0).real(), 2.2795853023360673, 1e-14);
  EXPECT_NEAR(bessel_I(1, 2.0).real(), 1.5906368546373291, 1e-14);
  const Complex j0 = bessel_I(0, Complex(0.0, 2.0));
  EXPECT_NEAR(j0.real(), 0.22389077914123567, 1e-14);
  EXPECT_NEAR(j0.imag(), 0.0, 1e-15);
}

TEST(Bessel, MatchesExtendedPrecisionOracle) {
  EXPECT_NEAR(oracle::bessel_I(0, 2.0).real(), 2.2795853023360673, 1e-15);
  EXPECT_NEAR(oracle::bessel_J0(2.0), 0.22389077914123567, 1e-15);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-6.0, 6.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Complex z(u(rng), u(rng));
    for (int n = 0; n <= 8; ++n) {
      const Complex ref = oracle::bessel_I(n, z);
      EXPECT_LE(std::abs(bessel_I(n, z) - ref), 1e-13 * std::max(1.0, std::abs(ref))) << "n=" << n << " z=" << z;
    }
  }
}

TEST(Bessel, ImaginaryArgumentGivesJ0) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 4.0}) {
    EXPECT_NEAR(bessel_I(0, Complex(0.0, x)).real(), oracle::bessel_J0(x), 1e-14);
  }
}

TEST(Bessel, Recurrence) {
  const Complex z(1.3, -0.7);
  for (int n = 1; n < 10; ++n) {
    const Complex lhs = bessel_I(n - 1, z) - bessel_I(n + 1, z);
    const Complex rhs = 2.0 * static_cast<double>(n) / z * bessel_I(n, z);
    EXPECT_LT(std::abs(lhs - rhs), 1e-13);
  }
}

TEST(Bessel, DomainErrors) {
  EXPECT_THROW(bessel_I(-1, 1.0), DomainError);
  EXPECT_THROW(bessel_I(65, 1.0), DomainError);
  EXPECT_THROW(bessel_I(0, 101.0), DomainError);
  EXPECT_THROW(bessel_I(0, Complex(std::nan(""), 0.0)), DomainError);
  try {
    bessel_I(0, 150.0);
  } catch (const DomainError& e) {
    EXPECT_NE(std::string(e.what()).find("100"), std::string::npos);
  }
  EXPECT_NO_THROW(bessel_I(64, 100.0));
}

TEST(Det3, Examples) {
  EXPECT_DOUBLE_EQ(det3(Hermitian3::identity()), 1.0);
  EXPECT_DOUBLE_EQ(det3(Hermitian3({1, 1, 1}, 0.0, 0.0, 0.0)), 1.0);
  EXPECT_DOUBLE_EQ(det3(Hermitian3({1, 1, 1}, 1.0, 0.0, 0.0)), 0.0);
}

namespace {

std::array<std::array<Complex, 3>, 3> dense(const Hermitian3& h) {
  std::array<std::array<Complex, 3>, 3> m{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = h(i, j);
  return m;
}

Hermitian3 random_hermitian(std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  return Hermitian3({g(rng), g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
}

}  // namespace

TEST(Det3, MatchesCofactorOracle) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const Hermitian3 h = random_hermitian(rng);
    const Complex ref = oracle::det(dense(h));
    EXPECT_NEAR(det3(h), ref.real(), 1e-12 * (1.0 + std::abs(ref)));
    EXPECT_NEAR(ref.imag(), 0.0, 1e-12);
  }
}

TEST(MinEig3, Examples) {
  EXPECT_NEAR(min_eig3(Hermitian3::identity()), 1.0, 1e-15);
  EXPECT_NEAR(min_eig3(Hermitian3({1, 1, 0}, 0.0, 0.0, 0.0)), 0.0, 1e-15);
  EXPECT_NEAR(min_eig3(Hermitian3({1, 1, 1}, 1.0, 1.0, 1.0)), 0.0, 1e-14);
  const auto e = eigenvalues3(Hermitian3({1, 1, 1}, 1.0, 1.0, 1.0));
  EXPECT_NEAR(e[2], 3.0, 1e-14);
  EXPECT_NEAR(e[1], 0.0, 1e-14);
}

TEST(MinEig3, MatchesJacobiOracle) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    const Hermitian3 h = random_hermitian(rng);
    const auto ref = oracle::hermitian_eigs(dense(h));
    const auto got = eigenvalues3(h);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(got[k], ref[k], 1e-12 * (1.0 + h.norm()));
    EXPECT_LE(got[0], got[1]);
    EXPECT_LE(got[1], got[2]);
  }
}

TEST(MinEig3, NearDegenerateGramMatrices) {
  // Rank-deficient Gram matrices of vectors that nearly coincide.
  std::mt19937_64 rng(9);
  std::normal_distribution<double> g;
  for (int i = 0; i < 300; ++i) {
    std::vector<Complex> a(4), b(4);
    for (int j = 0; j < 4; ++j) a[j] = {g(rng), g(rng)};
    const double eps = std::pow(10.0, -static_cast<double>(i % 9));
    for (int j = 0; j < 4; ++j) b[j] = a[j] + eps * Complex(g(rng), g(rng));
    const std::vector<Complex> c = a;  // exact duplicate
    const auto gm = oracle::gram(a, b, c);
    const Hermitian3 h({gm[0][0].real(), gm[1][1].real(), gm[2][2].real()}, gm[0][1], gm[0][2], gm[1][2]);
    EXPECT_GE(min_eig3(h), -1e-10 * h.norm());
    EXPECT_LE(std::abs(min_eig3(h)), 1e-10 * h.norm());
  }
}

TEST(UnitPhase, ReducesNumerator) {
  EXPECT_NEAR(std::abs(unit_phase(1'000'000'000'001LL, 4) - Complex(0.0, 1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(unit_phase(-1, 4) - Complex(0.0, -1.0)), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(unit_phase(0, 7) - 1.0), 0.0, 0.0);
}

TEST(CMatrix, PowerAndAdjoint) {
  CMatrix m(2);
  m(0, 1) = 1.0;
  m(1, 0) = 1.0;
  EXPECT_LT((matrix_power(m, 2) - CMatrix::identity(2)).max_abs(), 1e-15);
  CMatrix r(2);
  r(0, 0) = std::polar(1.0, 0.3);
  r(1, 1) = std::polar(1.0, -1.1);
  EXPECT_LT((matrix_power(r, -3) * matrix_power(r, 3) - CMatrix::identity(2)).max_abs(), 1e-14);
}
