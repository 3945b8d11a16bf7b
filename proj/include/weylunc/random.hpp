#ifndef WEYLUNC_RANDOM_HPP
#define WEYLUNC_RANDOM_HPP

#include <cstddef>
#include <random>
#include <vector>

#include "weylunc/fock.hpp"
#include "weylunc/numerics.hpp"
#include "weylunc/spin.hpp"

namespace weylunc {

/// Independent standard complex Gaussians, normalized: Haar-uniform pure states.
template <class Rng>
std::vector<Complex> random_amplitudes(std::size_t n, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Complex> v(n);
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& c : v) {
      c = Complex{g(rng), g(rng)};
      n2 += std::norm(c);
    }
  } while (!(n2 > 0.0));
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& c : v) c *= inv;
  return v;
}

template <class Rng>
spin::QuditState random_qudit(const spin::SpinSystem& s, Rng& rng) {
  return spin::QuditState::normalized(s, random_amplitudes(static_cast<std::size_t>(s.dim()), rng));
}

template <class Rng>
fock::FockState random_fock(int n_max, Rng& rng) {
  return fock::FockState::normalized(random_amplitudes(static_cast<std::size_t>(n_max) + 1, rng));
}

/// Uniform in the unit ball when `pure` is false, on the sphere otherwise.
template <class Rng>
spin::Bloch random_bloch(Rng& rng, bool pure) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  spin::Bloch s{};
  double n = 0.0;
  do {
    s = {g(rng), g(rng), g(rng)};
    n = spin::bloch_norm(s);
  } while (!(n > 0.0));
  const double r = pure ? 1.0 : std::cbrt(u(rng));
  for (auto& x : s) x *= r / n;
  return s;
}

}  // namespace weylunc

#endif  // WEYLUNC_RANDOM_HPP
