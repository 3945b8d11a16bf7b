#ifndef WEYLUNC_REPORT_HPP
#define WEYLUNC_REPORT_HPP

#include <optional>

namespace weylunc {

/// Both Gram determinants for one (k, l) or (k, phi) configuration.
struct GramDeterminants {
  double det_plus = 0.0;
  double det_minus = 0.0;
};

/// Certainty functionals for one state and configuration.
///
///   U   = |Phi|^2 + |PhiTilde|^2
///   U'  = U + |Omega|^2
///   U'' = U' + Pi_k/2 (1 - |Phi|^2)      (single mode only)
///   V   = |Phi| |PhiTilde|
///
/// `bound` is the right-hand side of the sum relation. Slack fields are
/// bound minus functional (bound/2 for V) and are only set where the
/// corresponding relation has been derived for the configuration.
struct UncertaintyReport {
  double U = 0.0;
  std::optional<double> U_prime;
  std::optional<double> U_double_prime;
  double V = 0.0;
  double det_plus = 0.0;
  double det_minus = 0.0;
  double bound = 1.0;
  bool applicable = false;
  std::optional<double> slack_U;
  std::optional<double> slack_U_prime;
  std::optional<double> slack_U_double_prime;
  std::optional<double> slack_V;
};

}  // namespace weylunc

#endif  // WEYLUNC_REPORT_HPP
