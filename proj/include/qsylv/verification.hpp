#pragma once

#include <cstdint>
#include <string>

#include "qsylv/lcu.hpp"
#include "qsylv/problem.hpp"

namespace qsylv {

/// Everything a run reports about one instance.
struct VerificationReport {
  double residual_rel = 0.0;   // ||A X-hat + X-hat B - C|| / ||C||
  double spectral_err = 0.0;   // ||X-hat - X_oracle||
  double mult_err = 0.0;       // spectral_err / ||X_oracle||
  double eps_target = 0.0;
  double x_used = 0.0;         // rescale factor of the emitted program
  double kappa_alpha = 0.0;    // kappa * alpha, the ideal rescale
  double q_est = 0.0;
  double g_est = 0.0;
  bool pass = false;
  std::string criterion;       // which pass criterion fired
  struct Constants {
    double c1 = 1.0, c2 = 1.0, c3 = 1.0, c4 = 1.0;
    double kernel_normalization = 1.0;
  } calibrated_constants;
};

/// Ground-truth solve X = unvec(Q^{-1} vec C) by dense LU, with a residual
/// check at 1e-10. Throws SingularQError / DimensionError.
CMatrix oracle_solve(const SylvesterInstance& inst);

/// ||A x_hat + x_hat B - C|| / max(||C||, 1e-300), spectral norms.
double residual(const SylvesterInstance& inst, const CMatrix& x_hat);

struct PropertyCheckResult {
  bool ok = false;
  int draws = 0;
  double worst_observed = 0.0;  // largest error (or ratio) seen
  double bound = 0.0;           // the bound it was tested against
};

/// Draws random multiplicative defects E with ||E|| = eps_mult, forms
/// X' = unvec((I - E) Q^{-1} vec C) and asserts
/// ||X - X'|| <= eps_mult * sqrt(N) * ||X|| on every draw.
PropertyCheckResult frobenius_transfer_check(const SylvesterInstance& inst,
                                             double eps_mult, int draws = 20,
                                             std::uint64_t seed = 7);

/// Perturbs every evolution unitary of the program by at most eps/4 in
/// spectral norm and asserts the change in X-hat/x stays within eps.
PropertyCheckResult evolution_perturbation_check(const LcuProgram& program,
                                                 const SylvesterInstance& inst,
                                                 double eps, int draws = 20,
                                                 std::uint64_t seed = 11);

struct ComplexityEstimate {
  double q_est = 0.0;
  double g_est = 0.0;
  double x_est = 0.0;          // with alpha = 1
  std::string x_formula;       // symbolic form, constants suppressed
  double cheb_l1_bound = 0.0;  // only for the general fallback
};

/// Evaluates the per-case query/gate/rescale formulas with unit constants
/// and natural logs. A comparator across cases, not a gate-count promise.
/// The general fallback reports the (8/3) * 2^(2 j0 + 2) coefficient bound
/// instead of a query count.
ComplexityEstimate complexity_estimate(CaseTag kind, double kappa_value,
                                       Eigen::Index n_dim, double c_norm,
                                       double epsilon, double beta = 0.5);

}  // namespace qsylv
