#pragma once

#include <cstdint>
#include <vector>

#include "qsylv/problem.hpp"

namespace qsylv {

/// The four lemma constants. They default to 1 and are tightened by
/// calibration: c3 drives t_R, c4 drives omega_J, c1 and c2 drive the step
/// sizes delta_t and delta_omega.
struct LemmaConstants {
  double c1 = 1.0;
  double c2 = 1.0;
  double c3 = 1.0;
  double c4 = 1.0;
};

/// Uniform grid for the double (or triple) quadrature of one case:
/// times t_r = r*delta_t for r = 0..R-1 and frequencies omega_j = j*delta_omega
/// for j = -J..J. Construction enforces R = ceil(t_R/delta_t),
/// J = ceil(omega_J/delta_omega) and the per-case aliasing guard
///   2*pi/delta_omega >= 2*t_R          (normal, b-zero)
///   2*pi/delta_omega >= 2*sqrt(2*t_R)  (positive-with-roots)
/// by shrinking delta_omega when the formula value violates it.
struct DiscretizationParams {
  CaseTag kind = CaseTag::Normal;
  double delta_t = 0.0;
  double delta_omega = 0.0;
  double t_r_max = 0.0;
  double omega_j_max = 0.0;
  std::int64_t r_count = 0;
  std::int64_t j_count = 0;
  LemmaConstants constants;
  double beta = 0.0;  // LCHS decay exponent; used by positive-hermitian-part

  double time(std::int64_t r) const { return static_cast<double>(r) * delta_t; }
  double omega(std::int64_t j) const { return static_cast<double>(j) * delta_omega; }
};

/// Validates grid invariants and the aliasing guard; throws DomainError.
void validate_params(const DiscretizationParams& p);

/// Builds params from explicit grid values (manual override path).
DiscretizationParams make_manual_params(CaseTag kind, double delta_t,
                                        double delta_omega, double t_r_max,
                                        double omega_j_max, double beta = 0.0);

// Per-case parameter formulas (natural logarithms throughout).
DiscretizationParams params_normal(double kappa, double epsilon,
                                   const LemmaConstants& c = {});
DiscretizationParams params_pos_herm(double kappa, double c_norm,
                                     double epsilon, double beta,
                                     const LemmaConstants& c = {});
DiscretizationParams params_bzero(double kappa, double epsilon,
                                  const LemmaConstants& c = {});
DiscretizationParams params_positive(double kappa, double epsilon,
                                     const LemmaConstants& c = {});

/// Weight function attached to a frequency grid.
struct KernelSpec {
  enum class Kind { Gaussian, HermiteOne, LchsBeta };
  Kind kind = Kind::Gaussian;
  double beta = 0.5;
  double normalization = 1.0;
};

/// Raw decay kernel f(omega) = (1/2pi) * 1/(1 - i*omega) * exp(-(1+i*omega)^beta),
/// before normalization. Satisfies
/// integral f(omega) e^{-i omega t} domega = K_beta * e^{-t} for t >= 0.
Complex lchs_kernel(double omega, double beta);

/// |f(omega)| in closed form:
///   exp(-(omega^2+1)^{beta/2} cos(beta*atan(omega))) / (2*pi*sqrt(omega^2+1)).
double lchs_kernel_abs(double omega, double beta);

/// normalization * raw kernel value (complex for LchsBeta, real otherwise).
Complex kernel_value(const KernelSpec& spec, double omega);

/// Fixes the kernel normalization so the scalar identity
/// integral n*f(omega) e^{-i omega t} domega = e^{-t} holds; the constant is
/// computed from the t = 0 integral by quadrature.
KernelSpec calibrate_lchs_kernel(double beta);

/// Max error of the discretized scalar identity
/// |e^{-t} - delta_omega * sum_j n*f(omega_j) e^{-i omega_j t}| over the
/// given times.
double lchs_scalar_identity_error(const KernelSpec& kernel, double delta_omega,
                                  double omega_max, const std::vector<double>& times);

/// Deviation of the discrete Gaussian sum from 1:
///   (delta_omega/sqrt(2pi)) * sum_j exp(-omega_j^2/2) - 1,
/// summed until terms drop below 1e-18. Cross-checked in-place against the
/// Poisson-summation form 2 * sum_{k>=1} exp(-(2 pi k/delta_omega)^2/2).
double comb_check(double delta_omega);

/// Spectrum-level description of what calibration must approximate.
struct SpectrumTarget {
  CaseTag kind = CaseTag::Normal;
  // Normal: eigenvalues of Q. BZero: (real) eigenvalues of A.
  std::vector<Complex> q_eigs;
  // PositiveWithRoots: eigenvalues of A and of B (all positive).
  std::vector<double> a_eigs;
  std::vector<double> b_eigs;
  // PositiveHermitianPart falls back to a dense instance check.
  double c_norm = 1.0;
};

struct CalibrationResult {
  DiscretizationParams params;
  KernelSpec kernel;
  double achieved_error = 0.0;
  int rounds = 0;
};

/// Starting from all constants = 1, doubles c3 and c4 and halves c1 and c2
/// each round until the per-eigenvalue multiplicative error (or, for the
/// positive-hermitian-part case, the dense multiplicative error against the
/// oracle) meets epsilon. Throws CalibrationBudgetError after `budget`
/// rounds, carrying the best error achieved.
CalibrationResult calibrate_spectrum(const SpectrumTarget& target,
                                     double epsilon, int budget);

/// Instance-level calibration: derives the spectrum target (or dense check)
/// from the instance and delegates to calibrate_spectrum.
CalibrationResult calibrate(const SylvesterInstance& inst, CaseTag kind,
                            double epsilon, int budget);

}  // namespace qsylv
