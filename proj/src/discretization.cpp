#include "qsylv/discretization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

#include "qsylv/lcu.hpp"
#include "qsylv/verification.hpp"

namespace qsylv {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::int64_t ceil_count(double ratio) {
  return static_cast<std::int64_t>(std::ceil(ratio - 1e-9));
}

double clamped_log(double arg) {
  // Degenerate inputs (tiny kappa*||C||/eps) would make the lemma logs
  // nonpositive; clamp the argument at e so every scale stays > 0.
  return std::log(std::max(arg, std::exp(1.0)));
}

void check_pre(double kappa_value, double epsilon) {
  if (!(kappa_value >= 1.0)) {
    throw DomainError("parameter formulas require kappa >= 1");
  }
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw DomainError("parameter formulas require 0 < epsilon < 1");
  }
}

// Shrinks delta_omega (and the recorded c2) until the per-case aliasing
// guard holds, then fills R and J.
DiscretizationParams finish(CaseTag kind, double delta_t, double delta_omega,
                            double t_r, double omega_j, double beta,
                            LemmaConstants c) {
  double guard = std::numeric_limits<double>::infinity();
  if (kind == CaseTag::Normal || kind == CaseTag::BZero) {
    guard = kPi / t_r;  // 2*pi/delta_omega >= 2*t_R
  } else if (kind == CaseTag::PositiveWithRoots) {
    guard = kPi / std::sqrt(2.0 * t_r);  // 2*pi/delta_omega >= 2*sqrt(2 t_R)
  }
  if (delta_omega > guard) {
    c.c2 *= guard / delta_omega;
    delta_omega = guard;
  }
  DiscretizationParams p;
  p.kind = kind;
  p.delta_t = delta_t;
  p.delta_omega = delta_omega;
  p.t_r_max = t_r;
  p.omega_j_max = omega_j;
  p.r_count = ceil_count(t_r / delta_t);
  p.j_count = ceil_count(omega_j / delta_omega);
  p.constants = c;
  p.beta = beta;
  validate_params(p);
  return p;
}

}  // namespace

void validate_params(const DiscretizationParams& p) {
  if (!(p.delta_t > 0.0) || !(p.delta_omega > 0.0) || !(p.t_r_max > 0.0) ||
      !(p.omega_j_max > 0.0)) {
    throw DomainError("DiscretizationParams: all grid scales must be positive");
  }
  if (p.r_count != ceil_count(p.t_r_max / p.delta_t) ||
      p.j_count != ceil_count(p.omega_j_max / p.delta_omega)) {
    throw DomainError("DiscretizationParams: R, J must equal their ceilings");
  }
  if (p.kind == CaseTag::Normal || p.kind == CaseTag::BZero) {
    if (2.0 * kPi / p.delta_omega < 2.0 * p.t_r_max - 1e-9) {
      throw DomainError("DiscretizationParams: aliasing guard 2pi/dw >= 2 t_R fails");
    }
  }
  if (p.kind == CaseTag::PositiveWithRoots) {
    if (2.0 * kPi / p.delta_omega < 2.0 * std::sqrt(2.0 * p.t_r_max) - 1e-9) {
      throw DomainError(
          "DiscretizationParams: aliasing guard 2pi/dw >= 2 sqrt(2 t_R) fails");
    }
  }
  if (p.kind == CaseTag::PositiveHermitianPart &&
      (!(p.beta > 0.0) || !(p.beta < 1.0))) {
    throw DomainError("DiscretizationParams: beta must lie in (0,1)");
  }
}

DiscretizationParams make_manual_params(CaseTag kind, double delta_t,
                                        double delta_omega, double t_r_max,
                                        double omega_j_max, double beta) {
  DiscretizationParams p;
  p.kind = kind;
  p.delta_t = delta_t;
  p.delta_omega = delta_omega;
  p.t_r_max = t_r_max;
  p.omega_j_max = omega_j_max;
  p.r_count = ceil_count(t_r_max / delta_t);
  p.j_count = ceil_count(omega_j_max / delta_omega);
  p.beta = beta;
  validate_params(p);
  return p;
}

DiscretizationParams params_normal(double kappa_value, double epsilon,
                                   const LemmaConstants& c) {
  check_pre(kappa_value, epsilon);
  const double log_ke = clamped_log(kappa_value / epsilon);
  const double log_e = clamped_log(1.0 / epsilon);
  const double delta_t = c.c1 * epsilon / std::sqrt(log_ke);
  const double delta_omega = c.c2 / (kappa_value * std::sqrt(log_e));
  const double t_r = c.c3 * kappa_value * std::sqrt(log_e);
  const double omega_j = c.c4 * std::sqrt(log_ke);
  return finish(CaseTag::Normal, delta_t, delta_omega, t_r, omega_j, 0.0, c);
}

DiscretizationParams params_pos_herm(double kappa_value, double c_norm,
                                     double epsilon, double beta,
                                     const LemmaConstants& c) {
  check_pre(kappa_value, epsilon);
  if (!(c_norm > 0.0)) {
    throw DomainError("params_pos_herm: ||C|| must be positive");
  }
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw DomainError("params_pos_herm: beta must lie in (0,1)");
  }
  const double t_r = c.c3 * kappa_value * clamped_log(kappa_value * c_norm / epsilon);
  const double omega_j =
      c.c4 * std::pow(clamped_log(t_r * c_norm / epsilon), 1.0 / beta);
  const double delta_t = c.c1 * epsilon / (kappa_value * c_norm);
  const double delta_omega = c.c2 * epsilon / (omega_j * c_norm * t_r * t_r);
  return finish(CaseTag::PositiveHermitianPart, delta_t, delta_omega, t_r,
                omega_j, beta, c);
}

DiscretizationParams params_bzero(double kappa_value, double epsilon,
                                  const LemmaConstants& c) {
  check_pre(kappa_value, epsilon);
  const double log_e = clamped_log(1.0 / epsilon);
  const double delta_t = c.c1 * epsilon / std::sqrt(log_e);
  const double delta_omega = c.c2 / (kappa_value * std::sqrt(log_e));
  const double t_r = c.c3 * kappa_value * std::sqrt(log_e);
  const double omega_j = c.c4 * std::sqrt(log_e);
  return finish(CaseTag::BZero, delta_t, delta_omega, t_r, omega_j, 0.0, c);
}

DiscretizationParams params_positive(double kappa_value, double epsilon,
                                     const LemmaConstants& c) {
  check_pre(kappa_value, epsilon);
  const double log_e = clamped_log(1.0 / epsilon);
  const double log_ke = clamped_log(kappa_value / epsilon);
  const double delta_t = c.c1 * epsilon;
  const double delta_omega = c.c2 / std::sqrt(kappa_value * log_e);
  const double t_r = c.c3 * kappa_value * log_e;
  const double omega_j = c.c4 * std::sqrt(log_ke);
  return finish(CaseTag::PositiveWithRoots, delta_t, delta_omega, t_r, omega_j,
                0.0, c);
}

Complex lchs_kernel(double omega, double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw DomainError("lchs_kernel: beta must lie in (0,1)");
  }
  const Complex one_plus(1.0, omega);
  const Complex power = std::pow(one_plus, beta);
  return std::exp(-power) / (2.0 * kPi * Complex(1.0, -omega));
}

double lchs_kernel_abs(double omega, double beta) {
  const double r2 = omega * omega + 1.0;
  const double expo = std::pow(r2, beta / 2.0) * std::cos(beta * std::atan(omega));
  return std::exp(-expo) / (2.0 * kPi * std::sqrt(r2));
}

Complex kernel_value(const KernelSpec& spec, double omega) {
  switch (spec.kind) {
    case KernelSpec::Kind::Gaussian:
      return spec.normalization * std::exp(-omega * omega / 2.0) /
             std::sqrt(2.0 * kPi);
    case KernelSpec::Kind::HermiteOne:
      return spec.normalization * omega * std::exp(-omega * omega / 2.0) /
             std::sqrt(2.0 * kPi);
    case KernelSpec::Kind::LchsBeta:
      return spec.normalization * lchs_kernel(omega, spec.beta);
  }
  throw DomainError("kernel_value: unknown kernel kind");
}

namespace {

// Composite Simpson over [a, b].
double simpson_real(double a, double b, int intervals,
                    const std::function<double(double)>& f) {
  if (intervals % 2 != 0) ++intervals;
  const double h = (b - a) / intervals;
  double sum = f(a) + f(b);
  for (int i = 1; i < intervals; i += 2) sum += 4.0 * f(a + i * h);
  for (int i = 2; i < intervals; i += 2) sum += 2.0 * f(a + i * h);
  return sum * h / 3.0;
}

}  // namespace

KernelSpec calibrate_lchs_kernel(double beta) {
  if (!(beta > 0.0) || !(beta < 1.0)) {
    throw DomainError("calibrate_lchs_kernel: beta must lie in (0,1)");
  }
  // integral of the raw kernel over R; even symmetry of the real part makes
  // this 2 * integral_0^inf Re f. Panels grow geometrically until |f| decays
  // below 1e-18.
  double upper = 8.0;
  while (lchs_kernel_abs(upper, beta) > 1e-18 && upper < 1e9) upper *= 2.0;
  auto re_f = [beta](double w) { return lchs_kernel(w, beta).real(); };
  double integral = simpson_real(0.0, 8.0, 4096, re_f);
  double lo = 8.0;
  while (lo < upper) {
    const double hi = std::min(lo * 2.0, upper);
    integral += simpson_real(lo, hi, 4096, re_f);
    lo = hi;
  }
  integral *= 2.0;
  if (!(integral > 0.0)) {
    throw DomainError("calibrate_lchs_kernel: kernel integral is not positive");
  }
  KernelSpec spec;
  spec.kind = KernelSpec::Kind::LchsBeta;
  spec.beta = beta;
  spec.normalization = 1.0 / integral;
  return spec;
}

double lchs_scalar_identity_error(const KernelSpec& kernel, double delta_omega,
                                  double omega_max,
                                  const std::vector<double>& times) {
  if (kernel.kind != KernelSpec::Kind::LchsBeta) {
    throw DomainError("lchs_scalar_identity_error: needs an LCHS kernel");
  }
  const auto j_max = static_cast<std::int64_t>(std::ceil(omega_max / delta_omega));
  double worst = 0.0;
  for (double t : times) {
    Complex sum(0.0, 0.0);
    for (std::int64_t j = -j_max; j <= j_max; ++j) {
      const double w = static_cast<double>(j) * delta_omega;
      sum += kernel_value(kernel, w) * std::exp(Complex(0.0, -w * t));
    }
    sum *= delta_omega;
    worst = std::max(worst, std::abs(sum - std::exp(-t)));
  }
  return worst;
}

double comb_check(double delta_omega) {
  if (!(delta_omega > 0.0)) {
    throw DomainError("comb_check: delta_omega must be positive");
  }
  // Left side: (dw/sqrt(2pi)) sum_j exp(-w_j^2/2), terms until < 1e-18.
  double sum = 1.0;
  for (std::int64_t j = 1;; ++j) {
    const double w = static_cast<double>(j) * delta_omega;
    const double term = std::exp(-w * w / 2.0);
    if (term < 1e-18) break;
    sum += 2.0 * term;
  }
  const double lhs_dev = delta_omega * sum / std::sqrt(2.0 * kPi) - 1.0;
  // Right side: 2 sum_{k>=1} exp(-(2 pi k/dw)^2/2).
  double rhs_dev = 0.0;
  for (std::int64_t k = 1; k <= 64; ++k) {
    const double arg = 2.0 * kPi * static_cast<double>(k) / delta_omega;
    const double term = std::exp(-arg * arg / 2.0);
    if (term < 1e-18) break;
    rhs_dev += 2.0 * term;
  }
  if (std::abs(lhs_dev - rhs_dev) > 1e-12) {
    throw Error("comb_check: Poisson-summation identity violated: lhs dev " +
                std::to_string(lhs_dev) + " vs rhs dev " + std::to_string(rhs_dev));
  }
  return lhs_dev;
}

namespace {

DiscretizationParams params_for_target(const SpectrumTarget& target,
                                       double kappa_value, double epsilon,
                                       double beta, const LemmaConstants& c) {
  switch (target.kind) {
    case CaseTag::Normal:
      return params_normal(kappa_value, epsilon, c);
    case CaseTag::BZero:
      return params_bzero(kappa_value, epsilon, c);
    case CaseTag::PositiveWithRoots:
      return params_positive(kappa_value, epsilon, c);
    case CaseTag::PositiveHermitianPart:
      return params_pos_herm(kappa_value, target.c_norm, epsilon, beta, c);
    default:
      throw DomainError("no discretization lemma for the general fallback");
  }
}

double spectrum_kappa(const SpectrumTarget& target) {
  double sigma_min = std::numeric_limits<double>::infinity();
  if (target.kind == CaseTag::PositiveWithRoots) {
    for (double ga : target.a_eigs)
      for (double lb : target.b_eigs)
        sigma_min = std::min(sigma_min, std::abs(ga + lb));
  } else {
    for (const Complex& mu : target.q_eigs)
      sigma_min = std::min(sigma_min, std::abs(mu));
  }
  if (!(sigma_min > 1e-12)) {
    throw SingularQError("calibrate: spectrum touches zero");
  }
  return std::max(1.0, 1.0 / sigma_min);
}

double spectrum_error(const SpectrumTarget& target,
                      const DiscretizationParams& params) {
  double worst = 0.0;
  if (target.kind == CaseTag::PositiveWithRoots) {
    for (double ga : target.a_eigs) {
      for (double lb : target.b_eigs) {
        const Complex h = eval_h_scalar(CaseTag::PositiveWithRoots, ga, lb, params);
        worst = std::max(worst, std::abs(h * Complex(ga + lb) - 1.0));
      }
    }
    return worst;
  }
  for (const Complex& mu : target.q_eigs) {
    const Complex h = eval_h_scalar(target.kind, mu.real(), mu.imag(), params);
    worst = std::max(worst, std::abs(h * mu - 1.0));
  }
  return worst;
}

}  // namespace

CalibrationResult calibrate_spectrum(const SpectrumTarget& target,
                                     double epsilon, int budget) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw DomainError("calibrate: epsilon must lie in (0,1)");
  }
  const double kappa_value = spectrum_kappa(target);
  LemmaConstants constants;
  KernelSpec kernel;
  double best = std::numeric_limits<double>::infinity();
  CalibrationResult result;
  for (int round = 0; round <= budget; ++round) {
    const DiscretizationParams params =
        params_for_target(target, kappa_value, epsilon, 0.5, constants);
    const double err = spectrum_error(target, params);
    if (err < best) {
      best = err;
      result = CalibrationResult{params, kernel, err, round};
    }
    if (err <= epsilon) {
      return result;
    }
    constants.c3 *= 2.0;
    constants.c4 *= 2.0;
    constants.c1 /= 2.0;
    constants.c2 /= 2.0;
  }
  throw CalibrationBudgetError(
      "calibrate: budget exhausted; best error " + std::to_string(best), best);
}

CalibrationResult calibrate(const SylvesterInstance& inst, CaseTag kind,
                            double epsilon, int budget) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw DomainError("calibrate: epsilon must lie in (0,1)");
  }
  // Precondition gate: a singular Q never enters the refinement loop.
  const double kappa_value = kappa(inst);

  if (kind == CaseTag::PositiveHermitianPart || kind == CaseTag::Normal ||
      kind == CaseTag::BZero || kind == CaseTag::PositiveWithRoots) {
    // fallthrough below
  } else {
    throw DomainError("calibrate: the general fallback has no quadrature to tune");
  }

  if (kind == CaseTag::PositiveHermitianPart) {
    // No per-eigenvalue route for non-normal Q: compare the reconstruction
    // against the oracle densely. The lemma's kappa is 1/min-eig of Q_H.
    const CMatrix q = build_q(inst);
    Eigen::SelfAdjointEigenSolver<CMatrix> es((q + q.adjoint()) / 2.0);
    const double h_min = es.eigenvalues()(0);
    if (!(h_min > 0.0)) {
      throw DomainError("calibrate: Hermitian part of Q is not positive");
    }
    const double kappa_lemma = std::max(1.0, 1.0 / h_min);
    const double c_norm = std::max(spectral_norm(inst.c), 1e-12);
    const CMatrix x_oracle = oracle_solve(inst);
    const double x_norm = std::max(spectral_norm(x_oracle), 1e-300);
    const KernelSpec kernel = calibrate_lchs_kernel(0.5);
    LemmaConstants constants;
    double best = std::numeric_limits<double>::infinity();
    CalibrationResult result;
    for (int round = 0; round <= budget; ++round) {
      const DiscretizationParams params =
          params_pos_herm(kappa_lemma, c_norm, epsilon, kernel.beta, constants);
      const LcuProgram program =
          synth_pos_herm(inst, params, kernel,
                         std::numeric_limits<std::uint64_t>::max());
      const CMatrix x_hat = apply_lcu(program, inst.c);
      const double err = spectral_norm(x_hat - x_oracle) / x_norm;
      if (err < best) {
        best = err;
        result = CalibrationResult{params, kernel, err, round};
      }
      if (err <= epsilon) {
        return result;
      }
      constants.c3 *= 2.0;
      constants.c4 *= 2.0;
      constants.c1 /= 2.0;
      constants.c2 /= 2.0;
    }
    throw CalibrationBudgetError(
        "calibrate: budget exhausted; best error " + std::to_string(best), best);
  }

  SpectrumTarget target;
  target.kind = kind;
  target.c_norm = std::max(spectral_norm(inst.c), 1e-12);
  if (kind == CaseTag::BZero) {
    if (is_hermitian(inst.a, 1e-12)) {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(inst.a);
      for (Eigen::Index i = 0; i < inst.dim(); ++i) {
        target.q_eigs.emplace_back(es.eigenvalues()(i), 0.0);
      }
    } else {
      // The Hermitian dilation has spectrum +/- the singular values of A.
      Eigen::JacobiSVD<CMatrix> svd(inst.a);
      for (Eigen::Index i = 0; i < inst.dim(); ++i) {
        target.q_eigs.emplace_back(svd.singularValues()(i), 0.0);
        target.q_eigs.emplace_back(-svd.singularValues()(i), 0.0);
      }
    }
  } else if (kind == CaseTag::PositiveWithRoots) {
    Eigen::SelfAdjointEigenSolver<CMatrix> ea((inst.a + inst.a.adjoint()) / 2.0);
    Eigen::SelfAdjointEigenSolver<CMatrix> eb((inst.b + inst.b.adjoint()) / 2.0);
    for (Eigen::Index i = 0; i < inst.dim(); ++i) {
      target.a_eigs.push_back(ea.eigenvalues()(i));
      target.b_eigs.push_back(eb.eigenvalues()(i));
    }
  } else {
    // Normal: the eigenvalues of Q are all pairwise sums.
    const SpectralData data = spectral_data(inst);
    for (const Complex& ga : data.eigs_a)
      for (const Complex& lb : data.eigs_b) target.q_eigs.push_back(ga + lb);
  }
  (void)kappa_value;
  return calibrate_spectrum(target, epsilon, budget);
}

}  // namespace qsylv
