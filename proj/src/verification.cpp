#include "qsylv/verification.hpp"

#include <cmath>
#include <random>

#include <Eigen/LU>

#include "qsylv/chebyshev.hpp"

namespace qsylv {

namespace {

CMatrix random_gaussian_matrix(Eigen::Index rows, Eigen::Index cols,
                               std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

}  // namespace

CMatrix oracle_solve(const SylvesterInstance& inst) {
  const Eigen::Index n = inst.dim();
  if (n * n > (std::int64_t{1} << 12)) {
    throw DimensionError("oracle_solve: vectorized dimension above the desk-scale cap");
  }
  const CMatrix q = build_q(inst);
  if (smallest_singular(q) <= 1e-12) {
    throw SingularQError("oracle_solve: Q is singular");
  }
  const CVector rhs = vec(inst.c);
  const CVector x_vec = Eigen::PartialPivLU<CMatrix>(q).solve(rhs);
  const double defect = (q * x_vec - rhs).norm();
  if (defect > 1e-10 * std::max(rhs.norm(), 1.0)) {
    throw Error("oracle_solve: factorization residual " + std::to_string(defect) +
                " above 1e-10");
  }
  return unvec(x_vec, n, n);
}

double residual(const SylvesterInstance& inst, const CMatrix& x_hat) {
  if (x_hat.rows() != inst.dim() || x_hat.cols() != inst.dim()) {
    throw DimensionError("residual: X-hat has wrong dimensions");
  }
  const CMatrix r = inst.a * x_hat + x_hat * inst.b - inst.c;
  return spectral_norm(r) / std::max(spectral_norm(inst.c), 1e-300);
}

PropertyCheckResult frobenius_transfer_check(const SylvesterInstance& inst,
                                             double eps_mult, int draws,
                                             std::uint64_t seed) {
  const Eigen::Index n = inst.dim();
  const CMatrix q = build_q(inst);
  const Eigen::PartialPivLU<CMatrix> lu(q);
  const CVector x_vec = lu.solve(vec(inst.c));
  const CMatrix x = unvec(x_vec, n, n);
  const double x_norm = spectral_norm(x);
  std::mt19937_64 rng(seed);
  PropertyCheckResult result;
  result.draws = draws;
  result.bound = eps_mult * std::sqrt(static_cast<double>(n)) * x_norm;
  result.ok = true;
  for (int d = 0; d < draws; ++d) {
    CMatrix e = random_gaussian_matrix(n * n, n * n, rng);
    e *= eps_mult / spectral_norm(e);
    const CMatrix x_prime = unvec(x_vec - e * x_vec, n, n);
    const double err = spectral_norm(x - x_prime);
    result.worst_observed = std::max(result.worst_observed, err);
    if (err > result.bound + 1e-15) result.ok = false;
  }
  return result;
}

PropertyCheckResult evolution_perturbation_check(const LcuProgram& program,
                                                 const SylvesterInstance& inst,
                                                 double eps, int draws,
                                                 std::uint64_t seed) {
  const std::vector<LcuTerm> terms = materialize_terms(program);
  const double x = program.rescale();
  if (!(x > 0.0)) {
    throw DomainError("evolution_perturbation_check: program has zero rescale");
  }
  CMatrix base = CMatrix::Zero(inst.dim(), inst.dim());
  for (const LcuTerm& t : terms) {
    base += t.coeff * evolution_matrix(program, t.left) * inst.c *
            evolution_matrix(program, t.right);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> mag(0.0, 0.999 * eps / 4.0);
  PropertyCheckResult result;
  result.draws = draws;
  result.bound = eps;
  result.ok = true;
  for (int d = 0; d < draws; ++d) {
    CMatrix perturbed = CMatrix::Zero(inst.dim(), inst.dim());
    for (const LcuTerm& t : terms) {
      // V' = V e^{-i s H} with ||H|| = 1 and s <= eps/4, so that
      // ||V - V'|| = 2 sin(s/2) <= eps/4, and likewise for the right side.
      CMatrix h_l = random_gaussian_matrix(inst.dim(), inst.dim(), rng);
      h_l = (h_l + CMatrix(h_l.adjoint())) / 2.0;
      h_l /= spectral_norm(h_l);
      CMatrix h_r = random_gaussian_matrix(inst.dim(), inst.dim(), rng);
      h_r = (h_r + CMatrix(h_r.adjoint())) / 2.0;
      h_r /= spectral_norm(h_r);
      const CMatrix left =
          evolution_matrix(program, t.left) * unitary_evolution(h_l, mag(rng));
      const CMatrix right =
          evolution_matrix(program, t.right) * unitary_evolution(h_r, mag(rng));
      perturbed += t.coeff * left * inst.c * right;
    }
    const double change = spectral_norm(perturbed - base) / x;
    result.worst_observed = std::max(result.worst_observed, change);
    if (change > eps) result.ok = false;
  }
  return result;
}

ComplexityEstimate complexity_estimate(CaseTag kind, double kappa_value,
                                       Eigen::Index n_dim, double c_norm,
                                       double epsilon, double beta) {
  if (!(epsilon > 0.0) || epsilon >= 1.0) {
    throw DomainError("complexity_estimate: epsilon must lie in (0,1)");
  }
  const double n = static_cast<double>(n_dim);
  ComplexityEstimate est;
  switch (kind) {
    case CaseTag::Normal:
      est.q_est = kappa_value * std::log(kappa_value * n / epsilon);
      est.g_est = est.q_est;
      est.x_est = kappa_value * std::sqrt(std::log(n / epsilon));
      est.x_formula = "kappa*alpha*sqrt(log(N/eps))";
      break;
    case CaseTag::PositiveHermitianPart: {
      const double l = std::log(kappa_value * c_norm / epsilon);
      est.q_est = kappa_value * std::pow(l, 1.0 + 1.0 / beta);
      est.g_est = est.q_est;
      est.x_est = kappa_value * l;
      est.x_formula = "kappa*alpha*log(kappa*normC/eps)";
      break;
    }
    case CaseTag::BZero:
      est.q_est = kappa_value * std::log(1.0 / epsilon);
      est.g_est = est.q_est;
      est.x_est = kappa_value * std::sqrt(std::log(1.0 / epsilon));
      est.x_formula = "kappa*alpha*sqrt(log(1/eps))";
      break;
    case CaseTag::PositiveWithRoots:
      est.q_est = std::sqrt(kappa_value) * std::log(kappa_value * n / epsilon);
      est.g_est = est.q_est;
      est.x_est = kappa_value * std::log(n / epsilon);
      est.x_formula = "kappa*alpha*log(N/eps)";
      break;
    case CaseTag::GeneralChebyshev: {
      // No polynomial-free route: report the coefficient-sum bound
      // (8/3) * 2^(2 j0 + 2) instead of a query count.
      const long long j0 = cheb_j0(kappa_value, epsilon);
      est.cheb_l1_bound = (8.0 / 3.0) * std::pow(2.0, 2.0 * static_cast<double>(j0) + 2.0);
      est.x_formula = "exponential: (8/3)*2^(2*j0+2)";
      break;
    }
  }
  return est;
}

}  // namespace qsylv
