#include "qsylv/chebyshev.hpp"

#include <cmath>

namespace qsylv {

namespace {

// Full coefficient vector of T_n (degree n), exact integers.
std::vector<ChebInt> cheb_full_coeffs(int n) {
  std::vector<ChebInt> prev{ChebInt(1)};      // T_0 = 1
  if (n == 0) return prev;
  std::vector<ChebInt> cur{ChebInt(0), ChebInt(1)};  // T_1 = x
  for (int m = 1; m < n; ++m) {
    std::vector<ChebInt> next(static_cast<std::size_t>(m) + 2, ChebInt(0));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] = 2 * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

// Binomial tail W_j = sum_{i=j+1}^{b} binom(2b, b+i) / 2^{2b}, via
// log-gamma with compensated summation.
double binomial_tail(long long b, long long j) {
  if (j >= b) return 0.0;
  const double log_scale = 2.0 * static_cast<double>(b) * std::log(2.0);
  const double lg_2b = std::lgamma(2.0 * static_cast<double>(b) + 1.0);
  double sum = 0.0, comp = 0.0;
  for (long long i = j + 1; i <= b; ++i) {
    const double log_term = lg_2b -
                            std::lgamma(static_cast<double>(b + i) + 1.0) -
                            std::lgamma(static_cast<double>(b - i) + 1.0) -
                            log_scale;
    const double term = std::exp(log_term);
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
  }
  return sum;
}

}  // namespace

std::vector<ChebInt> cheb_odd_coeffs(int j) {
  if (j < 0) throw DomainError("cheb_odd_coeffs: j must be nonnegative");
  if (j > 40) {
    throw DomainError("cheb_odd_coeffs: j > 40 would overflow the 128-bit path");
  }
  const std::vector<ChebInt> full = cheb_full_coeffs(2 * j + 1);
  std::vector<ChebInt> odd(static_cast<std::size_t>(j) + 1, ChebInt(0));
  for (int k = 0; k <= j; ++k) {
    odd[static_cast<std::size_t>(k)] = full[static_cast<std::size_t>(2 * k + 1)];
  }
  return odd;
}

long long cheb_b(double kappa_value, double epsilon) {
  if (!(kappa_value >= 1.0) || !(epsilon > 0.0) || epsilon >= 1.0) {
    throw DomainError("cheb_b: need kappa >= 1 and eps in (0,1)");
  }
  return static_cast<long long>(
      std::ceil(kappa_value * kappa_value * std::log(kappa_value / epsilon) - 1e-9));
}

long long cheb_j0(double kappa_value, double epsilon) {
  const auto b = static_cast<double>(cheb_b(kappa_value, epsilon));
  return static_cast<long long>(
      std::ceil(std::sqrt(b * std::log(4.0 * b / epsilon)) - 1e-9));
}

ChebPlan build_plan(double kappa_value, double epsilon, long long j0_budget) {
  ChebPlan plan;
  plan.kappa = kappa_value;
  plan.epsilon = epsilon;
  plan.b = cheb_b(kappa_value, epsilon);
  plan.j0 = cheb_j0(kappa_value, epsilon);
  if (plan.j0 > j0_budget) {
    throw TermBudgetError("build_plan: j0 = " + std::to_string(plan.j0) +
                              " exceeds the budget of " + std::to_string(j0_budget),
                          static_cast<std::uint64_t>(plan.j0));
  }
  // Precompute T_{2j+1,2k+1} for j = 0..j0.
  std::vector<std::vector<ChebInt>> t_coeffs;
  t_coeffs.reserve(static_cast<std::size_t>(plan.j0) + 1);
  for (long long j = 0; j <= plan.j0; ++j) {
    t_coeffs.push_back(cheb_odd_coeffs(static_cast<int>(j)));
  }
  std::vector<double> tails(static_cast<std::size_t>(plan.j0) + 1);
  for (long long j = 0; j <= plan.j0; ++j) {
    tails[static_cast<std::size_t>(j)] = binomial_tail(plan.b, j);
  }
  plan.xi.assign(static_cast<std::size_t>(plan.j0) + 1, 0.0);
  for (long long k = 0; k <= plan.j0; ++k) {
    long double acc = 0.0L;
    for (long long j = k; j <= plan.j0; ++j) {
      const double t_jk = static_cast<double>(
          t_coeffs[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
      const double sign = ((j + k) % 2 == 0) ? 1.0 : -1.0;
      acc += static_cast<long double>(sign * tails[static_cast<std::size_t>(j)] * t_jk);
    }
    plan.xi[static_cast<std::size_t>(k)] = 4.0 * static_cast<double>(acc);
  }
  double l1 = 0.0;
  for (double x : plan.xi) l1 += std::abs(x);
  plan.coeff_l1 = l1;
  const double bound = (8.0 / 3.0) * std::pow(2.0, 2.0 * static_cast<double>(plan.j0) + 2.0);
  if (!(plan.coeff_l1 < bound)) {
    throw Error("build_plan: coefficient sum " + std::to_string(plan.coeff_l1) +
                " violates the upper bound " + std::to_string(bound));
  }
  return plan;
}

CMatrix apply_power(const SylvesterInstance& inst, int k, int nesting_budget) {
  if (k < 0) throw DomainError("apply_power: k must be nonnegative");
  if (2 * k + 1 > nesting_budget) {
    throw TermBudgetError("apply_power: 2k+1 = " + std::to_string(2 * k + 1) +
                              " nested applications exceed the budget",
                          static_cast<std::uint64_t>(2 * k + 1));
  }
  const CMatrix a_dag = inst.a.adjoint();
  const CMatrix b_dag = inst.b.adjoint();
  auto map_dag = [&](const CMatrix& m) { return CMatrix(a_dag * m + m * b_dag); };
  auto map_fwd = [&](const CMatrix& m) { return CMatrix(inst.a * m + m * inst.b); };
  CMatrix acc = map_dag(inst.c);
  for (int i = 0; i < k; ++i) {
    acc = map_dag(map_fwd(acc));
  }
  return acc;
}

std::pair<CMatrix, ChebPlan> solve_general(const SylvesterInstance& inst,
                                           double epsilon) {
  const double kappa_value = kappa(inst);
  const ChebPlan plan = build_plan(kappa_value, epsilon);
  const CMatrix a_dag = inst.a.adjoint();
  const CMatrix b_dag = inst.b.adjoint();
  auto map_dag = [&](const CMatrix& m) { return CMatrix(a_dag * m + m * b_dag); };
  auto map_fwd = [&](const CMatrix& m) { return CMatrix(inst.a * m + m * inst.b); };
  // Incremental nesting: P_0 = Ldag(C), P_k = Ldag(L(P_{k-1})).
  CMatrix power = map_dag(inst.c);
  CMatrix x_hat = plan.xi[0] * power;
  for (long long k = 1; k <= plan.j0; ++k) {
    power = map_dag(map_fwd(power));
    x_hat += plan.xi[static_cast<std::size_t>(k)] * power;
  }
  return {x_hat, plan};
}

Complex cheb_scalar_inverse(const ChebPlan& plan, Complex q) {
  const Complex qbar = std::conj(q);
  const double q2 = std::norm(q);
  Complex acc(0.0, 0.0);
  double power = 1.0;  // (q qbar)^k
  for (std::size_t k = 0; k < plan.xi.size(); ++k) {
    acc += plan.xi[k] * qbar * power;
    power *= q2;
  }
  return acc;
}

}  // namespace qsylv
