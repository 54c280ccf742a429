#pragma once

#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qsylv/problem.hpp"

namespace qsylv {

/// Exact integer type for Chebyshev coefficients; T_81 tops out near 2^80.
using ChebInt = boost::multiprecision::int128_t;

/// Odd-power coefficients of T_{2j+1}: entry k is the coefficient of
/// x^{2k+1}, k = 0..j, from the recurrence T_{n+1} = 2x T_n - T_{n-1} over
/// exact integers. Requires j <= 40 (coefficients grow as 4^j).
std::vector<ChebInt> cheb_odd_coeffs(int j);

/// b = ceil(kappa^2 log(kappa/eps)), natural log.
long long cheb_b(double kappa_value, double epsilon);

/// j0 = ceil(sqrt(b log(4b/eps))).
long long cheb_j0(double kappa_value, double epsilon);

/// Polynomial plan approximating 1/q on the annulus 1/kappa <= |q| <= 1:
///   sum_k xi_k q-bar (q q-bar)^k,
/// with xi_k assembled from binomial tails (computed in logs) and exact
/// Chebyshev coefficients. coeff_l1 = sum |xi_k| demonstrates the
/// exponential blow-up of this route.
struct ChebPlan {
  double kappa = 0.0;
  double epsilon = 0.0;
  long long b = 0;
  long long j0 = 0;
  std::vector<double> xi;
  double coeff_l1 = 0.0;
};

ChebPlan build_plan(double kappa_value, double epsilon,
                    long long j0_budget = 64);

/// unvec((Q^dag (Q Q^dag)^k) vec C) through the alternating maps
/// Ldag(M) = A^dag M + M B^dag and L(M) = A M + M B, innermost Ldag.
CMatrix apply_power(const SylvesterInstance& inst, int k,
                    int nesting_budget = 129);

/// X-hat = sum_k xi_k * apply_power(inst, k). The only route for
/// non-normal, non-positive instances; practical only for small kappa.
std::pair<CMatrix, ChebPlan> solve_general(const SylvesterInstance& inst,
                                           double epsilon);

/// Scalar probe sum_k xi_k conj(q) (q conj(q))^k, which should approximate
/// 1/q on the annulus.
Complex cheb_scalar_inverse(const ChebPlan& plan, Complex q);

}  // namespace qsylv
