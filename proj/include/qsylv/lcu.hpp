#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "qsylv/discretization.hpp"
#include "qsylv/problem.hpp"

namespace qsylv {

/// Default cap on the number of LCU terms a program may carry.
inline constexpr std::uint64_t kDefaultTermBudget = 10'000'000;

/// Cap on terms that may be materialized or summed one by one.
inline constexpr std::uint64_t kDenseTermCap = 200'000;

enum class Side { Left, Right };

/// One Hamiltonian-evolution factor: the unitary
///   exp(-i * time * (h_weight * M_H + s_weight * M_S))
/// where M is the side's matrix (A or B) split into Hermitian and skew
/// parts; for the positive-with-roots case M_H is the root P and
/// s_weight = 0.
struct EvolutionSpec {
  double h_weight = 0.0;
  double s_weight = 0.0;
  double time = 0.0;
  Side side = Side::Left;
};

struct LcuTerm {
  Complex coeff;
  EvolutionSpec left;
  EvolutionSpec right;
};

/// A discretized inverse (or propagator-integral) program:
/// X-hat = sum over terms of coeff * exp(left) * C * exp(right).
///
/// Terms are a Cartesian product over the grid axes and can number in the
/// millions at calibrated parameters, so they are enumerated on demand
/// rather than stored; tiny hand-built programs may carry explicit terms.
struct LcuProgram {
  CaseTag kind = CaseTag::Normal;
  DiscretizationParams params;
  KernelSpec kernel;

  // Generator matrices for the evolutions. For positive-with-roots, left_h
  // and right_h hold the roots P_A, P_B; for b-zero the right side is the
  // identity evolution.
  CMatrix left_h, left_s;
  CMatrix right_h, right_s;
  bool right_is_identity = false;

  // +1 for the appendix-lemma skew sign, -1 for the main-text variant.
  double skew_sign = 1.0;

  double alpha = 1.0;
  double l1 = 0.0;
  std::uint64_t term_count = 0;

  std::vector<LcuTerm> explicit_terms;
  bool has_explicit_terms() const { return !explicit_terms.empty() || term_count == 0; }

  /// x = y * alpha: the block-encoding rescale factor.
  double rescale() const { return l1 * alpha; }
};

/// Flip between the appendix-lemma skew sign (+A_S, validated against the
/// oracle) and the main-text variant (-A_S, kept for comparison only).
enum class SkewSignConvention { Appendix, MainText };

/// Normal Q: triple-sum program with coefficients
///   (i/2pi) dt dw^2 (w_j - i w_j') exp(-(w_j^2+w_j'^2)/2)
/// and evolutions exp(-i t_r (w_j M_H + w_j' M_S)) on both sides.
LcuProgram synth_normal(const SylvesterInstance& inst,
                        const DiscretizationParams& params,
                        std::uint64_t term_budget = kDefaultTermBudget);

/// Positive Hermitian part: propagator-integral program with coefficients
/// dt dw f(w_j) and evolutions exp(-i (M_H w_j + M_S) t_r).
LcuProgram synth_pos_herm(const SylvesterInstance& inst,
                          const DiscretizationParams& params,
                          const KernelSpec& kernel,
                          std::uint64_t term_budget = kDefaultTermBudget,
                          SkewSignConvention sign = SkewSignConvention::Appendix);

/// B = 0, Hermitian A: left-only program with coefficients
///   (i/sqrt(2pi)) dt dw w_j exp(-w_j^2/2) and evolutions exp(-i t_r w_j A).
LcuProgram synth_bzero(const SylvesterInstance& inst,
                       const DiscretizationParams& params,
                       std::uint64_t term_budget = kDefaultTermBudget);

/// Positive Q with roots: coefficients (1/2pi) dt dw^2 exp(-(w_j^2+w_j'^2)/2)
/// and evolutions exp(-i w_j sqrt(2 t_r) P) on each side.
LcuProgram synth_positive(const SylvesterInstance& inst,
                          const DiscretizationParams& params,
                          std::uint64_t term_budget = kDefaultTermBudget);

/// Builds a program from an explicit term list (used by tests and the
/// block-encoding tier).
LcuProgram program_from_terms(CaseTag kind, const DiscretizationParams& params,
                              const SylvesterInstance& inst,
                              std::vector<LcuTerm> terms);

/// y = sum |coeff|, recomputed from the program structure.
double l1_norm(const LcuProgram& program);

/// Calls fn for every term, in the deterministic order r-major, then j,
/// then j'.
void enumerate_terms(const LcuProgram& program,
                     const std::function<void(const LcuTerm&)>& fn);

/// Materializes the term list; throws TermBudgetError above cap.
std::vector<LcuTerm> materialize_terms(const LcuProgram& program,
                                       std::uint64_t cap = kDenseTermCap);

enum class ApplyStrategy {
  Auto,           // eigenbasis when available, else geometric r-sum, else dense
  EigenBasis,     // joint-eigenbasis scalar sums (normal commuting inputs)
  GeometricRSum,  // closed-form r-sum per frequency index, any matrices
  DenseTerms,     // literal term-by-term sum; ground truth for the fast paths
};

/// Dense realization X-hat = sum coeff * exp(left) * C * exp(right).
/// The c argument may differ from the instance's C (linearity).
CMatrix apply_lcu(const LcuProgram& program, const CMatrix& c,
                  ApplyStrategy strategy = ApplyStrategy::Auto,
                  std::uint64_t dense_budget = kDenseTermCap);

/// The unitary for one evolution factor of a program.
CMatrix evolution_matrix(const LcuProgram& program, const EvolutionSpec& spec);

/// Scalar evaluation of the discretized inverse h at an eigenvalue:
/// for Normal, lam_h + i*lam_s is an eigenvalue of Q; for BZero, lam_h is an
/// eigenvalue of A (lam_s ignored); for PositiveWithRoots, lam_h and lam_s
/// are eigenvalues of A and B. Uses the closed-form geometric sum over r
/// where the time dependence is geometric (limit value R as theta -> 0).
Complex eval_h_scalar(CaseTag kind, double lam_h, double lam_s,
                      const DiscretizationParams& params);

/// Scalar evaluation of the positive-hermitian-part propagator sum at an
/// eigenvalue mu of Q (valid when A and B are normal).
Complex eval_pos_herm_scalar(Complex mu, const DiscretizationParams& params,
                             const KernelSpec& kernel);

/// Discrete Gaussian transform g(s) = (dw/sqrt(2pi)) sum_j e^{-w_j^2/2}
/// e^{-i w_j s}; real by symmetry, and equal to e^{-s^2/2} up to aliasing
/// and truncation.
double gaussian_comb_transform(double s, const DiscretizationParams& params);

}  // namespace qsylv
