#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsylv/linalg.hpp"

namespace qsylv {

/// Which solution route applies to an instance, in priority order.
enum class CaseTag {
  Normal,
  PositiveHermitianPart,
  BZero,
  PositiveWithRoots,
  GeneralChebyshev,
};

const char* to_string(CaseTag tag);
CaseTag case_tag_from_string(const std::string& name);

/// Square roots P_A, P_B with P_A^2 = A and P_B^2 = B, supplied when the
/// positive-matrices route is wanted.
struct InstanceRoots {
  CMatrix p_a;
  CMatrix p_b;
};

/// A Sylvester problem A X + X B = C together with the block-encoding
/// normalization alpha >= ||C|| of the right-hand side.
///
/// validate() checks the normalized-problem invariants (||A||,||B|| <= 1/2,
/// ||C|| <= alpha, roots consistent). Reductions such as embed_rectangular
/// may return instances that need rescaling before they satisfy them.
struct SylvesterInstance {
  CMatrix a;
  CMatrix b;
  CMatrix c;
  double alpha = 1.0;
  std::optional<InstanceRoots> roots;

  Eigen::Index dim() const { return a.rows(); }
  void validate() const;
};

/// Q, its inverse norm, and the eigenvalues of A and B.
struct SpectralData {
  CMatrix q;
  double kappa = 0.0;
  std::vector<Complex> eigs_a;
  std::vector<Complex> eigs_b;
};

/// Q = A (x) I_N + I_N (x) B^T, so that Q vec(X) = vec(AX + XB) under the
/// row-major vec convention. The convention is locked by a startup
/// self-test on first use.
CMatrix build_q(const SylvesterInstance& inst);

/// kappa = 1/sigma_min(Q). Throws SingularQError when sigma_min <= 1e-12.
double kappa(const SylvesterInstance& inst);

SpectralData spectral_data(const SylvesterInstance& inst);

/// Case classification with priority
///   BZero > PositiveWithRoots > Normal > PositiveHermitianPart >
///   GeneralChebyshev,
/// ordered by the query-complexity advantage of each route.
CaseTag classify(const SylvesterInstance& inst);

/// Sensible padding constant for embed_rectangular: 1 + 2/kappa + 0.1.
double default_embedding_pad(double kappa_rect);

/// Embeds an M x N problem (M <= N) into a square N x N one by padding A
/// with c_pad * I and C with zero rows. The top M x N block of the embedded
/// solution is the rectangular solution; the bottom block is zero.
/// Requires c_pad > 1 + 1/kappa of the rectangular problem.
SylvesterInstance embed_rectangular(const CMatrix& a, const CMatrix& b,
                                    const CMatrix& c, double c_pad);

/// For B = 0 and general A: maps A to [[0, A], [A^dag, 0]] and C to
/// [[C, 0], [0, 0]] so the new A is Hermitian. The solution of the dilated
/// problem carries X = A^{-1} C in its lower-left N x N block.
SylvesterInstance hermitian_dilation(const SylvesterInstance& inst);

/// Multiplies A, B, C by a unit phase. The solution X is unchanged.
SylvesterInstance phase_normalize(const SylvesterInstance& inst, Complex phase);

}  // namespace qsylv
