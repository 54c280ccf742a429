#include "qsylv/problem.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

namespace qsylv {

namespace {

constexpr double kPositivityTol = 1e-10;
constexpr double kNormalityTol = 1e-10;

// Locks the row-major vec convention: Q vec(X) = vec(AX + XB) must hold,
// since the Kronecker form alone does not fix the flattening order.
bool vec_convention_self_test() {
  std::mt19937_64 rng(0x5e1f7e57);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto rand_mat = [&](Eigen::Index n) {
    CMatrix m(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) m(i, j) = Complex(u(rng), u(rng));
    return m;
  };
  const Eigen::Index n = 3;
  const CMatrix a = rand_mat(n), b = rand_mat(n), x = rand_mat(n);
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix q = kron(a, id) + kron(id, b.transpose());
  const CVector lhs = q * vec(x);
  const CVector rhs = vec(a * x + x * b);
  if ((lhs - rhs).norm() > 1e-12 * rhs.norm()) {
    throw Error(
        "vec convention self-test failed: Q vec(X) != vec(AX + XB); "
        "the flattening order is wrong");
  }
  return true;
}

void require_convention() {
  static const bool ok = vec_convention_self_test();
  (void)ok;
}

CMatrix hermitian_part_of_q(const CMatrix& q) {
  return (q + q.adjoint()) / 2.0;
}

double min_eigenvalue_hermitian(const CMatrix& h) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
  return es.eigenvalues()(0);
}

std::vector<Complex> eigenvalues_of(const CMatrix& m) {
  Eigen::ComplexEigenSolver<CMatrix> es(m, /*computeEigenvectors=*/false);
  std::vector<Complex> out(static_cast<std::size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

}  // namespace

const char* to_string(CaseTag tag) {
  switch (tag) {
    case CaseTag::Normal:
      return "normal";
    case CaseTag::PositiveHermitianPart:
      return "positive-hermitian-part";
    case CaseTag::BZero:
      return "b-zero";
    case CaseTag::PositiveWithRoots:
      return "positive-with-roots";
    case CaseTag::GeneralChebyshev:
      return "general-chebyshev";
  }
  return "unknown";
}

CaseTag case_tag_from_string(const std::string& name) {
  if (name == "normal") return CaseTag::Normal;
  if (name == "positive-hermitian-part") return CaseTag::PositiveHermitianPart;
  if (name == "b-zero") return CaseTag::BZero;
  if (name == "positive-with-roots") return CaseTag::PositiveWithRoots;
  if (name == "general-chebyshev") return CaseTag::GeneralChebyshev;
  throw DomainError("unknown case tag: " + name);
}

void SylvesterInstance::validate() const {
  require_square(a, "SylvesterInstance.a");
  require_square(b, "SylvesterInstance.b");
  require_finite(a, "SylvesterInstance.a");
  require_finite(b, "SylvesterInstance.b");
  require_finite(c, "SylvesterInstance.c");
  if (b.rows() != a.rows() || c.rows() != a.rows() || c.cols() != a.rows()) {
    throw DimensionError("SylvesterInstance: A, B, C must all be NxN");
  }
  if (spectral_norm(a) > 0.5 + 1e-12) {
    throw DomainError("SylvesterInstance: ||A|| exceeds 1/2");
  }
  if (spectral_norm(b) > 0.5 + 1e-12) {
    throw DomainError("SylvesterInstance: ||B|| exceeds 1/2");
  }
  if (spectral_norm(c) > alpha + 1e-12) {
    throw DomainError("SylvesterInstance: ||C|| exceeds alpha");
  }
  if (roots) {
    if (spectral_norm(roots->p_a * roots->p_a - a) > 1e-10 ||
        spectral_norm(roots->p_b * roots->p_b - b) > 1e-10) {
      throw DomainError("SylvesterInstance: supplied roots do not square to A, B");
    }
  }
}

CMatrix build_q(const SylvesterInstance& inst) {
  require_convention();
  const Eigen::Index n = inst.dim();
  const CMatrix id = CMatrix::Identity(n, n);
  return kron(inst.a, id) + kron(id, inst.b.transpose());
}

double kappa(const SylvesterInstance& inst) {
  const double sigma_min = smallest_singular(build_q(inst));
  if (sigma_min <= 1e-12) {
    throw SingularQError("kappa: Q is singular (gamma_j + lambda_k = 0 for some pair)");
  }
  return 1.0 / sigma_min;
}

SpectralData spectral_data(const SylvesterInstance& inst) {
  SpectralData data;
  data.q = build_q(inst);
  const double sigma_min = smallest_singular(data.q);
  if (sigma_min <= 1e-12) {
    throw SingularQError("spectral_data: Q is singular");
  }
  data.kappa = 1.0 / sigma_min;
  data.eigs_a = eigenvalues_of(inst.a);
  data.eigs_b = eigenvalues_of(inst.b);
  return data;
}

CaseTag classify(const SylvesterInstance& inst) {
  if (spectral_norm(inst.b) <= 1e-14) {
    return CaseTag::BZero;
  }
  const CMatrix q = build_q(inst);
  if (inst.roots && is_hermitian(q, 1e-12) &&
      min_eigenvalue_hermitian(hermitian_part_of_q(q)) > kPositivityTol) {
    return CaseTag::PositiveWithRoots;
  }
  if (commutator_norm(q) <= kNormalityTol) {
    return CaseTag::Normal;
  }
  if (min_eigenvalue_hermitian(hermitian_part_of_q(q)) > kPositivityTol) {
    return CaseTag::PositiveHermitianPart;
  }
  return CaseTag::GeneralChebyshev;
}

double default_embedding_pad(double kappa_rect) {
  return 1.0 + 2.0 / kappa_rect + 0.1;
}

SylvesterInstance embed_rectangular(const CMatrix& a, const CMatrix& b,
                                    const CMatrix& c, double c_pad) {
  require_square(a, "embed_rectangular.a");
  require_square(b, "embed_rectangular.b");
  const Eigen::Index m = a.rows();
  const Eigen::Index n = b.rows();
  if (c.rows() != m || c.cols() != n) {
    throw DimensionError("embed_rectangular: C must be MxN");
  }
  if (m > n) {
    throw DimensionError(
        "embed_rectangular: M > N; transpose the problem first");
  }
  // kappa of the rectangular Q, on the MN-dimensional vec space.
  const CMatrix q_rect = kron(a, CMatrix::Identity(n, n)) +
                         kron(CMatrix::Identity(m, m), b.transpose());
  const double sigma_min = smallest_singular(q_rect);
  if (sigma_min <= 1e-12) {
    throw SingularQError("embed_rectangular: rectangular Q is singular");
  }
  const double kappa_rect = 1.0 / sigma_min;
  if (m == n) {
    return SylvesterInstance{a, b, c, std::max(1.0, spectral_norm(c)), {}};
  }
  if (c_pad <= 1.0 + 1.0 / kappa_rect) {
    throw DomainError("embed_rectangular: c_pad must exceed 1 + 1/kappa = " +
                      std::to_string(1.0 + 1.0 / kappa_rect));
  }
  CMatrix a_emb = CMatrix::Zero(n, n);
  a_emb.topLeftCorner(m, m) = a;
  a_emb.bottomRightCorner(n - m, n - m) =
      c_pad * CMatrix::Identity(n - m, n - m);
  CMatrix c_emb = CMatrix::Zero(n, n);
  c_emb.topRows(m) = c;
  return SylvesterInstance{a_emb, b, c_emb, std::max(1.0, spectral_norm(c_emb)), {}};
}

SylvesterInstance hermitian_dilation(const SylvesterInstance& inst) {
  if (spectral_norm(inst.b) > 1e-14) {
    throw DomainError("hermitian_dilation: requires B = 0");
  }
  const Eigen::Index n = inst.dim();
  CMatrix a_dil = CMatrix::Zero(2 * n, 2 * n);
  a_dil.topRightCorner(n, n) = inst.a;
  a_dil.bottomLeftCorner(n, n) = inst.a.adjoint();
  CMatrix c_dil = CMatrix::Zero(2 * n, 2 * n);
  c_dil.topLeftCorner(n, n) = inst.c;
  return SylvesterInstance{a_dil, CMatrix::Zero(2 * n, 2 * n), c_dil,
                           inst.alpha, {}};
}

SylvesterInstance phase_normalize(const SylvesterInstance& inst, Complex phase) {
  if (std::abs(std::abs(phase) - 1.0) > 1e-14) {
    throw DomainError("phase_normalize: |phase| must be 1");
  }
  SylvesterInstance out = inst;
  out.a = phase * inst.a;
  out.b = phase * inst.b;
  out.c = phase * inst.c;
  if (inst.roots) {
    // Roots of the rotated matrices exist only for half-phase rotations of
    // PSD inputs; drop them rather than hand back stale data.
    out.roots.reset();
    const Complex half = std::sqrt(phase);
    const CMatrix pa = half * inst.roots->p_a;
    const CMatrix pb = half * inst.roots->p_b;
    if (spectral_norm(pa * pa - out.a) <= 1e-10 &&
        spectral_norm(pb * pb - out.b) <= 1e-10) {
      out.roots = InstanceRoots{pa, pb};
    }
  }
  return out;
}

}  // namespace qsylv
