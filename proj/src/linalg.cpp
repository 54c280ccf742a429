#include "qsylv/linalg.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

namespace qsylv {

bool all_finite(const CMatrix& m) {
  return m.allFinite();
}

void require_finite(const CMatrix& m, const char* where) {
  if (!m.allFinite()) {
    throw DomainError(std::string(where) + ": matrix has non-finite entries");
  }
}

void require_square(const CMatrix& m, const char* where) {
  if (m.rows() != m.cols()) {
    throw DimensionError(std::string(where) + ": matrix must be square, got " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b, std::int64_t element_cap) {
  require_finite(a, "kron");
  require_finite(b, "kron");
  const std::int64_t entries = std::int64_t{a.rows()} * a.cols() * b.rows() * b.cols();
  if (entries > element_cap) {
    throw DimensionError("kron: result would have " + std::to_string(entries) +
                         " entries, above the element cap of " +
                         std::to_string(element_cap));
  }
  return Eigen::kroneckerProduct(a, b);
}

CVector vec(const CMatrix& f) {
  CVector v(f.rows() * f.cols());
  for (Eigen::Index i = 0; i < f.rows(); ++i) {
    for (Eigen::Index j = 0; j < f.cols(); ++j) {
      v(i * f.cols() + j) = f(i, j);
    }
  }
  return v;
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw DimensionError("unvec: vector of size " + std::to_string(v.size()) +
                         " cannot fill a " + std::to_string(rows) + "x" +
                         std::to_string(cols) + " matrix");
  }
  CMatrix f(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) {
      f(i, j) = v(i * cols + j);
    }
  }
  return f;
}

std::pair<CMatrix, CMatrix> herm_split(const CMatrix& m) {
  require_square(m, "herm_split");
  const CMatrix adj = m.adjoint();
  CMatrix h = (m + adj) / 2.0;
  CMatrix s = (m - adj) / Complex(0.0, 2.0);
  return {std::move(h), std::move(s)};
}

double spectral_norm(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  if (m.rows() <= 32 && m.cols() <= 32) {
    return Eigen::JacobiSVD<CMatrix>(m).singularValues()(0);
  }
  return Eigen::BDCSVD<CMatrix>(m).singularValues()(0);
}

double smallest_singular(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::VectorXd sv;
  if (m.rows() <= 32 && m.cols() <= 32) {
    sv = Eigen::JacobiSVD<CMatrix>(m).singularValues();
  } else {
    sv = Eigen::BDCSVD<CMatrix>(m).singularValues();
  }
  return sv(sv.size() - 1);
}

double fro_norm(const CMatrix& m) {
  return m.norm();
}

double commutator_norm(const CMatrix& m) {
  const CMatrix adj = m.adjoint();
  return spectral_norm(m * adj - adj * m);
}

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return spectral_norm(m - m.adjoint()) <= tol * std::max(1.0, spectral_norm(m));
}

CMatrix mat_exp(const CMatrix& m, double norm_cutoff) {
  require_square(m, "mat_exp");
  require_finite(m, "mat_exp");
  const double nrm = spectral_norm(m);
  if (nrm > norm_cutoff) {
    throw DomainError("mat_exp: spectral norm " + std::to_string(nrm) +
                      " exceeds the cutoff " + std::to_string(norm_cutoff));
  }
  if (commutator_norm(m) <= 1e-12 * std::max(1.0, nrm * nrm)) {
    // Normal input: the Schur form is diagonal up to roundoff, so the
    // exponential reduces to phases in a unitary basis.
    Eigen::ComplexSchur<CMatrix> schur(m);
    const CMatrix& u = schur.matrixU();
    CVector phases(m.rows());
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      phases(i) = std::exp(schur.matrixT()(i, i));
    }
    return u * phases.asDiagonal() * u.adjoint();
  }
  return m.exp();
}

CMatrix unitary_evolution(const CMatrix& hermitian_generator, double time) {
  require_square(hermitian_generator, "unitary_evolution");
  require_finite(hermitian_generator, "unitary_evolution");
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_generator);
  CVector phases(hermitian_generator.rows());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases(i) = std::exp(Complex(0.0, -time * es.eigenvalues()(i)));
  }
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

CMatrix psd_sqrt(const CMatrix& m) {
  require_square(m, "psd_sqrt");
  require_finite(m, "psd_sqrt");
  if (!is_hermitian(m)) {
    throw DomainError("psd_sqrt: input is not Hermitian");
  }
  Eigen::SelfAdjointEigenSolver<CMatrix> es((m + m.adjoint()) / 2.0);
  Eigen::VectorXd d = es.eigenvalues();
  for (Eigen::Index i = 0; i < d.size(); ++i) {
    if (d(i) < -1e-10) {
      throw DomainError("psd_sqrt: eigenvalue " + std::to_string(d(i)) +
                        " is below -1e-10; input is not PSD");
    }
    d(i) = std::sqrt(std::max(d(i), 0.0));
  }
  CMatrix s = es.eigenvectors() * d.cast<Complex>().asDiagonal() *
              es.eigenvectors().adjoint();
  return (s + CMatrix(s.adjoint())) / 2.0;
}

}  // namespace qsylv
