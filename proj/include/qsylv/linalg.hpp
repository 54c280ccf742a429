#pragma once

#include <complex>
#include <cstdint>
#include <utility>

#include <Eigen/Dense>

#include "qsylv/errors.hpp"

namespace qsylv {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

/// Entry cap for Kronecker products (keeps desk-scale behavior predictable).
inline constexpr std::int64_t kKronElementCap = std::int64_t{1} << 24;

/// Spectral-norm cutoff above which mat_exp refuses to run.
inline constexpr double kMatExpNormCutoff = 1e4;

bool all_finite(const CMatrix& m);
void require_finite(const CMatrix& m, const char* where);
void require_square(const CMatrix& m, const char* where);

/// Kronecker product with block-of-b layout:
///   kron(a,b)(i*b.rows()+k, j*b.cols()+l) = a(i,j) * b(k,l).
/// Throws DimensionError when the result would exceed element_cap entries.
CMatrix kron(const CMatrix& a, const CMatrix& b,
             std::int64_t element_cap = kKronElementCap);

/// Row-major flattening: vec(F)(i*cols + j) = F(i,j), matching the
/// |j,k> ordering used for vectorized Sylvester solves.
CVector vec(const CMatrix& f);

/// Inverse of vec. Requires v.size() == rows*cols.
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

/// Splits M = M_H + i*M_S with both parts Hermitian:
///   M_H = (M + M^dag)/2,  M_S = (M - M^dag)/(2i).
std::pair<CMatrix, CMatrix> herm_split(const CMatrix& m);

/// Matrix exponential. Uses a unitary eigendecomposition (complex Schur)
/// when the input is normal, i.e. ||[M, M^dag]|| <= 1e-12 * max(1, ||M||^2);
/// otherwise falls back to scaling-and-squaring with a diagonal Pade
/// approximant. Throws DomainError when ||M|| exceeds norm_cutoff.
CMatrix mat_exp(const CMatrix& m, double norm_cutoff = kMatExpNormCutoff);

/// e^{-i * time * g} for Hermitian g, computed through the self-adjoint
/// eigendecomposition so the result is unitary to machine precision.
CMatrix unitary_evolution(const CMatrix& hermitian_generator, double time);

double spectral_norm(const CMatrix& m);
double smallest_singular(const CMatrix& m);
double fro_norm(const CMatrix& m);

/// ||[M, M^dag]||, the normality defect.
double commutator_norm(const CMatrix& m);

bool is_hermitian(const CMatrix& m, double tol = 1e-12);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clamped to 0;
/// anything below -1e-10 is a genuine non-PSD input and throws DomainError.
CMatrix psd_sqrt(const CMatrix& m);

}  // namespace qsylv
