#pragma once

#include <vector>

#include "qsylv/lcu.hpp"

namespace qsylv {

/// Largest unitary the assembly tier will build (rows = cols).
inline constexpr Eigen::Index kAssemblyDimCap = 1 << 12;

/// A unitary whose top-left block_dim x block_dim block approximates
/// target/alpha.
struct BlockEncoding {
  CMatrix unitary;
  Eigen::Index block_dim = 0;
  double alpha = 1.0;
};

/// The PREPARE/SELECT decomposition behind an assembled encoding: V loads
/// sqrt-weight amplitudes, SELECT applies the per-slot unitaries, and
/// V' = V^dag * diag(phases) closes the circuit with the coefficient phases
/// absorbed. Padding slots (up to the power-of-two ancilla dimension) carry
/// zero weight and identity SELECT action.
struct LcuCircuit {
  CMatrix prepare;
  std::vector<std::pair<CMatrix, CMatrix>> select_terms;
  std::vector<Complex> phases;
  CMatrix unprime;
  Eigen::Index ancilla_dim = 0;
};

/// Exact unitary completion of C/alpha:
///   [[C/a, sqrt(I - CC^dag/a^2)], [sqrt(I - C^dag C/a^2), -C^dag/a]].
BlockEncoding dilate(const CMatrix& c, double alpha);

/// Unit vector with entries sqrt(w_i / sum w), padded to a power of two.
CVector prepare_state(const std::vector<double>& weights);

/// A unitary whose first column is the given unit vector (Householder
/// completion; the first entry must be real and nonnegative).
CMatrix completion_unitary(const CVector& first_column);

/// Core LCU block-encoding: given complex coefficients x_i and unitaries
/// U_i (all of dimension block_dim), builds W = (V' (x) I) SELECT (V (x) I)
/// whose top-left block is (1/sum|x_i|) sum x_i U_i.
BlockEncoding lcu_block_encode(const std::vector<Complex>& coeffs,
                               const std::vector<CMatrix>& unitaries,
                               Eigen::Index dim_cap = kAssemblyDimCap);

/// Builds the two-sided circuit for a program around the C/alpha encoding:
/// slot i carries L_i * U_C * R_i with the evolutions embedded as
/// L_i (+) I on the dilation space.
LcuCircuit make_circuit(const LcuProgram& program, const BlockEncoding& u_c,
                        Eigen::Index dim_cap = kAssemblyDimCap);

/// Multiplies the circuit out into a single unitary block-encoding of
/// X-hat / x with x = program.l1 * alpha.
BlockEncoding assemble(const LcuProgram& program, const BlockEncoding& u_c,
                       Eigen::Index dim_cap = kAssemblyDimCap);

/// Top-left block_dim x block_dim submatrix.
CMatrix extract_block(const BlockEncoding& be);

struct BlockEncodingCheck {
  double block_error = 0.0;      // ||extract_block - target||
  double unitarity_defect = 0.0; // ||U^dag U - I||
  bool pass = false;
};

/// pass iff block_error <= eps and unitarity_defect <= 1e-10.
BlockEncodingCheck verify_block_encoding(const BlockEncoding& be,
                                         const CMatrix& target, double eps);

}  // namespace qsylv
