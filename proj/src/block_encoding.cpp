#include "qsylv/block_encoding.hpp"

#include <cmath>

namespace qsylv {

namespace {

Eigen::Index next_power_of_two(Eigen::Index n) {
  Eigen::Index p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

BlockEncoding dilate(const CMatrix& c, double alpha) {
  require_finite(c, "dilate");
  require_square(c, "dilate");
  if (!(alpha > 0.0)) {
    throw DomainError("dilate: alpha must be positive");
  }
  if (spectral_norm(c) > alpha * (1.0 + 1e-12)) {
    throw DomainError("dilate: ||C|| exceeds alpha");
  }
  const Eigen::Index n = c.rows();
  const CMatrix t = c / alpha;
  const CMatrix id = CMatrix::Identity(n, n);
  const CMatrix upper_right = psd_sqrt(id - t * t.adjoint());
  const CMatrix lower_left = psd_sqrt(id - t.adjoint() * t);
  CMatrix u(2 * n, 2 * n);
  u.topLeftCorner(n, n) = t;
  u.topRightCorner(n, n) = upper_right;
  u.bottomLeftCorner(n, n) = lower_left;
  u.bottomRightCorner(n, n) = -t.adjoint();
  return BlockEncoding{std::move(u), n, alpha};
}

CVector prepare_state(const std::vector<double>& weights) {
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw DomainError("prepare_state: weights must be nonnegative");
    total += w;
  }
  if (!(total > 0.0)) {
    throw DomainError("prepare_state: all weights are zero");
  }
  const Eigen::Index dim = next_power_of_two(static_cast<Eigen::Index>(weights.size()));
  CVector v = CVector::Zero(dim);
  for (std::size_t i = 0; i < weights.size(); ++i) {
    v(static_cast<Eigen::Index>(i)) = std::sqrt(weights[i] / total);
  }
  return v;
}

CMatrix completion_unitary(const CVector& first_column) {
  const Eigen::Index dim = first_column.size();
  if (std::abs(first_column.norm() - 1.0) > 1e-12) {
    throw DomainError("completion_unitary: first column must be a unit vector");
  }
  if (std::abs(first_column(0).imag()) > 1e-14 || first_column(0).real() < -1e-14) {
    throw DomainError("completion_unitary: leading entry must be real nonnegative");
  }
  CVector w = first_column;
  w(0) -= 1.0;
  const double wn2 = w.squaredNorm();
  if (wn2 < 1e-30) {
    return CMatrix::Identity(dim, dim);
  }
  CMatrix u = CMatrix::Identity(dim, dim) - (2.0 / wn2) * (w * w.adjoint());
  return u;
}

BlockEncoding lcu_block_encode(const std::vector<Complex>& coeffs,
                               const std::vector<CMatrix>& unitaries,
                               Eigen::Index dim_cap) {
  if (coeffs.size() != unitaries.size() || coeffs.empty()) {
    throw DimensionError("lcu_block_encode: need matching, nonempty coefficient and unitary lists");
  }
  const Eigen::Index sys = unitaries.front().rows();
  for (const CMatrix& u : unitaries) {
    if (u.rows() != sys || u.cols() != sys) {
      throw DimensionError("lcu_block_encode: unitaries must share one dimension");
    }
  }
  std::vector<double> weights(coeffs.size());
  std::vector<Complex> phases(coeffs.size(), Complex(1.0, 0.0));
  double y = 0.0;
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    weights[i] = std::abs(coeffs[i]);
    y += weights[i];
    if (weights[i] > 0.0) phases[i] = coeffs[i] / weights[i];
  }
  if (!(y > 0.0)) {
    throw DomainError("lcu_block_encode: all coefficients vanish");
  }
  const CVector amps = prepare_state(weights);
  const Eigen::Index anc = amps.size();
  if (anc * sys > dim_cap) {
    throw DimensionError("lcu_block_encode: assembled dimension " +
                         std::to_string(anc * sys) + " exceeds the cap " +
                         std::to_string(dim_cap));
  }
  const CMatrix v = completion_unitary(amps);
  CVector phase_diag = CVector::Ones(anc);
  for (std::size_t i = 0; i < phases.size(); ++i) {
    phase_diag(static_cast<Eigen::Index>(i)) = phases[i];
  }
  const CMatrix v_prime = v.adjoint() * CMatrix(phase_diag.asDiagonal());

  const Eigen::Index total = anc * sys;
  CMatrix select = CMatrix::Zero(total, total);
  for (Eigen::Index slot = 0; slot < anc; ++slot) {
    if (slot < static_cast<Eigen::Index>(unitaries.size())) {
      select.block(slot * sys, slot * sys, sys, sys) =
          unitaries[static_cast<std::size_t>(slot)];
    } else {
      select.block(slot * sys, slot * sys, sys, sys) = CMatrix::Identity(sys, sys);
    }
  }
  const CMatrix id_sys = CMatrix::Identity(sys, sys);
  const CMatrix w = kron(v_prime, id_sys) * select * kron(v, id_sys);
  return BlockEncoding{w, sys, y};
}

LcuCircuit make_circuit(const LcuProgram& program, const BlockEncoding& u_c,
                        Eigen::Index dim_cap) {
  const std::vector<LcuTerm> terms = materialize_terms(program);
  if (terms.empty()) {
    throw DomainError("make_circuit: program has no terms");
  }
  const Eigen::Index full = u_c.unitary.rows();
  const Eigen::Index n = u_c.block_dim;
  LcuCircuit circuit;
  std::vector<double> weights(terms.size());
  circuit.phases.assign(terms.size(), Complex(1.0, 0.0));
  for (std::size_t i = 0; i < terms.size(); ++i) {
    weights[i] = std::abs(terms[i].coeff);
    if (weights[i] > 0.0) circuit.phases[i] = terms[i].coeff / weights[i];
  }
  const CVector amps = prepare_state(weights);
  circuit.ancilla_dim = amps.size();
  if (circuit.ancilla_dim * full > dim_cap) {
    throw DimensionError("make_circuit: assembled dimension " +
                         std::to_string(circuit.ancilla_dim * full) +
                         " exceeds the cap " + std::to_string(dim_cap) +
                         "; shrink R and J via manual parameters");
  }
  circuit.prepare = completion_unitary(amps);
  CVector phase_diag = CVector::Ones(circuit.ancilla_dim);
  for (std::size_t i = 0; i < circuit.phases.size(); ++i) {
    phase_diag(static_cast<Eigen::Index>(i)) = circuit.phases[i];
  }
  circuit.unprime = circuit.prepare.adjoint() * CMatrix(phase_diag.asDiagonal());
  circuit.select_terms.reserve(terms.size());
  for (const LcuTerm& term : terms) {
    // Evolutions act on the projected block only; extend by the identity on
    // the dilation complement so each SELECT slot stays unitary.
    CMatrix left = CMatrix::Identity(full, full);
    left.topLeftCorner(n, n) = evolution_matrix(program, term.left);
    CMatrix right = CMatrix::Identity(full, full);
    right.topLeftCorner(n, n) = evolution_matrix(program, term.right);
    circuit.select_terms.emplace_back(std::move(left), std::move(right));
  }
  return circuit;
}

BlockEncoding assemble(const LcuProgram& program, const BlockEncoding& u_c,
                       Eigen::Index dim_cap) {
  const LcuCircuit circuit = make_circuit(program, u_c, dim_cap);
  const Eigen::Index full = u_c.unitary.rows();
  const Eigen::Index total = circuit.ancilla_dim * full;
  CMatrix select = CMatrix::Zero(total, total);
  for (Eigen::Index slot = 0; slot < circuit.ancilla_dim; ++slot) {
    if (slot < static_cast<Eigen::Index>(circuit.select_terms.size())) {
      const auto& [left, right] = circuit.select_terms[static_cast<std::size_t>(slot)];
      select.block(slot * full, slot * full, full, full) =
          left * u_c.unitary * right;
    } else {
      select.block(slot * full, slot * full, full, full) = u_c.unitary;
    }
  }
  const CMatrix id_full = CMatrix::Identity(full, full);
  CMatrix w = kron(circuit.unprime, id_full) * select * kron(circuit.prepare, id_full);
  return BlockEncoding{std::move(w), u_c.block_dim, program.l1 * u_c.alpha};
}

CMatrix extract_block(const BlockEncoding& be) {
  return be.unitary.topLeftCorner(be.block_dim, be.block_dim);
}

BlockEncodingCheck verify_block_encoding(const BlockEncoding& be,
                                         const CMatrix& target, double eps) {
  if (target.rows() != be.block_dim || target.cols() != be.block_dim) {
    throw DimensionError("verify_block_encoding: target dims must equal block_dim");
  }
  BlockEncodingCheck check;
  check.block_error = spectral_norm(extract_block(be) - target);
  const CMatrix gram = be.unitary.adjoint() * be.unitary;
  check.unitarity_defect =
      spectral_norm(gram - CMatrix::Identity(gram.rows(), gram.cols()));
  check.pass = check.block_error <= eps && check.unitarity_defect <= 1e-10;
  return check;
}

}  // namespace qsylv
