#include "qsylv/lcu.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include <Eigen/Eigenvalues>

namespace qsylv {

namespace {

constexpr double kPi = 3.14159265358979323846;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// Gaussian weights below exp(-43) contribute less than 1e-18 of the sum.
constexpr double kGaussianCutoff = 9.3;

// sum_{r=0}^{count-1} exp(-i r step_phase), in the cancellation-free sine
// form, with the limit value count as step_phase -> 0.
Complex geometric_time_sum(double step_phase, std::int64_t count) {
  if (count <= 0) return {0.0, 0.0};
  const double x = std::remainder(step_phase, 2.0 * kPi);
  const double half = 0.5 * x;
  if (std::abs(half) < 1e-14) {
    return {static_cast<double>(count), 0.0};
  }
  const double ratio = std::sin(half * static_cast<double>(count)) / std::sin(half);
  const double mid = half * static_cast<double>(count - 1);
  return Complex(std::cos(mid), -std::sin(mid)) * ratio;
}

std::uint64_t checked_term_count(std::int64_t r_count, std::int64_t j_count,
                                 int omega_axes, std::uint64_t budget,
                                 const char* where) {
  const __int128 per_axis = 2 * static_cast<__int128>(j_count) + 1;
  __int128 total = r_count;
  for (int i = 0; i < omega_axes; ++i) total *= per_axis;
  if (total > static_cast<__int128>(budget)) {
    const std::uint64_t reported =
        total > static_cast<__int128>(std::numeric_limits<std::uint64_t>::max())
            ? std::numeric_limits<std::uint64_t>::max()
            : static_cast<std::uint64_t>(total);
    throw TermBudgetError(std::string(where) + ": program needs " +
                              std::to_string(reported) +
                              " terms, above the budget of " +
                              std::to_string(budget),
                          reported);
  }
  return static_cast<std::uint64_t>(total);
}

std::int64_t effective_j(const DiscretizationParams& p) {
  const auto cutoff =
      static_cast<std::int64_t>(std::ceil(kGaussianCutoff / p.delta_omega));
  return std::min(p.j_count, cutoff);
}

struct Diagonalization {
  CMatrix basis;       // unitary U
  CVector eigenvalues; // so that M = U diag U^dag
  bool ok = false;
};

// Unitary diagonalization through the Schur form; succeeds only for
// (numerically) normal matrices.
Diagonalization diagonalize_normal(const CMatrix& m, double tol = 1e-10) {
  Diagonalization d;
  if (m.rows() != m.cols()) return d;
  Eigen::ComplexSchur<CMatrix> schur(m);
  const CMatrix& t = schur.matrixT();
  double off = 0.0;
  for (Eigen::Index i = 0; i < t.rows(); ++i)
    for (Eigen::Index j = i + 1; j < t.cols(); ++j) off += std::norm(t(i, j));
  if (std::sqrt(off) > tol * std::max(1.0, spectral_norm(m))) return d;
  d.basis = schur.matrixU();
  d.eigenvalues = t.diagonal();
  d.ok = true;
  return d;
}

// sum_{r=0}^{count-1} L^r C M^r by doubling.
struct GeoState {
  CMatrix sum, l_pow, m_pow;
};

GeoState matrix_geometric_series(const CMatrix& l, const CMatrix& c,
                                 const CMatrix& m, std::int64_t count) {
  if (count <= 0) {
    return {CMatrix::Zero(c.rows(), c.cols()),
            CMatrix::Identity(l.rows(), l.cols()),
            CMatrix::Identity(m.rows(), m.cols())};
  }
  if (count == 1) {
    return {c, l, m};
  }
  GeoState half = matrix_geometric_series(l, c, m, count / 2);
  GeoState full;
  full.sum = half.sum + half.l_pow * half.sum * half.m_pow;
  full.l_pow = half.l_pow * half.l_pow;
  full.m_pow = half.m_pow * half.m_pow;
  if (count % 2 == 1) {
    full.sum = c + l * full.sum * m;
    full.l_pow = l * full.l_pow;
    full.m_pow = m * full.m_pow;
  }
  return full;
}

void fill_split_generators(const SylvesterInstance& inst, LcuProgram& prog) {
  auto [ah, as] = herm_split(inst.a);
  auto [bh, bs] = herm_split(inst.b);
  prog.left_h = std::move(ah);
  prog.left_s = std::move(as);
  prog.right_h = std::move(bh);
  prog.right_s = std::move(bs);
}

double q_h_min_eigenvalue(const SylvesterInstance& inst) {
  const CMatrix q = build_q(inst);
  Eigen::SelfAdjointEigenSolver<CMatrix> es((q + q.adjoint()) / 2.0);
  return es.eigenvalues()(0);
}

}  // namespace

double l1_norm(const LcuProgram& program) {
  if (!program.explicit_terms.empty()) {
    double sum = 0.0;
    for (const LcuTerm& t : program.explicit_terms) sum += std::abs(t.coeff);
    return sum;
  }
  if (program.term_count == 0) return 0.0;
  const DiscretizationParams& p = program.params;
  const std::int64_t jeff = effective_j(p);
  const double r_total = static_cast<double>(p.r_count);
  switch (program.kind) {
    case CaseTag::Normal: {
      double sum = 0.0;
      for (std::int64_t j = -jeff; j <= jeff; ++j) {
        const double wj = p.omega(j);
        const double gj = std::exp(-wj * wj / 2.0);
        for (std::int64_t jp = -jeff; jp <= jeff; ++jp) {
          const double wp = p.omega(jp);
          sum += std::hypot(wj, wp) * gj * std::exp(-wp * wp / 2.0);
        }
      }
      return r_total * p.delta_t * p.delta_omega * p.delta_omega * sum /
             (2.0 * kPi);
    }
    case CaseTag::BZero: {
      double sum = 0.0;
      for (std::int64_t j = 1; j <= jeff; ++j) {
        const double w = p.omega(j);
        sum += 2.0 * w * std::exp(-w * w / 2.0);
      }
      return r_total * p.delta_t * p.delta_omega * sum / kSqrt2Pi;
    }
    case CaseTag::PositiveWithRoots: {
      double gauss = 1.0;
      for (std::int64_t j = 1; j <= jeff; ++j) {
        const double w = p.omega(j);
        gauss += 2.0 * std::exp(-w * w / 2.0);
      }
      return r_total * p.delta_t * p.delta_omega * p.delta_omega * gauss *
             gauss / (2.0 * kPi);
    }
    case CaseTag::PositiveHermitianPart: {
      double sum = 0.0;
      for (std::int64_t j = -p.j_count; j <= p.j_count; ++j) {
        sum += lchs_kernel_abs(p.omega(j), program.kernel.beta);
      }
      return r_total * p.delta_t * p.delta_omega *
             program.kernel.normalization * sum;
    }
    default:
      throw DomainError("l1_norm: unsupported program kind");
  }
}

void enumerate_terms(const LcuProgram& program,
                     const std::function<void(const LcuTerm&)>& fn) {
  if (!program.explicit_terms.empty()) {
    for (const LcuTerm& t : program.explicit_terms) fn(t);
    return;
  }
  const DiscretizationParams& p = program.params;
  const Complex i_unit(0.0, 1.0);
  switch (program.kind) {
    case CaseTag::Normal: {
      const double pref = p.delta_t * p.delta_omega * p.delta_omega / (2.0 * kPi);
      for (std::int64_t r = 0; r < p.r_count; ++r) {
        const double t = p.time(r);
        for (std::int64_t j = -p.j_count; j <= p.j_count; ++j) {
          const double wj = p.omega(j);
          for (std::int64_t jp = -p.j_count; jp <= p.j_count; ++jp) {
            const double wp = p.omega(jp);
            LcuTerm term;
            term.coeff = i_unit * pref * Complex(wj, -wp) *
                         std::exp(-(wj * wj + wp * wp) / 2.0);
            term.left = {wj, wp, t, Side::Left};
            term.right = {wj, wp, t, Side::Right};
            fn(term);
          }
        }
      }
      return;
    }
    case CaseTag::PositiveHermitianPart: {
      const double pref = p.delta_t * p.delta_omega;
      for (std::int64_t r = 0; r < p.r_count; ++r) {
        const double t = p.time(r);
        for (std::int64_t j = -p.j_count; j <= p.j_count; ++j) {
          const double wj = p.omega(j);
          LcuTerm term;
          term.coeff = pref * kernel_value(program.kernel, wj);
          term.left = {wj, program.skew_sign, t, Side::Left};
          term.right = {wj, program.skew_sign, t, Side::Right};
          fn(term);
        }
      }
      return;
    }
    case CaseTag::BZero: {
      const double pref = p.delta_t * p.delta_omega / kSqrt2Pi;
      for (std::int64_t r = 0; r < p.r_count; ++r) {
        const double t = p.time(r);
        for (std::int64_t j = -p.j_count; j <= p.j_count; ++j) {
          const double wj = p.omega(j);
          LcuTerm term;
          term.coeff = i_unit * pref * wj * std::exp(-wj * wj / 2.0);
          term.left = {wj, 0.0, t, Side::Left};
          term.right = {0.0, 0.0, 0.0, Side::Right};
          fn(term);
        }
      }
      return;
    }
    case CaseTag::PositiveWithRoots: {
      const double pref = p.delta_t * p.delta_omega * p.delta_omega / (2.0 * kPi);
      for (std::int64_t r = 0; r < p.r_count; ++r) {
        const double st = std::sqrt(2.0 * p.time(r));
        for (std::int64_t j = -p.j_count; j <= p.j_count; ++j) {
          const double wj = p.omega(j);
          for (std::int64_t jp = -p.j_count; jp <= p.j_count; ++jp) {
            const double wp = p.omega(jp);
            LcuTerm term;
            term.coeff = pref * std::exp(-(wj * wj + wp * wp) / 2.0);
            term.left = {wj, 0.0, st, Side::Left};
            term.right = {wp, 0.0, st, Side::Right};
            fn(term);
          }
        }
      }
      return;
    }
    default:
      throw DomainError("enumerate_terms: unsupported program kind");
  }
}

std::vector<LcuTerm> materialize_terms(const LcuProgram& program,
                                       std::uint64_t cap) {
  if (program.term_count > cap) {
    throw TermBudgetError("materialize_terms: " +
                              std::to_string(program.term_count) +
                              " terms exceed the cap of " + std::to_string(cap),
                          program.term_count);
  }
  std::vector<LcuTerm> out;
  out.reserve(static_cast<std::size_t>(program.term_count));
  enumerate_terms(program, [&out](const LcuTerm& t) { out.push_back(t); });
  return out;
}

LcuProgram synth_normal(const SylvesterInstance& inst,
                        const DiscretizationParams& params,
                        std::uint64_t term_budget) {
  const CMatrix q = build_q(inst);
  if (commutator_norm(q) > 1e-10) {
    throw DomainError("synth_normal: Q is not normal");
  }
  LcuProgram prog;
  prog.kind = CaseTag::Normal;
  prog.params = params;
  prog.alpha = inst.alpha;
  fill_split_generators(inst, prog);
  prog.term_count = checked_term_count(params.r_count, params.j_count, 2,
                                       term_budget, "synth_normal");
  prog.l1 = l1_norm(prog);
  return prog;
}

LcuProgram synth_pos_herm(const SylvesterInstance& inst,
                          const DiscretizationParams& params,
                          const KernelSpec& kernel, std::uint64_t term_budget,
                          SkewSignConvention sign) {
  if (kernel.kind != KernelSpec::Kind::LchsBeta) {
    throw DomainError("synth_pos_herm: needs a calibrated LCHS kernel");
  }
  if (q_h_min_eigenvalue(inst) <= 1e-10) {
    throw DomainError("synth_pos_herm: Hermitian part of Q is not positive");
  }
  LcuProgram prog;
  prog.kind = CaseTag::PositiveHermitianPart;
  prog.params = params;
  prog.kernel = kernel;
  prog.alpha = inst.alpha;
  prog.skew_sign = (sign == SkewSignConvention::Appendix) ? 1.0 : -1.0;
  fill_split_generators(inst, prog);
  prog.term_count = checked_term_count(params.r_count, params.j_count, 1,
                                       term_budget, "synth_pos_herm");
  prog.l1 = l1_norm(prog);
  return prog;
}

LcuProgram synth_bzero(const SylvesterInstance& inst,
                       const DiscretizationParams& params,
                       std::uint64_t term_budget) {
  if (spectral_norm(inst.b) > 1e-14) {
    throw DomainError("synth_bzero: requires B = 0");
  }
  if (!is_hermitian(inst.a, 1e-12)) {
    throw DomainError(
        "synth_bzero: A must be Hermitian; apply hermitian_dilation first");
  }
  LcuProgram prog;
  prog.kind = CaseTag::BZero;
  prog.params = params;
  prog.alpha = inst.alpha;
  prog.left_h = (inst.a + inst.a.adjoint()) / 2.0;
  prog.left_s = CMatrix::Zero(inst.dim(), inst.dim());
  prog.right_h = CMatrix::Zero(inst.dim(), inst.dim());
  prog.right_s = CMatrix::Zero(inst.dim(), inst.dim());
  prog.right_is_identity = true;
  prog.term_count = checked_term_count(params.r_count, params.j_count, 1,
                                       term_budget, "synth_bzero");
  prog.l1 = l1_norm(prog);
  return prog;
}

LcuProgram synth_positive(const SylvesterInstance& inst,
                          const DiscretizationParams& params,
                          std::uint64_t term_budget) {
  if (!inst.roots) {
    throw DomainError("synth_positive: instance has no square roots");
  }
  if (classify(inst) != CaseTag::PositiveWithRoots) {
    throw DomainError("synth_positive: instance does not classify as positive-with-roots");
  }
  LcuProgram prog;
  prog.kind = CaseTag::PositiveWithRoots;
  prog.params = params;
  prog.alpha = inst.alpha;
  prog.left_h = inst.roots->p_a;
  prog.left_s = CMatrix::Zero(inst.dim(), inst.dim());
  prog.right_h = inst.roots->p_b;
  prog.right_s = CMatrix::Zero(inst.dim(), inst.dim());
  prog.term_count = checked_term_count(params.r_count, params.j_count, 2,
                                       term_budget, "synth_positive");
  prog.l1 = l1_norm(prog);
  return prog;
}

LcuProgram program_from_terms(CaseTag kind, const DiscretizationParams& params,
                              const SylvesterInstance& inst,
                              std::vector<LcuTerm> terms) {
  LcuProgram prog;
  prog.kind = kind;
  prog.params = params;
  prog.alpha = inst.alpha;
  if (kind == CaseTag::PositiveWithRoots) {
    if (!inst.roots) throw DomainError("program_from_terms: missing roots");
    prog.left_h = inst.roots->p_a;
    prog.left_s = CMatrix::Zero(inst.dim(), inst.dim());
    prog.right_h = inst.roots->p_b;
    prog.right_s = CMatrix::Zero(inst.dim(), inst.dim());
  } else if (kind == CaseTag::BZero) {
    prog.left_h = (inst.a + inst.a.adjoint()) / 2.0;
    prog.left_s = CMatrix::Zero(inst.dim(), inst.dim());
    prog.right_h = CMatrix::Zero(inst.dim(), inst.dim());
    prog.right_s = CMatrix::Zero(inst.dim(), inst.dim());
    prog.right_is_identity = true;
  } else {
    fill_split_generators(inst, prog);
  }
  prog.term_count = terms.size();
  prog.explicit_terms = std::move(terms);
  prog.l1 = l1_norm(prog);
  return prog;
}

CMatrix evolution_matrix(const LcuProgram& program, const EvolutionSpec& spec) {
  const bool left = spec.side == Side::Left;
  if (!left && program.right_is_identity) {
    return CMatrix::Identity(program.left_h.rows(), program.left_h.cols());
  }
  const CMatrix& h = left ? program.left_h : program.right_h;
  const CMatrix& s = left ? program.left_s : program.right_s;
  CMatrix gen = spec.h_weight * h;
  if (spec.s_weight != 0.0) gen += spec.s_weight * s;
  return unitary_evolution(gen, spec.time);
}

Complex eval_h_scalar(CaseTag kind, double lam_h, double lam_s,
                      const DiscretizationParams& p) {
  const Complex i_unit(0.0, 1.0);
  const std::int64_t jeff = effective_j(p);
  switch (kind) {
    case CaseTag::BZero: {
      Complex acc(0.0, 0.0);
      for (std::int64_t j = -jeff; j <= jeff; ++j) {
        if (j == 0) continue;
        const double w = p.omega(j);
        acc += w * std::exp(-w * w / 2.0) *
               geometric_time_sum(p.delta_t * w * lam_h, p.r_count);
      }
      return i_unit * p.delta_t * p.delta_omega * acc / kSqrt2Pi;
    }
    case CaseTag::Normal: {
      Complex acc(0.0, 0.0);
      for (std::int64_t j = -jeff; j <= jeff; ++j) {
        const double wj = p.omega(j);
        const double gj = std::exp(-wj * wj / 2.0);
        for (std::int64_t jp = -jeff; jp <= jeff; ++jp) {
          const double wp = p.omega(jp);
          acc += Complex(wj, -wp) * gj * std::exp(-wp * wp / 2.0) *
                 geometric_time_sum(p.delta_t * (wj * lam_h + wp * lam_s),
                                    p.r_count);
        }
      }
      return i_unit * p.delta_t * p.delta_omega * p.delta_omega * acc /
             (2.0 * kPi);
    }
    case CaseTag::PositiveWithRoots: {
      if (lam_h < 0.0 || lam_s < 0.0) {
        throw DomainError("eval_h_scalar: positive case needs nonnegative eigenvalues");
      }
      const double pa = std::sqrt(lam_h);
      const double pb = std::sqrt(lam_s);
      double acc = 0.0;
      for (std::int64_t r = 0; r < p.r_count; ++r) {
        const double st = std::sqrt(2.0 * p.time(r));
        acc += gaussian_comb_transform(st * pa, p) *
               gaussian_comb_transform(st * pb, p);
      }
      return {p.delta_t * acc, 0.0};
    }
    default:
      throw DomainError("eval_h_scalar: only normal, b-zero and positive-with-roots");
  }
}

double gaussian_comb_transform(double s, const DiscretizationParams& p) {
  const std::int64_t jeff = effective_j(p);
  double acc = 1.0;
  for (std::int64_t j = 1; j <= jeff; ++j) {
    const double w = p.omega(j);
    acc += 2.0 * std::exp(-w * w / 2.0) * std::cos(w * s);
  }
  return p.delta_omega * acc / kSqrt2Pi;
}

Complex eval_pos_herm_scalar(Complex mu, const DiscretizationParams& p,
                             const KernelSpec& kernel) {
  Complex acc(0.0, 0.0);
  for (std::int64_t j = -p.j_count; j <= p.j_count; ++j) {
    const double w = p.omega(j);
    acc += kernel_value(kernel, w) *
           geometric_time_sum(p.delta_t * (w * mu.real() + mu.imag()), p.r_count);
  }
  return p.delta_t * p.delta_omega * acc;
}

namespace {

CMatrix apply_dense(const LcuProgram& prog, const CMatrix& c,
                    std::uint64_t dense_budget) {
  if (prog.term_count > dense_budget) {
    throw TermBudgetError("apply_lcu: dense path needs " +
                              std::to_string(prog.term_count) +
                              " terms, above the budget of " +
                              std::to_string(dense_budget),
                          prog.term_count);
  }
  CMatrix acc = CMatrix::Zero(c.rows(), c.cols());
  enumerate_terms(prog, [&](const LcuTerm& term) {
    if (term.coeff == Complex(0.0, 0.0)) return;
    const CMatrix left = evolution_matrix(prog, term.left);
    const CMatrix right = evolution_matrix(prog, term.right);
    acc += term.coeff * left * c * right;
  });
  return acc;
}

// Joint-eigenbasis path: X-hat = U_A (H o (U_A^dag C U_B)) U_B^dag with H
// the per-eigenpair scalar sums.
CMatrix apply_eigenbasis(const LcuProgram& prog, const CMatrix& c) {
  CMatrix u_a, u_b;
  CVector eig_a, eig_b;
  switch (prog.kind) {
    case CaseTag::BZero: {
      Eigen::SelfAdjointEigenSolver<CMatrix> es(prog.left_h);
      const CMatrix m = es.eigenvectors().adjoint() * c;
      CMatrix scaled(m.rows(), m.cols());
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        const Complex h = eval_h_scalar(CaseTag::BZero, es.eigenvalues()(k),
                                        0.0, prog.params);
        scaled.row(k) = h * m.row(k);
      }
      return es.eigenvectors() * scaled;
    }
    case CaseTag::PositiveWithRoots: {
      Eigen::SelfAdjointEigenSolver<CMatrix> ea(prog.left_h);
      Eigen::SelfAdjointEigenSolver<CMatrix> eb(prog.right_h);
      const CMatrix m = ea.eigenvectors().adjoint() * c * eb.eigenvectors();
      CMatrix h(m.rows(), m.cols());
      // Cache the Gaussian transforms per root eigenvalue.
      const std::int64_t r_count = prog.params.r_count;
      Eigen::MatrixXd ga(m.rows(), r_count), gb(m.cols(), r_count);
      for (std::int64_t r = 0; r < r_count; ++r) {
        const double st = std::sqrt(2.0 * prog.params.time(r));
        for (Eigen::Index k = 0; k < m.rows(); ++k)
          ga(k, r) = gaussian_comb_transform(st * ea.eigenvalues()(k), prog.params);
        for (Eigen::Index l = 0; l < m.cols(); ++l)
          gb(l, r) = gaussian_comb_transform(st * eb.eigenvalues()(l), prog.params);
      }
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        for (Eigen::Index l = 0; l < m.cols(); ++l) {
          h(k, l) = prog.params.delta_t * ga.row(k).dot(gb.row(l));
        }
      }
      return ea.eigenvectors() * h.cwiseProduct(m) * eb.eigenvectors().adjoint();
    }
    case CaseTag::Normal:
    case CaseTag::PositiveHermitianPart: {
      const Diagonalization da =
          diagonalize_normal(prog.left_h + Complex(0.0, 1.0) * prog.left_s);
      const Diagonalization db =
          diagonalize_normal(prog.right_h + Complex(0.0, 1.0) * prog.right_s);
      if (!da.ok || !db.ok) {
        throw DomainError("apply_lcu: eigenbasis path needs normal A and B");
      }
      const CMatrix m = da.basis.adjoint() * c * db.basis;
      CMatrix h(m.rows(), m.cols());
      for (Eigen::Index k = 0; k < m.rows(); ++k) {
        for (Eigen::Index l = 0; l < m.cols(); ++l) {
          Complex mu = da.eigenvalues(k) + db.eigenvalues(l);
          if (prog.kind == CaseTag::Normal) {
            h(k, l) = eval_h_scalar(CaseTag::Normal, mu.real(), mu.imag(),
                                    prog.params);
          } else {
            if (prog.skew_sign < 0.0) mu = std::conj(mu);
            h(k, l) = eval_pos_herm_scalar(mu, prog.params, prog.kernel);
          }
        }
      }
      return da.basis * h.cwiseProduct(m) * db.basis.adjoint();
    }
    default:
      throw DomainError("apply_lcu: unsupported program kind");
  }
}

// Closed-form geometric r-sum per frequency index; valid whenever the time
// dependence is e^{-i t_r G}, i.e. every case except positive-with-roots.
CMatrix apply_geometric(const LcuProgram& prog, const CMatrix& c) {
  const DiscretizationParams& p = prog.params;
  CMatrix acc = CMatrix::Zero(c.rows(), c.cols());
  const Complex i_unit(0.0, 1.0);
  const std::int64_t jeff =
      prog.kind == CaseTag::PositiveHermitianPart ? p.j_count : effective_j(p);

  auto accumulate = [&](Complex coeff, const CMatrix& gen_l, const CMatrix& gen_r) {
    if (coeff == Complex(0.0, 0.0)) return;
    const CMatrix l = unitary_evolution(gen_l, p.delta_t);
    const CMatrix r = unitary_evolution(gen_r, p.delta_t);
    acc += coeff * matrix_geometric_series(l, c, r, p.r_count).sum;
  };

  switch (prog.kind) {
    case CaseTag::BZero: {
      const double pref = p.delta_t * p.delta_omega / kSqrt2Pi;
      const CMatrix zero = CMatrix::Zero(c.rows(), c.cols());
      for (std::int64_t j = -jeff; j <= jeff; ++j) {
        if (j == 0) continue;
        const double w = p.omega(j);
        accumulate(i_unit * pref * w * std::exp(-w * w / 2.0), w * prog.left_h,
                   zero);
      }
      return acc;
    }
    case CaseTag::PositiveHermitianPart: {
      const double pref = p.delta_t * p.delta_omega;
      for (std::int64_t j = -jeff; j <= jeff; ++j) {
        const double w = p.omega(j);
        accumulate(pref * kernel_value(prog.kernel, w),
                   w * prog.left_h + prog.skew_sign * prog.left_s,
                   w * prog.right_h + prog.skew_sign * prog.right_s);
      }
      return acc;
    }
    case CaseTag::Normal: {
      const double pref = p.delta_t * p.delta_omega * p.delta_omega / (2.0 * kPi);
      for (std::int64_t j = -jeff; j <= jeff; ++j) {
        const double wj = p.omega(j);
        const double gj = std::exp(-wj * wj / 2.0);
        for (std::int64_t jp = -jeff; jp <= jeff; ++jp) {
          const double wp = p.omega(jp);
          accumulate(i_unit * pref * Complex(wj, -wp) * gj *
                         std::exp(-wp * wp / 2.0),
                     wj * prog.left_h + wp * prog.left_s,
                     wj * prog.right_h + wp * prog.right_s);
        }
      }
      return acc;
    }
    default:
      throw DomainError(
          "apply_lcu: geometric r-sum does not apply to sqrt-time programs");
  }
}

}  // namespace

CMatrix apply_lcu(const LcuProgram& program, const CMatrix& c,
                  ApplyStrategy strategy, std::uint64_t dense_budget) {
  require_finite(c, "apply_lcu");
  if (program.term_count == 0) {
    return CMatrix::Zero(c.rows(), c.cols());
  }
  if (!program.explicit_terms.empty()) {
    return apply_dense(program, c, dense_budget);
  }
  switch (strategy) {
    case ApplyStrategy::DenseTerms:
      return apply_dense(program, c, dense_budget);
    case ApplyStrategy::EigenBasis:
      return apply_eigenbasis(program, c);
    case ApplyStrategy::GeometricRSum:
      return apply_geometric(program, c);
    case ApplyStrategy::Auto:
      break;
  }
  const bool left_normal =
      diagonalize_normal(program.left_h + Complex(0.0, 1.0) * program.left_s).ok;
  const bool right_normal =
      program.right_is_identity ||
      diagonalize_normal(program.right_h + Complex(0.0, 1.0) * program.right_s).ok;
  if (left_normal && right_normal) {
    return apply_eigenbasis(program, c);
  }
  if (program.kind != CaseTag::PositiveWithRoots) {
    return apply_geometric(program, c);
  }
  return apply_dense(program, c, dense_budget);
}

}  // namespace qsylv
