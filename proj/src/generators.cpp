#include "qsylv/generators.hpp"

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

namespace qsylv {

namespace {

constexpr double kPi = 3.14159265358979323846;

CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols,
                        std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(g(rng), g(rng));
  return m;
}

CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0.0) ? d / std::abs(d) : Complex(1.0, 0.0);
  }
  return q;
}

CMatrix random_hermitian_with_spectrum(const Eigen::VectorXd& spectrum,
                                       std::mt19937_64& rng) {
  const Eigen::Index n = spectrum.size();
  const CMatrix u = random_unitary(n, rng);
  return u * spectrum.cast<Complex>().asDiagonal() * u.adjoint();
}

CMatrix unit_norm_c(Eigen::Index n, std::mt19937_64& rng) {
  CMatrix c = random_gaussian(n, n, rng);
  return c / spectral_norm(c);
}

double measured_kappa(const SylvesterInstance& inst) {
  return kappa(inst);
}

}  // namespace

SylvesterInstance gen_poisson(int n) {
  if (n < 2) throw DomainError("gen_poisson: n must be at least 2");
  if (static_cast<std::int64_t>(n) * n * n * n > kKronElementCap) {
    throw DimensionError("gen_poisson: n too large for the element cap");
  }
  CMatrix lap = CMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    lap(i, i) = 2.0;
    if (i + 1 < n) {
      lap(i, i + 1) = -1.0;
      lap(i + 1, i) = -1.0;
    }
  }
  const double lap_norm = spectral_norm(lap);
  const CMatrix a = lap / (2.0 * lap_norm);
  const CMatrix root = psd_sqrt(a);
  CMatrix c(n, n);
  for (int v = 0; v < n; ++v) {
    for (int w = 0; w < n; ++w) {
      c(v, w) = std::sin(kPi * (v + 1) / (n + 1.0)) *
                std::sin(kPi * (w + 1) / (n + 1.0));
    }
  }
  c /= spectral_norm(c);
  SylvesterInstance inst{a, a, c, 1.0, InstanceRoots{root, root}};
  inst.validate();
  return inst;
}

SylvesterInstance gen_random(CaseTag kind, int n, double kappa_target,
                             std::uint64_t seed) {
  if (n < 1) throw DomainError("gen_random: n must be positive");
  if (kappa_target > 200.0) {
    throw DomainError("gen_random: kappa_target above the desk-scale limit of 200");
  }
  std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL *
                              (static_cast<std::uint64_t>(kind) + 1)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  switch (kind) {
    case CaseTag::BZero: {
      if (kappa_target < 2.0) {
        throw DomainError("gen_random: b-zero needs kappa_target >= 2 under ||A|| <= 1/2");
      }
      Eigen::VectorXd spec(n);
      spec(0) = 1.0 / kappa_target;
      if (n > 1) spec(n - 1) = -0.5;
      for (int i = 1; i + 1 < n; ++i) {
        const double mag = 1.0 / kappa_target +
                           (0.5 - 1.0 / kappa_target) * unit(rng);
        spec(i) = (unit(rng) < 0.5 ? -mag : mag);
      }
      if (n == 1) spec(0) = 1.0 / kappa_target;
      const CMatrix a = random_hermitian_with_spectrum(spec, rng);
      SylvesterInstance inst{a, CMatrix::Zero(n, n), unit_norm_c(n, rng), 1.0, {}};
      inst.validate();
      return inst;
    }
    case CaseTag::Normal: {
      if (kappa_target < 1.5) {
        throw DomainError("gen_random: normal case needs kappa_target >= 1.5");
      }
      const double s = 1.0 / kappa_target;
      auto draw_eigs = [&](Eigen::VectorXd& re, Eigen::VectorXd& im) {
        re.resize(n);
        im.resize(n);
        re(0) = s / 2.0;
        im(0) = 0.0;
        for (int i = 1; i < n; ++i) {
          // Keep Re >= s/2 on every eigenvalue so no other pair sum can dip
          // below s, and |gamma| <= 0.45 for the norm budget.
          double x, y;
          do {
            x = s / 2.0 + (0.42 - s / 2.0) * unit(rng);
            y = 0.42 * (2.0 * unit(rng) - 1.0);
          } while (x * x + y * y > 0.2);
          re(i) = x;
          im(i) = y;
        }
      };
      Eigen::VectorXd re_a, im_a, re_b, im_b;
      draw_eigs(re_a, im_a);
      draw_eigs(re_b, im_b);
      const CMatrix ua = random_unitary(n, rng);
      const CMatrix ub = random_unitary(n, rng);
      CVector da(n), db(n);
      for (int i = 0; i < n; ++i) {
        da(i) = Complex(re_a(i), im_a(i));
        db(i) = Complex(re_b(i), im_b(i));
      }
      const CMatrix a = ua * da.asDiagonal() * ua.adjoint();
      const CMatrix b = ub * db.asDiagonal() * ub.adjoint();
      SylvesterInstance inst{a, b, unit_norm_c(n, rng), 1.0, {}};
      inst.validate();
      return inst;
    }
    case CaseTag::PositiveWithRoots: {
      if (kappa_target < 2.0) {
        throw DomainError("gen_random: positive case needs kappa_target >= 2");
      }
      const double gamma_min = 1.0 / (2.0 * kappa_target);
      auto draw_psd = [&]() {
        Eigen::VectorXd spec(n);
        spec(0) = gamma_min;
        if (n > 1) spec(n - 1) = 0.5;
        for (int i = 1; i + 1 < n; ++i) {
          spec(i) = gamma_min + (0.5 - gamma_min) * unit(rng);
        }
        const CMatrix u = random_unitary(n, rng);
        const CMatrix p = u * spec.cwiseSqrt().cast<Complex>().asDiagonal() * u.adjoint();
        return std::pair<CMatrix, CMatrix>(p * p, p);
      };
      auto [a, pa] = draw_psd();
      auto [b, pb] = draw_psd();
      SylvesterInstance inst{a, b, unit_norm_c(n, rng), 1.0,
                             InstanceRoots{pa, pb}};
      inst.validate();
      return inst;
    }
    case CaseTag::PositiveHermitianPart: {
      if (n < 2) {
        throw DomainError("gen_random: a 1x1 instance is always normal");
      }
      if (kappa_target < 1.5) {
        throw DomainError("gen_random: positive-hermitian-part needs kappa_target >= 1.5");
      }
      double h = 1.0 / (2.0 * kappa_target);
      for (int attempt = 0; attempt < 12; ++attempt) {
        std::mt19937_64 local(seed + 1000 * static_cast<std::uint64_t>(attempt));
        const double skew = std::min(0.05, h / 2.0);
        auto draw = [&](double floor_val) {
          Eigen::VectorXd spec(n);
          spec(0) = floor_val;
          for (int i = 1; i < n; ++i) {
            spec(i) = floor_val + (0.3 - floor_val) * unit(local);
          }
          const CMatrix herm = random_hermitian_with_spectrum(spec, local);
          Eigen::VectorXd skew_spec(n);
          for (int i = 0; i < n; ++i) skew_spec(i) = skew * (2.0 * unit(local) - 1.0);
          const CMatrix s_part = random_hermitian_with_spectrum(skew_spec, local);
          return CMatrix(herm + Complex(0.0, 1.0) * s_part);
        };
        const CMatrix a = draw(h);
        const CMatrix b = draw(h);
        SylvesterInstance inst{a, b, unit_norm_c(n, local), 1.0, {}};
        const double measured = measured_kappa(inst);
        if (std::abs(measured - kappa_target) <= 0.2 * kappa_target &&
            classify(inst) == CaseTag::PositiveHermitianPart) {
          inst.validate();
          return inst;
        }
        // Nudge the Hermitian floor toward the target and retry.
        h *= measured / kappa_target;
        h = std::min(std::max(h, 1e-4), 0.25);
      }
      throw DomainError("gen_random: failed to hit kappa_target for positive-hermitian-part");
    }
    case CaseTag::GeneralChebyshev: {
      if (n < 2) {
        throw DomainError("gen_random: a 1x1 instance is always normal");
      }
      if (kappa_target < 2.0) {
        throw DomainError("gen_random: general case needs kappa_target >= 2");
      }
      // Indefinite Hermitian A pins the spectrum; a tiny nilpotent B makes
      // Q non-normal while moving sigma_min by at most ||B||.
      Eigen::VectorXd spec(n);
      spec(0) = 1.0 / kappa_target;
      spec(n - 1) = -0.5;
      for (int i = 1; i + 1 < n; ++i) {
        const double mag = 1.0 / kappa_target +
                           (0.5 - 1.0 / kappa_target) * unit(rng);
        spec(i) = (unit(rng) < 0.5 ? -mag : mag);
      }
      const CMatrix a = random_hermitian_with_spectrum(spec, rng);
      CMatrix b = CMatrix::Zero(n, n);
      b(0, 1) = 0.05 / kappa_target;
      SylvesterInstance inst{a, b, unit_norm_c(n, rng), 1.0, {}};
      inst.validate();
      if (classify(inst) != CaseTag::GeneralChebyshev) {
        throw DomainError("gen_random: constructed instance escaped the general case");
      }
      return inst;
    }
  }
  throw DomainError("gen_random: unknown case tag");
}

}  // namespace qsylv
