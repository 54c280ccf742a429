#pragma once

#include <cstdint>

#include "qsylv/problem.hpp"

namespace qsylv {

/// Dirichlet second-difference Laplacian problem on an n-point grid:
/// A = B = L / (2||L||) (norm exactly 1/2), roots included so the instance
/// classifies as positive-with-roots, and C a unit-norm product-of-sines
/// source. kappa grows roughly quadratically with n.
SylvesterInstance gen_poisson(int n);

/// Deterministic random instance of the requested case with measured kappa
/// within 20% of kappa_target. Throws DomainError for unconstructible
/// requests (e.g. a 1x1 non-normal case, or kappa_target below the floor
/// the normalization ||A||,||B|| <= 1/2 imposes).
SylvesterInstance gen_random(CaseTag kind, int n, double kappa_target,
                             std::uint64_t seed);

}  // namespace qsylv
