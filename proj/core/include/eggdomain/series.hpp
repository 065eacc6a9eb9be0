#pragma once

#include <vector>

#include "eggdomain/egg.hpp"
#include "eggdomain/monomial.hpp"

namespace eggdomain {

/// Squared L^2 norm of the monomial W^a Z^alpha over the egg domain:
///   pi^{n+1} alpha! Gamma((a+1)/K) / (K Gamma((a+1)/K + |alpha| + n + 1)),
/// obtained by reducing the integral to a Dirichlet integral over the simplex.
/// Evaluated in log space to avoid overflow at large indices.
double monomial_norm_sq(const EggDomainSpec& spec, const MonomialIndex& idx);

/// Truncated orthonormal-expansion kernel: partial sums grouped by total
/// degree shell d = a + |alpha|.
struct SeriesEvaluation {
    cplx value;
    int cutoff;
    double tail_estimate; // geometric-ratio extrapolation of the shell magnitudes
};

/// Shell sums S_d = sum over indices with a + |alpha| = d of
///   W^a Z^alpha conj(zeta^a xi^alpha) / |W^a Z^alpha|^2,   d = 0..cutoff.
/// Enumeration within each shell is lexicographic, so the reduction order is
/// deterministic.
std::vector<cplx> series_shell_sums(const EggDomainSpec& spec, const PointPair& pair, int cutoff);

/// Sum of the shells up to the cutoff, with the extrapolated tail estimate.
/// Requires both points to have membership defect > 1e-6; throws
/// CutoffTooSmall when the tail estimate exceeds 10% of |value|.
SeriesEvaluation kernel_series(const EggDomainSpec& spec, const PointPair& pair, int cutoff);

} // namespace eggdomain
