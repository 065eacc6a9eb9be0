#pragma once

#include <complex>
#include <vector>

#include "eggdomain/polynomial.hpp"

namespace eggdomain {

/// All complex roots of f, via companion-matrix eigenvalues followed by Newton
/// refinement. Every returned root r satisfies
///   |f(r)| < 1e-10 * max|coeff| * max(1, |r|)^degree.
/// Throws DegenerateZeroPolynomial for the identically zero polynomial; a
/// nonzero constant has no roots.
std::vector<std::complex<double>> find_roots(const RealPolynomial& f);

/// Root-residual bound used by find_roots' contract.
double root_residual_bound(const RealPolynomial& f, std::complex<double> root);

} // namespace eggdomain
