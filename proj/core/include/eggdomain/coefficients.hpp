#pragma once

#include <vector>

#include "eggdomain/egg.hpp"
#include "eggdomain/polynomial.hpp"

namespace eggdomain {

/// Coefficient vector b_0..b_{n+1} of the kernel's fiber series
///   F(y) = sum_i b_i Gamma(i+1) y^{i+1}.
/// Always b_0 = 0 and b_{n+1} = 1; for K = 1 all intermediate b_i vanish and
/// the domain degenerates to the unit ball.
struct KernelCoefficients {
    EggDomainSpec spec;
    std::vector<double> b; // indexed 0..n+1
};

/// The auxiliary polynomial P(x) = (x+1) * prod_{j=1..n} (x+1+K j), expanded
/// into coefficient form. The expansion is kept for inspection/serialization;
/// numeric evaluation should prefer eval_P_product.
RealPolynomial build_P(const EggDomainSpec& spec);

/// Evaluates P at x directly from its product form, which is the stable route
/// at the negative integer arguments used by the recurrences.
double eval_P_product(const EggDomainSpec& spec, double x);

/// dP/dK at x, from the product form.
double eval_P_product_dK(const EggDomainSpec& spec, double x);

/// b_i from the backward-substitution recurrence
///   b_i = [P(-i-1) - sum_{k<i} b_k (-1)^k i!/(i-k)!] / [(-1)^i i!],  b_0 = 0.
/// Switches to compensated double-double arithmetic when the alternating sums
/// cancel badly (large n, large K), so the returned values are correctly
/// rounded for all supported inputs.
KernelCoefficients coefficients_by_recurrence(const EggDomainSpec& spec);

/// b_i from the direct summation form
///   b_i = sum_{j=1..i} (-1)^j P(-j-1) / (j! (i-j)!),
/// with the same cancellation-triggered extended-precision fallback.
KernelCoefficients coefficients_by_closed_form(const EggDomainSpec& spec);

struct CheckedCoefficients {
    KernelCoefficients values;      // closed-form values, after the cross-check
    double max_rel_disagreement;    // between the two routes, elementwise
    bool used_extended;             // whether either route fell back to double-double
};

/// Computes both routes, verifies elementwise agreement to 1e-12 relative and
/// returns the result; throws NumericError if the routes disagree beyond 1e-9.
CheckedCoefficients kernel_coefficients_checked(const EggDomainSpec& spec);

/// Convenience: the cross-checked coefficient vector.
KernelCoefficients kernel_coefficients(const EggDomainSpec& spec);

/// Analytic derivative vector db_i/dK (each b_i is a polynomial in K).
std::vector<double> coefficients_dK_derivative(const EggDomainSpec& spec);

} // namespace eggdomain
