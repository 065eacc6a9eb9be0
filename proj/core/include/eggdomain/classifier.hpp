#pragma once

#include <utility>
#include <vector>

#include "eggdomain/coefficients.hpp"
#include "eggdomain/egg.hpp"
#include "eggdomain/polynomial.hpp"

namespace eggdomain {

/// Restriction of the kernel to the fiber over the base origin, in the
/// unified variable t = 1 - W conj(zeta):
///   f(t) = sum_{i=1..n+1} i! b_i t^{n+1-i}.
/// Kernel zeroes correspond exactly to roots t with |1 - t| < 1. The constant
/// term is (n+1)! (since b_{n+1} = 1), so t = 0 is never a root.
struct FiberPolynomial {
    RealPolynomial poly;
    EggDomainSpec spec;
};

FiberPolynomial fiber_polynomial(const KernelCoefficients& coeffs);

enum class LuQiKengStatus { LuQiKeng, NotLuQiKeng, Borderline };

const char* to_string(LuQiKengStatus status);

/// Outcome of the zero-freeness decision. The margin is
///   max over roots t of (1 - |1 - t|) = 1 - min_root |s|,  s = 1 - t;
/// positive means an admissible kernel zero exists. For the (ball-like) cases
/// where f has no roots at all, margin is -infinity.
struct ClassificationResult {
    LuQiKengStatus status;
    std::vector<cplx> witness_roots; // s-values strictly inside the unit disk
    double margin;
    std::vector<cplx> roots_s;       // all fiber roots mapped to the s-plane
    double tol;
};

/// Builds coefficients -> fiber polynomial -> roots and applies the margin
/// rule: margin > tol is NotLuQiKeng; 0 < margin <= tol is Borderline;
/// margin <= 0 is LuQiKeng (a root exactly on the unit circle lies outside the
/// open domain and is not an admissible zero).
ClassificationResult classify(const EggDomainSpec& spec, double tol = 1e-9);

/// The margin only (used by sweeps).
double classification_margin(const EggDomainSpec& spec);

struct ThresholdReport {
    int n;
    double K_star;
    std::pair<double, double> bracket; // final bisection bracket, width <= precision
    std::vector<std::pair<double, double>> samples; // (K, margin) pairs, grid then bisection
};

/// Bisection on the margin function over [lo, hi]; requires a sign change at
/// the endpoints (NoSignChange otherwise). grid_points pre-scan samples are
/// recorded for plotting.
ThresholdReport threshold_sweep(int n, std::pair<double, double> K_range, double precision,
                                int grid_points = 33);

/// The admissibility region in the s = W conj(zeta) = 1 - t plane is the open
/// unit disk: every |s| < 1 is attained by an interior fiber pair (see
/// ZeroLocus::fiber_pair), and no |s| >= 1 is.
inline bool admissible_witness(cplx s) { return std::abs(s) < 1.0; }

/// The zero locus { (p, q) : X(p, q) = s } for an admissible witness s,
/// |s| < 1. Provides pair constructors used by the witness-validity checks.
class ZeroLocus {
public:
    ZeroLocus(const EggDomainSpec& spec, cplx witness_s);

    cplx witness() const { return s_; }
    const EggDomainSpec& spec() const { return spec_; }

    /// |X(p,q) - s|
    double residual(const PointPair& pair) const;
    bool satisfied(const PointPair& pair, double tol = 1e-10) const;

    /// Canonical fiber pair ((W, 0), (zeta, 0)) with W conj(zeta) = s.
    PointPair fiber_pair() const;

    /// Solves W so that ((W, Z), (zeta, xi)) lies on the locus; throws
    /// ValidationError if the solved point leaves the domain.
    PointPair shifted_pair(cplx zeta, const std::vector<cplx>& Z,
                           const std::vector<cplx>& xi) const;

private:
    EggDomainSpec spec_;
    cplx s_;
};

ZeroLocus zero_locus(const EggDomainSpec& spec, cplx witness_s);

} // namespace eggdomain
