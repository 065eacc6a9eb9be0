#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "eggdomain/coefficients.hpp"
#include "eggdomain/egg.hpp"
#include "eggdomain/monomial.hpp"

namespace eggdomain {

/// Kernel value together with the intermediates of the closed form
///   K((W,Z);(zeta,xi)) = K^{-n} pi^{-(n+1)} F(Y) (1 - Z.conj(xi))^{-(n+1+1/K)},
///   X = W conj(zeta) (1 - Z.conj(xi))^{-1/K},  Y = (1 - X)^{-1},
///   F(Y) = sum_{i} b_i Gamma(i+1) Y^{i+1}.
/// All non-integer powers are principal-branch; 1 - Z.conj(xi) has positive
/// real part on the domain, so the branch is well defined.
struct KernelValue {
    cplx value;
    cplx X;
    cplx Y;
};

/// Closed-form Bergman kernel evaluator for a fixed egg domain. Construction
/// computes the cross-checked coefficient vector once.
class BergmanKernel {
public:
    explicit BergmanKernel(const EggDomainSpec& spec);

    const EggDomainSpec& spec() const { return spec_; }
    const KernelCoefficients& coefficients() const { return coeffs_; }

    /// Evaluate at a validated pair. Throws NumericalOverflow if either point
    /// has membership defect below 1e-12 or |X - 1| < 1e-14.
    KernelValue eval(const PointPair& pair) const;

    /// Same computation from raw coordinates, without membership guards; used
    /// by finite-difference paths that perturb valid points.
    KernelValue eval_raw(cplx W, const std::vector<cplx>& Z,
                         cplx zeta, const std::vector<cplx>& xi) const;

    /// Diagonal value K(p, p); real and strictly positive on the domain.
    double diagonal(const DomainPoint& p) const;

    /// F(Y) / Y^{n+2} = f(1 - X) evaluated at the pair's X, scaled by 1/(n+1)!.
    /// This strips the kernel's never-vanishing envelope, so it is bounded away
    /// from zero on compact sets exactly when the kernel is zero-free.
    double normalized_fiber_value(cplx X) const;

private:
    EggDomainSpec spec_;
    KernelCoefficients coeffs_;
    std::vector<double> fterm_; // Gamma(i+1) b_i, i = 0..n+1
    double prefactor_;          // K^{-n} pi^{-(n+1)}
};

/// One-shot evaluation (computes coefficients internally).
KernelValue eval_kernel(const EggDomainSpec& spec, const PointPair& pair);

/// Holomorphic automorphism of the egg domain moving the fiber over Z0 to the
/// fiber over 0:
///   (W, Z) -> (W [sqrt(1-|Z0|^2) / (1 - Z.conj(Z0))]^{1/K}, phi_{Z0}(Z)),
/// with phi_{Z0} the ball Moebius automorphism sending Z0 to 0.
class CenteringAutomorphism {
public:
    CenteringAutomorphism(const EggDomainSpec& spec, std::vector<cplx> Z0);

    const EggDomainSpec& spec() const { return spec_; }
    const std::vector<cplx>& base() const { return Z0_; }
    bool is_identity() const { return norm2_ == 0.0; }

    /// Coordinate map without membership checks (defined wherever
    /// 1 - Z.conj(Z0) != 0).
    std::pair<cplx, std::vector<cplx>> apply_raw(cplx W, const std::vector<cplx>& Z) const;

    DomainPoint apply(const DomainPoint& p) const;

private:
    EggDomainSpec spec_;
    std::vector<cplx> Z0_;
    double norm2_; // |Z0|^2
    double s_;     // sqrt(1 - |Z0|^2)
};

CenteringAutomorphism centering_automorphism(const EggDomainSpec& spec, std::vector<cplx> Z0);

/// det of the holomorphic Jacobian of the automorphism at (W, Z), by central
/// finite differences on each coordinate.
cplx automorphism_jacobian_det(const CenteringAutomorphism& map, cplx W,
                               const std::vector<cplx>& Z, double step = 1e-6);

/// Relative residual of the transformation rule
///   K(p,q) = det J(p) K(F p, F q) conj(det J(q)),
/// with numerically differentiated Jacobians.
double verify_transformation_rule(const EggDomainSpec& spec, const CenteringAutomorphism& map,
                                  const PointPair& pair);

struct ReproducingEstimate {
    cplx estimate;            // Monte-Carlo value of the reproducing integral
    cplx reference;           // f(z)
    double rel_error;         // |estimate - reference| / |reference|
    double rel_std_error;     // standard error of the estimate, relative to |reference|
    std::uint64_t samples;    // bounding-region draws
    std::uint64_t accepted;   // draws landing inside the domain
};

/// Monte-Carlo check of f(z) = int_D f(T) K(z, conj T) dV via rejection
/// sampling from {|W|<1} x {|Z|<1}. Requires f(z) != 0; throws
/// InsufficientSamples when the standard error exceeds 50% of |f(z)|.
/// Shards are seeded independently and reduced in shard order, so the result
/// is deterministic for fixed (seed, threads).
ReproducingEstimate reproducing_check(const EggDomainSpec& spec, const MonomialIndex& f,
                                      const DomainPoint& z, std::uint64_t samples,
                                      std::uint64_t seed, int threads = 1);

} // namespace eggdomain
