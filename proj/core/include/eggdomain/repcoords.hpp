#pragma once

#include <Eigen/Core>
#include <vector>

#include "eggdomain/egg.hpp"
#include "eggdomain/kernel.hpp"

namespace eggdomain {

/// The Bergman metric matrix T(z, z) = (d^2 log K / dz_i dconj(z_j)) over all
/// n+1 coordinates (W first, then Z), by central finite differences on the
/// holomorphic/antiholomorphic slots. Hermitian and positive definite at
/// interior points. The default step balances the stencil's truncation and
/// rounding errors for second differences.
struct MetricMatrix {
    Eigen::MatrixXcd T;
    DomainPoint base;
};

MetricMatrix metric_matrix(const BergmanKernel& kernel, const DomainPoint& z, double step = 1e-4);

/// Representative coordinates based at t, evaluated at z:
///   f_i(z) = sum_j T^{-1}_{ji} d/dconj(w_j) log[K(z, w) / K(w, w)] at w = t.
/// The map takes t to 0 and has identity Jacobian at t. Throws
/// KernelZeroOnPath when the kernel (nearly) vanishes at a required pair and
/// SingularMetric when cond(T) exceeds 1e12.
std::vector<cplx> representative_coordinates(const BergmanKernel& kernel, const DomainPoint& t,
                                             const DomainPoint& z, double step = 1e-5);

/// Numerical Jacobian of z -> representative_coordinates(t, z) at z; used to
/// check the identity-at-base property.
Eigen::MatrixXcd representative_jacobian(const BergmanKernel& kernel, const DomainPoint& t,
                                         const DomainPoint& z, double step = 1e-4);

/// The representative-coordinate map based at a fixed point, as a reusable
/// functor over interior points.
class RepresentativeMap {
public:
    RepresentativeMap(const BergmanKernel& kernel, DomainPoint base)
        : kernel_(&kernel), base_(std::move(base)) {}

    const DomainPoint& base() const { return base_; }

    std::vector<cplx> operator()(const DomainPoint& z) const {
        return representative_coordinates(*kernel_, base_, z);
    }

private:
    const BergmanKernel* kernel_;
    DomainPoint base_;
};

} // namespace eggdomain
