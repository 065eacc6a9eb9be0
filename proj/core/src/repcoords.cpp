#include "eggdomain/repcoords.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "eggdomain/errors.hpp"

namespace eggdomain {

namespace {

struct Coords {
    cplx W;
    std::vector<cplx> Z;

    static Coords of(const DomainPoint& p) { return {p.W(), p.Z()}; }

    Coords shifted(int coord, double h) const {
        Coords c = *this;
        if (coord == 0) c.W += h;
        else c.Z[coord - 1] += h;
        return c;
    }
};

// log(K * scale) with a zero guard: the kernel value is compared against the
// geometric mean of the diagonal values, which is the natural scale by
// Cauchy-Schwarz. Normalizing by a nearby kernel value keeps the logarithms
// near 0, which suppresses rounding noise in the difference stencils.
cplx log_kernel_guarded(const BergmanKernel& kernel, const Coords& p, const Coords& q,
                        cplx scale = cplx(1.0)) {
    const cplx v = kernel.eval_raw(p.W, p.Z, q.W, q.Z).value;
    const double dp = kernel.eval_raw(p.W, p.Z, p.W, p.Z).value.real();
    const double dq = kernel.eval_raw(q.W, q.Z, q.W, q.Z).value.real();
    if (!(std::abs(v) > 1e-8 * std::sqrt(dp * dq)))
        throw KernelZeroOnPath("kernel vanishes on the differentiation path");
    return std::log(v * scale);
}

// d/dconj(w_j) log K(u, w) at w: K is antiholomorphic in its second slot, so a
// real-step central difference on w_j gives the conjugate-slot derivative.
cplx dbar_log_kernel(const BergmanKernel& kernel, const Coords& u, const Coords& w, int j,
                     double h) {
    const cplx scale = 1.0 / kernel.eval_raw(u.W, u.Z, w.W, w.Z).value;
    auto diff = [&](double step) {
        const cplx lp = log_kernel_guarded(kernel, u, w.shifted(j, step), scale);
        const cplx lm = log_kernel_guarded(kernel, u, w.shifted(j, -step), scale);
        return (lp - lm) / (2.0 * step);
    };
    // one Richardson extrapolation step
    const cplx d1 = diff(h);
    const cplx d2 = diff(0.5 * h);
    return (4.0 * d2 - d1) / 3.0;
}

} // namespace

MetricMatrix metric_matrix(const BergmanKernel& kernel, const DomainPoint& z, double step) {
    if (!(z.defect() > 1e-6))
        throw ValidationError("metric_matrix: point must have membership defect > 1e-6");
    const int dim = kernel.spec().n + 1;
    const Coords base = Coords::of(z);
    const cplx scale = 1.0 / kernel.diagonal(z);

    Eigen::MatrixXcd T(dim, dim);
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            // d^2/dz_i dconj(w_j) log K(z, w) at w = z, four-point stencil
            const cplx lpp =
                log_kernel_guarded(kernel, base.shifted(i, step), base.shifted(j, step), scale);
            const cplx lpm =
                log_kernel_guarded(kernel, base.shifted(i, step), base.shifted(j, -step), scale);
            const cplx lmp =
                log_kernel_guarded(kernel, base.shifted(i, -step), base.shifted(j, step), scale);
            const cplx lmm =
                log_kernel_guarded(kernel, base.shifted(i, -step), base.shifted(j, -step), scale);
            T(i, j) = (lpp - lpm - lmp + lmm) / (4.0 * step * step);
        }
    }
    return {std::move(T), z};
}

std::vector<cplx> representative_coordinates(const BergmanKernel& kernel, const DomainPoint& t,
                                             const DomainPoint& z, double step) {
    const int dim = kernel.spec().n + 1;
    const Coords ct = Coords::of(t);
    const Coords cz = Coords::of(z);

    // the logarithm must exist at the pairs themselves, not only on the stencil
    log_kernel_guarded(kernel, cz, ct);
    log_kernel_guarded(kernel, ct, ct);

    Eigen::VectorXcd d(dim);
    for (int j = 0; j < dim; ++j)
        d(j) = dbar_log_kernel(kernel, cz, ct, j, step) - dbar_log_kernel(kernel, ct, ct, j, step);

    const MetricMatrix metric = metric_matrix(kernel, t);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(metric.T);
    const double emin = es.eigenvalues().minCoeff();
    const double emax = es.eigenvalues().maxCoeff();
    if (!(emin > 0.0) || emax / emin > 1e12)
        throw SingularMetric("representative_coordinates: metric condition number exceeds 1e12");

    // f_i = sum_j T^{-1}_{ji} d_j, i.e. f solves T^t f = d
    Eigen::VectorXcd f = metric.T.transpose().fullPivLu().solve(d);
    return {f.data(), f.data() + dim};
}

Eigen::MatrixXcd representative_jacobian(const BergmanKernel& kernel, const DomainPoint& t,
                                         const DomainPoint& z, double step) {
    const int dim = kernel.spec().n + 1;
    const EggDomainSpec& spec = kernel.spec();
    auto eval = [&](const Coords& c) {
        return representative_coordinates(kernel, t, DomainPoint(spec, c.W, c.Z));
    };
    const Coords base = Coords::of(z);
    Eigen::MatrixXcd J(dim, dim);
    for (int l = 0; l < dim; ++l) {
        const std::vector<cplx> fp = eval(base.shifted(l, step));
        const std::vector<cplx> fm = eval(base.shifted(l, -step));
        for (int i = 0; i < dim; ++i) J(i, l) = (fp[i] - fm[i]) / (2.0 * step);
    }
    return J;
}

} // namespace eggdomain
