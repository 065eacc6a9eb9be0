#include "eggdomain/roots.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "eggdomain/errors.hpp"

namespace eggdomain {

namespace {

using cplx = std::complex<double>;

cplx horner(const std::vector<double>& c, cplx x) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

cplx horner_derivative(const std::vector<double>& c, cplx x) {
    cplx acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;)
        acc = acc * x + c[k] * static_cast<double>(k);
    return acc;
}

} // namespace

double root_residual_bound(const RealPolynomial& f, cplx root) {
    return 1e-10 * f.max_abs_coefficient() *
           std::pow(std::max(1.0, std::abs(root)), static_cast<double>(std::max(0, f.degree())));
}

std::vector<cplx> find_roots(const RealPolynomial& f) {
    if (f.is_zero())
        throw DegenerateZeroPolynomial("find_roots: all coefficients vanish");
    const int d = f.degree();
    if (d == 0) return {};

    const std::vector<double>& c = f.coefficients();
    std::vector<cplx> roots;
    if (d == 1) {
        roots.push_back(cplx(-c[0] / c[1], 0.0));
    } else {
        // balanced companion matrix of the monic normalization
        Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
        for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
        for (int i = 0; i < d; ++i) companion(i, d - 1) = -c[i] / c[d];
        Eigen::EigenSolver<Eigen::MatrixXd> es(companion, /*computeEigenvectors=*/false);
        for (int i = 0; i < d; ++i) roots.push_back(es.eigenvalues()[i]);
    }

    // Newton polish; the eigenvalues are already close, a handful of steps
    // reaches the residual contract.
    for (cplx& r : roots) {
        for (int iter = 0; iter < 12; ++iter) {
            cplx fv = horner(c, r);
            if (std::abs(fv) <= 0.01 * root_residual_bound(f, r)) break;
            cplx dv = horner_derivative(c, r);
            if (dv == cplx(0.0)) break;
            cplx step = fv / dv;
            r -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(r))) break;
        }
        if (std::abs(horner(c, r)) > root_residual_bound(f, r))
            throw NumericError("find_roots: refined root fails the residual bound");
    }
    return roots;
}

} // namespace eggdomain
