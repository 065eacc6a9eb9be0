#include "eggdomain/classifier.hpp"

#include <cmath>
#include <limits>

#include "eggdomain/errors.hpp"
#include "eggdomain/roots.hpp"

namespace eggdomain {

const char* to_string(LuQiKengStatus status) {
    switch (status) {
        case LuQiKengStatus::LuQiKeng: return "LuQiKeng";
        case LuQiKengStatus::NotLuQiKeng: return "NotLuQiKeng";
        case LuQiKengStatus::Borderline: return "Borderline";
    }
    return "unknown";
}

FiberPolynomial fiber_polynomial(const KernelCoefficients& coeffs) {
    const int n = coeffs.spec.n;
    // ascending in t: coefficient of t^k is (n+1-k)! b_{n+1-k}
    std::vector<double> c(n + 1, 0.0);
    double fact = 1.0;
    std::vector<double> factorials(n + 2, 1.0);
    for (int i = 1; i <= n + 1; ++i) {
        fact *= static_cast<double>(i);
        factorials[i] = fact;
    }
    for (int k = 0; k <= n; ++k) c[k] = factorials[n + 1 - k] * coeffs.b[n + 1 - k];
    return {RealPolynomial(std::move(c)), coeffs.spec};
}

ClassificationResult classify(const EggDomainSpec& spec, double tol) {
    if (!(tol > 0.0) || tol > 1e-3)
        throw ValidationError("classify: tol must lie in (0, 1e-3]");

    const FiberPolynomial f = fiber_polynomial(kernel_coefficients(spec));
    const std::vector<cplx> roots_t = find_roots(f.poly);

    ClassificationResult out;
    out.tol = tol;
    out.margin = -std::numeric_limits<double>::infinity();
    for (const cplx& t : roots_t) {
        const cplx s = 1.0 - t;
        out.roots_s.push_back(s);
        out.margin = std::max(out.margin, 1.0 - std::abs(s));
        if (std::abs(s) < 1.0) out.witness_roots.push_back(s);
    }

    if (out.margin > tol)
        out.status = LuQiKengStatus::NotLuQiKeng;
    else if (out.margin > 0.0)
        out.status = LuQiKengStatus::Borderline;
    else {
        // roots on the unit circle itself lie outside the open domain
        out.status = LuQiKengStatus::LuQiKeng;
        out.witness_roots.clear();
    }
    return out;
}

double classification_margin(const EggDomainSpec& spec) {
    const FiberPolynomial f = fiber_polynomial(kernel_coefficients(spec));
    double margin = -std::numeric_limits<double>::infinity();
    for (const cplx& t : find_roots(f.poly))
        margin = std::max(margin, 1.0 - std::abs(1.0 - t));
    return margin;
}

ThresholdReport threshold_sweep(int n, std::pair<double, double> K_range, double precision,
                                int grid_points) {
    auto [lo, hi] = K_range;
    if (!(lo < hi) || !(lo > 0.0))
        throw ValidationError("threshold_sweep: need 0 < lo < hi");
    if (!(precision > 0.0))
        throw ValidationError("threshold_sweep: precision must be positive");

    ThresholdReport report;
    report.n = n;

    auto margin_at = [&](double K) { return classification_margin(EggDomainSpec(n, K)); };

    if (grid_points >= 2) {
        for (int i = 0; i < grid_points; ++i) {
            double K = lo + (hi - lo) * static_cast<double>(i) / (grid_points - 1);
            report.samples.emplace_back(K, margin_at(K));
        }
    }

    double m_lo = margin_at(lo);
    double m_hi = margin_at(hi);
    if ((m_lo > 0.0) == (m_hi > 0.0))
        throw NoSignChange("threshold_sweep: margin has the same sign at both endpoints");

    while (hi - lo > precision) {
        const double mid = 0.5 * (lo + hi);
        const double m_mid = margin_at(mid);
        report.samples.emplace_back(mid, m_mid);
        if ((m_mid > 0.0) == (m_lo > 0.0)) {
            lo = mid;
            m_lo = m_mid;
        } else {
            hi = mid;
        }
    }

    report.K_star = 0.5 * (lo + hi);
    report.bracket = {lo, hi};
    return report;
}

ZeroLocus::ZeroLocus(const EggDomainSpec& spec, cplx witness_s) : spec_(spec), s_(witness_s) {
    if (!(std::abs(s_) < 1.0))
        throw InadmissibleWitness("zero_locus: witness must satisfy |s| < 1");
}

ZeroLocus zero_locus(const EggDomainSpec& spec, cplx witness_s) {
    return ZeroLocus(spec, witness_s);
}

namespace {

cplx pair_X(const EggDomainSpec& spec, const PointPair& pair) {
    cplx inner = 0.0;
    for (int j = 0; j < spec.n; ++j) inner += pair.p.Z()[j] * std::conj(pair.q.Z()[j]);
    return pair.p.W() * std::conj(pair.q.W()) * std::pow(1.0 - inner, -1.0 / spec.K);
}

} // namespace

double ZeroLocus::residual(const PointPair& pair) const {
    return std::abs(pair_X(spec_, pair) - s_);
}

bool ZeroLocus::satisfied(const PointPair& pair, double tol) const {
    return residual(pair) <= tol;
}

PointPair ZeroLocus::fiber_pair() const {
    const double r = std::sqrt(std::abs(s_));
    const cplx phase = (s_ == cplx(0.0)) ? cplx(1.0) : s_ / std::abs(s_);
    const std::vector<cplx> zero(spec_.n, cplx(0.0));
    DomainPoint p(spec_, r * phase, zero);
    DomainPoint q(spec_, cplx(r, 0.0), zero);
    return PointPair(std::move(p), std::move(q));
}

PointPair ZeroLocus::shifted_pair(cplx zeta, const std::vector<cplx>& Z,
                                  const std::vector<cplx>& xi) const {
    if (zeta == cplx(0.0))
        throw ValidationError("zero_locus: zeta must be nonzero to solve for W");
    if (static_cast<int>(Z.size()) != spec_.n || static_cast<int>(xi.size()) != spec_.n)
        throw ShapeMismatch("zero_locus: Z and xi must have length n");
    cplx inner = 0.0;
    for (int j = 0; j < spec_.n; ++j) inner += Z[j] * std::conj(xi[j]);
    const cplx W = s_ * std::pow(1.0 - inner, 1.0 / spec_.K) / std::conj(zeta);
    DomainPoint p(spec_, W, Z);
    DomainPoint q(spec_, zeta, xi);
    return PointPair(std::move(p), std::move(q));
}

} // namespace eggdomain
