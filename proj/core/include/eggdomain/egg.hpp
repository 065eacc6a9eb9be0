#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "eggdomain/errors.hpp"

namespace eggdomain {

using cplx = std::complex<double>;

/// Parameters of the egg domain
///   Y(n; K) = { (W, Z) in C x C^n : |W|^{2K} + |Z|^2 < 1 },
/// a Hartogs fibration over the unit ball B_n with fiber exponent K.
struct EggDomainSpec {
    int n;
    double K;

    EggDomainSpec(int n_, double K_) : n(n_), K(K_) {
        if (n < 1)
            throw ValidationError("EggDomainSpec: n must be a positive integer");
        if (!(K > 0.0) || !std::isfinite(K))
            throw ValidationError("EggDomainSpec: K must be positive and finite");
    }

    bool operator==(const EggDomainSpec&) const = default;
};

/// 1 - (|W|^{2K} + |Z|^2); positive exactly on the open domain.
inline double membership_defect(const EggDomainSpec& spec, cplx W, const std::vector<cplx>& Z) {
    double z2 = 0.0;
    for (const cplx& z : Z) z2 += std::norm(z);
    double w = std::abs(W);
    double fiber = (w == 0.0) ? 0.0 : std::pow(w, 2.0 * spec.K);
    return 1.0 - fiber - z2;
}

/// A point (W, Z) of the egg domain. The constructor rejects non-members and
/// Z-vectors of the wrong length.
class DomainPoint {
public:
    DomainPoint(const EggDomainSpec& spec, cplx W, std::vector<cplx> Z)
        : spec_(spec), W_(W), Z_(std::move(Z)) {
        if (static_cast<int>(Z_.size()) != spec_.n)
            throw ShapeMismatch("DomainPoint: Z must have length n");
        defect_ = membership_defect(spec_, W_, Z_);
        if (!(defect_ > 0.0))
            throw ValidationError("DomainPoint: |W|^{2K} + |Z|^2 must be < 1");
    }

    const EggDomainSpec& spec() const { return spec_; }
    cplx W() const { return W_; }
    const std::vector<cplx>& Z() const { return Z_; }
    double defect() const { return defect_; }

private:
    EggDomainSpec spec_;
    cplx W_;
    std::vector<cplx> Z_;
    double defect_;
};

/// An ordered pair of points of the same egg domain; the kernel is evaluated at
/// (p, conj q).
struct PointPair {
    DomainPoint p;
    DomainPoint q;

    PointPair(DomainPoint p_, DomainPoint q_) : p(std::move(p_)), q(std::move(q_)) {
        if (!(p.spec() == q.spec()))
            throw ShapeMismatch("PointPair: points belong to different domains");
    }
};

} // namespace eggdomain
