#include "eggdomain/mc.hpp"

#include <cmath>

namespace eggdomain {

cplx sample_unit_disk(Rng& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double r = std::sqrt(unif(rng));
    double phi = 2.0 * M_PI * unif(rng);
    return cplx(r * std::cos(phi), r * std::sin(phi));
}

std::vector<cplx> sample_unit_ball(Rng& rng, int n) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::vector<double> g(2 * n);
    double norm2 = 0.0;
    for (double& x : g) {
        x = gauss(rng);
        norm2 += x * x;
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) norm = 1.0;
    double radius = std::pow(unif(rng), 1.0 / (2.0 * n));
    std::vector<cplx> z(n);
    for (int j = 0; j < n; ++j)
        z[j] = cplx(g[2 * j], g[2 * j + 1]) * (radius / norm);
    return z;
}

double bounding_volume(int n) {
    double ball = std::pow(M_PI, n);
    for (int k = 2; k <= n; ++k) ball /= static_cast<double>(k);
    return M_PI * ball;
}

double egg_volume(const EggDomainSpec& spec) {
    double lambda = 1.0 / spec.K;
    double lg = std::lgamma(lambda) - std::lgamma(lambda + spec.n + 1);
    return std::pow(M_PI, spec.n + 1) / spec.K * std::exp(lg);
}

DomainPoint sample_interior_point(const EggDomainSpec& spec, Rng& rng, double min_defect) {
    for (;;) {
        cplx W = sample_unit_disk(rng);
        std::vector<cplx> Z = sample_unit_ball(rng, spec.n);
        if (membership_defect(spec, W, Z) > min_defect)
            return DomainPoint(spec, W, std::move(Z));
    }
}

} // namespace eggdomain
