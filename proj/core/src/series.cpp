#include "eggdomain/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "eggdomain/errors.hpp"

namespace eggdomain {

namespace {

double log_factorial(int m) { return std::lgamma(static_cast<double>(m) + 1.0); }

// log of the monomial norm; exponent differencing happens here, before any
// exponentiation
double log_norm_sq(const EggDomainSpec& spec, int a, const std::vector<int>& alpha, int abs_alpha) {
    const double lambda = (static_cast<double>(a) + 1.0) / spec.K;
    double lg = (spec.n + 1) * std::log(M_PI) - std::log(spec.K);
    for (int e : alpha) lg += log_factorial(e);
    lg += std::lgamma(lambda) - std::lgamma(lambda + abs_alpha + spec.n + 1);
    return lg;
}

} // namespace

double monomial_norm_sq(const EggDomainSpec& spec, const MonomialIndex& idx) {
    if (static_cast<int>(idx.alpha.size()) != spec.n)
        throw ShapeMismatch("monomial_norm_sq: alpha must have length n");
    int abs_alpha = 0;
    for (int e : idx.alpha) abs_alpha += e;
    return std::exp(log_norm_sq(spec, idx.a, idx.alpha, abs_alpha));
}

std::vector<cplx> series_shell_sums(const EggDomainSpec& spec, const PointPair& pair, int cutoff) {
    if (cutoff < 0) throw ValidationError("series_shell_sums: cutoff must be >= 0");
    const int n = spec.n;

    // fold the pair: u_0 = W conj(zeta), u_j = z_j conj(xi_j)
    std::vector<cplx> u(n + 1);
    u[0] = pair.p.W() * std::conj(pair.q.W());
    for (int j = 0; j < n; ++j) u[j + 1] = pair.p.Z()[j] * std::conj(pair.q.Z()[j]);

    std::vector<cplx> logu(n + 1);
    std::vector<bool> uzero(n + 1);
    for (int j = 0; j <= n; ++j) {
        uzero[j] = (u[j] == cplx(0.0));
        logu[j] = uzero[j] ? cplx(0.0) : std::log(u[j]);
    }

    std::vector<cplx> shells(cutoff + 1, cplx(0.0));
    std::vector<int> alpha(n, 0);

    // odometer over alpha with |alpha| <= cutoff - a, lexicographic
    for (int a = 0; a <= cutoff; ++a) {
        if (uzero[0] && a > 0) break;
        const int budget = cutoff - a;
        const double lambda = (static_cast<double>(a) + 1.0) / spec.K;
        const double lg_base = (n + 1) * std::log(M_PI) - std::log(spec.K) + std::lgamma(lambda);
        std::fill(alpha.begin(), alpha.end(), 0);
        for (;;) {
            int abs_alpha = 0;
            bool skip = false;
            for (int j = 0; j < n; ++j) {
                abs_alpha += alpha[j];
                if (alpha[j] > 0 && uzero[j + 1]) skip = true;
            }
            if (!skip) {
                cplx logterm = static_cast<double>(a) * logu[0];
                double lg_alpha = 0.0;
                for (int j = 0; j < n; ++j) {
                    logterm += static_cast<double>(alpha[j]) * logu[j + 1];
                    lg_alpha += log_factorial(alpha[j]);
                }
                const double log_norm =
                    lg_base + lg_alpha - std::lgamma(lambda + abs_alpha + n + 1);
                shells[a + abs_alpha] += std::exp(logterm - log_norm);
            }
            // advance the odometer under the budget constraint
            int j = 0;
            for (; j < n; ++j) {
                ++alpha[j];
                int total = 0;
                for (int l = 0; l < n; ++l) total += alpha[l];
                if (total <= budget) break;
                alpha[j] = 0;
            }
            if (j == n) break;
        }
    }
    return shells;
}

SeriesEvaluation kernel_series(const EggDomainSpec& spec, const PointPair& pair, int cutoff) {
    if (pair.p.defect() <= 1e-6 || pair.q.defect() <= 1e-6)
        throw ValidationError("kernel_series: pair must have membership defect > 1e-6");

    const std::vector<cplx> shells = series_shell_sums(spec, pair, cutoff);
    cplx value = 0.0;
    for (const cplx& s : shells) value += s;

    // geometric-ratio extrapolation of the last three shell magnitudes; the
    // ratio is capped so that shells already at the rounding floor produce a
    // negligible tail instead of a spurious divergence (a genuinely growing
    // tail still trips the 10% guard through the m2 factor)
    constexpr double kRhoCap = 0.999;
    double tail = 0.0;
    if (cutoff >= 2) {
        const double m0 = std::abs(shells[cutoff - 2]);
        const double m1 = std::abs(shells[cutoff - 1]);
        const double m2 = std::abs(shells[cutoff]);
        if (m2 > 0.0) {
            double rho = 0.0;
            if (m1 > 0.0) rho = std::max(rho, m2 / m1);
            if (m0 > 0.0) rho = std::max(rho, std::sqrt(m2 / m0));
            rho = std::min(rho, kRhoCap);
            tail = m2 * rho / (1.0 - rho);
        }
    } else if (cutoff > 0 && std::abs(shells[cutoff]) > 0.0) {
        tail = std::abs(shells[cutoff]) * kRhoCap / (1.0 - kRhoCap);
    }

    SeriesEvaluation out{value, cutoff, tail};
    if (tail > 0.1 * std::abs(value))
        throw CutoffTooSmall("kernel_series: tail estimate exceeds 10% of |value|");
    return out;
}

} // namespace eggdomain
