#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>

#include "eggdomain/classifier.hpp"
#include "eggdomain/errors.hpp"
#include "eggdomain/kernel.hpp"
#include "eggdomain/mc.hpp"
#include "eggdomain/roots.hpp"
#include "test_util.hpp"

using namespace eggdomain;
using eggtest::rel_close;

namespace {

double cs_normalized_kernel(const BergmanKernel& kernel, const PointPair& pair) {
    const double dp = kernel.diagonal(pair.p);
    const double dq = kernel.diagonal(pair.q);
    return std::abs(kernel.eval(pair).value) / std::sqrt(dp * dq);
}

} // namespace

TEST_CASE("fiber polynomial shapes and constant term") {
    // n = 1: f(t) = (K-1) t + 2
    for (double K : {0.25, 2.0, 7.0}) {
        auto f = fiber_polynomial(kernel_coefficients(EggDomainSpec(1, K)));
        REQUIRE(f.poly.degree() == 1);
        CHECK(rel_close(f.poly[0], 2.0, 1e-14));
        CHECK(rel_close(f.poly[1], K - 1.0, 1e-13));
    }
    // n = 2: f(t) = b1 t^2 + 2 b2 t + 6 b3
    for (double K : {0.25, 0.8, 3.0}) {
        auto c = kernel_coefficients(EggDomainSpec(2, K));
        auto f = fiber_polynomial(c);
        CHECK(rel_close(f.poly[2], c.b[1], 1e-13));
        CHECK(rel_close(f.poly[1], 2.0 * c.b[2], 1e-13));
        CHECK(rel_close(f.poly[0], 6.0 * c.b[3], 1e-13));
    }
    // n = 3: f(t) = b1 t^3 + 2 b2 t^2 + 6 b3 t + 24 b4
    {
        auto c = kernel_coefficients(EggDomainSpec(3, 2.0));
        auto f = fiber_polynomial(c);
        CHECK(rel_close(f.poly[3], c.b[1], 1e-13));
        CHECK(rel_close(f.poly[2], 2.0 * c.b[2], 1e-13));
        CHECK(rel_close(f.poly[1], 6.0 * c.b[3], 1e-13));
        CHECK(rel_close(f.poly[0], 24.0, 1e-13));
    }
    // constant term is (n+1)! for all n, so t = 0 is never a root
    for (int n = 1; n <= 8; ++n) {
        auto f = fiber_polynomial(kernel_coefficients(EggDomainSpec(n, 0.37)));
        double fact = 1.0;
        for (int k = 2; k <= n + 1; ++k) fact *= k;
        CHECK(rel_close(f.poly[0], fact, 1e-12));
    }
}

TEST_CASE("n = 1: the single root is s = (K+1)/(K-1)") {
    auto f = fiber_polynomial(kernel_coefficients(EggDomainSpec(1, 2.0)));
    auto roots = find_roots(f.poly);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - cplx(-2.0)) <= 1e-13); // t = -2, i.e. s = 3
    CHECK(std::abs((1.0 - roots[0]) - cplx(3.0)) <= 1e-13);
}

TEST_CASE("n = 2: roots match the quadratic formula away from K = 1/2, 1") {
    Rng rng(2024);
    std::uniform_real_distribution<double> pick(0.05, 4.0);
    int tested = 0;
    while (tested < 200) {
        double K = pick(rng);
        if (std::abs(K - 0.5) < 1e-3 || std::abs(K - 1.0) < 1e-3) continue;
        ++tested;
        auto c = kernel_coefficients(EggDomainSpec(2, K));
        const double b1 = c.b[1], b2 = c.b[2], b3 = c.b[3];
        const cplx disc = cplx(b2 * b2 - 6.0 * b1 * b3, 0.0);
        const cplx sp = (b1 + b2 + std::sqrt(disc)) / b1;
        const cplx sm = (b1 + b2 - std::sqrt(disc)) / b1;

        auto roots = find_roots(fiber_polynomial(c).poly);
        REQUIRE(roots.size() == 2);
        std::vector<cplx> s{1.0 - roots[0], 1.0 - roots[1]};
        const double match = std::min(std::abs(s[0] - sp) + std::abs(s[1] - sm),
                                      std::abs(s[0] - sm) + std::abs(s[1] - sp));
        CHECK_MESSAGE(match <= 1e-10 * std::max(1.0, std::abs(sp) + std::abs(sm)), "K=", K);
    }
}

TEST_CASE("n = 2, K = 1/2: degree drops, sole root t = 2 (s = -1)") {
    auto f = fiber_polynomial(kernel_coefficients(EggDomainSpec(2, 0.5)));
    REQUIRE(f.poly.degree() == 1);
    auto roots = find_roots(f.poly);
    REQUIRE(roots.size() == 1);
    CHECK(std::abs(roots[0] - cplx(2.0)) <= 1e-14);
}

TEST_CASE("classification of the paper cases") {
    CHECK(classify(EggDomainSpec(1, 0.3)).status == LuQiKengStatus::LuQiKeng);
    for (double K : {0.05, 0.2, 0.5, 0.99, 1.0, 1.01, 3.0, 20.0})
        CHECK(classify(EggDomainSpec(1, K)).status == LuQiKengStatus::LuQiKeng);

    auto r = classify(EggDomainSpec(2, 0.25));
    CHECK(r.status == LuQiKengStatus::NotLuQiKeng);
    REQUIRE(!r.witness_roots.empty());
    {
        // the witness quoted in closed form:
        // s = [2(K-1)(K+1) + sqrt(-3(K-1)(K+1))] / ((1-K)(1-2K)) at K = 1/4
        const double K = 0.25;
        const double num_re = 2.0 * (K - 1.0) * (K + 1.0);
        const double num_sq = std::sqrt(-3.0 * (K - 1.0) * (K + 1.0));
        const double den = (1.0 - K) * (1.0 - 2.0 * K);
        const cplx expect((num_re + num_sq) / den, 0.0);
        const double best = [&] {
            double m = 1e300;
            for (cplx w : r.witness_roots) m = std::min(m, std::abs(w - expect));
            return m;
        }();
        CHECK(best <= 1e-12);
    }

    CHECK(classify(EggDomainSpec(2, 3.0)).status == LuQiKengStatus::LuQiKeng);
    CHECK(classify(EggDomainSpec(3, 0.5)).status == LuQiKengStatus::NotLuQiKeng);
    CHECK(classify(EggDomainSpec(3, 0.8)).status == LuQiKengStatus::LuQiKeng);
}

TEST_CASE("margin rule at the n = 2 boundary case") {
    auto r = classify(EggDomainSpec(2, 0.5));
    CHECK(r.status == LuQiKengStatus::LuQiKeng);
    CHECK(r.witness_roots.empty());
    REQUIRE(r.roots_s.size() == 1);
    CHECK(std::abs(std::abs(r.roots_s[0]) - 1.0) < 1e-9);
    CHECK(std::abs(r.roots_s[0] - cplx(-1.0)) < 1e-9);
    CHECK(std::abs(r.margin) < 1e-9);

    // a hair inside 1/2 the root crosses into the disk: Borderline under tol
    auto rb = classify(EggDomainSpec(2, 0.5 - 1e-12), 1e-9);
    CHECK(rb.status == LuQiKengStatus::Borderline);
    CHECK(rb.margin > 0.0);
    CHECK(rb.margin <= 1e-9);
    CHECK(!rb.witness_roots.empty());

    // ball case: no roots at all, margin is -infinity
    auto rball = classify(EggDomainSpec(2, 1.0));
    CHECK(rball.status == LuQiKengStatus::LuQiKeng);
    CHECK(rball.roots_s.empty());
    CHECK(std::isinf(rball.margin));
    CHECK(rball.margin < 0.0);

    CHECK_THROWS_AS(classify(EggDomainSpec(2, 0.5), 0.0), ValidationError);
    CHECK_THROWS_AS(classify(EggDomainSpec(2, 0.5), 1e-2), ValidationError);
}

TEST_CASE("threshold sweeps reproduce K* = 1/2 and sqrt(2)/2") {
    auto r2 = threshold_sweep(2, {0.1, 0.9}, 1e-6);
    CHECK(std::abs(r2.K_star - 0.5) <= 1e-6);
    CHECK(r2.bracket.second - r2.bracket.first <= 1e-6);
    CHECK(!r2.samples.empty());

    auto r3 = threshold_sweep(3, {0.1, 0.9}, 1e-6);
    CHECK(std::abs(r3.K_star - std::sqrt(2.0) / 2.0) <= 1e-6);

    // margins must change sign across the reported bracket
    CHECK(classification_margin(EggDomainSpec(3, r3.bracket.first)) > 0.0);
    CHECK(classification_margin(EggDomainSpec(3, r3.bracket.second)) <= 0.0);

    CHECK_THROWS_AS(threshold_sweep(1, {0.5, 2.0}, 1e-6), NoSignChange);
    CHECK_THROWS_AS(threshold_sweep(2, {0.9, 0.1}, 1e-6), ValidationError);
}

TEST_CASE("n = 4 threshold lies in (sqrt(2)/2, 1)") {
    auto r = threshold_sweep(4, {0.1, 0.95}, 1e-6);
    CHECK(r.K_star > std::sqrt(2.0) / 2.0);
    CHECK(r.K_star < 1.0);

    // cross-validate by a dense margin grid: exactly one sign change near K*
    int changes = 0;
    double crossing = 0.0;
    double prev = classification_margin(EggDomainSpec(4, 0.55));
    for (double K = 0.551; K <= 0.96; K += 1e-3) {
        double m = classification_margin(EggDomainSpec(4, K));
        if ((prev > 0.0) != (m > 0.0)) {
            ++changes;
            crossing = K;
        }
        prev = m;
    }
    CHECK(changes == 1);
    CHECK(std::abs(crossing - r.K_star) <= 2e-3);
}

TEST_CASE("margin is continuous in K away from the degenerations") {
    // n = 3 degenerations in [0.2, 1.2]: K = 1/3, 1/2, 1
    const double lo = 0.2, hi = 1.2, step = 1e-3;
    auto excluded = [&](double K) {
        for (double bad : {1.0 / 3.0, 0.5, 1.0})
            if (std::abs(K - bad) <= 2.5 * step) return true;
        return false;
    };
    std::vector<std::pair<double, double>> samples;
    for (double K = lo; K <= hi + 1e-12; K += step)
        samples.emplace_back(K, classification_margin(EggDomainSpec(3, K)));
    for (std::size_t i = 2; i < samples.size(); ++i) {
        if (excluded(samples[i].first) || excluded(samples[i - 1].first) ||
            excluded(samples[i - 2].first))
            continue;
        const double jump = std::abs(samples[i].second - samples[i - 1].second);
        const double local = std::abs(samples[i - 1].second - samples[i - 2].second);
        CHECK_MESSAGE(jump <= 10.0 * std::max(local, 1e-6), "K=", samples[i].first);
    }
}

TEST_CASE("zero locus: witnesses really kill the kernel") {
    for (auto [n, K] : {std::pair<int, double>{2, 0.25}, {3, 0.5}}) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        auto result = classify(spec);
        REQUIRE(result.status == LuQiKengStatus::NotLuQiKeng);
        for (cplx w : result.witness_roots) {
            ZeroLocus locus = zero_locus(spec, w);
            PointPair pair = locus.fiber_pair();
            CHECK(locus.satisfied(pair));
            CHECK(cs_normalized_kernel(kernel, pair) < 1e-8);

            // shifted pair with nonzero base coordinates
            std::vector<cplx> Z(n, 0.0), xi(n, 0.0);
            Z[0] = cplx(0.1, 0.0);
            xi[0] = cplx(0.1, 0.0);
            PointPair shifted = locus.shifted_pair(cplx(0.5, 0.2), Z, xi);
            CHECK(locus.satisfied(shifted));
            CHECK(cs_normalized_kernel(kernel, shifted) < 1e-8);
        }
    }
    CHECK_THROWS_AS(zero_locus(EggDomainSpec(2, 0.25), cplx(1.0, 0.0)), InadmissibleWitness);
    CHECK_THROWS_AS(zero_locus(EggDomainSpec(2, 0.25), cplx(0.8, 0.7)), InadmissibleWitness);
}

TEST_CASE("every point of the open unit s-disk is attained by a fiber pair") {
    EggDomainSpec spec(2, 0.7);
    Rng rng(888);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const cplx s = std::polar(0.9999 * std::sqrt(unif(rng)), 2.0 * M_PI * unif(rng));
        REQUIRE(admissible_witness(s));
        ZeroLocus locus(spec, s);
        PointPair pair = locus.fiber_pair();
        CHECK(pair.p.defect() > 0.0);
        CHECK(pair.q.defect() > 0.0);
        CHECK(locus.residual(pair) <= 1e-12);
    }
    CHECK(!admissible_witness(cplx(1.0, 0.0)));
    CHECK(!admissible_witness(cplx(0.8, 0.8)));
}

TEST_CASE("witness s = 0 is admissible and the kernel is nonzero there") {
    EggDomainSpec spec(2, 3.0); // LuQiKeng parameters
    CHECK_NOTHROW(zero_locus(spec, cplx(0.0)));
    BergmanKernel kernel(spec);
    // X = 0 pairs: f(1) is the relevant fiber value and must not vanish
    DomainPoint p(spec, 0.0, {cplx(0.3, 0.1), cplx(0.0, 0.2)});
    DomainPoint q(spec, 0.4, {cplx(0.1, 0.0), cplx(0.2, 0.0)});
    CHECK(cs_normalized_kernel(kernel, PointPair(p, q)) > 1e-10);
}

TEST_CASE("LuQiKeng parameters keep the fiber bounded away from zero") {
    for (auto [n, K] : {std::pair<int, double>{1, 0.5}, {2, 3.0}, {3, 2.0}}) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        REQUIRE(classify(spec).status == LuQiKengStatus::LuQiKeng);
        double lowest = 1e300;
        for (int ir = 1; ir <= 40; ++ir) {
            for (int ia = 0; ia < 40; ++ia) {
                const double r = 0.999 * ir / 40.0;
                const cplx s = std::polar(r, 2.0 * M_PI * ia / 40.0);
                lowest = std::min(lowest, kernel.normalized_fiber_value(s));
            }
        }
        CHECK(lowest > 1e-10);
    }
}

TEST_CASE("reduction soundness: full-pair kernel factors through f(1 - X)") {
    for (auto [n, K] : {std::pair<int, double>{1, 0.3}, {2, 0.25}, {2, 2.0}}) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        auto f = fiber_polynomial(kernel.coefficients());
        Rng rng(700 + n);
        for (int trial = 0; trial < 60; ++trial) {
            PointPair pair(sample_interior_point(spec, rng, 0.05),
                           sample_interior_point(spec, rng, 0.05));
            auto kv = kernel.eval(pair);
            // K = pref * Y^{n+2} f(1-X) (1 - Z.conj(xi))^{-(n+1+1/K)}
            cplx inner = 0.0;
            for (int j = 0; j < n; ++j) inner += pair.p.Z()[j] * std::conj(pair.q.Z()[j]);
            const cplx pref = std::pow(spec.K, -n) * std::pow(M_PI, -(n + 1));
            const cplx want = pref * std::pow(kv.Y, n + 2.0) * f.poly.eval(1.0 - kv.X) *
                              std::pow(1.0 - inner, -(n + 1.0 + 1.0 / spec.K));
            CHECK(rel_close(kv.value, want, 1e-11));
        }
    }

    // NotLuQiKeng: full pairs (Z, xi != 0) on the locus reach zero
    {
        EggDomainSpec spec(2, 0.25);
        BergmanKernel kernel(spec);
        auto result = classify(spec);
        ZeroLocus locus = zero_locus(spec, result.witness_roots.front());
        Rng rng(41);
        std::uniform_real_distribution<double> unif(-0.3, 0.3);
        int built = 0;
        while (built < 40) {
            std::vector<cplx> Z{cplx(unif(rng), unif(rng)), cplx(unif(rng), unif(rng))};
            std::vector<cplx> xi{cplx(unif(rng), unif(rng)), cplx(unif(rng), unif(rng))};
            cplx zeta(0.45 + 0.1 * unif(rng), 0.2 * unif(rng));
            try {
                PointPair pair = locus.shifted_pair(zeta, Z, xi);
                CHECK(cs_normalized_kernel(kernel, pair) < 1e-8);
                CHECK(kernel.normalized_fiber_value(eval_kernel(spec, pair).X) < 1e-10);
                ++built;
            } catch (const ValidationError&) {
                // solved W fell outside the domain; try another draw
            }
        }
    }

    // LuQiKeng: dense random full pairs stay bounded away from zero in the
    // fiber-normalized sense
    for (auto [n, K] : {std::pair<int, double>{1, 0.3}, {2, 2.0}}) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        Rng rng(900 + n);
        double lowest = 1e300;
        for (int trial = 0; trial < 4000; ++trial) {
            PointPair pair(sample_interior_point(spec, rng, 1e-3),
                           sample_interior_point(spec, rng, 1e-3));
            lowest = std::min(lowest,
                              kernel.normalized_fiber_value(kernel.eval(pair).X));
        }
        CHECK(lowest > 1e-6);
    }
}
