#include "eggdomain/acceptance.hpp"

#include <Eigen/Dense>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <sstream>

#include "eggdomain/cartan.hpp"
#include "eggdomain/classifier.hpp"
#include "eggdomain/coefficients.hpp"
#include "eggdomain/errors.hpp"
#include "eggdomain/kernel.hpp"
#include "eggdomain/mc.hpp"
#include "eggdomain/repcoords.hpp"
#include "eggdomain/series.hpp"

namespace eggdomain {

bool AcceptanceReport::all_passed() const {
    for (const CriterionResult& c : criteria)
        if (!c.passed) return false;
    return !criteria.empty();
}

namespace {

constexpr double kInvSqrt2 = 0.7071067811865476;

struct Checker {
    int checks = 0;
    int failures = 0;
    std::string first_failure;
    std::string note;

    void require(bool cond, const std::string& msg) {
        ++checks;
        if (!cond) {
            ++failures;
            if (first_failure.empty()) first_failure = msg;
        }
    }

    bool ok() const { return failures == 0 && checks > 0; }

    std::string detail() const {
        std::ostringstream os;
        os << (checks - failures) << "/" << checks << " checks";
        if (!note.empty()) os << "; " << note;
        if (!first_failure.empty()) os << "; first failure: " << first_failure;
        return os.str();
    }
};

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

bool rel_ok(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(std::abs(got), std::abs(want));
}

DomainPoint origin(const EggDomainSpec& spec) {
    return DomainPoint(spec, 0.0, std::vector<cplx>(spec.n, 0.0));
}

// ---- criterion 1: coefficient tables ---------------------------------------

std::vector<double> table_b(int n, double K) {
    switch (n) {
        case 1: return {0.0, K - 1.0, 1.0};
        case 2: return {0.0, (K - 1.0) * (2.0 * K - 1.0), 3.0 * (K - 1.0), 1.0};
        default:
            return {0.0, (K - 1.0) * (2.0 * K - 1.0) * (3.0 * K - 1.0),
                    (K - 1.0) * (11.0 * K - 7.0), 6.0 * (K - 1.0), 1.0};
    }
}

Checker crit_coefficient_tables(std::uint64_t) {
    Checker c;
    for (double K : {0.25, 0.5, kInvSqrt2, 1.0, 2.0}) {
        for (int n : {1, 2, 3}) {
            const auto want = table_b(n, K);
            const auto rec = coefficients_by_recurrence(EggDomainSpec(n, K)).b;
            const auto cf = coefficients_by_closed_form(EggDomainSpec(n, K)).b;
            for (std::size_t i = 0; i < want.size(); ++i) {
                c.require(rel_ok(rec[i], want[i], 1e-12),
                          "recurrence n=" + std::to_string(n) + " K=" + fmt(K));
                c.require(rel_ok(cf[i], want[i], 1e-12),
                          "closed form n=" + std::to_string(n) + " K=" + fmt(K));
            }
        }
    }
    double worst = 0.0;
    for (int n = 1; n <= 8; ++n) {
        for (double K : {0.1, 0.25, 0.5, kInvSqrt2, 1.0, 2.0, 5.0, 10.0}) {
            const auto checked = kernel_coefficients_checked(EggDomainSpec(n, K));
            worst = std::max(worst, checked.max_rel_disagreement);
            c.require(checked.max_rel_disagreement <= 1e-12,
                      "route disagreement n=" + std::to_string(n) + " K=" + fmt(K));
        }
    }
    c.note = "max route disagreement " + fmt(worst);
    return c;
}

// ---- criterion 2: oracle equivalence ---------------------------------------

Checker crit_oracle_equivalence(std::uint64_t seed) {
    Checker c;
    const std::pair<int, double> specs[] = {{1, 1.0}, {1, 2.0}, {2, 0.5}, {2, 3.0}, {3, kInvSqrt2}};
    double worst = 0.0;
    for (auto [n, K] : specs) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        Rng rng(seed + 10 * n + static_cast<std::uint64_t>(100 * K));
        for (int trial = 0; trial < 10; ++trial) {
            PointPair pair(sample_interior_point(spec, rng, 0.55),
                           sample_interior_point(spec, rng, 0.55));
            const cplx closed = kernel.eval(pair).value;
            const cplx series = kernel_series(spec, pair, 96).value;
            const double rel = std::abs(series - closed) / std::abs(closed);
            worst = std::max(worst, rel);
            c.require(rel <= 1e-8, "n=" + std::to_string(n) + " K=" + fmt(K) +
                                       " rel=" + fmt(rel));
        }
    }
    c.note = "worst relative difference " + fmt(worst) + " at cutoff 96";
    return c;
}

// ---- criterion 3: thresholds -----------------------------------------------

Checker crit_thresholds(std::uint64_t) {
    Checker c;
    const auto r2 = threshold_sweep(2, {0.1, 0.9}, 1e-6);
    const auto r3 = threshold_sweep(3, {0.1, 0.9}, 1e-6);
    c.require(std::abs(r2.K_star - 0.5) <= 1e-6, "K*(2)=" + fmt(r2.K_star));
    c.require(std::abs(r3.K_star - kInvSqrt2) <= 1e-6, "K*(3)=" + fmt(r3.K_star));
    c.note = "K*(2)=" + fmt(r2.K_star) + ", K*(3)=" + fmt(r3.K_star);
    return c;
}

// ---- criterion 4: n = 1 universality ---------------------------------------

Checker crit_n1_universality(std::uint64_t) {
    Checker c;
    for (int i = 0; i < 100; ++i) {
        const double K = 0.05 * std::pow(20.0 / 0.05, i / 99.0);
        c.require(classify(EggDomainSpec(1, K)).status == LuQiKengStatus::LuQiKeng,
                  "K=" + fmt(K));
    }
    return c;
}

// ---- criterion 5: boundary case n = 2, K = 1/2 -----------------------------

Checker crit_boundary_case(std::uint64_t) {
    Checker c;
    const auto r = classify(EggDomainSpec(2, 0.5));
    c.require(r.status == LuQiKengStatus::LuQiKeng, "status");
    c.require(r.roots_s.size() == 1, "expected a single root");
    if (r.roots_s.size() == 1) {
        const double dist = std::abs(std::abs(r.roots_s[0]) - 1.0);
        c.require(dist < 1e-9, "distance from unit circle " + fmt(dist));
        c.require(std::abs(r.roots_s[0] - cplx(-1.0)) < 1e-9, "root location");
        c.note = "sole root s=" + fmt(r.roots_s[0].real()) + "+" + fmt(r.roots_s[0].imag()) +
                 "i, |s|-1=" + fmt(std::abs(r.roots_s[0]) - 1.0);
    }
    return c;
}

// ---- criterion 6: witness validity -----------------------------------------

double cs_normalized(const BergmanKernel& kernel, const PointPair& pair) {
    return std::abs(kernel.eval(pair).value) /
           std::sqrt(kernel.diagonal(pair.p) * kernel.diagonal(pair.q));
}

Checker crit_witness_validity(std::uint64_t) {
    Checker c;
    for (auto [n, K] : {std::pair<int, double>{2, 0.25}, {3, 0.5}}) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        const auto r = classify(spec);
        c.require(r.status == LuQiKengStatus::NotLuQiKeng, "status n=" + std::to_string(n));
        for (cplx w : r.witness_roots) {
            ZeroLocus locus(spec, w);
            const double v = cs_normalized(kernel, locus.fiber_pair());
            c.require(v < 1e-8, "fiber witness n=" + std::to_string(n) + " |K|=" + fmt(v));
            std::vector<cplx> Z(n, 0.0), xi(n, 0.0);
            Z[0] = xi[0] = cplx(0.1, 0.0);
            // balance |W| == |zeta| so the solved point stays interior
            const double mag = std::abs(w) * std::pow(std::abs(1.0 - Z[0] * std::conj(xi[0])),
                                                      1.0 / spec.K);
            const cplx zeta(std::sqrt(mag), 0.0);
            const double v2 = cs_normalized(kernel, locus.shifted_pair(zeta, Z, xi));
            c.require(v2 < 1e-8, "shifted witness n=" + std::to_string(n) + " |K|=" + fmt(v2));
        }
    }
    // zero-free parameters: fiber grid of 10^4 points in the disk of radius 0.999
    double lowest = 1e300;
    for (auto [n, K] : {std::pair<int, double>{1, 0.5}, {2, 3.0}, {3, 2.0}}) {
        EggDomainSpec spec(n, K);
        BergmanKernel kernel(spec);
        for (int ir = 1; ir <= 100; ++ir) {
            for (int ia = 0; ia < 100; ++ia) {
                const cplx s = std::polar(0.999 * ir / 100.0, 2.0 * M_PI * ia / 100.0);
                lowest = std::min(lowest, kernel.normalized_fiber_value(s));
            }
        }
    }
    c.require(lowest > 1e-10, "fiber grid minimum " + fmt(lowest));
    c.note = "zero-free grid minimum " + fmt(lowest);
    return c;
}

// ---- criterion 7: ball degeneration ----------------------------------------

Checker crit_ball_degeneration(std::uint64_t seed) {
    Checker c;
    double worst = 0.0;
    for (int n : {1, 2, 3}) {
        EggDomainSpec spec(n, 1.0);
        BergmanKernel kernel(spec);
        double gamma = 1.0; // (n+1)!
        for (int k = 2; k <= n + 1; ++k) gamma *= k;
        Rng rng(seed + n);
        for (int trial = 0; trial < 100; ++trial) {
            PointPair pair(sample_interior_point(spec, rng, 0.01),
                           sample_interior_point(spec, rng, 0.01));
            cplx ip = pair.p.W() * std::conj(pair.q.W());
            for (int j = 0; j < n; ++j) ip += pair.p.Z()[j] * std::conj(pair.q.Z()[j]);
            const cplx ball = gamma / std::pow(M_PI, n + 1) * std::pow(1.0 - ip, -(n + 2.0));
            const cplx got = kernel.eval(pair).value;
            const double rel = std::abs(got - ball) / std::abs(ball);
            worst = std::max(worst, rel);
            c.require(rel <= 1e-12, "n=" + std::to_string(n) + " rel=" + fmt(rel));
        }
    }
    c.note = "worst relative error " + fmt(worst);
    return c;
}

// ---- criterion 8: transformation rule --------------------------------------

Checker crit_transformation_rule(std::uint64_t seed) {
    Checker c;
    const std::pair<int, double> specs[] = {{1, 1.0}, {2, 0.5}, {2, 2.0}};
    double worst = 0.0;
    int combos = 0;
    for (auto [n, K] : specs) {
        EggDomainSpec spec(n, K);
        Rng rng(seed + 7 * n + static_cast<std::uint64_t>(10 * K));
        for (int trial = 0; trial < 17 && combos < 50; ++trial, ++combos) {
            std::vector<cplx> Z0 = sample_unit_ball(rng, n);
            for (cplx& z : Z0) z *= 0.6;
            const auto map = centering_automorphism(spec, Z0);
            PointPair pair(sample_interior_point(spec, rng, 0.05),
                           sample_interior_point(spec, rng, 0.05));
            const double res = verify_transformation_rule(spec, map, pair);
            worst = std::max(worst, res);
            c.require(res < 1e-6, "n=" + std::to_string(n) + " K=" + fmt(K) +
                                      " residual=" + fmt(res));
        }
    }
    c.note = std::to_string(combos) + " automorphism/pair combinations, worst residual " +
             fmt(worst);
    return c;
}

// ---- criterion 9: reproducing property -------------------------------------

Checker crit_reproducing(std::uint64_t seed, int threads) {
    Checker c;
    struct Case {
        EggDomainSpec spec;
        MonomialIndex f;
        DomainPoint z;
    };
    const EggDomainSpec e11(1, 1.0), e205(2, 0.5);
    const Case cases[] = {
        {e11, MonomialIndex(0, {0}), origin(e11)},
        {e11, MonomialIndex(1, {0}), DomainPoint(e11, 0.4, {0.0})},
        {e11, MonomialIndex(0, {1}), DomainPoint(e11, 0.2, {cplx(0.3, 0.0)})},
        {e205, MonomialIndex(0, {2, 0}), DomainPoint(e205, 0.0, {cplx(0.3, 0.0), 0.0})},
        {e205, MonomialIndex(1, {0, 1}), DomainPoint(e205, 0.3, {cplx(0.1, 0.0), cplx(0.25, 0.0)})},
    };
    double worst_sigma = 0.0;
    std::uint64_t s = seed;
    for (const Case& k : cases) {
        const auto est = reproducing_check(k.spec, k.f, k.z, 1000000, ++s, threads);
        const double sigmas = est.rel_error / est.rel_std_error;
        worst_sigma = std::max(worst_sigma, sigmas);
        c.require(est.rel_error <= 3.0 * est.rel_std_error,
                  "monomial a=" + std::to_string(k.f.a) + ": " + fmt(sigmas) + " sigma");
    }
    c.note = "worst deviation " + fmt(worst_sigma) + " standard errors";
    return c;
}

// ---- criterion 10: representative coordinates -------------------------------

Checker crit_representative_coordinates(std::uint64_t seed) {
    Checker c;
    {
        EggDomainSpec spec(2, 0.8);
        BergmanKernel kernel(spec);
        Rng rng(seed + 3);
        for (int trial = 0; trial < 3; ++trial) {
            DomainPoint t = sample_interior_point(spec, rng, 0.4);
            const auto f0 = representative_coordinates(kernel, t, t);
            double worst = 0.0;
            for (cplx v : f0) worst = std::max(worst, std::abs(v));
            c.require(worst <= 1e-8, "base image norm " + fmt(worst));

            const auto J = representative_jacobian(kernel, t, t);
            const double dev =
                (J - Eigen::MatrixXcd::Identity(3, 3)).cwiseAbs().maxCoeff();
            c.require(dev <= 1e-6, "Jacobian deviation " + fmt(dev));
        }
    }
    {
        EggDomainSpec spec(2, 0.25);
        BergmanKernel kernel(spec);
        const auto r = classify(spec);
        c.require(r.status == LuQiKengStatus::NotLuQiKeng, "classification");
        ZeroLocus locus(spec, r.witness_roots.front());
        PointPair witness = locus.fiber_pair();
        bool raised = false;
        try {
            representative_coordinates(kernel, witness.q, witness.p);
        } catch (const KernelZeroOnPath&) {
            raised = true;
        }
        c.require(raised, "KernelZeroOnPath not raised on a witness pair");

        bool benign_ok = true;
        try {
            DomainPoint t(spec, 0.1, {cplx(0.2, 0.0), cplx(0.0, 0.1)});
            DomainPoint z(spec, cplx(0.0, 0.15), {cplx(0.05, 0.0), cplx(0.1, 0.0)});
            representative_coordinates(kernel, t, z);
        } catch (const KernelZeroOnPath&) {
            benign_ok = false;
        }
        c.require(benign_ok, "KernelZeroOnPath raised on a benign pair");
    }
    return c;
}

// ---- criterion 11: Cartan/Hua membership ------------------------------------

Checker crit_cartan_hua(std::uint64_t seed) {
    Checker c;
    for (auto [n, K] : {std::pair<int, double>{1, 0.5}, {2, 0.25}, {3, 2.0}}) {
        EggDomainSpec egg(n, K);
        HuaConstructionSpec hua(CartanDomainSpec::type_I(1, n), {HuaBlock{1, K, 1.0}});
        Rng rng(seed + 31 * n);
        int agree = 0;
        const int trials = 10000;
        for (int trial = 0; trial < trials; ++trial) {
            cplx W = sample_unit_disk(rng);
            std::vector<cplx> Zv = sample_unit_ball(rng, n);
            for (cplx& z : Zv) z *= 1.05; // also sample outside the base ball
            Eigen::MatrixXcd zm(1, n);
            for (int j = 0; j < n; ++j) zm(0, j) = Zv[j];
            const bool via_hua = hua_member(hua, {{W}}, CartanPoint::type_I(1, n, zm));
            bool via_point = true;
            try {
                DomainPoint p(egg, W, Zv);
            } catch (const ValidationError&) {
                via_point = false;
            }
            agree += (via_hua == via_point);
        }
        c.require(agree == trials, "egg equivalence n=" + std::to_string(n) + " agree=" +
                                       std::to_string(agree) + "/" + std::to_string(trials));
    }
    {
        // hand-arithmetic checks on R_IV(2)
        auto spec4 = CartanDomainSpec::type_IV(2);
        Eigen::RowVectorXcd z(2);
        z << cplx(0.5), cplx(0.0);
        auto p = CartanPoint::type_IV(z);
        c.require(std::abs(generic_norm(spec4, p) - 0.5625) <= 1e-15, "R_IV generic norm");
        c.require(is_member(spec4, p), "R_IV membership");

        HuaConstructionSpec two(spec4, {HuaBlock{1, 1.0, 1.0}, HuaBlock{1, 2.0, 1.0}});
        const double lhs = hua_lhs(two, {{cplx(0.5)}, {cplx(0.7)}}, p);
        c.require(std::abs(lhs - (0.25 / 0.5625 + 0.2401 / 0.5625)) <= 1e-14,
                  "two-block lhs " + fmt(lhs));
        c.require(hua_member(two, {{cplx(0.5)}, {cplx(0.7)}}, p), "two-block membership");
    }
    return c;
}

} // namespace

AcceptanceReport run_acceptance(std::ostream& log, std::uint64_t seed, int threads) {
    struct Entry {
        int id;
        const char* name;
        std::function<Checker(std::uint64_t)> fn;
    };
    const Entry entries[] = {
        {1, "coefficient-tables", crit_coefficient_tables},
        {2, "oracle-equivalence", crit_oracle_equivalence},
        {3, "threshold-reproduction", crit_thresholds},
        {4, "n1-universality", crit_n1_universality},
        {5, "boundary-case-K-half", crit_boundary_case},
        {6, "witness-validity", crit_witness_validity},
        {7, "ball-degeneration", crit_ball_degeneration},
        {8, "transformation-rule", crit_transformation_rule},
        {9, "reproducing-property",
         [threads](std::uint64_t s) { return crit_reproducing(s, threads); }},
        {10, "representative-coordinates", crit_representative_coordinates},
        {11, "cartan-hua-membership", crit_cartan_hua},
    };

    AcceptanceReport report;
    for (const Entry& e : entries) {
        const auto t0 = std::chrono::steady_clock::now();
        Checker c;
        try {
            c = e.fn(seed + 100 * static_cast<std::uint64_t>(e.id));
        } catch (const std::exception& ex) {
            c.require(false, std::string("exception: ") + ex.what());
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        report.criteria.push_back({e.id, e.name, c.ok(), c.detail(), secs});
        char line[512];
        std::snprintf(line, sizeof(line), "[%s] %2d %-28s (%6.2fs) %s", c.ok() ? "PASS" : "FAIL",
                      e.id, e.name, secs, c.detail().c_str());
        log << line << "\n" << std::flush;
    }
    return report;
}

} // namespace eggdomain
