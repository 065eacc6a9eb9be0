#include "eggdomain/kernel.hpp"

#include <cmath>
#include <future>

#include "eggdomain/errors.hpp"
#include "eggdomain/mc.hpp"

namespace eggdomain {

namespace {

cplx hermitian_inner(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j) acc += a[j] * std::conj(b[j]);
    return acc;
}

} // namespace

BergmanKernel::BergmanKernel(const EggDomainSpec& spec)
    : spec_(spec), coeffs_(kernel_coefficients(spec)) {
    fterm_.resize(coeffs_.b.size());
    double fact = 1.0;
    for (std::size_t i = 0; i < fterm_.size(); ++i) {
        if (i > 0) fact *= static_cast<double>(i);
        fterm_[i] = coeffs_.b[i] * fact;
    }
    prefactor_ = std::pow(spec_.K, -spec_.n) * std::pow(M_PI, -(spec_.n + 1));
}

KernelValue BergmanKernel::eval_raw(cplx W, const std::vector<cplx>& Z,
                                    cplx zeta, const std::vector<cplx>& xi) const {
    const cplx base = 1.0 - hermitian_inner(Z, xi);
    const cplx X = W * std::conj(zeta) * std::pow(base, -1.0 / spec_.K);
    if (std::abs(X - 1.0) < 1e-14)
        throw NumericalOverflow("eval_kernel: pair approaches the kernel singularity X = 1");
    const cplx Y = 1.0 / (1.0 - X);

    // F(Y) = Y^2 * sum_{i>=1} b_i i! Y^{i-1}  (b_0 = 0)
    cplx g = 0.0;
    for (std::size_t i = fterm_.size(); i-- > 1;) g = g * Y + fterm_[i];
    const cplx F = Y * Y * g;

    const double exponent = -(static_cast<double>(spec_.n) + 1.0 + 1.0 / spec_.K);
    const cplx value = prefactor_ * F * std::pow(base, exponent);
    return {value, X, Y};
}

KernelValue BergmanKernel::eval(const PointPair& pair) const {
    if (!(pair.p.spec() == spec_) || !(pair.q.spec() == spec_))
        throw ShapeMismatch("eval_kernel: pair does not belong to this domain");
    if (pair.p.defect() < 1e-12 || pair.q.defect() < 1e-12)
        throw NumericalOverflow("eval_kernel: point too close to the boundary");
    return eval_raw(pair.p.W(), pair.p.Z(), pair.q.W(), pair.q.Z());
}

double BergmanKernel::diagonal(const DomainPoint& p) const {
    return eval_raw(p.W(), p.Z(), p.W(), p.Z()).value.real();
}

double BergmanKernel::normalized_fiber_value(cplx X) const {
    const cplx t = 1.0 - X;
    cplx f = 0.0;
    for (std::size_t i = 1; i < fterm_.size(); ++i) {
        // f(t) = sum_i b_i i! t^{n+1-i}
        cplx p = fterm_[i];
        for (int k = 0; k < spec_.n + 1 - static_cast<int>(i); ++k) p *= t;
        f += p;
    }
    return std::abs(f) / fterm_.back();
}

KernelValue eval_kernel(const EggDomainSpec& spec, const PointPair& pair) {
    return BergmanKernel(spec).eval(pair);
}

CenteringAutomorphism::CenteringAutomorphism(const EggDomainSpec& spec, std::vector<cplx> Z0)
    : spec_(spec), Z0_(std::move(Z0)) {
    if (static_cast<int>(Z0_.size()) != spec_.n)
        throw ShapeMismatch("CenteringAutomorphism: Z0 must have length n");
    norm2_ = 0.0;
    for (const cplx& z : Z0_) norm2_ += std::norm(z);
    if (!(norm2_ < 1.0))
        throw InvalidBasePoint("CenteringAutomorphism: |Z0| must be < 1");
    s_ = std::sqrt(1.0 - norm2_);
}

std::pair<cplx, std::vector<cplx>> CenteringAutomorphism::apply_raw(
    cplx W, const std::vector<cplx>& Z) const {
    if (Z.size() != Z0_.size())
        throw ShapeMismatch("CenteringAutomorphism: Z must have length n");
    if (is_identity()) return {W, Z};

    const cplx inner = hermitian_inner(Z, Z0_); // <Z, Z0>
    const cplx denom = 1.0 - inner;

    // phi_{Z0}(Z) = (Z0 - P Z - s Q Z) / (1 - <Z, Z0>), P the projection onto Z0
    std::vector<cplx> out(Z.size());
    const cplx coef = inner / norm2_;
    for (std::size_t j = 0; j < Z.size(); ++j) {
        cplx proj = coef * Z0_[j];
        cplx orth = Z[j] - proj;
        out[j] = (Z0_[j] - proj - s_ * orth) / denom;
    }

    const cplx factor = std::pow(s_ / denom, 1.0 / spec_.K);
    return {W * factor, std::move(out)};
}

DomainPoint CenteringAutomorphism::apply(const DomainPoint& p) const {
    auto [W, Z] = apply_raw(p.W(), p.Z());
    return DomainPoint(spec_, W, std::move(Z));
}

CenteringAutomorphism centering_automorphism(const EggDomainSpec& spec, std::vector<cplx> Z0) {
    return CenteringAutomorphism(spec, std::move(Z0));
}

cplx automorphism_jacobian_det(const CenteringAutomorphism& map, cplx W,
                               const std::vector<cplx>& Z, double step) {
    const int dim = static_cast<int>(Z.size()) + 1;
    std::vector<std::vector<cplx>> jac(dim, std::vector<cplx>(dim));

    auto flat = [&](cplx w, const std::vector<cplx>& z) {
        auto [w2, z2] = map.apply_raw(w, z);
        std::vector<cplx> v(1, w2);
        v.insert(v.end(), z2.begin(), z2.end());
        return v;
    };

    for (int l = 0; l < dim; ++l) {
        cplx Wp = W, Wm = W;
        std::vector<cplx> Zp = Z, Zm = Z;
        if (l == 0) {
            Wp += step;
            Wm -= step;
        } else {
            Zp[l - 1] += step;
            Zm[l - 1] -= step;
        }
        const std::vector<cplx> fp = flat(Wp, Zp);
        const std::vector<cplx> fm = flat(Wm, Zm);
        for (int k = 0; k < dim; ++k) jac[k][l] = (fp[k] - fm[k]) / (2.0 * step);
    }

    // Gaussian elimination with partial pivoting
    cplx det = 1.0;
    for (int col = 0; col < dim; ++col) {
        int pivot = col;
        for (int r = col + 1; r < dim; ++r)
            if (std::abs(jac[r][col]) > std::abs(jac[pivot][col])) pivot = r;
        if (pivot != col) {
            std::swap(jac[pivot], jac[col]);
            det = -det;
        }
        det *= jac[col][col];
        if (jac[col][col] == cplx(0.0)) return 0.0;
        for (int r = col + 1; r < dim; ++r) {
            cplx m = jac[r][col] / jac[col][col];
            for (int cc = col; cc < dim; ++cc) jac[r][cc] -= m * jac[col][cc];
        }
    }
    return det;
}

double verify_transformation_rule(const EggDomainSpec& spec, const CenteringAutomorphism& map,
                                  const PointPair& pair) {
    BergmanKernel kernel(spec);
    const cplx lhs = kernel.eval(pair).value;

    const DomainPoint Fp = map.apply(pair.p);
    const DomainPoint Fq = map.apply(pair.q);
    const cplx mid = kernel.eval(PointPair(Fp, Fq)).value;
    const cplx jp = automorphism_jacobian_det(map, pair.p.W(), pair.p.Z());
    const cplx jq = automorphism_jacobian_det(map, pair.q.W(), pair.q.Z());

    return std::abs(lhs - jp * mid * std::conj(jq)) / std::abs(lhs);
}

namespace {

struct ShardMoments {
    cplx sum = 0.0;
    double sum_re2 = 0.0;
    double sum_im2 = 0.0;
    std::uint64_t accepted = 0;
};

ShardMoments reproducing_shard(const BergmanKernel& kernel, const MonomialIndex& f,
                               const DomainPoint& z, std::uint64_t draws, std::uint64_t seed) {
    const EggDomainSpec& spec = kernel.spec();
    Rng rng(seed);
    ShardMoments m;
    for (std::uint64_t i = 0; i < draws; ++i) {
        cplx W = sample_unit_disk(rng);
        std::vector<cplx> Z = sample_unit_ball(rng, spec.n);
        cplx contrib = 0.0;
        // points inside the thin 1e-12 boundary shell contribute ~nothing and
        // would trip the overflow guard, so they are counted as rejected
        if (membership_defect(spec, W, Z) > 1e-12) {
            ++m.accepted;
            cplx kv = kernel.eval_raw(z.W(), z.Z(), W, Z).value;
            contrib = eval_monomial(f, W, Z) * kv;
        }
        m.sum += contrib;
        m.sum_re2 += contrib.real() * contrib.real();
        m.sum_im2 += contrib.imag() * contrib.imag();
    }
    return m;
}

} // namespace

ReproducingEstimate reproducing_check(const EggDomainSpec& spec, const MonomialIndex& f,
                                      const DomainPoint& z, std::uint64_t samples,
                                      std::uint64_t seed, int threads) {
    if (samples < 100000)
        throw ValidationError("reproducing_check: need at least 1e5 samples");
    if (threads < 1) throw ValidationError("reproducing_check: threads must be >= 1");
    const BergmanKernel kernel(spec);
    const cplx reference = eval_monomial(f, z);
    if (std::abs(reference) == 0.0)
        throw ValidationError("reproducing_check: monomial vanishes at z; relative error undefined");

    std::vector<std::future<ShardMoments>> futures;
    const std::uint64_t per = samples / static_cast<std::uint64_t>(threads);
    for (int t = 0; t < threads; ++t) {
        std::uint64_t draws = (t == threads - 1) ? samples - per * (threads - 1) : per;
        futures.push_back(std::async(std::launch::async, [&, draws, t] {
            return reproducing_shard(kernel, f, z, draws, seed + static_cast<std::uint64_t>(t));
        }));
    }
    ShardMoments total;
    for (auto& fu : futures) {
        ShardMoments m = fu.get();
        total.sum += m.sum;
        total.sum_re2 += m.sum_re2;
        total.sum_im2 += m.sum_im2;
        total.accepted += m.accepted;
    }

    const double N = static_cast<double>(samples);
    const double volume = bounding_volume(spec.n);
    const cplx mean = total.sum / N;
    const cplx estimate = volume * mean;

    const double var_re = std::max(0.0, total.sum_re2 / N - mean.real() * mean.real());
    const double var_im = std::max(0.0, total.sum_im2 / N - mean.imag() * mean.imag());
    const double se = volume * std::sqrt((var_re + var_im) / N);

    const double scale = std::abs(reference);
    ReproducingEstimate out{estimate, reference, std::abs(estimate - reference) / scale,
                            se / scale, samples, total.accepted};
    if (out.rel_std_error > 0.5)
        throw InsufficientSamples("reproducing_check: standard error exceeds 50% of |f(z)|");
    return out;
}

} // namespace eggdomain
