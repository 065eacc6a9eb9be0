#include "eggdomain/coefficients.hpp"

#include <cmath>
#include <limits>

#include "eggdomain/detail/dd.hpp"
#include "eggdomain/errors.hpp"

namespace eggdomain {

using detail::DD;

namespace {

// Gamma at positive integer arguments as exact factorial products; avoids any
// rounding from a general gamma routine in the small-integer cases.
double factorial(int m) {
    double f = 1.0;
    for (int k = 2; k <= m; ++k) f *= static_cast<double>(k);
    return f;
}

DD factorial_dd(int m) {
    DD f(1.0);
    for (int k = 2; k <= m; ++k) f = f * DD(static_cast<double>(k));
    return f;
}

DD eval_P_product_dd(const EggDomainSpec& spec, double x) {
    DD acc = DD(x) + DD(1.0);
    for (int j = 1; j <= spec.n; ++j) {
        DD factor = DD(x) + DD(1.0) + detail::two_prod(spec.K, static_cast<double>(j));
        acc = acc * factor;
    }
    return acc;
}

// Ratio of the accumulated term magnitudes to the result magnitude; a large
// value flags catastrophic cancellation in plain double arithmetic.
double magnification(double sum_abs, double result) {
    if (result == 0.0) return sum_abs == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return sum_abs / std::abs(result);
}

constexpr double kCancellationLimit = 100.0;

std::vector<double> closed_form_double(const EggDomainSpec& spec, double* worst_mag) {
    const int n = spec.n;
    std::vector<double> P(n + 3);
    for (int j = 1; j <= n + 1; ++j) P[j] = eval_P_product(spec, -static_cast<double>(j) - 1.0);

    std::vector<double> b(n + 2, 0.0);
    *worst_mag = 1.0;
    for (int i = 1; i <= n + 1; ++i) {
        double sum = 0.0, sum_abs = 0.0;
        for (int j = 1; j <= i; ++j) {
            double term = P[j] / (factorial(j) * factorial(i - j));
            if (j % 2 != 0) term = -term;
            sum += term;
            sum_abs += std::abs(term);
        }
        b[i] = sum;
        *worst_mag = std::max(*worst_mag, magnification(sum_abs, sum));
    }
    return b;
}

std::vector<double> closed_form_extended(const EggDomainSpec& spec) {
    const int n = spec.n;
    std::vector<DD> P(n + 3);
    for (int j = 1; j <= n + 1; ++j) P[j] = eval_P_product_dd(spec, -static_cast<double>(j) - 1.0);

    std::vector<double> b(n + 2, 0.0);
    for (int i = 1; i <= n + 1; ++i) {
        DD sum(0.0);
        for (int j = 1; j <= i; ++j) {
            DD term = P[j] / (factorial_dd(j) * factorial_dd(i - j));
            if (j % 2 != 0) term = -term;
            sum = sum + term;
        }
        b[i] = static_cast<double>(sum);
    }
    return b;
}

std::vector<double> recurrence_double(const EggDomainSpec& spec, double* worst_mag) {
    const int n = spec.n;
    std::vector<double> b(n + 2, 0.0);
    *worst_mag = 1.0;
    for (int i = 1; i <= n + 1; ++i) {
        const double gi = factorial(i);
        double sum = eval_P_product(spec, -static_cast<double>(i) - 1.0);
        double sum_abs = std::abs(sum);
        for (int k = 0; k < i; ++k) {
            double term = b[k] * gi / factorial(i - k);
            if (k % 2 != 0) term = -term;
            sum -= term;
            sum_abs += std::abs(term);
        }
        double denom = (i % 2 != 0) ? -gi : gi;
        b[i] = sum / denom;
        *worst_mag = std::max(*worst_mag, magnification(sum_abs, sum));
    }
    return b;
}

std::vector<double> recurrence_extended(const EggDomainSpec& spec) {
    const int n = spec.n;
    std::vector<DD> b(n + 2, DD(0.0));
    for (int i = 1; i <= n + 1; ++i) {
        const DD gi = factorial_dd(i);
        DD sum = eval_P_product_dd(spec, -static_cast<double>(i) - 1.0);
        for (int k = 0; k < i; ++k) {
            DD term = b[k] * gi / factorial_dd(i - k);
            if (k % 2 != 0) term = -term;
            sum = sum - term;
        }
        DD denom = (i % 2 != 0) ? -gi : gi;
        b[i] = sum / denom;
    }
    std::vector<double> out(n + 2, 0.0);
    for (int i = 0; i <= n + 1; ++i) out[i] = static_cast<double>(b[i]);
    return out;
}

} // namespace

RealPolynomial build_P(const EggDomainSpec& spec) {
    std::vector<double> c{1.0, 1.0}; // x + 1
    for (int j = 1; j <= spec.n; ++j)
        c = RealPolynomial::multiply_linear(c, 1.0 + spec.K * static_cast<double>(j));
    return RealPolynomial(std::move(c));
}

double eval_P_product(const EggDomainSpec& spec, double x) {
    double acc = x + 1.0;
    for (int j = 1; j <= spec.n; ++j) acc *= x + 1.0 + spec.K * static_cast<double>(j);
    return acc;
}

double eval_P_product_dK(const EggDomainSpec& spec, double x) {
    // product rule over the K-dependent factors; d/dK (x+1+Kj) = j
    double total = 0.0;
    for (int m = 1; m <= spec.n; ++m) {
        double part = (x + 1.0) * static_cast<double>(m);
        for (int j = 1; j <= spec.n; ++j) {
            if (j == m) continue;
            part *= x + 1.0 + spec.K * static_cast<double>(j);
        }
        total += part;
    }
    return total;
}

KernelCoefficients coefficients_by_recurrence(const EggDomainSpec& spec) {
    double mag = 1.0;
    std::vector<double> b = recurrence_double(spec, &mag);
    if (mag > kCancellationLimit) b = recurrence_extended(spec);
    return {spec, std::move(b)};
}

KernelCoefficients coefficients_by_closed_form(const EggDomainSpec& spec) {
    double mag = 1.0;
    std::vector<double> b = closed_form_double(spec, &mag);
    if (mag > kCancellationLimit) b = closed_form_extended(spec);
    return {spec, std::move(b)};
}

CheckedCoefficients kernel_coefficients_checked(const EggDomainSpec& spec) {
    double mag_rec = 1.0, mag_cf = 1.0;
    std::vector<double> rec = recurrence_double(spec, &mag_rec);
    std::vector<double> cf = closed_form_double(spec, &mag_cf);
    bool extended = false;
    if (mag_rec > kCancellationLimit) {
        rec = recurrence_extended(spec);
        extended = true;
    }
    if (mag_cf > kCancellationLimit) {
        cf = closed_form_extended(spec);
        extended = true;
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < cf.size(); ++i) {
        double scale = std::max(std::abs(cf[i]), std::abs(rec[i]));
        double diff = std::abs(cf[i] - rec[i]);
        if (scale > 0.0) worst = std::max(worst, diff / scale);
        else if (diff > 0.0) worst = std::numeric_limits<double>::infinity();
    }
    if (!extended && worst > 1e-9) {
        // cancellation detector: re-run both routes in extended precision
        rec = recurrence_extended(spec);
        cf = closed_form_extended(spec);
        extended = true;
        worst = 0.0;
        for (std::size_t i = 0; i < cf.size(); ++i) {
            double scale = std::max(std::abs(cf[i]), std::abs(rec[i]));
            if (scale > 0.0) worst = std::max(worst, std::abs(cf[i] - rec[i]) / scale);
        }
    }
    if (worst > 1e-9)
        throw NumericError("kernel coefficients: recurrence and closed form disagree");
    return {KernelCoefficients{spec, std::move(cf)}, worst, extended};
}

KernelCoefficients kernel_coefficients(const EggDomainSpec& spec) {
    return kernel_coefficients_checked(spec).values;
}

std::vector<double> coefficients_dK_derivative(const EggDomainSpec& spec) {
    const int n = spec.n;
    std::vector<double> db(n + 2, 0.0);
    for (int i = 1; i <= n + 1; ++i) {
        double sum = 0.0;
        for (int j = 1; j <= i; ++j) {
            double term = eval_P_product_dK(spec, -static_cast<double>(j) - 1.0) /
                          (factorial(j) * factorial(i - j));
            if (j % 2 != 0) term = -term;
            sum += term;
        }
        db[i] = sum;
    }
    return db;
}

} // namespace eggdomain
