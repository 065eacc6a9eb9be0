#pragma once

#include <complex>
#include <vector>

namespace eggdomain {

/// Dense polynomial with real coefficients stored in ascending degree order.
/// Leading coefficients that are exactly zero are trimmed at construction, so
/// the invariant "leading coefficient nonzero unless identically zero" holds.
class RealPolynomial {
public:
    RealPolynomial() = default; // identically zero

    explicit RealPolynomial(std::vector<double> coeffs) : c_(std::move(coeffs)) {
        while (!c_.empty() && c_.back() == 0.0) c_.pop_back();
    }

    bool is_zero() const { return c_.empty(); }

    /// Degree of the trimmed polynomial; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    const std::vector<double>& coefficients() const { return c_; }

    double operator[](std::size_t k) const { return k < c_.size() ? c_[k] : 0.0; }

    double eval(double x) const {
        double acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    std::complex<double> eval(std::complex<double> x) const {
        std::complex<double> acc = 0.0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RealPolynomial derivative() const {
        if (c_.size() <= 1) return RealPolynomial{};
        std::vector<double> d(c_.size() - 1);
        for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * static_cast<double>(k);
        return RealPolynomial(std::move(d));
    }

    double max_abs_coefficient() const {
        double m = 0.0;
        for (double v : c_) m = std::max(m, std::abs(v));
        return m;
    }

    /// Product with a monic linear factor (x + a).
    static std::vector<double> multiply_linear(const std::vector<double>& p, double a) {
        std::vector<double> out(p.size() + 1, 0.0);
        for (std::size_t k = 0; k < p.size(); ++k) {
            out[k] += p[k] * a;
            out[k + 1] += p[k];
        }
        return out;
    }

private:
    std::vector<double> c_;
};

} // namespace eggdomain
