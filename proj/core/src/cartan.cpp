#include "eggdomain/cartan.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "eggdomain/errors.hpp"

namespace eggdomain {

CartanKind cartan_kind_from_string(const std::string& s) {
    if (s == "I") return CartanKind::I;
    if (s == "II") return CartanKind::II;
    if (s == "III") return CartanKind::III;
    if (s == "IV") return CartanKind::IV;
    if (s == "V" || s == "VI")
        throw UnsupportedKind("exceptional Cartan kinds V/VI have no matrix realization here");
    throw UnsupportedKind("unknown Cartan kind '" + s + "'");
}

CartanDomainSpec CartanDomainSpec::type_I(int m, int n) {
    if (m < 1 || n < 1) throw ValidationError("R_I(m,n): m, n must be >= 1");
    return {CartanKind::I, m, n};
}

CartanDomainSpec CartanDomainSpec::type_II(int p) {
    if (p < 1) throw ValidationError("R_II(p): p must be >= 1");
    return {CartanKind::II, p, p};
}

CartanDomainSpec CartanDomainSpec::type_III(int q) {
    if (q < 2) throw ValidationError("R_III(q): q must be >= 2");
    return {CartanKind::III, q, q};
}

CartanDomainSpec CartanDomainSpec::type_IV(int n) {
    if (n < 1) throw ValidationError("R_IV(n): n must be >= 1");
    return {CartanKind::IV, 1, n};
}

int CartanDomainSpec::ambient_dim() const {
    switch (kind) {
        case CartanKind::I: return rows * cols;
        case CartanKind::II: return rows * (rows + 1) / 2;
        case CartanKind::III: return rows * (rows - 1) / 2;
        case CartanKind::IV: return cols;
    }
    return 0;
}

CartanPoint CartanPoint::type_I(int m, int n, Eigen::MatrixXcd Z) {
    if (Z.rows() != m || Z.cols() != n)
        throw ShapeMismatch("CartanPoint::type_I: matrix must be m x n");
    return CartanPoint(CartanKind::I, std::move(Z));
}

CartanPoint CartanPoint::type_II(int p, const std::vector<cplx>& packed) {
    if (static_cast<int>(packed.size()) != p * (p + 1) / 2)
        throw ShapeMismatch("CartanPoint::type_II: need p(p+1)/2 packed entries");
    Eigen::MatrixXcd M(p, p);
    std::size_t k = 0;
    for (int i = 0; i < p; ++i)
        for (int j = i; j < p; ++j) {
            M(i, j) = packed[k];
            M(j, i) = packed[k];
            ++k;
        }
    return CartanPoint(CartanKind::II, std::move(M));
}

CartanPoint CartanPoint::type_III(int q, const std::vector<cplx>& packed) {
    if (static_cast<int>(packed.size()) != q * (q - 1) / 2)
        throw ShapeMismatch("CartanPoint::type_III: need q(q-1)/2 packed entries");
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(q, q);
    std::size_t k = 0;
    for (int i = 0; i < q; ++i)
        for (int j = i + 1; j < q; ++j) {
            M(i, j) = packed[k];
            M(j, i) = -packed[k];
            ++k;
        }
    return CartanPoint(CartanKind::III, std::move(M));
}

CartanPoint CartanPoint::type_IV(Eigen::RowVectorXcd Z) {
    return CartanPoint(CartanKind::IV, Eigen::MatrixXcd(std::move(Z)));
}

namespace {

void check_shape(const CartanDomainSpec& spec, const CartanPoint& Z) {
    if (Z.kind() != spec.kind)
        throw ShapeMismatch("Cartan point/domain kind mismatch");
    const auto& M = Z.matrix();
    const int rows = spec.kind == CartanKind::IV ? 1 : spec.rows;
    if (M.rows() != rows || M.cols() != spec.cols)
        throw ShapeMismatch("Cartan point has the wrong dimensions");
}

// pivoted Hermitian LDL^H; true iff all pivots exceed the threshold
bool positive_definite(Eigen::MatrixXcd A, double threshold) {
    const int d = static_cast<int>(A.rows());
    std::vector<int> active(d);
    for (int i = 0; i < d; ++i) active[i] = i;
    for (int step = 0; step < d; ++step) {
        int pi = step;
        for (int i = step; i < d; ++i)
            if (A(active[i], active[i]).real() > A(active[pi], active[pi]).real()) pi = i;
        std::swap(active[step], active[pi]);
        const int k = active[step];
        const double pivot = A(k, k).real();
        if (!(pivot > threshold)) return false;
        for (int ii = step + 1; ii < d; ++ii) {
            const int i = active[ii];
            const cplx l = A(i, k) / pivot;
            for (int jj = step + 1; jj < d; ++jj) {
                const int j = active[jj];
                A(i, j) -= l * std::conj(A(j, k));
            }
        }
    }
    return true;
}

} // namespace

double generic_norm(const CartanDomainSpec& spec, const CartanPoint& Z) {
    check_shape(spec, Z);
    const auto& M = Z.matrix();
    if (spec.kind == CartanKind::IV) {
        const cplx zzt = (M * M.transpose())(0, 0);
        const double zzh = M.squaredNorm();
        return 1.0 - 2.0 * zzh + std::norm(zzt);
    }
    const Eigen::MatrixXcd A =
        Eigen::MatrixXcd::Identity(M.rows(), M.rows()) - M * M.adjoint();
    return A.determinant().real();
}

bool is_member(const CartanDomainSpec& spec, const CartanPoint& Z) {
    check_shape(spec, Z);
    const auto& M = Z.matrix();
    if (spec.kind == CartanKind::IV) {
        const cplx zzt = (M * M.transpose())(0, 0);
        const double zzh = M.squaredNorm();
        return (1.0 - 2.0 * zzh + std::norm(zzt) > 0.0) && (1.0 - std::norm(zzt) > 0.0);
    }
    const Eigen::MatrixXcd A =
        Eigen::MatrixXcd::Identity(M.rows(), M.rows()) - M * M.adjoint();
    return positive_definite(A, 1e-14);
}

HuaConstructionSpec::HuaConstructionSpec(CartanDomainSpec base_, std::vector<HuaBlock> blocks_)
    : base(base_), blocks(std::move(blocks_)) {
    if (blocks.empty()) throw ValidationError("Hua construction needs at least one block");
    for (const HuaBlock& b : blocks) {
        if (b.N < 1) throw ValidationError("Hua block: N must be >= 1");
        if (!(b.p > 0.0)) throw ValidationError("Hua block: p must be > 0");
        if (!(b.K > 0.0)) throw ValidationError("Hua block: K must be > 0");
    }
}

double hua_lhs(const HuaConstructionSpec& spec, const std::vector<std::vector<cplx>>& W_blocks,
               const CartanPoint& Z) {
    if (W_blocks.size() != spec.blocks.size())
        throw ShapeMismatch("hua_lhs: wrong number of W blocks");
    const double N = generic_norm(spec.base, Z);
    double lhs = 0.0;
    for (std::size_t j = 0; j < spec.blocks.size(); ++j) {
        const HuaBlock& blk = spec.blocks[j];
        if (static_cast<int>(W_blocks[j].size()) != blk.N)
            throw ShapeMismatch("hua_lhs: W block has the wrong dimension");
        double w2 = 0.0;
        for (const cplx& w : W_blocks[j]) w2 += std::norm(w);
        const double num = (w2 == 0.0) ? 0.0 : std::pow(w2, blk.p);
        lhs += num / std::pow(N, blk.K);
    }
    return lhs;
}

bool hua_member(const HuaConstructionSpec& spec, const std::vector<std::vector<cplx>>& W_blocks,
                const CartanPoint& Z) {
    if (!is_member(spec.base, Z)) return false;
    return hua_lhs(spec, W_blocks, Z) < 1.0;
}

} // namespace eggdomain
