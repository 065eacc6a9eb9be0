#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "eggdomain/egg.hpp"

namespace eggdomain {

/// The four big types of irreducible bounded symmetric domains:
///   I   (m x n complex matrices),
///   II  (symmetric p x p),
///   III (skew-symmetric q x q),
///   IV  (complex n-vectors, the Lie ball).
/// The two exceptional types have no matrix realization here and are rejected.
enum class CartanKind { I, II, III, IV };

CartanKind cartan_kind_from_string(const std::string& s); // throws UnsupportedKind

struct CartanDomainSpec {
    CartanKind kind;
    int rows; // I: m; II: p; III: q; IV: 1
    int cols; // I: n; II: p; III: q; IV: n

    static CartanDomainSpec type_I(int m, int n);
    static CartanDomainSpec type_II(int p);
    static CartanDomainSpec type_III(int q);
    static CartanDomainSpec type_IV(int n);

    /// Number of independent complex coordinates.
    int ambient_dim() const;
};

/// A point of a Cartan domain's ambient space, stored as its full matrix
/// realization. The packed constructors enforce the symmetric/skew-symmetric
/// shape, so asymmetric matrices cannot be constructed for kinds II/III.
class CartanPoint {
public:
    static CartanPoint type_I(int m, int n, Eigen::MatrixXcd Z);
    static CartanPoint type_II(int p, const std::vector<cplx>& upper_packed); // incl. diagonal
    static CartanPoint type_III(int q, const std::vector<cplx>& strict_upper_packed);
    static CartanPoint type_IV(Eigen::RowVectorXcd Z);

    CartanKind kind() const { return kind_; }
    const Eigen::MatrixXcd& matrix() const { return M_; }

private:
    CartanPoint(CartanKind kind, Eigen::MatrixXcd M) : kind_(kind), M_(std::move(M)) {}
    CartanKind kind_;
    Eigen::MatrixXcd M_;
};

/// Generic norm N_D(Z, conj Z): det(I - Z Z^H) for kinds I-III,
/// 1 - 2 Z Z^H + |Z Z^t|^2 for kind IV. Positive exactly on the domain for
/// kind IV only together with the second inequality 1 - |Z Z^t|^2 > 0.
double generic_norm(const CartanDomainSpec& spec, const CartanPoint& Z);

/// Kinds I-III: positive definiteness of I - Z Z^H, decided by a pivoted
/// Hermitian factorization with pivot threshold 1e-14 (borderline matrices are
/// non-members). Kind IV: both defining inequalities, strictly.
bool is_member(const CartanDomainSpec& spec, const CartanPoint& Z);

struct HuaBlock {
    int N;    // fiber block dimension
    double p; // numerator exponent, > 0
    double K; // denominator exponent, > 0 (Hua domain: all K = 1)
};

struct HuaConstructionSpec {
    CartanDomainSpec base;
    std::vector<HuaBlock> blocks;

    HuaConstructionSpec(CartanDomainSpec base_, std::vector<HuaBlock> blocks_);
};

/// sum_j |W_j|^{2 p_j} / N_D(Z)^{K_j}; requires Z to be a base member.
double hua_lhs(const HuaConstructionSpec& spec, const std::vector<std::vector<cplx>>& W_blocks,
               const CartanPoint& Z);

/// Membership in the Hua-construction: Z a base member and hua_lhs < 1.
bool hua_member(const HuaConstructionSpec& spec, const std::vector<std::vector<cplx>>& W_blocks,
                const CartanPoint& Z);

} // namespace eggdomain
