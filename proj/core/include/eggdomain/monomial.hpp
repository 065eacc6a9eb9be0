#pragma once

#include <vector>

#include "eggdomain/egg.hpp"

namespace eggdomain {

/// Exponents of a monomial W^a Z^alpha on the egg domain.
struct MonomialIndex {
    int a = 0;
    std::vector<int> alpha;

    MonomialIndex(int a_, std::vector<int> alpha_) : a(a_), alpha(std::move(alpha_)) {
        if (a < 0) throw ValidationError("MonomialIndex: a must be >= 0");
        for (int e : alpha)
            if (e < 0) throw ValidationError("MonomialIndex: alpha entries must be >= 0");
    }

    int total_degree() const {
        int d = a;
        for (int e : alpha) d += e;
        return d;
    }

    bool operator==(const MonomialIndex&) const = default;
};

inline cplx eval_monomial(const MonomialIndex& idx, cplx W, const std::vector<cplx>& Z) {
    if (idx.alpha.size() != Z.size())
        throw ShapeMismatch("eval_monomial: alpha length must match Z length");
    cplx v = 1.0;
    for (int k = 0; k < idx.a; ++k) v *= W;
    for (std::size_t j = 0; j < Z.size(); ++j)
        for (int k = 0; k < idx.alpha[j]; ++k) v *= Z[j];
    return v;
}

inline cplx eval_monomial(const MonomialIndex& idx, const DomainPoint& p) {
    return eval_monomial(idx, p.W(), p.Z());
}

} // namespace eggdomain
