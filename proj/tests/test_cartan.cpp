#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "eggdomain/cartan.hpp"
#include "eggdomain/errors.hpp"
#include "eggdomain/mc.hpp"
#include "test_util.hpp"

using namespace eggdomain;
using eggtest::rel_close;

TEST_CASE("kind parsing and exceptional kinds") {
    CHECK(cartan_kind_from_string("I") == CartanKind::I);
    CHECK(cartan_kind_from_string("IV") == CartanKind::IV);
    CHECK_THROWS_AS(cartan_kind_from_string("V"), UnsupportedKind);
    CHECK_THROWS_AS(cartan_kind_from_string("VI"), UnsupportedKind);
    CHECK_THROWS_AS(cartan_kind_from_string("?"), UnsupportedKind);
}

TEST_CASE("generic norm values") {
    auto spec1 = CartanDomainSpec::type_I(2, 2);
    auto zero = CartanPoint::type_I(2, 2, Eigen::MatrixXcd::Zero(2, 2));
    CHECK(generic_norm(spec1, zero) == 1.0);

    // kind IV, n=2, Z=(0.5, 0): 1 - 0.5 + 0.0625 = 0.5625
    auto spec4 = CartanDomainSpec::type_IV(2);
    Eigen::RowVectorXcd z4(2);
    z4 << cplx(0.5), cplx(0.0);
    auto p4 = CartanPoint::type_IV(z4);
    CHECK(rel_close(generic_norm(spec4, p4), 0.5625, 1e-15));
    CHECK(is_member(spec4, p4));

    // scalar kind I: 1 - |1.2|^2 = -0.44, a non-member
    auto specs = CartanDomainSpec::type_I(1, 1);
    Eigen::MatrixXcd zs(1, 1);
    zs << cplx(1.2);
    auto ps = CartanPoint::type_I(1, 1, zs);
    CHECK(rel_close(generic_norm(specs, ps), -0.44, 1e-14));
    CHECK(!is_member(specs, ps));

    // generic norm at 0 equals 1 for every kind
    CHECK(generic_norm(CartanDomainSpec::type_II(3),
                       CartanPoint::type_II(3, std::vector<cplx>(6, 0.0))) == 1.0);
    CHECK(generic_norm(CartanDomainSpec::type_III(3),
                       CartanPoint::type_III(3, std::vector<cplx>(3, 0.0))) == 1.0);
    CHECK(generic_norm(CartanDomainSpec::type_IV(3),
                       CartanPoint::type_IV(Eigen::RowVectorXcd::Zero(3))) == 1.0);
}

TEST_CASE("membership basics") {
    CHECK(is_member(CartanDomainSpec::type_I(2, 2),
                    CartanPoint::type_I(2, 2, Eigen::MatrixXcd::Zero(2, 2))));

    // row vector with |Z|^2 = 1.13 > 1
    Eigen::MatrixXcd z(1, 2);
    z << cplx(0.8), cplx(0.7);
    CHECK(!is_member(CartanDomainSpec::type_I(1, 2), CartanPoint::type_I(1, 2, z)));

    // shape mismatches
    CHECK_THROWS_AS(is_member(CartanDomainSpec::type_I(2, 3),
                              CartanPoint::type_I(2, 2, Eigen::MatrixXcd::Zero(2, 2))),
                    ShapeMismatch);
    CHECK_THROWS_AS(CartanPoint::type_II(2, std::vector<cplx>(2, 0.0)), ShapeMismatch);
}

TEST_CASE("membership uses definiteness, not the determinant sign") {
    // I - Z Z^H = diag(-3, -3, 1): det = +9 but two negative eigenvalues
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Zero(3, 3);
    z(0, 0) = 2.0;
    z(1, 1) = 2.0;
    auto spec = CartanDomainSpec::type_I(3, 3);
    auto p = CartanPoint::type_I(3, 3, z);
    CHECK(generic_norm(spec, p) > 0.0);
    CHECK(!is_member(spec, p));
}

TEST_CASE("scalar kinds I and II coincide") {
    auto s1 = CartanDomainSpec::type_I(1, 1);
    auto s2 = CartanDomainSpec::type_II(1);
    for (double v : {0.0, 0.3, 0.999, 1.0, 1.7}) {
        Eigen::MatrixXcd m(1, 1);
        m << cplx(v, 0.1);
        auto p1 = CartanPoint::type_I(1, 1, m);
        auto p2 = CartanPoint::type_II(1, {cplx(v, 0.1)});
        CHECK(generic_norm(s1, p1) == generic_norm(s2, p2));
        CHECK(is_member(s1, p1) == is_member(s2, p2));
    }
}

TEST_CASE("kind II/III constructors enforce the matrix symmetry") {
    auto p2 = CartanPoint::type_II(3, {cplx(0.1), cplx(0.2, 0.1), cplx(0.0, -0.3),
                                       cplx(0.4), cplx(0.05, 0.05), cplx(0.2)});
    CHECK((p2.matrix() - p2.matrix().transpose()).norm() == 0.0);

    auto p3 = CartanPoint::type_III(3, {cplx(0.1, 0.2), cplx(0.3), cplx(0.0, 0.4)});
    CHECK((p3.matrix() + p3.matrix().transpose()).norm() == 0.0);
    CHECK(p3.matrix()(0, 0) == cplx(0.0));
}

TEST_CASE("Hua construction: hand-checked example over R_IV(2)") {
    auto base = CartanDomainSpec::type_IV(2);
    HuaConstructionSpec spec(base, {HuaBlock{1, 1.0, 1.0}, HuaBlock{1, 2.0, 1.0}});
    Eigen::RowVectorXcd z(2);
    z << cplx(0.5), cplx(0.0);
    auto Z = CartanPoint::type_IV(z);
    std::vector<std::vector<cplx>> W{{cplx(0.5)}, {cplx(0.7)}};
    const double lhs = hua_lhs(spec, W, Z);
    CHECK(rel_close(lhs, 0.25 / 0.5625 + 0.2401 / 0.5625, 1e-14));
    CHECK(hua_member(spec, W, Z));

    // monotonicity: shrinking a block norm preserves membership
    std::vector<std::vector<cplx>> W2{{cplx(0.25)}, {cplx(0.7)}};
    CHECK(hua_lhs(spec, W2, Z) < lhs);
    CHECK(hua_member(spec, W2, Z));

    // trivial case
    std::vector<std::vector<cplx>> W0{{cplx(0.0)}, {cplx(0.0)}};
    CHECK(hua_member(spec, W0, CartanPoint::type_IV(Eigen::RowVectorXcd::Zero(2))));

    // validation
    CHECK_THROWS_AS(HuaConstructionSpec(base, {}), ValidationError);
    CHECK_THROWS_AS(HuaConstructionSpec(base, {HuaBlock{1, 0.0, 1.0}}), ValidationError);
    CHECK_THROWS_AS(HuaConstructionSpec(base, {HuaBlock{1, 1.0, -1.0}}), ValidationError);
    CHECK_THROWS_AS(hua_lhs(spec, {{cplx(0.1)}}, Z), ShapeMismatch);
}

TEST_CASE("hua membership is monotone under shrinking block norms") {
    auto base = CartanDomainSpec::type_II(2);
    HuaConstructionSpec spec(base, {HuaBlock{2, 0.7, 1.3}, HuaBlock{1, 2.0, 0.5}});
    Rng rng(777);
    std::uniform_real_distribution<double> zdist(-0.35, 0.35);
    std::uniform_real_distribution<double> wdist(-0.4, 0.4);
    std::uniform_real_distribution<double> shrink(0.0, 1.0);
    int members = 0;
    for (int trial = 0; trial < 500; ++trial) {
        auto Z = CartanPoint::type_II(
            2, {cplx(zdist(rng), zdist(rng)), cplx(zdist(rng), zdist(rng)),
                cplx(zdist(rng), zdist(rng))});
        std::vector<std::vector<cplx>> W{
            {cplx(wdist(rng), wdist(rng)), cplx(wdist(rng), wdist(rng))},
            {cplx(wdist(rng), wdist(rng))}};
        if (!hua_member(spec, W, Z)) continue;
        ++members;
        auto W2 = W;
        const double factor = shrink(rng);
        for (cplx& w : W2[trial % 2]) w *= factor;
        CHECK(hua_member(spec, W2, Z));
    }
    CHECK(members > 50);
}

TEST_CASE("single egg block over R_I(1, n) reproduces the egg domain") {
    for (auto [n, K] : {std::pair<int, double>{1, 0.5}, {2, 0.25}, {3, 2.0}}) {
        EggDomainSpec egg(n, K);
        auto base = CartanDomainSpec::type_I(1, n);
        // |W|^{2K} < N(Z)  <=>  egg membership; equivalent block form (1, 1/K)
        HuaConstructionSpec asK1(base, {HuaBlock{1, K, 1.0}});
        HuaConstructionSpec as1K(base, {HuaBlock{1, 1.0, 1.0 / K}});

        Rng rng(37 * n + static_cast<int>(10 * K));
        int agreements = 0;
        for (int trial = 0; trial < 10000; ++trial) {
            cplx W = sample_unit_disk(rng);
            std::vector<cplx> Zv = sample_unit_ball(rng, n);
            for (cplx& c : Zv) c *= 1.05; // cover non-members of the base too

            Eigen::MatrixXcd zm(1, n);
            for (int j = 0; j < n; ++j) zm(0, j) = Zv[j];
            auto Z = CartanPoint::type_I(1, n, zm);
            const bool viaHua = hua_member(asK1, {{W}}, Z);
            const bool viaAlt = hua_member(as1K, {{W}}, Z);

            bool viaPoint = true;
            try {
                DomainPoint p(egg, W, Zv);
            } catch (const ValidationError&) {
                viaPoint = false;
            }
            CHECK(viaHua == viaPoint);
            CHECK(viaAlt == viaPoint);
            agreements += (viaHua == viaPoint);
        }
        CHECK(agreements == 10000);
    }
}
