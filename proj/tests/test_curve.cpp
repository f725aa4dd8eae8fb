#include "oracle.hpp"
#include "rmm/curve.hpp"
#include "rmm/error.hpp"

#include <doctest.h>

#include <random>

using namespace rmm;

namespace {

WeierstrassModel model(long a1, long a2, long a3, long a4, long a6) {
    return WeierstrassModel(a1, a2, a3, a4, a6);
}

ErrorCode code_of(auto&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::Io;   // sentinel: nothing thrown
}

}  // namespace

TEST_CASE("invariants of small models") {
    Invariants inv = compute_invariants(model(0, 0, 0, 1, 0));
    CHECK(inv.sig.c4() == -48);
    CHECK(inv.sig.c6() == 0);
    CHECK(inv.sig.delta() == -64);
}

TEST_CASE("invariants of the reduced models of the C4 and C12 examples") {
    Signature s = signature_of(WeierstrassModel(0, -1, 0, -91659440, Integer("331584587712")));
    CHECK(s.c4() == Integer("4399653136"));
    CHECK(s.c6() == Integer("-286462685864384"));
    Signature t = signature_of(
        WeierstrassModel(1, -1, 1, Integer("-919077351189287"), Integer("10701785524467279561311")));
    CHECK(t.c4() == Integer("44115712857085761"));
    CHECK(t.c6() == Integer("-9246342494619021684087009"));
}

TEST_CASE("singular models and bad signatures are rejected") {
    CHECK(code_of([] { model(0, 0, 0, 0, 0); }) == ErrorCode::SingularCurve);
    CHECK(code_of([] { model(0, 0, 0, -3, 2); }) == ErrorCode::SingularCurve);
    CHECK_FALSE(WeierstrassModel::try_make(0, 0, 0, 0, 0).has_value());
    CHECK(code_of([] { Signature(1, 1); }) == ErrorCode::NotASignature);      // Delta = 0
    CHECK(code_of([] { Signature(2, 1); }) == ErrorCode::NotASignature);      // 1728 does not divide
    CHECK(code_of([] { Signature(-48, 0, 64); }) == ErrorCode::NotASignature);
}

TEST_CASE("random models satisfy the invariant identities") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> dist(-1'000'000, 1'000'000);
    int checked = 0;
    for (int i = 0; i < 2000; ++i) {
        std::array<Integer, 5> a;
        for (auto& x : a) x = dist(rng);
        auto m = WeierstrassModel::try_make(a[0], a[1], a[2], a[3], a[4]);
        if (!m) continue;
        Invariants inv = compute_invariants(*m);
        const auto& s = inv.sig;
        CHECK(s.c4() * s.c4() * s.c4() - s.c6() * s.c6() == 1728 * s.delta());
        CHECK(s.c4() == inv.b2 * inv.b2 - 24 * inv.b4);
        CHECK(s.c6() == -inv.b2 * inv.b2 * inv.b2 + 36 * inv.b2 * inv.b4 - 216 * inv.b6);
        oracle::Sig o = oracle::invariants(a);
        CHECK(s.c4() == o.c4);
        CHECK(s.c6() == o.c6);
        CHECK(s.delta() == o.delta);
        ++checked;
    }
    CHECK(checked > 1900);
}

TEST_CASE("isomorphisms") {
    const WeierstrassModel e = model(0, 0, 0, 0, 1);
    CHECK(apply_isomorphism(e, Isomorphism{}) == e);

    Isomorphism up{Rational(1, 2), 0, 0, 0};
    WeierstrassModel scaled = apply_isomorphism(e, up);
    Signature s = signature_of(scaled);
    CHECK(s.c4() == 0);
    CHECK(s.c6() == -55296);
    CHECK(s.delta() == -1769472);

    const WeierstrassModel r7 = model(1, 0, 0, -8755, 350177);
    Isomorphism shift{1, 0, 0, -1};
    WeierstrassModel moved = apply_isomorphism(r7, shift);
    CHECK(apply_isomorphism(moved, Isomorphism{1, 0, 0, 1}) == r7);
    CHECK(apply_isomorphism(moved, shift.inverse()) == r7);

    CHECK(code_of([&] { apply_isomorphism(e, Isomorphism{0, 0, 0, 0}); }) == ErrorCode::ZeroScale);
    CHECK(code_of([&] { apply_isomorphism(e, Isomorphism{2, 0, 0, 0}); }) == ErrorCode::NonIntegralResult);
    CHECK(code_of([&] { apply_isomorphism(e, Isomorphism{1, Rational(1, 2), 0, 0}); }) ==
          ErrorCode::NonIntegralResult);
}

TEST_CASE("transform law on random integral transforms") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coef(-50, 50), shift(-20, 20);
    std::uniform_int_distribution<int> pick(0, 3);
    const long scales[] = {1, 2, 3, 6};
    for (int i = 0; i < 300; ++i) {
        auto m = WeierstrassModel::try_make(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng));
        if (!m) continue;
        const long u = scales[pick(rng)];
        Isomorphism iso{Rational(1, u), shift(rng), shift(rng), shift(rng)};
        Signature before = signature_of(*m);
        Signature after = signature_of(apply_isomorphism(*m, iso));
        const Integer u4 = power(u, 4), u6 = power(u, 6);
        CHECK(after.c4() == before.c4() * u4);
        CHECK(after.c6() == before.c6() * u6);
        CHECK(after.delta() == before.delta() * u6 * u6);
    }
}

TEST_CASE("reduction types") {
    Signature ex(420241, Integer("-303183289"), Integer("-10245657600000"));
    CHECK(reduction_type(ex, 2) == ReductionType::Multiplicative);
    CHECK(reduction_type(Signature(-48, 0), 5) == ReductionType::Good);
    Signature y2x3p5 = signature_of(model(0, 0, 0, 0, 5));
    CHECK(y2x3p5.c4() == 0);
    CHECK(y2x3p5.c6() == -4320);
    CHECK(y2x3p5.delta() == -10800);
    CHECK(reduction_type(y2x3p5, 3) == ReductionType::Additive);
}

TEST_CASE("point orders") {
    const WeierstrassModel e = model(0, 0, 0, -1, 0);
    CHECK(point_order(e, RationalPoint::infinity()) == 1u);
    CHECK(point_order(e, RationalPoint::affine(0, 0)) == 2u);
    const WeierstrassModel c5 = model(1, -2, -4, 0, 0);
    CHECK(point_order(c5, RationalPoint::affine(0, 0)) == 5u);
    CHECK(code_of([&] { point_order(e, RationalPoint::affine(1, 1)); }) == ErrorCode::PointNotOnCurve);
    // (0,0) on y^2 + y = x^3 - x has infinite order.
    CHECK_FALSE(point_order(model(0, 0, 1, -1, 0), RationalPoint::affine(0, 0)).has_value());
}

TEST_CASE("group law on torsion points") {
    // 15a1 has torsion C2 x C4; its eight points are closed under addition.
    // Seven are integral, the eighth is the 2-torsion point (-13/4, 9/8).
    const WeierstrassModel e = model(1, 1, 1, -10, -10);
    std::vector<RationalPoint> pts{RationalPoint::infinity(),
                                   RationalPoint::affine(Rational(-13, 4), Rational(9, 8))};
    for (long x = -20; x <= 20; ++x) {
        for (long y = -60; y <= 60; ++y) {
            RationalPoint p = RationalPoint::affine(x, y);
            if (on_curve(e, p)) pts.push_back(p);
        }
    }
    std::vector<RationalPoint> torsion;
    for (const auto& p : pts) {
        if (point_order(e, p)) torsion.push_back(p);
    }
    REQUIRE(torsion.size() == 8);
    for (const auto& p : torsion) {
        CHECK(add(e, p, negate(e, p)).is_infinity());
        CHECK(multiply(e, p, *point_order(e, p)).is_infinity());
        for (const auto& q : torsion) {
            CHECK(add(e, p, q) == add(e, q, p));
            for (const auto& r : torsion) {
                CHECK(add(e, add(e, p, q), r) == add(e, p, add(e, q, r)));
            }
        }
    }
}
