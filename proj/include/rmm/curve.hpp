#pragma once

#include "rmm/arith.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>

namespace rmm {

/// Integral Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
///
/// Construction rejects singular models, so every instance has nonzero
/// discriminant.
class WeierstrassModel {
public:
    WeierstrassModel(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6);

    // std::nullopt for a singular coefficient vector.
    static std::optional<WeierstrassModel> try_make(Integer a1, Integer a2, Integer a3, Integer a4,
                                                    Integer a6);

    const Integer& a1() const noexcept { return a_[0]; }
    const Integer& a2() const noexcept { return a_[1]; }
    const Integer& a3() const noexcept { return a_[2]; }
    const Integer& a4() const noexcept { return a_[3]; }
    const Integer& a6() const noexcept { return a_[4]; }
    const std::array<Integer, 5>& coefficients() const noexcept { return a_; }

    // "[a1,a2,a3,a4,a6]"
    std::string to_string() const;

    friend bool operator==(const WeierstrassModel& x, const WeierstrassModel& y) {
        return x.a_ == y.a_;
    }

private:
    struct Unchecked {};
    WeierstrassModel(Unchecked, std::array<Integer, 5> a) : a_(std::move(a)) {}

    std::array<Integer, 5> a_;
};

/// The triple (c4, c6, Delta) with c4^3 - c6^2 = 1728 Delta and Delta != 0.
class Signature {
public:
    // Derives Delta; throws NotASignature unless 1728 | c4^3 - c6^2 != 0.
    Signature(Integer c4, Integer c6);
    // Checks the identity against the supplied Delta.
    Signature(Integer c4, Integer c6, Integer delta);

    const Integer& c4() const noexcept { return c4_; }
    const Integer& c6() const noexcept { return c6_; }
    const Integer& delta() const noexcept { return delta_; }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    Integer c4_;
    Integer c6_;
    Integer delta_;
};

struct Invariants {
    Integer b2;
    Integer b4;
    Integer b6;
    Signature sig;
};

Invariants compute_invariants(const WeierstrassModel& model);

inline Signature signature_of(const WeierstrassModel& model) {
    return compute_invariants(model).sig;
}

/// Change of variables x = u^2 x' + r, y = u^3 y' + s u^2 x' + t.
struct Isomorphism {
    Rational u{1};
    Rational r{0};
    Rational s{0};
    Rational t{0};

    Isomorphism inverse() const;
};

// Throws ZeroScale when u == 0 and NonIntegralResult when a coefficient of the
// transformed model is not an integer.
WeierstrassModel apply_isomorphism(const WeierstrassModel& model, const Isomorphism& iso);

enum class ReductionType { Good, Multiplicative, Additive };

std::string_view to_string(ReductionType type) noexcept;

// The signature must be minimal at p for the answer to mean anything.
ReductionType reduction_type(const Signature& minimal, unsigned long p);

/// Rational point on a model: the point at infinity or an affine (x, y).
class RationalPoint {
public:
    static RationalPoint infinity() { return RationalPoint(); }
    static RationalPoint affine(Rational x, Rational y);

    bool is_infinity() const noexcept { return !xy_.has_value(); }
    const Rational& x() const { return xy_->first; }
    const Rational& y() const { return xy_->second; }

    friend bool operator==(const RationalPoint&, const RationalPoint&) = default;

private:
    RationalPoint() = default;
    std::optional<std::pair<Rational, Rational>> xy_;
};

bool on_curve(const WeierstrassModel& model, const RationalPoint& p);
RationalPoint negate(const WeierstrassModel& model, const RationalPoint& p);
RationalPoint add(const WeierstrassModel& model, const RationalPoint& p, const RationalPoint& q);
RationalPoint multiply(const WeierstrassModel& model, const RationalPoint& p, unsigned long n);

// Smallest n <= bound with nP = O, or std::nullopt if P has no such order.
// Throws PointNotOnCurve.
std::optional<unsigned> point_order(const WeierstrassModel& model, const RationalPoint& p,
                                    unsigned bound = 16);

}  // namespace rmm
