#include "rmm/curve.hpp"

#include "rmm/error.hpp"

namespace rmm {
namespace {

struct RawInvariants {
    Integer b2, b4, b6, c4, c6, disc1728;   // disc1728 = c4^3 - c6^2
};

RawInvariants raw_invariants(const std::array<Integer, 5>& a) {
    const auto& [a1, a2, a3, a4, a6] = a;
    RawInvariants r;
    r.b2 = a1 * a1 + 4 * a2;
    r.b4 = 2 * a4 + a1 * a3;
    r.b6 = a3 * a3 + 4 * a6;
    r.c4 = r.b2 * r.b2 - 24 * r.b4;
    r.c6 = -r.b2 * r.b2 * r.b2 + 36 * r.b2 * r.b4 - 216 * r.b6;
    r.disc1728 = r.c4 * r.c4 * r.c4 - r.c6 * r.c6;
    return r;
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace

WeierstrassModel::WeierstrassModel(Integer a1, Integer a2, Integer a3, Integer a4, Integer a6)
    : a_{std::move(a1), std::move(a2), std::move(a3), std::move(a4), std::move(a6)} {
    if (raw_invariants(a_).disc1728 == 0) {
        fail(ErrorCode::SingularCurve, "singular model " + to_string());
    }
}

std::optional<WeierstrassModel> WeierstrassModel::try_make(Integer a1, Integer a2, Integer a3,
                                                           Integer a4, Integer a6) {
    std::array<Integer, 5> a{std::move(a1), std::move(a2), std::move(a3), std::move(a4),
                             std::move(a6)};
    if (raw_invariants(a).disc1728 == 0) return std::nullopt;
    return WeierstrassModel(Unchecked{}, std::move(a));
}

std::string WeierstrassModel::to_string() const {
    std::string s = "[";
    for (std::size_t i = 0; i < a_.size(); ++i) {
        if (i) s += ',';
        s += a_[i].get_str();
    }
    return s + "]";
}

Signature::Signature(Integer c4, Integer c6) : c4_(std::move(c4)), c6_(std::move(c6)) {
    Integer diff = c4_ * c4_ * c4_ - c6_ * c6_;
    if (diff == 0) fail(ErrorCode::NotASignature, "c4^3 - c6^2 is zero");
    if (!mpz_divisible_ui_p(diff.get_mpz_t(), 1728)) {
        fail(ErrorCode::NotASignature, "1728 does not divide c4^3 - c6^2");
    }
    mpz_divexact_ui(delta_.get_mpz_t(), diff.get_mpz_t(), 1728);
}

Signature::Signature(Integer c4, Integer c6, Integer delta)
    : c4_(std::move(c4)), c6_(std::move(c6)), delta_(std::move(delta)) {
    if (delta_ == 0) fail(ErrorCode::NotASignature, "zero discriminant");
    if (c4_ * c4_ * c4_ - c6_ * c6_ != 1728 * delta_) {
        fail(ErrorCode::NotASignature, "c4^3 - c6^2 != 1728 * Delta");
    }
}

Invariants compute_invariants(const WeierstrassModel& model) {
    RawInvariants r = raw_invariants(model.coefficients());
    Integer delta;
    mpz_divexact_ui(delta.get_mpz_t(), r.disc1728.get_mpz_t(), 1728);
    return Invariants{r.b2, r.b4, r.b6, Signature(r.c4, r.c6, delta)};
}

Isomorphism Isomorphism::inverse() const {
    if (u == 0) fail(ErrorCode::ZeroScale, "isomorphism with u = 0");
    Rational ui = 1 / u;
    return Isomorphism{ui, -r * ui * ui, -s * ui, (r * s - t) * ui * ui * ui};
}

WeierstrassModel apply_isomorphism(const WeierstrassModel& model, const Isomorphism& iso) {
    if (iso.u == 0) fail(ErrorCode::ZeroScale, "isomorphism with u = 0");
    const Rational a1(model.a1()), a2(model.a2()), a3(model.a3()), a4(model.a4()),
        a6(model.a6());
    const Rational& u = iso.u;
    const Rational& r = iso.r;
    const Rational& s = iso.s;
    const Rational& t = iso.t;
    Rational u2 = u * u;
    Rational u3 = u2 * u;
    Rational u4 = u2 * u2;
    Rational u6 = u3 * u3;

    std::array<Rational, 5> out{
        (a1 + 2 * s) / u,
        (a2 - s * a1 + 3 * r - s * s) / u2,
        (a3 + r * a1 + 2 * t) / u3,
        (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u4,
        (a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1) / u6,
    };
    for (const auto& q : out) {
        if (!is_integer(q)) {
            fail(ErrorCode::NonIntegralResult,
                 "transformed coefficient " + q.get_str() + " is not an integer");
        }
    }
    return WeierstrassModel(out[0].get_num(), out[1].get_num(), out[2].get_num(),
                            out[3].get_num(), out[4].get_num());
}

std::string_view to_string(ReductionType type) noexcept {
    switch (type) {
        case ReductionType::Good: return "good";
        case ReductionType::Multiplicative: return "multiplicative";
        case ReductionType::Additive: return "additive";
    }
    return "unknown";
}

ReductionType reduction_type(const Signature& minimal, unsigned long p) {
    if (p < 2) fail(ErrorCode::InvalidArgument, "reduction type needs a prime");
    if (!mpz_divisible_ui_p(minimal.delta().get_mpz_t(), p)) return ReductionType::Good;
    // c4 = 0 is divisible by every p.
    if (mpz_divisible_ui_p(minimal.c4().get_mpz_t(), p)) return ReductionType::Additive;
    return ReductionType::Multiplicative;
}

RationalPoint RationalPoint::affine(Rational x, Rational y) {
    x.canonicalize();
    y.canonicalize();
    RationalPoint p;
    p.xy_.emplace(std::move(x), std::move(y));
    return p;
}

bool on_curve(const WeierstrassModel& m, const RationalPoint& p) {
    if (p.is_infinity()) return true;
    const Rational& x = p.x();
    const Rational& y = p.y();
    Rational lhs = y * y + Rational(m.a1()) * x * y + Rational(m.a3()) * y;
    Rational rhs = x * x * x + Rational(m.a2()) * x * x + Rational(m.a4()) * x + Rational(m.a6());
    return lhs == rhs;
}

RationalPoint negate(const WeierstrassModel& m, const RationalPoint& p) {
    if (p.is_infinity()) return p;
    return RationalPoint::affine(p.x(), -p.y() - Rational(m.a1()) * p.x() - Rational(m.a3()));
}

RationalPoint add(const WeierstrassModel& m, const RationalPoint& p, const RationalPoint& q) {
    if (p.is_infinity()) return q;
    if (q.is_infinity()) return p;
    const Rational a1(m.a1()), a2(m.a2()), a3(m.a3()), a4(m.a4()), a6(m.a6());
    const Rational &x1 = p.x(), &y1 = p.y(), &x2 = q.x(), &y2 = q.y();

    Rational lambda, nu;
    if (x1 == x2) {
        if (y1 + y2 + a1 * x2 + a3 == 0) return RationalPoint::infinity();
        Rational denom = 2 * y1 + a1 * x1 + a3;
        lambda = (3 * x1 * x1 + 2 * a2 * x1 + a4 - a1 * y1) / denom;
        nu = (-x1 * x1 * x1 + a4 * x1 + 2 * a6 - a3 * y1) / denom;
    } else {
        Rational dx = x2 - x1;
        lambda = (y2 - y1) / dx;
        nu = (y1 * x2 - y2 * x1) / dx;
    }
    Rational x3 = lambda * lambda + a1 * lambda - a2 - x1 - x2;
    Rational y3 = -(lambda + a1) * x3 - nu - a3;
    return RationalPoint::affine(std::move(x3), std::move(y3));
}

RationalPoint multiply(const WeierstrassModel& m, const RationalPoint& p, unsigned long n) {
    RationalPoint result = RationalPoint::infinity();
    RationalPoint base = p;
    while (n) {
        if (n & 1) result = add(m, result, base);
        n >>= 1;
        if (n) base = add(m, base, base);
    }
    return result;
}

std::optional<unsigned> point_order(const WeierstrassModel& m, const RationalPoint& p,
                                    unsigned bound) {
    if (!on_curve(m, p)) fail(ErrorCode::PointNotOnCurve, "point is not on the curve");
    RationalPoint acc = p;
    for (unsigned n = 1; n <= bound; ++n) {
        if (acc.is_infinity()) return n;
        acc = add(m, acc, p);
    }
    return std::nullopt;
}

}  // namespace rmm
