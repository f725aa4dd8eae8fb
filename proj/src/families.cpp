#include "rmm/families.hpp"

#include "rmm/error.hpp"

#include <algorithm>
#include <cctype>

namespace rmm {
namespace {

struct TorsionName {
    TorsionStructure t;
    std::string_view name;
    unsigned order;
};

constexpr std::array<TorsionName, 16> kNames = {{
    {TorsionStructure::C1, "C1", 1},       {TorsionStructure::C2, "C2", 2},
    {TorsionStructure::C3, "C3", 3},       {TorsionStructure::C4, "C4", 4},
    {TorsionStructure::C5, "C5", 5},       {TorsionStructure::C6, "C6", 6},
    {TorsionStructure::C7, "C7", 7},       {TorsionStructure::C8, "C8", 8},
    {TorsionStructure::C9, "C9", 9},       {TorsionStructure::C10, "C10", 10},
    {TorsionStructure::C12, "C12", 12},    {TorsionStructure::C2xC2, "C2xC2", 4},
    {TorsionStructure::C2xC4, "C2xC4", 8}, {TorsionStructure::C2xC6, "C2xC6", 12},
    {TorsionStructure::C2xC8, "C2xC8", 16}, {TorsionStructure::C3_0, "C3^0", 3},
}};

Decomposition decompose(const Integer& a, unsigned long degree, const FactorOptions& options) {
    // a = c^degree * rest, rest split by exponent residue.
    Decomposition out{1, 1, 1};
    for (const auto& [p, e] : factorize(a, options)) {
        out.c *= power(p, e / degree);
        switch (e % degree) {
            case 0: break;
            case 1: (degree == 3 ? out.e : out.d) *= p; break;
            case 2: out.d *= p; break;
        }
    }
    return out;
}

bool is_case_one(TorsionStructure t) {
    switch (t) {
        case TorsionStructure::C1:
        case TorsionStructure::C2:
        case TorsionStructure::C2xC2:
        case TorsionStructure::C3_0: return false;
        default: return true;
    }
}

}  // namespace

std::string_view to_string(TorsionStructure t) noexcept {
    for (const auto& n : kNames) {
        if (n.t == t) return n.name;
    }
    return "?";
}

TorsionStructure parse_torsion(std::string_view name) {
    std::string norm;
    for (std::size_t i = 0; i < name.size(); ++i) {
        unsigned char ch = static_cast<unsigned char>(name[i]);
        // U+00D7 MULTIPLICATION SIGN is C3 97 in UTF-8.
        if (ch == 0xC3 && i + 1 < name.size() && static_cast<unsigned char>(name[i + 1]) == 0x97) {
            norm += 'X';
            ++i;
            continue;
        }
        if (ch == '_' || ch == '^') {
            norm += '^';
            continue;
        }
        if (std::isspace(ch)) continue;
        norm += static_cast<char>(std::toupper(ch));
    }
    if (norm == "C30") norm = "C3^0";
    for (const auto& n : kNames) {
        std::string candidate;
        for (char ch : n.name) candidate += static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
        if (candidate == norm) return n.t;
    }
    fail(ErrorCode::UnsupportedTorsion, "unknown torsion structure '" + std::string(name) + "'");
}

unsigned group_order(TorsionStructure t) noexcept {
    for (const auto& n : kNames) {
        if (n.t == t) return n.order;
    }
    return 0;
}

int parameter_count(TorsionStructure t) noexcept {
    switch (t) {
        case TorsionStructure::C3_0: return 1;
        case TorsionStructure::C1:
        case TorsionStructure::C2:
        case TorsionStructure::C2xC2: return 3;
        default: return 2;
    }
}

std::string FamilyParameters::to_string() const {
    std::string s = std::string(rmm::to_string(torsion)) + "(a=" + a.get_str();
    if (parameter_count(torsion) >= 2) s += ",b=" + b.get_str();
    if (parameter_count(torsion) == 3) s += ",d=" + d.get_str();
    return s + ")";
}

std::array<Integer, 5> family_coefficients(TorsionStructure t, const Integer& a, const Integer& b,
                                           const Integer& d) {
    using T = TorsionStructure;
    Integer a1 = 0, a2 = 0, a3 = 0, a4 = 0;
    switch (t) {
        case T::C1: {
            // Generic reduced-shape model: prefix from the class index d.
            if (d < 1 || d > 12) fail(ErrorCode::InvalidArgument, "C1 prefix index must be 1..12");
            RmmClass cls = RmmClass::from_index(static_cast<int>(d.get_si()));
            return {cls.a1, cls.a2, cls.a3, a, b};
        }
        case T::C2:
            a2 = 2 * a;
            a4 = a * a - b * b * d;
            break;
        case T::C3_0:
            a3 = a;
            break;
        case T::C3:
            a1 = a;
            a3 = a * a * b;
            break;
        case T::C4:
            a1 = a;
            a2 = -a * b;
            a3 = -a * a * b;
            break;
        case T::C5:
            a1 = a - b;
            a2 = -a * b;
            a3 = -a * a * b;
            break;
        case T::C6:
            a1 = a - b;
            a2 = -a * b - b * b;
            a3 = -a * a * b - a * b * b;
            break;
        case T::C7:
            a1 = a * a + a * b - b * b;
            a2 = a * a * b * b - a * b * b * b;
            a3 = power(a, 4) * b * b - power(a, 3) * power(b, 3);
            break;
        case T::C8:
            a1 = -a * a + 4 * a * b - 2 * b * b;
            a2 = -a * a * b * b + 3 * a * power(b, 3) - 2 * power(b, 4);
            a3 = -power(a, 3) * power(b, 3) + 3 * a * a * power(b, 4) - 2 * a * power(b, 5);
            break;
        case T::C9:
            a1 = power(a, 3) + a * b * b - power(b, 3);
            a2 = power(a, 4) * b * b - 2 * power(a, 3) * power(b, 3) + 2 * a * a * power(b, 4) -
                 a * power(b, 5);
            a3 = power(a, 3) * a2;
            break;
        case T::C10:
            a1 = power(a, 3) - 2 * a * a * b - 2 * a * b * b + 2 * power(b, 3);
            a2 = -power(a, 3) * power(b, 3) + 3 * a * a * power(b, 4) - 2 * a * power(b, 5);
            a3 = (power(a, 3) - 3 * a * a * b + a * b * b) * a2;
            break;
        case T::C12:
            a1 = -power(a, 4) + 2 * power(a, 3) * b + 2 * a * a * b * b - 8 * a * power(b, 3) +
                 6 * power(b, 4);
            a2 = b * (a - 2 * b) * (a - b) * (a - b) * (a * a - 3 * a * b + 3 * b * b) *
                 (a * a - 2 * a * b + 2 * b * b);
            a3 = a * power(b - a, 3) * a2;
            break;
        case T::C2xC2:
            a2 = a * d + b * d;
            a4 = a * b * d * d;
            break;
        case T::C2xC4:
            a1 = a;
            a2 = -a * b - 4 * b * b;
            a3 = -a * a * b - 4 * a * b * b;
            break;
        case T::C2xC6:
            a1 = -19 * a * a + 2 * a * b + b * b;
            a2 = -10 * power(a, 4) + 22 * power(a, 3) * b - 14 * a * a * b * b + 2 * a * power(b, 3);
            a3 = 90 * power(a, 6) - 198 * power(a, 5) * b + 116 * power(a, 4) * b * b +
                 4 * power(a, 3) * power(b, 3) - 14 * a * a * power(b, 4) + 2 * a * power(b, 5);
            break;
        case T::C2xC8:
            a1 = -power(a, 4) - 8 * power(a, 3) * b - 24 * a * a * b * b + 64 * power(b, 4);
            a2 = -4 * a * b * b * (a + 2 * b) * (a + 4 * b) * (a + 4 * b) *
                 (a * a + 4 * a * b + 8 * b * b);
            a3 = -2 * b * (a + 4 * b) * (a * a - 8 * b * b) * a2;
            break;
    }
    return {a1, a2, a3, a4, Integer(0)};
}

std::optional<ErrorCode> parameter_violation(TorsionStructure t, const Integer& a,
                                             const Integer& b, const Integer& d,
                                             const FactorOptions& options) {
    using T = TorsionStructure;
    if (t == T::C1) {
        if (d < 1 || d > 12) return ErrorCode::InvalidArgument;
    } else if (t == T::C3_0) {
        if (a <= 0) return ErrorCode::SignViolation;
        if (!is_cubefree(a, options)) return ErrorCode::SquarefreeViolation;
    } else if (t == T::C2) {
        if (b == 0) return ErrorCode::DegenerateCurve;
        if (d == 1) return ErrorCode::ConstraintViolation;
        if (!is_squarefree(d, options)) return ErrorCode::SquarefreeViolation;
        if (!is_squarefree(gcd_of(a, b), options)) return ErrorCode::SquarefreeViolation;
    } else if (t == T::C2xC2) {
        if (d <= 0) return ErrorCode::SignViolation;
        if (!is_squarefree(d, options)) return ErrorCode::SquarefreeViolation;
        if (gcd_of(a, b) != 1) return ErrorCode::GcdViolation;
        if (mpz_odd_p(a.get_mpz_t())) return ErrorCode::ParityViolation;
    } else if (is_case_one(t)) {
        if (a <= 0) return ErrorCode::SignViolation;
        if (gcd_of(a, b) != 1) return ErrorCode::GcdViolation;
    }
    auto c = family_coefficients(t, a, b, d);
    if (!WeierstrassModel::try_make(c[0], c[1], c[2], c[3], c[4])) return ErrorCode::DegenerateCurve;
    return std::nullopt;
}

FamilyParameters validate_params(TorsionStructure t, const Integer& a, const Integer& b,
                                 const Integer& d, const FactorOptions& options) {
    if (auto code = parameter_violation(t, a, b, d, options)) {
        FamilyParameters shown{t, a, b, d, std::nullopt};
        fail(*code, std::string(error_name(*code)) + " for " + shown.to_string());
    }
    return normalized_params(t, a, b, d, options);
}

FamilyParameters normalized_params(TorsionStructure t, const Integer& a, const Integer& b,
                                   const Integer& d, const FactorOptions& options) {
    const int n = parameter_count(t);
    FamilyParameters params{t, a, n >= 2 ? b : Integer(0), n == 3 ? d : Integer(0), std::nullopt};
    if (t == TorsionStructure::C3) params.decomposition = decompose(a, 3, options);
    if (t == TorsionStructure::C4) params.decomposition = decompose(a, 2, options);
    return params;
}

WeierstrassModel build_model(const FamilyParameters& params) {
    auto c = family_coefficients(params.torsion, params.a, params.b, params.d);
    auto model = WeierstrassModel::try_make(c[0], c[1], c[2], c[3], c[4]);
    if (!model) fail(ErrorCode::DegenerateCurve, "singular model for " + params.to_string());
    return *model;
}

Signature family_signature(const FamilyParameters& params) {
    return signature_of(build_model(params));
}

Integer base_scale(const FamilyParameters& params) {
    if (params.decomposition) {
        const auto& dec = *params.decomposition;
        if (params.torsion == TorsionStructure::C3) return dec.c * dec.c * dec.d;
        if (params.torsion == TorsionStructure::C4) return dec.c;
    }
    return 1;
}

std::vector<long> expected_scale_ratios(TorsionStructure t) {
    using T = TorsionStructure;
    switch (t) {
        case T::C5:
        case T::C7:
        case T::C9:
        case T::C3: return {1};
        case T::C4:
        case T::C6:
        case T::C8:
        case T::C10:
        case T::C12:
        case T::C2xC2: return {1, 2};
        case T::C2:
        case T::C2xC4: return {1, 2, 4};
        case T::C2xC6: return {1, 4, 16};
        case T::C2xC8: return {1, 16, 64};
        case T::C1:
        case T::C3_0: return {};
    }
    return {};
}

}  // namespace rmm
