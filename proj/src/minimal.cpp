#include "rmm/minimal.hpp"

#include "rmm/error.hpp"

#include <array>
#include <bit>

namespace rmm {
namespace {

// Rows of the closed-form table. Residues are least nonnegative; A and B are
// the affine forms giving a4 = -A/48 and a6 = -B/1728.
constexpr std::array<CongruenceProfile, 12> kProfiles = {{
    {1, 0, 0, 864, 0, {1, 0, 0}, {0, 2, 0}},
    {2, 0, 648, 864, 12, {1, 0, 0}, {0, 2, 432}},
    {3, 16, 64, 288, 8, {1, 0, -16}, {-12, 2, 64}},
    {4, 16, 136, 288, 20, {1, 0, -16}, {-12, 2, 496}},
    {5, 16, 224, 288, 16, {1, 0, -16}, {12, 2, -64}},
    {6, 16, 8, 288, 4, {1, 0, -16}, {12, 2, 368}},
    {7, 1, 71, 72, 23, {1, 0, -1}, {3, 2, -1}},
    {8, 25, 35, 72, 11, {1, 0, 23}, {3, 2, 431}},
    {9, 9, 27, 72, 3, {1, 0, -9}, {-9, 2, 27}},
    {10, 33, 63, 72, 15, {1, 0, 15}, {-9, 2, 459}},
    {11, 25, 19, 72, 19, {1, 0, -25}, {15, 2, -125}},
    {12, 1, 55, 72, 7, {1, 0, -1}, {15, 2, 307}},
}};

constexpr std::array<std::array<int, 3>, 12> kTriples = {{
    {0, 0, 0}, {0, 0, 1}, {0, -1, 0}, {0, -1, 1}, {0, 1, 0}, {0, 1, 1},
    {1, 0, 0}, {1, 0, 1}, {1, -1, 0}, {1, -1, 1}, {1, 1, 0}, {1, 1, 1},
}};

// key = 2^(a1-1) c6 mod 24 -> class index, 0 where no class exists.
constexpr std::array<int, 24> kKeyToIndex = [] {
    std::array<int, 24> table{};
    for (const auto& row : kProfiles) table[row.c6_mod24_key] = row.index;
    return table;
}();

}  // namespace

int IndexSet::size() const { return std::popcount(static_cast<unsigned>(bits_)); }

std::vector<int> IndexSet::to_vector() const {
    std::vector<int> out;
    for (int i = 1; i <= 12; ++i) {
        if (contains(i)) out.push_back(i);
    }
    return out;
}

std::string IndexSet::to_string() const {
    std::string s;
    auto v = to_vector();
    for (std::size_t i = 0; i < v.size();) {
        std::size_t j = i;
        while (j + 1 < v.size() && v[j + 1] == v[j] + 1) ++j;
        if (!s.empty()) s += ',';
        s += std::to_string(v[i]);
        if (j >= i + 2) {
            s += '-' + std::to_string(v[j]);
        } else if (j == i + 1) {
            s += ',' + std::to_string(v[j]);
        }
        i = j + 1;
    }
    return s;
}

RmmClass RmmClass::from_index(int index) {
    if (index < 1 || index > 12) {
        fail(ErrorCode::InvalidArgument, "class index out of range: " + std::to_string(index));
    }
    const auto& t = kTriples[static_cast<std::size_t>(index - 1)];
    return RmmClass{index, t[0], t[1], t[2]};
}

RmmClass RmmClass::from_triple(int a1, int a2, int a3) {
    for (std::size_t i = 0; i < kTriples.size(); ++i) {
        if (kTriples[i] == std::array<int, 3>{a1, a2, a3}) {
            return RmmClass{static_cast<int>(i + 1), a1, a2, a3};
        }
    }
    fail(ErrorCode::InvalidArgument, "not a reduced (a1,a2,a3) triple");
}

Integer AffineForm::eval(const Integer& c4v, const Integer& c6v) const {
    return c4 * c4v + c6 * c6v + constant;
}

bool admissible_at(unsigned long p, const Integer& c4, const Integer& c6) {
    Integer disc = c4 * c4 * c4 - c6 * c6;
    if (p == 2) {
        if (!valuation_at_least(disc, 2, 6)) return false;
        if (residue(c6, 4) == 3) return true;
        unsigned long r = residue(c6, 32);
        return valuation_at_least(c4, 2, 4) && (r == 0 || r == 8);
    }
    if (p == 3) {
        if (!valuation_at_least(disc, 3, 3)) return false;
        auto v = valuation(c6, 3);
        return !v || *v != 2;
    }
    fail(ErrorCode::UnsupportedPrime, "local admissibility is only defined at 2 and 3");
}

bool kraus_admissible(const Integer& c4, const Integer& c6) {
    Signature check(c4, c6);   // throws NotASignature
    return admissible_at(2, c4, c6) && admissible_at(3, c4, c6);
}

Minimization minimize(const Signature& sig, const FactorOptions& options) {
    const Integer& c4 = sig.c4();
    const Integer& c6 = sig.c6();
    const Integer& delta = sig.delta();
    if (!kraus_admissible(c4, c6)) {
        fail(ErrorCode::NotAdmissible, "signature does not come from an integral model");
    }

    // Every prime of u divides c4 (if nonzero), c6 (if nonzero) and Delta.
    Integer g = gcd_of(gcd_of(c4, c6), delta);
    Integer u = 1;
    if (g != 1) {
        for (const Integer& p : prime_support(g, options)) {
            unsigned long e = *valuation(delta, p) / 12;
            if (auto v = valuation(c4, p)) e = std::min(e, *v / 4);
            if (auto v = valuation(c6, p)) e = std::min(e, *v / 6);
            if (p <= 3) {
                const unsigned long q = p.get_ui();
                while (e > 0) {
                    Integer c4s = c4 / power(p, 4 * e);
                    Integer c6s = c6 / power(p, 6 * e);
                    if (admissible_at(q, c4s, c6s)) break;
                    --e;
                }
            }
            if (e > 0) u *= power(p, e);
        }
    }
    if (u == 1) return Minimization{sig, u};
    Integer u4 = power(u, 4);
    Integer u6 = u4 * u * u;
    Integer u12 = u6 * u6;
    return Minimization{Signature(c4 / u4, c6 / u6, delta / u12), u};
}

WeierstrassModel lkc_reduce(const Signature& minimal) {
    const Integer& c4 = minimal.c4();
    const Integer& c6 = minimal.c6();
    auto not_minimal = [](const char* what) -> Error {
        return Error(ErrorCode::NotMinimal, std::string("Laska-Kraus-Connell step failed: ") + what);
    };

    long b2v = static_cast<long>(residue(-c6, 12));
    if (b2v > 6) b2v -= 12;
    const Integer b2 = b2v;
    auto b4 = exact_quotient(b2 * b2 - c4, 24);
    if (!b4) throw not_minimal("24 does not divide b2^2 - c4");
    auto b6 = exact_quotient(-b2 * b2 * b2 + 36 * b2 * *b4 - c6, 216);
    if (!b6) throw not_minimal("216 does not divide -b2^3 + 36 b2 b4 - c6");

    const Integer a1 = static_cast<long>(residue(b2, 2));
    auto a2 = exact_quotient(b2 - a1, 4);
    if (!a2) throw not_minimal("4 does not divide b2 - a1");
    const Integer a3 = static_cast<long>(residue(*b6, 2));
    auto a4 = exact_quotient(*b4 - a1 * a3, 2);
    if (!a4) throw not_minimal("2 does not divide b4 - a1 a3");
    auto a6 = exact_quotient(*b6 - a3, 4);
    if (!a6) throw not_minimal("4 does not divide b6 - a3");

    auto model = WeierstrassModel::try_make(a1, *a2, a3, *a4, *a6);
    if (!model || signature_of(*model) != minimal) {
        throw not_minimal("output does not reproduce the signature");
    }
    return *model;
}

RmmClass rmm_index(const Signature& minimal) {
    const Integer& c6 = minimal.c6();
    unsigned long key = mpz_odd_p(c6.get_mpz_t()) ? residue(c6, 24) : residue(c6 / 2, 24);
    int index = kKeyToIndex[key];
    if (index == 0) {
        fail(ErrorCode::NotMinimal, "c6 residue key " + std::to_string(key) + " matches no class");
    }
    return RmmClass::from_index(index);
}

std::optional<int> class_from_key(unsigned key) {
    if (key >= kKeyToIndex.size() || kKeyToIndex[key] == 0) return std::nullopt;
    return kKeyToIndex[key];
}

WeierstrassModel reduced_model(const Signature& minimal) {
    RmmClass cls = rmm_index(minimal);
    const CongruenceProfile& row = congruence_profile(cls.index);
    auto a4 = exact_quotient(row.a.eval(minimal.c4(), minimal.c6()), 48);
    auto a6 = exact_quotient(row.b.eval(minimal.c4(), minimal.c6()), 1728);
    if (!a4 || !a6) fail(ErrorCode::NotMinimal, "A/48 or B/1728 is not integral");
    auto model = WeierstrassModel::try_make(cls.a1, cls.a2, cls.a3, -*a4, -*a6);
    if (!model) fail(ErrorCode::NotMinimal, "closed form gives a singular model");
    return *model;
}

const CongruenceProfile& congruence_profile(int index) {
    if (index < 1 || index > 12) {
        fail(ErrorCode::InvalidArgument, "class index out of range: " + std::to_string(index));
    }
    return kProfiles[static_cast<std::size_t>(index - 1)];
}

IndexSet allowed_indices_for_reduction(unsigned long p, ReductionType type) {
    if (p == 2) {
        switch (type) {
            case ReductionType::Good: return IndexSet{2, 4} | IndexSet::range(6, 12);
            case ReductionType::Multiplicative: return IndexSet::range(7, 12);
            case ReductionType::Additive: return IndexSet{1, 3, 5};
        }
    }
    if (p == 3) {
        switch (type) {
            case ReductionType::Good: return IndexSet::range(1, 12);
            case ReductionType::Multiplicative: return IndexSet::range(3, 8) | IndexSet{11, 12};
            case ReductionType::Additive: return IndexSet{1, 2, 9, 10};
        }
    }
    fail(ErrorCode::UnsupportedPrime, "reduction classes are tabulated only for p = 2, 3");
}

}  // namespace rmm
