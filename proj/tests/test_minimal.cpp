#include "oracle.hpp"
#include "rmm/error.hpp"
#include "rmm/minimal.hpp"

#include <doctest.h>

#include <random>

using namespace rmm;

namespace {

const Signature kExample(420241, Integer("-303183289"), Integer("-10245657600000"));
const Signature kC4Example(Integer("4399653136"), Integer("-286462685864384"));
const Signature kC12Example(Integer("44115712857085761"), Integer("-9246342494619021684087009"));

// Minimal signatures of random integral models.
std::vector<Signature> random_minimal(std::size_t n, std::uint64_t seed, long range) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> small(-1, 1), big(-range, range);
    std::vector<Signature> out;
    while (out.size() < n) {
        auto m = WeierstrassModel::try_make(small(rng), small(rng), small(rng), big(rng), big(rng));
        if (m) out.push_back(minimize(signature_of(*m)).minimal);
    }
    return out;
}

}  // namespace

TEST_CASE("class index and triple table") {
    const int triples[12][3] = {{0, 0, 0}, {0, 0, 1}, {0, -1, 0}, {0, -1, 1}, {0, 1, 0}, {0, 1, 1},
                                {1, 0, 0}, {1, 0, 1}, {1, -1, 0}, {1, -1, 1}, {1, 1, 0}, {1, 1, 1}};
    for (int i = 1; i <= 12; ++i) {
        RmmClass c = RmmClass::from_index(i);
        CHECK(c.a1 == triples[i - 1][0]);
        CHECK(c.a2 == triples[i - 1][1]);
        CHECK(c.a3 == triples[i - 1][2]);
        CHECK(RmmClass::from_triple(c.a1, c.a2, c.a3).index == i);
    }
    CHECK_THROWS_AS(RmmClass::from_index(13), Error);
}

TEST_CASE("index sets") {
    IndexSet s = IndexSet{1, 3, 5} | IndexSet::range(7, 12);
    CHECK(s.size() == 9);
    CHECK(s.to_string() == "1,3,5,7-12");
    CHECK(IndexSet{4, 6, 7, 12}.to_string() == "4,6,7,12");
    CHECK(IndexSet{7, 10}.subset_of(s));
    CHECK_FALSE(IndexSet{2}.subset_of(s));
}

TEST_CASE("Kraus admissibility") {
    CHECK(kraus_admissible(kExample.c4(), kExample.c6()));
    CHECK(kraus_admissible(-48, 0));
    CHECK_FALSE(kraus_admissible(177, 9));
    CHECK(177 * 177 * 177 - 81 == 1728 * 3209);
    CHECK_FALSE(oracle::integral_model(177, 9).has_value());
    CHECK_THROWS_AS(kraus_admissible(2, 1), Error);
}

TEST_CASE("Kraus admissibility agrees with a brute-force integral model search") {
    int admissible = 0, checked = 0;
    for (long c6 = -300; c6 <= 300; ++c6) {
        for (long c4 = -300; c4 <= 300; ++c4) {
            Integer d = Integer(c4) * c4 * c4 - Integer(c6) * c6;
            if (d == 0 || d % 1728 != 0) continue;
            ++checked;
            bool k = kraus_admissible(c4, c6);
            CHECK(k == oracle::integral_model(c4, c6).has_value());
            admissible += k;
        }
    }
    CHECK(checked > 500);
    CHECK(admissible > 100);
}

TEST_CASE("minimize") {
    const WeierstrassModel raw(0, 0, 0, -11346507, Integer("16371897606"));
    Signature s = signature_of(raw);
    CHECK(s.c4() == Integer("544632336"));
    CHECK(s.c6() == Integer("-14145319531584"));
    CHECK(420241 * power(6, 4) == Integer("544632336"));
    Minimization m = minimize(s);
    CHECK(m.u == 6);
    CHECK(m.minimal == kExample);

    Minimization again = minimize(kExample);
    CHECK(again.u == 1);
    CHECK(again.minimal == kExample);

    Minimization up = minimize(Signature(0, -55296, -1769472));
    CHECK(up.u == 2);
    CHECK(up.minimal == Signature(0, -864, -432));

    CHECK_THROWS_AS(minimize(Signature(177, 9)), Error);
}

TEST_CASE("minimize agrees with a brute-force scale search") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> small(-1, 1), big(-60, 60);
    std::uniform_int_distribution<int> pick(0, 5);
    const long scales[] = {1, 2, 3, 4, 6, 12};
    for (int i = 0; i < 400; ++i) {
        auto m = WeierstrassModel::try_make(small(rng), small(rng), small(rng), big(rng), big(rng));
        if (!m) continue;
        const long v = scales[pick(rng)];
        Signature s = signature_of(*m);
        Signature scaled(s.c4() * power(v, 4), s.c6() * power(v, 6));
        Minimization got = minimize(scaled);
        const unsigned long expect = oracle::minimal_scale(scaled.c4(), scaled.c6(), 200);
        CHECK(got.u == expect);
        CHECK(minimize(got.minimal).u == 1);
    }
}

TEST_CASE("reduced minimal models match an offline oracle") {
    auto rows = oracle::load_minimal_models(RMM_FIXTURE_DIR "/minimal_models.txt");
    REQUIRE(rows.size() == 400);
    for (const auto& row : rows) {
        const auto& a = row.input;
        Minimization m = minimize(signature_of(WeierstrassModel(a[0], a[1], a[2], a[3], a[4])));
        const auto& r = row.reduced;
        const WeierstrassModel expect(r[0], r[1], r[2], r[3], r[4]);
        CHECK(m.u == row.u);
        CHECK(lkc_reduce(m.minimal) == expect);
        CHECK(reduced_model(m.minimal) == expect);
    }
}

TEST_CASE("Laska-Kraus-Connell reduction") {
    CHECK(lkc_reduce(kExample) == WeierstrassModel(1, 0, 0, -8755, 350177));
    CHECK(lkc_reduce(Signature(0, -864, -432)) == WeierstrassModel(0, 0, 0, 0, 1));
    CHECK(lkc_reduce(kC4Example) == WeierstrassModel(0, -1, 0, -91659440, Integer("331584587712")));
    // A scaled signature still reduces to an integral model (y^2 = x^3 + 64).
    CHECK(lkc_reduce(Signature(0, -55296, -1769472)) == WeierstrassModel(0, 0, 0, 0, 64));
    try {
        lkc_reduce(Signature(177, 9));
        FAIL("expected NotMinimal");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotMinimal);
    }
}

TEST_CASE("class from c6") {
    CHECK(rmm_index(kExample).index == 7);
    CHECK(rmm_index(Signature(-48, 0)).index == 1);
    CHECK(rmm_index(kC12Example).index == 10);
    CHECK(rmm_index(kC4Example).index == 3);
}

TEST_CASE("closed-form reduced model") {
    const CongruenceProfile& r7 = congruence_profile(7);
    CHECK(r7.a.eval(kExample.c4(), kExample.c6()) == 420240);
    CHECK(r7.b.eval(kExample.c4(), kExample.c6()) == Integer("-605105856"));
    CHECK(reduced_model(kExample) == WeierstrassModel(1, 0, 0, -8755, 350177));
    CHECK(reduced_model(kC12Example) ==
          WeierstrassModel(1, -1, 1, Integer("-919077351189287"), Integer("10701785524467279561311")));
    CHECK(reduced_model(Signature(0, -864, -432)) == WeierstrassModel(0, 0, 0, 0, 1));
}

TEST_CASE("congruence profiles") {
    CHECK(congruence_profile(7).c4_residue == 1);
    CHECK(congruence_profile(7).c6_residue == 71);
    CHECK(congruence_profile(7).c6_modulus == 72);
    CHECK(congruence_profile(5).c4_residue == 16);
    CHECK(congruence_profile(5).c6_residue == 224);
    CHECK(congruence_profile(5).c6_modulus == 288);
    CHECK(congruence_profile(1).c4_residue == 0);
    CHECK(congruence_profile(1).c6_residue == 0);
    CHECK(congruence_profile(1).c6_modulus == 864);
}

TEST_CASE("mod 24 keys follow from the mod 72/288/864 residues") {
    for (int i = 1; i <= 12; ++i) {
        const CongruenceProfile& p = congruence_profile(i);
        const unsigned a1 = p.c6_residue % 2;
        const unsigned key = a1 ? p.c6_residue % 24 : (p.c6_residue / 2) % 24;
        CHECK(key == p.c6_mod24_key);
        CHECK(class_from_key(key) == i);
        CHECK(RmmClass::from_index(i).a1 == static_cast<int>(a1));
    }
    int keys = 0;
    for (unsigned k = 0; k < 24; ++k) keys += class_from_key(k).has_value();
    CHECK(keys == 12);
}

TEST_CASE("properties on random minimal signatures") {
    for (const Signature& s : random_minimal(3000, 99, 5000)) {
        WeierstrassModel lkc = lkc_reduce(s);
        RmmClass cls = rmm_index(s);
        CHECK(reduced_model(s) == lkc);
        CHECK(signature_of(lkc) == s);
        CHECK(lkc.a1() == cls.a1);
        CHECK(lkc.a2() == cls.a2);
        CHECK(lkc.a3() == cls.a3);
        const CongruenceProfile& p = congruence_profile(cls.index);
        CHECK(residue(s.c4(), 48) == p.c4_residue);
        CHECK(residue(s.c6(), p.c6_modulus) == p.c6_residue);
        CHECK(minimize(s).u == 1);
    }
}

TEST_CASE("2-adic and 3-adic valuations by class") {
    auto v = [](const Integer& n, unsigned long p) { return valuation(n, p).value_or(1000); };
    int seen[13] = {};
    for (const Signature& s : random_minimal(4000, 123, 20000)) {
        const int i = rmm_index(s).index;
        ++seen[i];
        const auto v2c4 = v(s.c4(), 2), v2c6 = v(s.c6(), 2), v3c4 = v(s.c4(), 3), v3c6 = v(s.c6(), 3);
        switch (i) {
            case 1: CHECK((v2c4 >= 4 && v2c6 >= 5 && v3c4 >= 1 && v3c6 >= 3)); break;
            case 2: CHECK((v2c4 >= 4 && v2c6 == 3 && v3c4 >= 1 && v3c6 >= 3)); break;
            case 3:
            case 5: CHECK((v2c4 >= 4 && v2c6 >= 5 && v3c4 == 0 && v3c6 == 0)); break;
            case 4:
            case 6: CHECK((v2c4 >= 4 && v2c6 == 3 && v3c4 == 0 && v3c6 == 0)); break;
            case 9:
            case 10: CHECK((v2c4 == 0 && v2c6 == 0 && v3c4 >= 1 && v3c6 >= 2)); break;
            default: CHECK((v2c4 == 0 && v2c6 == 0 && v3c4 == 0 && v3c6 == 0)); break;
        }
    }
    for (int i = 1; i <= 12; ++i) CHECK(seen[i] > 0);
}

TEST_CASE("reduction classes at 2 and 3") {
    CHECK(allowed_indices_for_reduction(2, ReductionType::Additive) == IndexSet{1, 3, 5});
    CHECK(allowed_indices_for_reduction(3, ReductionType::Good) == IndexSet::range(1, 12));
    CHECK(allowed_indices_for_reduction(2, ReductionType::Multiplicative) == IndexSet::range(7, 12));
    CHECK(allowed_indices_for_reduction(2, ReductionType::Good) == (IndexSet{2, 4} | IndexSet::range(6, 12)));
    CHECK(allowed_indices_for_reduction(3, ReductionType::Multiplicative) ==
          (IndexSet::range(3, 8) | IndexSet{11, 12}));
    CHECK(allowed_indices_for_reduction(3, ReductionType::Additive) == IndexSet{1, 2, 9, 10});
    CHECK_THROWS_AS(allowed_indices_for_reduction(5, ReductionType::Good), Error);
}
