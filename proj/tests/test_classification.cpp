#include "rmm/classification.hpp"
#include "rmm/error.hpp"

#include <doctest.h>

using namespace rmm;
using T = TorsionStructure;

TEST_CASE("allowed classes per torsion group") {
    CHECK(allowed_rmm(T::C10) == IndexSet{7});
    CHECK(allowed_rmm(T::C5) == IndexSet{4, 6, 7, 12});
    CHECK(allowed_rmm(T::C1) == IndexSet::range(1, 12));
    CHECK(allowed_rmm(T::C2xC8) == IndexSet{7});
    CHECK(allowed_rmm(T::C2xC6) == IndexSet::range(7, 10));
    CHECK(allowed_rmm(T::C3) == (IndexSet{1, 2} | IndexSet::range(5, 10)));
    for (T t : kMazurGroups) CHECK(allowed_rmm(t).subset_of(allowed_rmm(T::C1)));
}

TEST_CASE("small sweeps") {
    SweepReport c7 = sweep_verify(T::C7, 15);
    CHECK(c7.ok());
    CHECK(c7.observed().subset_of(IndexSet{7, 10}));

    SweepReport c2c8 = sweep_verify(T::C2xC8, 8);
    CHECK(c2c8.ok());
    CHECK(c2c8.observed() == IndexSet{7});
    CHECK(c2c8.curves > 0);

    SweepReport c2 = sweep_verify(T::C2, 10);
    CHECK(c2.ok());
    CHECK_FALSE(c2.observed().contains(2));

    CHECK_THROWS_AS(sweep_verify(T::C5, 1), Error);
}

TEST_CASE("sweeps count each model once") {
    // b enters the C2 model only through b^2, so (a, b, d) and (a, -b, d) coincide.
    SweepReport c2 = sweep_verify(T::C2, 10);
    CHECK(c2.duplicates == c2.curves);
    CHECK(sweep_verify(T::C5, 10).duplicates == 0);
    // Distinct C2xC4 tuples may still give the same model.
    SweepReport c2c4 = sweep_verify(T::C2xC4, 16);
    CHECK(c2c4.duplicates > 0);
    CHECK(c2c4.ok());
}

TEST_CASE("threaded sweeps match the serial sweep") {
    SweepOptions four;
    four.threads = 4;
    SweepReport serial = sweep_verify(T::C6, 20);
    SweepReport parallel = sweep_verify(T::C6, 20, four);
    CHECK(serial.curves == parallel.curves);
    CHECK(serial.counts == parallel.counts);
    CHECK(serial.degenerate == parallel.degenerate);
    REQUIRE(serial.witnesses.size() == parallel.witnesses.size());
    for (const auto& [idx, p] : serial.witnesses) CHECK(parallel.witnesses.at(idx).to_string() == p.to_string());
}

TEST_CASE("torsion point orders over a sweep") {
    SweepOptions opts;
    opts.check_torsion_point = true;
    for (T t : {T::C5, T::C8, T::C2xC2, T::C2xC4}) {
        SweepReport r = sweep_verify(t, 5, opts);
        CHECK(r.point_orders.size() == 1);
        CHECK(r.point_orders.count(0) == 0);
    }
    // (0,0) has order 2m on C2 x C2m, never the full group order.
    CHECK(sweep_verify(T::C2xC4, 5, opts).point_orders.count(4) == 1);
    CHECK(sweep_verify(T::C2xC2, 5, opts).point_orders.count(2) == 1);
}

TEST_CASE("residue classification of C2xC2") {
    ResidueClassification r = residue_classification(T::C2xC2, 24, 2);
    CHECK(r.inconsistent() == 0);
    CHECK(r.observed() == allowed_rmm(T::C2xC2));
    // u = 1 and d(a+b) = 0 mod 3 gives R1; u = 2 and d(a+b) = 1 mod 24 gives R7.
    int r1 = 0, r7 = 0;
    for (const auto& [key, entry] : r.entries) {
        const long a = key.residues[0], b = key.residues[1], d = key.residues[2];
        const long s = (d * (a + b)) % 24;
        if (key.branch == 1 && s % 3 == 0) {
            CHECK(entry.classes == IndexSet{1});
            ++r1;
        }
        if (key.branch == 2 && s == 1) {
            CHECK(entry.classes == IndexSet{7});
            ++r7;
        }
    }
    CHECK(r1 > 0);
    CHECK(r7 > 0);
}

TEST_CASE("residue classification of C5") {
    ResidueClassification r = residue_classification(T::C5, 24, 2);
    CHECK(r.observed() == IndexSet({4, 6, 7, 12}));
    CHECK(r.inconsistent() == 0);
    CHECK_THROWS_AS(residue_classification(T::C5, 25, 2), Error);
}

TEST_CASE("modulus 48 removes every inconsistency") {
    for (T t : kMazurGroups) {
        if (t == T::C1 || t == T::C2 || t == T::C2xC2) continue;   // large; covered by the acceptance run
        ResidueClassification r = residue_classification(t, 48, 2);
        INFO(to_string(t));
        CHECK(r.inconsistent() == 0);
        CHECK(r.observed().subset_of(allowed_rmm(t)));
    }
}

TEST_CASE("C2xC2 case tables") {
    C2C2Check c = c2c2_check();
    CHECK(c.ok);
    CHECK(c.failures.empty());
    CHECK(c.lifts_checked == c.residue_triples);
    REQUIRE(c.case1.size() == 3);
    REQUIRE(c.case2.size() == 6);
    CHECK(c.case1[1].condition_residue == 2);
    CHECK(c.case1[1].c6_residue == 8);
    CHECK(c.case1[1].index == 3);
    CHECK(c.case2[3].condition_residue == 9);
    CHECK(c.case2[3].c6_residue == 15);
    CHECK(c.case2[3].index == 10);
    CHECK(c2c2_symbolic_check());
}

TEST_CASE("reduction cross-check") {
    CHECK(reduction_cross_check(Signature(420241, Integer("-303183289"), Integer("-10245657600000"))));
    Signature e(0, -864, -432);
    CHECK(reduction_type(e, 2) == ReductionType::Additive);
    CHECK(reduction_cross_check(e));
    CHECK(reduction_cross_check(Signature(-48, 0, -64)));
}
