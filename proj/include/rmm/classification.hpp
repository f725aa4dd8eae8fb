#pragma once

#include "rmm/families.hpp"
#include "rmm/minimal.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace rmm {

// Classes a curve with T embedded in its torsion may have.
IndexSet allowed_rmm(TorsionStructure t);

struct SweepOptions {
    unsigned threads = 1;
    // Also compute the order of (0,0) on every curve (slow; exact rationals).
    bool check_torsion_point = false;
    FactorOptions factor;
};

struct SweepViolation {
    FamilyParameters params;
    int index;
};

/// Outcome of pushing every valid tuple with |a|, |b|, |d| <= bound through
/// build -> signature -> minimize -> classify. For C3 and C4 the bound is on
/// c, d, e, b of the normalized decomposition of a instead of on a. A tuple
/// whose model equals that of an earlier tuple is counted only in
/// `duplicates`.
struct SweepReport {
    TorsionStructure torsion;
    long bound = 0;
    std::uint64_t curves = 0;
    std::uint64_t degenerate = 0;
    std::uint64_t duplicates = 0;
    std::array<std::uint64_t, 13> counts{};   // indexed by class 1..12
    std::vector<SweepViolation> violations;   // class outside allowed_rmm
    std::vector<FamilyParameters> cross_check_failures;
    std::map<int, FamilyParameters> witnesses; // first tuple seen per class
    std::map<std::string, std::uint64_t> scale_ratios; // u / base_scale -> count
    std::map<unsigned, std::uint64_t> point_orders;    // order of (0,0); 0 = none <= 16

    IndexSet observed() const;
    bool ok() const { return violations.empty() && cross_check_failures.empty(); }
    // Appends `later`, which must cover tuples after this report's in sweep order.
    void merge(const SweepReport& later);
};

SweepReport sweep_verify(TorsionStructure t, long bound, const SweepOptions& options = {});

/// Status of one (parameter residues, scale branch) cell.
struct ResidueEntry {
    IndexSet classes;
    std::uint64_t samples = 0;
    FamilyParameters example;

    bool consistent() const { return classes.size() == 1; }
};

struct ResidueKey {
    std::vector<long> residues;
    long branch;   // u / base_scale observed on the lift

    friend auto operator<=>(const ResidueKey&, const ResidueKey&) = default;
};

/// Empirical map from parameter residues to rmm class.
///
/// For C3 and C4 the residues are taken of the normalized parameters
/// (cde, de^2 b) and (cd, db), which determine the model after scaling by the
/// base scale; every other family uses (a, b[, d]) directly.
struct ResidueClassification {
    TorsionStructure torsion;
    unsigned modulus;
    std::vector<std::string> parameter_names;
    std::map<ResidueKey, ResidueEntry> entries;
    std::uint64_t residue_classes = 0;   // classes examined
    std::uint64_t empty_classes = 0;     // no valid lift found within budget

    std::uint64_t inconsistent() const;
    IndexSet observed() const;
};

struct ResidueOptions {
    FactorOptions factor;
    std::uint64_t seed = 0x5eed;
};

// Throws EmptyResidueClass when no residue class yields any valid lift.
ResidueClassification residue_classification(TorsionStructure t, unsigned modulus,
                                             unsigned samples_per_class,
                                             const ResidueOptions& options = {});

/// One row of a displayed congruence table for the C2xC2 family.
struct C2C2CaseRow {
    unsigned condition_residue;  // d(a+b) mod 3 (case 1) or mod 24 (case 2)
    unsigned c6_residue;         // c6/2 mod 24 (case 1) or c6 mod 24 (case 2)
    int index;
};

struct C2C2Check {
    bool ok = false;
    std::vector<C2C2CaseRow> case1;
    std::vector<C2C2CaseRow> case2;
    std::uint64_t residue_triples = 0;
    std::uint64_t lifts_checked = 0;
    std::vector<std::string> failures;
};

// Exhausts (a mod 48, b mod 24, d mod 24) under the family's constraints and
// checks both case tables for the closed form of c6, then confirms the closed
// form and the scale on one integer lift per residue triple.
C2C2Check c2c2_check(const FactorOptions& options = {});
inline bool c2c2_symbolic_check() { return c2c2_check().ok; }

// rmm index agrees with the reduction types at 2 and 3.
bool reduction_cross_check(const Signature& minimal);

}  // namespace rmm
