#pragma once

#include "rmm/classification.hpp"
#include "rmm/curve.hpp"
#include "rmm/families.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rmm {

/// One line of a Cremona allcurves file.
struct CurveRecord {
    std::uint64_t conductor;
    std::string isogeny_class;
    std::uint64_t number;
    WeierstrassModel model;
    std::uint64_t rank;
    unsigned torsion_order;
};

// "N class num [a1,a2,a3,a4,a6] rank torsion_order". Throws MalformedLine or
// SingularCurve.
CurveRecord parse_allcurves(std::string_view line);
std::string serialize_allcurves(const CurveRecord& record);

// Integer roots of X^3 + b X^2 + c X + d, ascending.
std::vector<Integer> integer_roots_monic_cubic(const Integer& b, const Integer& c,
                                               const Integer& d);

// Dimension of E(Q)[2] over F_2.
int two_torsion_rank(const WeierstrassModel& model);

// Throws NotAMazurGroup.
TorsionStructure torsion_structure(unsigned order, int two_rank);

struct CurveClassification {
    TorsionStructure torsion;
    Minimization minimization;
    RmmClass rmm;
    WeierstrassModel reduced;
    bool cross_check;
};

CurveClassification classify_record(const CurveRecord& record, const FactorOptions& options = {});

struct DistributionRow {
    std::array<std::uint64_t, 13> counts{};
    std::uint64_t total = 0;

    double percent(int index) const;
};

struct SkippedLine {
    std::size_t line_number;   // 1-based
    std::string text;
    ErrorCode error;
    std::string message;
};

/// Counts of rmm classes per torsion structure, in the layout of a
/// distribution table over a curve database.
struct DistributionReport {
    std::map<TorsionStructure, DistributionRow> rows;
    std::vector<SkippedLine> skipped;

    std::uint64_t curves() const;
    // Nonzero cells outside allowed_rmm of their row.
    std::vector<std::pair<TorsionStructure, int>> forbidden_nonzero() const;
    void merge(const DistributionReport& later);
};

DistributionReport distribution(const std::vector<CurveRecord>& records,
                                const FactorOptions& options = {});

/// Per-line outcome of processing an allcurves file.
struct LineResult {
    std::size_t line_number;
    std::optional<CurveRecord> record;
    std::optional<CurveClassification> classification;
    std::optional<SkippedLine> skipped;
};

struct ProcessedFile {
    std::vector<LineResult> lines;   // input order; blank lines omitted
    DistributionReport report;
};

// Parallel map over lines followed by an in-order merge.
ProcessedFile process_lines(const std::vector<std::string>& lines, unsigned threads = 1,
                            const FactorOptions& options = {});

}  // namespace rmm
