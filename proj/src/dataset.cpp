#include "rmm/dataset.hpp"

#include "rmm/error.hpp"

#include <atomic>
#include <charconv>
#include <exception>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

namespace rmm {
namespace {

[[noreturn]] void malformed(std::string_view line, const std::string& why) {
    fail(ErrorCode::MalformedLine, why + ": '" + std::string(line) + "'");
}

std::uint64_t parse_u64(std::string_view token, std::string_view line, const char* field) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
        malformed(line, std::string("bad ") + field);
    }
    return v;
}

bool is_mazur_order(std::uint64_t n) { return (n >= 1 && n <= 10) || n == 12 || n == 16; }

Integer eval_cubic(const Integer& b, const Integer& c, const Integer& d, const Integer& x) {
    return ((x + b) * x + c) * x + d;
}

// Integer root of the cubic on [lo, hi], where it is monotone in the given
// direction.
std::optional<Integer> bisect(const Integer& b, const Integer& c, const Integer& d, Integer lo,
                              Integer hi, bool increasing) {
    if (lo > hi) return std::nullopt;
    while (lo < hi) {
        Integer mid = lo + (hi - lo) / 2;
        int s = sgn(eval_cubic(b, c, d, mid));
        if (!increasing) s = -s;
        if (s < 0) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    if (eval_cubic(b, c, d, lo) == 0) return lo;
    return std::nullopt;
}

Integer floor_div(const Integer& n, long m) {
    Integer q;
    mpz_fdiv_q_ui(q.get_mpz_t(), n.get_mpz_t(), static_cast<unsigned long>(m));
    return q;
}

}  // namespace

CurveRecord parse_allcurves(std::string_view line) {
    std::vector<std::string> tokens;
    {
        std::istringstream in{std::string(line)};
        for (std::string tok; in >> tok;) tokens.push_back(tok);
    }
    if (tokens.size() != 6) malformed(line, "expected 6 fields, got " + std::to_string(tokens.size()));

    CurveRecord r{0, tokens[1], 0, WeierstrassModel(0, 0, 0, -1, 0), 0, 0};
    r.conductor = parse_u64(tokens[0], line, "conductor");
    r.number = parse_u64(tokens[2], line, "curve number");
    r.rank = parse_u64(tokens[4], line, "rank");
    const std::uint64_t order = parse_u64(tokens[5], line, "torsion order");
    if (r.conductor == 0 || r.number == 0) malformed(line, "conductor and number must be positive");
    if (!is_mazur_order(order)) malformed(line, "torsion order " + tokens[5] + " is not a Mazur order");
    r.torsion_order = static_cast<unsigned>(order);

    const std::string& ainv = tokens[3];
    if (ainv.size() < 2 || ainv.front() != '[' || ainv.back() != ']') {
        malformed(line, "a-invariants must be bracketed");
    }
    std::vector<Integer> a;
    std::string_view body(ainv.data() + 1, ainv.size() - 2);
    for (std::size_t start = 0;;) {
        std::size_t comma = body.find(',', start);
        std::string_view part = body.substr(start, comma == std::string_view::npos ? body.npos : comma - start);
        try {
            a.push_back(parse_integer(part));
        } catch (const Error&) {
            malformed(line, "bad a-invariant '" + std::string(part) + "'");
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (a.size() != 5) malformed(line, "expected 5 a-invariants");
    r.model = WeierstrassModel(a[0], a[1], a[2], a[3], a[4]);   // throws SingularCurve
    return r;
}

std::string serialize_allcurves(const CurveRecord& record) {
    return std::to_string(record.conductor) + ' ' + record.isogeny_class + ' ' +
           std::to_string(record.number) + ' ' + record.model.to_string() + ' ' +
           std::to_string(record.rank) + ' ' + std::to_string(record.torsion_order);
}

std::vector<Integer> integer_roots_monic_cubic(const Integer& b, const Integer& c,
                                               const Integer& d) {
    Integer m = abs(b);
    if (abs(c) > m) m = abs(c);
    if (abs(d) > m) m = abs(d);
    const Integer bound = m + 1;

    std::set<Integer> roots;
    auto keep = [&](const std::optional<Integer>& x) {
        if (x) roots.insert(*x);
    };
    // f'(X) = 3X^2 + 2bX + c has discriminant 4(b^2 - 3c).
    const Integer disc = 4 * b * b - 12 * c;
    if (disc <= 0) {
        keep(bisect(b, c, d, -bound, bound, true));
    } else {
        Integer s;
        mpz_sqrt(s.get_mpz_t(), disc.get_mpz_t());
        const Integer k1 = floor_div(-2 * b - s, 6);
        const Integer k2 = floor_div(-2 * b + s, 6);
        keep(bisect(b, c, d, -bound, k1 - 2, true));
        keep(bisect(b, c, d, k1 + 2, k2 - 2, false));
        keep(bisect(b, c, d, k2 + 2, bound, true));
        // Integers next to the critical points, where monotonicity is not
        // guaranteed by the rounded split.
        for (const Integer& k : {k1, k2}) {
            for (long off = -1; off <= 1; ++off) {
                Integer x = k + off;
                if (eval_cubic(b, c, d, x) == 0) roots.insert(x);
            }
        }
    }
    return {roots.begin(), roots.end()};
}

int two_torsion_rank(const WeierstrassModel& model) {
    Invariants inv = compute_invariants(model);
    // 2-torsion x-coordinates solve 4x^3 + b2 x^2 + 2 b4 x + b6 = 0; X = 4x.
    auto roots = integer_roots_monic_cubic(inv.b2, 8 * inv.b4, 16 * inv.b6);
    switch (roots.size()) {
        case 0: return 0;
        case 1: return 1;
        default: return 2;
    }
}

TorsionStructure torsion_structure(unsigned order, int two_rank) {
    using T = TorsionStructure;
    auto not_mazur = [&]() -> Error {
        return Error(ErrorCode::NotAMazurGroup, "no Mazur group of order " + std::to_string(order) +
                                                    " with 2-rank " + std::to_string(two_rank));
    };
    if (two_rank == 0) {
        switch (order) {
            case 1: return T::C1;
            case 3: return T::C3;
            case 5: return T::C5;
            case 7: return T::C7;
            case 9: return T::C9;
        }
    } else if (two_rank == 1) {
        switch (order) {
            case 2: return T::C2;
            case 4: return T::C4;
            case 6: return T::C6;
            case 8: return T::C8;
            case 10: return T::C10;
            case 12: return T::C12;
        }
    } else if (two_rank == 2) {
        switch (order) {
            case 4: return T::C2xC2;
            case 8: return T::C2xC4;
            case 12: return T::C2xC6;
            case 16: return T::C2xC8;
        }
    }
    throw not_mazur();
}

CurveClassification classify_record(const CurveRecord& record, const FactorOptions& options) {
    TorsionStructure t = torsion_structure(record.torsion_order, two_torsion_rank(record.model));
    Minimization m = minimize(signature_of(record.model), options);
    RmmClass cls = rmm_index(m.minimal);
    WeierstrassModel reduced = reduced_model(m.minimal);
    bool cross = reduction_cross_check(m.minimal);
    return CurveClassification{t, std::move(m), cls, std::move(reduced), cross};
}

double DistributionRow::percent(int index) const {
    if (total == 0) return 0.0;
    return 100.0 * static_cast<double>(counts[static_cast<std::size_t>(index)]) /
           static_cast<double>(total);
}

std::uint64_t DistributionReport::curves() const {
    std::uint64_t n = 0;
    for (const auto& [t, row] : rows) n += row.total;
    return n;
}

std::vector<std::pair<TorsionStructure, int>> DistributionReport::forbidden_nonzero() const {
    std::vector<std::pair<TorsionStructure, int>> out;
    for (const auto& [t, row] : rows) {
        const IndexSet allowed = allowed_rmm(t);
        for (int i = 1; i <= 12; ++i) {
            if (row.counts[static_cast<std::size_t>(i)] != 0 && !allowed.contains(i)) out.emplace_back(t, i);
        }
    }
    return out;
}

void DistributionReport::merge(const DistributionReport& later) {
    for (const auto& [t, row] : later.rows) {
        DistributionRow& mine = rows[t];
        for (std::size_t i = 0; i < mine.counts.size(); ++i) mine.counts[i] += row.counts[i];
        mine.total += row.total;
    }
    skipped.insert(skipped.end(), later.skipped.begin(), later.skipped.end());
}

namespace {

void tally(DistributionReport& report, const CurveClassification& c) {
    DistributionRow& row = report.rows[c.torsion];
    ++row.counts[static_cast<std::size_t>(c.rmm.index)];
    ++row.total;
}

SkippedLine skip(std::size_t line_number, std::string text, const std::exception& e) {
    if (const auto* err = dynamic_cast<const Error*>(&e)) {
        return SkippedLine{line_number, std::move(text), err->code(), err->what()};
    }
    return SkippedLine{line_number, std::move(text), ErrorCode::InvalidArgument, e.what()};
}

}  // namespace

DistributionReport distribution(const std::vector<CurveRecord>& records,
                                const FactorOptions& options) {
    DistributionReport report;
    for (std::size_t i = 0; i < records.size(); ++i) {
        try {
            tally(report, classify_record(records[i], options));
        } catch (const std::exception& e) {
            report.skipped.push_back(skip(i + 1, serialize_allcurves(records[i]), e));
        }
    }
    return report;
}

ProcessedFile process_lines(const std::vector<std::string>& lines, unsigned threads,
                            const FactorOptions& options) {
    std::vector<std::size_t> numbers;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (lines[i].find_first_not_of(" \t\r") != std::string::npos) numbers.push_back(i);
    }

    std::vector<LineResult> results(numbers.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k = next++; k < numbers.size(); k = next++) {
            const std::string& text = lines[numbers[k]];
            LineResult& out = results[k];
            out.line_number = numbers[k] + 1;
            try {
                out.record = parse_allcurves(text);
                out.classification = classify_record(*out.record, options);
            } catch (const std::exception& e) {
                out.classification.reset();
                out.skipped = skip(out.line_number, text, e);
            }
        }
    };
    const unsigned n = std::max(1u, threads);
    if (n == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
    }

    ProcessedFile file;
    for (const LineResult& r : results) {
        if (r.classification) tally(file.report, *r.classification);
        if (r.skipped) file.report.skipped.push_back(*r.skipped);
    }
    file.lines = std::move(results);
    return file;
}

}  // namespace rmm
