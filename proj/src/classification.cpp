#include "rmm/classification.hpp"

#include "rmm/error.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <set>
#include <mutex>
#include <numeric>
#include <thread>
#include <unordered_set>

namespace rmm {
namespace {

using T = TorsionStructure;

struct PipelineResult {
    Minimization min;
    RmmClass cls;
};

PipelineResult run_pipeline(const FamilyParameters& params, const FactorOptions& options) {
    Minimization m = minimize(family_signature(params), options);
    RmmClass cls = rmm_index(m.minimal);
    return PipelineResult{std::move(m), cls};
}

// Ratio u / base_scale as text; the form "u=...,base=..." flags a u that is
// not a multiple of the base scale.
std::string scale_ratio_key(const Integer& u, const FamilyParameters& params) {
    Integer base = base_scale(params);
    if (auto q = exact_quotient(u, base)) return q->get_str();
    return "u=" + u.get_str() + ",base=" + base.get_str();
}

SweepReport empty_report(T t, long bound) {
    SweepReport r;
    r.torsion = t;
    r.bound = bound;
    return r;
}

long branch_of(const Integer& u, const FamilyParameters& params) {
    auto q = exact_quotient(u, base_scale(params));
    if (!q || !q->fits_slong_p()) return -1;
    return q->get_si();
}

// One unit of sweep work: a fixed family and a fixed leading parameter, which
// is a itself, or c in a = c^2 d (C4) and a = c^3 d^2 e (C3).
struct SweepUnit {
    T family;
    long lead;
};

struct Ranges {
    long b_lo, b_hi, d_lo, d_hi;
};

Ranges ranges_for(T family, long bound) {
    switch (family) {
        case T::C1: return {-bound, bound, 1, 12};
        case T::C2: return {-bound, bound, -bound, bound};
        case T::C2xC2: return {-bound, bound, 1, bound};
        case T::C3_0: return {0, 0, 0, 0};
        default: return {-bound, bound, 0, 0};
    }
}

std::vector<SweepUnit> sweep_units(T t, long bound) {
    std::vector<T> families{t};
    if (t == T::C3) families.push_back(T::C3_0);
    std::vector<SweepUnit> units;
    for (T f : families) {
        const bool positive_a = !(f == T::C1 || f == T::C2 || f == T::C2xC2);
        for (long a = positive_a ? 1 : -bound; a <= bound; ++a) units.push_back({f, a});
    }
    return units;
}

bool squarefree_small(long n) {
    for (long p = 2; p * p <= n; ++p) {
        if (n % (p * p) == 0) return false;
    }
    return true;
}

// Values of a covered by a unit. For C3 and C4 the bound applies to c, d, e
// of the normalized decomposition, so the u = 2c branch of C4 (which needs
// 16 | c) is reachable.
std::vector<Integer> a_values(const SweepUnit& unit, long bound) {
    if (unit.family == T::C4) {
        std::vector<Integer> out;
        const Integer c2 = Integer(unit.lead) * unit.lead;
        for (long d = 1; d <= bound; ++d) {
            if (squarefree_small(d)) out.push_back(c2 * d);
        }
        return out;
    }
    if (unit.family == T::C3) {
        std::vector<Integer> out;
        const Integer c3 = power(unit.lead, 3);
        for (long d = 1; d <= bound; ++d) {
            if (!squarefree_small(d)) continue;
            for (long e = 1; e <= bound; ++e) {
                if (squarefree_small(e) && std::gcd(d, e) == 1) out.push_back(c3 * d * d * e);
            }
        }
        return out;
    }
    return {Integer(unit.lead)};
}

struct Candidate {
    FamilyParameters params;
    std::string model_key;
};

std::string model_key(const WeierstrassModel& m) {
    std::string key;
    for (const Integer& x : m.coefficients()) key += x.get_str() + ',';
    return key;
}

void collect_unit(const SweepUnit& unit, long bound, const SweepOptions& options,
                  std::vector<Candidate>& out, std::uint64_t& degenerate) {
    const Ranges r = ranges_for(unit.family, bound);
    for (const Integer& a : a_values(unit, bound)) {
        for (long bv = r.b_lo; bv <= r.b_hi; ++bv) {
            const Integer b = bv;
            for (long dv = r.d_lo; dv <= r.d_hi; ++dv) {
                const Integer d = dv;
                if (auto v = parameter_violation(unit.family, a, b, d, options.factor)) {
                    if (*v == ErrorCode::DegenerateCurve) ++degenerate;
                    continue;
                }
                FamilyParameters params = normalized_params(unit.family, a, b, d, options.factor);
                std::string key = model_key(build_model(params));
                out.push_back({std::move(params), std::move(key)});
            }
        }
    }
}

void evaluate_unit(std::vector<Candidate>& candidates, IndexSet allowed, const SweepOptions& options,
                   SweepReport& report) {
    for (Candidate& c : candidates) {
        FamilyParameters& params = c.params;
        PipelineResult res = run_pipeline(params, options.factor);
        const int idx = res.cls.index;
        ++report.curves;
        ++report.counts[static_cast<std::size_t>(idx)];
        if (!allowed.contains(idx)) report.violations.push_back({params, idx});
        if (!reduction_cross_check(res.min.minimal)) report.cross_check_failures.push_back(params);
        ++report.scale_ratios[scale_ratio_key(res.min.u, params)];
        if (options.check_torsion_point && params.torsion != T::C1) {
            auto order = point_order(build_model(params), RationalPoint::affine(0, 0));
            ++report.point_orders[order.value_or(0)];
        }
        report.witnesses.try_emplace(idx, std::move(params));
    }
}

// Runs body(i) for i in [0, n) on a pool; rethrows the first exception.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        }
    };
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    }
    if (error) std::rethrow_exception(error);
}

}  // namespace

IndexSet allowed_rmm(TorsionStructure t) {
    switch (t) {
        case T::C1: return IndexSet::range(1, 12);
        case T::C2:
        case T::C4:
        case T::C2xC2: return IndexSet{1, 3, 5} | IndexSet::range(7, 12);
        case T::C3:
        case T::C3_0: return IndexSet{1, 2} | IndexSet::range(5, 10);
        case T::C5: return IndexSet{4, 6, 7, 12};
        case T::C6: return IndexSet{1, 5} | IndexSet::range(7, 10);
        case T::C7:
        case T::C9: return IndexSet{7, 10};
        case T::C8:
        case T::C2xC4: return IndexSet{3, 5, 7, 12};
        case T::C10:
        case T::C2xC8: return IndexSet{7};
        case T::C12:
        case T::C2xC6: return IndexSet::range(7, 10);
    }
    fail(ErrorCode::UnsupportedTorsion, "unknown torsion structure");
}

IndexSet SweepReport::observed() const {
    IndexSet s;
    for (int i = 1; i <= 12; ++i) {
        if (counts[static_cast<std::size_t>(i)] != 0) s.insert(i);
    }
    return s;
}

void SweepReport::merge(const SweepReport& later) {
    curves += later.curves;
    degenerate += later.degenerate;
    duplicates += later.duplicates;
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += later.counts[i];
    violations.insert(violations.end(), later.violations.begin(), later.violations.end());
    cross_check_failures.insert(cross_check_failures.end(), later.cross_check_failures.begin(),
                                later.cross_check_failures.end());
    for (const auto& [idx, params] : later.witnesses) witnesses.try_emplace(idx, params);
    for (const auto& [k, n] : later.scale_ratios) scale_ratios[k] += n;
    for (const auto& [k, n] : later.point_orders) point_orders[k] += n;
}

SweepReport sweep_verify(TorsionStructure t, long bound, const SweepOptions& options) {
    if (bound < 2) fail(ErrorCode::InvalidArgument, "sweep bound must be at least 2");
    const IndexSet allowed = allowed_rmm(t);
    const std::vector<SweepUnit> units = sweep_units(t, bound);
    const unsigned threads = std::max(1u, options.threads);
    std::vector<SweepReport> partial(units.size(), empty_report(t, bound));
    std::vector<std::vector<Candidate>> candidates(units.size());

    parallel_for(units.size(), threads, [&](std::size_t i) {
        collect_unit(units[i], bound, options, candidates[i], partial[i].degenerate);
    });

    // Keep the first tuple in sweep order for each distinct model.
    std::unordered_set<std::string> models;
    for (std::size_t i = 0; i < units.size(); ++i) {
        std::vector<Candidate> kept;
        for (Candidate& c : candidates[i]) {
            if (models.insert(c.model_key).second) {
                kept.push_back(std::move(c));
            } else {
                ++partial[i].duplicates;
            }
        }
        candidates[i] = std::move(kept);
    }
    models.clear();

    parallel_for(units.size(), threads, [&](std::size_t i) { evaluate_unit(candidates[i], allowed, options, partial[i]); });

    SweepReport report = empty_report(t, bound);
    for (const auto& p : partial) report.merge(p);
    return report;
}

std::uint64_t ResidueClassification::inconsistent() const {
    return static_cast<std::uint64_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& e) { return !e.second.consistent(); }));
}

IndexSet ResidueClassification::observed() const {
    IndexSet s;
    for (const auto& [key, entry] : entries) s = s | entry.classes;
    return s;
}

namespace {

void record(ResidueClassification& out, std::vector<long> residues, const FamilyParameters& params,
            const FactorOptions& options) {
    PipelineResult res = run_pipeline(params, options);
    ResidueKey key{std::move(residues), branch_of(res.min.u, params)};
    auto [it, inserted] = out.entries.try_emplace(key, ResidueEntry{{}, 0, params});
    it->second.classes.insert(res.cls.index);
    ++it->second.samples;
}

// Classes of (a, b[, d]) modulo m, each sampled with lifts r + m k.
void classify_by_lifts(ResidueClassification& out, unsigned samples, const ResidueOptions& options) {
    const T t = out.torsion;
    const long m = out.modulus;
    const int k = parameter_count(t);
    constexpr long kLiftRange = 4;
    // Parameters that must be positive: a for most families, d for C2xC2.
    const bool positive_a = !(t == T::C2 || t == T::C2xC2);
    const bool positive_d = t == T::C2xC2;

    std::vector<long> r(static_cast<std::size_t>(k), 0);
    std::uint64_t classes_with_lift = 0;
    for (;;) {
        ++out.residue_classes;
        std::uint64_t seed = options.seed;
        for (long x : r) seed = seed * 1000003u + static_cast<std::uint64_t>(x);
        std::mt19937_64 rng(seed);
        auto lift = [&](long residue, bool positive) {
            long lo = positive ? (residue == 0 ? 1 : 0) : -kLiftRange;
            std::uniform_int_distribution<long> dist(lo, kLiftRange);
            return residue + m * dist(rng);
        };

        std::set<std::vector<long>> tried;
        unsigned accepted = 0;
        for (unsigned attempt = 0; attempt < 40 * samples && accepted < samples; ++attempt) {
            std::vector<long> v(static_cast<std::size_t>(k));
            v[0] = lift(r[0], positive_a);
            if (k >= 2) v[1] = lift(r[1], false);
            if (k == 3) v[2] = lift(r[2], positive_d);
            if (!tried.insert(v).second) continue;
            const Integer a = v[0];
            const Integer b = k >= 2 ? Integer(v[1]) : Integer(0);
            const Integer d = k == 3 ? Integer(v[2]) : Integer(0);
            if (parameter_violation(t, a, b, d, options.factor)) continue;
            record(out, r, normalized_params(t, a, b, d, options.factor), options.factor);
            ++accepted;
        }
        if (accepted == 0) {
            ++out.empty_classes;
        } else {
            ++classes_with_lift;
        }

        int pos = k - 1;
        while (pos >= 0 && ++r[static_cast<std::size_t>(pos)] == m) r[static_cast<std::size_t>(pos--)] = 0;
        if (pos < 0) break;
    }
}

// C3 and C4: bin random valid (a, b) by the residues of the normalized
// parameters, which determine the model once the base scale is removed.
void classify_by_binning(ResidueClassification& out, unsigned samples, const ResidueOptions& options) {
    const T t = out.torsion;
    const long m = out.modulus;
    const long span = 8 * m;
    std::mt19937_64 rng(options.seed);
    std::uniform_int_distribution<long> a_dist(1, span);
    std::uniform_int_distribution<long> b_dist(-span, span);

    const std::uint64_t classes = static_cast<std::uint64_t>(m * m);
    const std::uint64_t budget = classes * samples * 12;
    std::map<std::vector<long>, unsigned> per_class;
    for (std::uint64_t draw = 0; draw < budget; ++draw) {
        const Integer a = a_dist(rng);
        const Integer b = b_dist(rng);
        if (parameter_violation(t, a, b, 0, options.factor)) continue;
        FamilyParameters params = normalized_params(t, a, b, 0, options.factor);
        const Decomposition& dec = *params.decomposition;
        Integer first = t == T::C3 ? Integer(dec.c * dec.d * dec.e) : Integer(dec.c * dec.d);
        Integer second = t == T::C3 ? Integer(dec.d * dec.e * dec.e * b) : Integer(dec.d * b);
        std::vector<long> key{static_cast<long>(residue(first, static_cast<unsigned long>(m))),
                              static_cast<long>(residue(second, static_cast<unsigned long>(m)))};
        unsigned& seen = per_class[key];
        if (seen >= samples) continue;
        ++seen;
        record(out, key, params, options.factor);
    }
    out.residue_classes = classes;
    out.empty_classes = classes - per_class.size();
}

}  // namespace

ResidueClassification residue_classification(TorsionStructure t, unsigned modulus,
                                             unsigned samples_per_class,
                                             const ResidueOptions& options) {
    if (modulus != 24 && modulus != 48) fail(ErrorCode::InvalidArgument, "modulus must be 24 or 48");
    if (samples_per_class < 1) fail(ErrorCode::InvalidArgument, "samples per class must be >= 1");
    if (t == T::C1) fail(ErrorCode::UnsupportedTorsion, "C1 has no parameterized family");

    ResidueClassification out{t, modulus, {}, {}, 0, 0};
    if (t == T::C3 || t == T::C4) {
        out.parameter_names = t == T::C3 ? std::vector<std::string>{"cde", "de^2b"}
                                         : std::vector<std::string>{"cd", "db"};
        classify_by_binning(out, samples_per_class, options);
    } else {
        out.parameter_names = {"a"};
        if (parameter_count(t) >= 2) out.parameter_names.push_back("b");
        if (parameter_count(t) == 3) out.parameter_names.push_back("d");
        classify_by_lifts(out, samples_per_class, options);
    }
    if (out.entries.empty()) {
        fail(ErrorCode::EmptyResidueClass, "no residue class has a valid lift");
    }
    return out;
}

namespace {

long mod(long x, long m) { return ((x % m) + m) % m; }

// Displayed tables of the C2xC2 case analysis.
const std::vector<std::pair<unsigned, unsigned>> kCase1 = {{0, 0}, {2, 8}, {1, 16}};
const std::vector<std::pair<unsigned, unsigned>> kCase2 = {
    {1, 23}, {13, 11}, {21, 3}, {9, 15}, {5, 19}, {17, 7}};

std::optional<unsigned> table_lookup(const std::vector<std::pair<unsigned, unsigned>>& table,
                                     unsigned x) {
    for (auto [cond, value] : table) {
        if (cond == x) return value;
    }
    return std::nullopt;
}

// -32 d^3 (2a - b)(a + b)(a - 2b), or -d^3 (2a - b)(a + b)(a/2 - b) when u = 2.
Integer c2c2_closed_form_c6(const Integer& a, const Integer& b, const Integer& d, bool scaled) {
    Integer d3 = d * d * d;
    if (!scaled) return -32 * d3 * (2 * a - b) * (a + b) * (a - 2 * b);
    return -d3 * (2 * a - b) * (a + b) * (a / 2 - b);
}

}  // namespace

C2C2Check c2c2_check(const FactorOptions& options) {
    C2C2Check out;
    for (auto [cond, value] : kCase1) {
        out.case1.push_back({cond, value, class_from_key(value).value_or(0)});
    }
    for (auto [cond, value] : kCase2) {
        out.case2.push_back({cond, value, class_from_key(value).value_or(0)});
    }
    auto failure = [&](const std::string& what, long a, long b, long d) {
        if (out.failures.size() < 32) {
            out.failures.push_back(what + " at (a,b,d) = (" + std::to_string(a) + "," +
                                   std::to_string(b) + "," + std::to_string(d) + ")");
        }
    };

    // a mod 48 decides v2(a) >= 4 and a/2 mod 24; b and d only matter mod 24.
    for (long a = 0; a < 48; a += 2) {
        for (long b = 1; b < 24; b += 2) {   // a even and gcd(a, b) = 1 force b odd
            if (a % 3 == 0 && b % 3 == 0) continue;
            for (long d = 1; d < 24; ++d) {
                if (d % 4 == 0) continue;   // squarefree
                ++out.residue_triples;
                const bool case2 = a % 16 == 0 && mod(b * d, 4) == 1;
                const long s = d * (a + b);
                const Integer c6 = c2c2_closed_form_c6(a, b, d, case2);
                const Integer s3 = Integer(s) * s * s;
                unsigned key;
                std::optional<unsigned> expected;
                if (!case2) {
                    if (!mpz_even_p(c6.get_mpz_t())) failure("case 1: c6 odd", a, b, d);
                    key = static_cast<unsigned>(residue(c6 / 2, 24));
                    if (key != residue(16 * s3, 24)) failure("case 1: c6/2 != 16 d^3 (a+b)^3", a, b, d);
                    expected = table_lookup(kCase1, static_cast<unsigned>(mod(s, 3)));
                } else {
                    if (!mpz_odd_p(c6.get_mpz_t())) failure("case 2: c6 even", a, b, d);
                    key = static_cast<unsigned>(residue(c6, 24));
                    if (key != residue(-s3, 24)) failure("case 2: c6 != -d^3 (a+b)^3", a, b, d);
                    expected = table_lookup(kCase2, static_cast<unsigned>(mod(s, 24)));
                }
                if (!expected || *expected != key) failure("residue not in displayed table", a, b, d);
                auto predicted = class_from_key(key);
                if (!predicted) {
                    failure("key matches no class", a, b, d);
                    continue;
                }

                // One concrete lift per residue triple.
                bool lifted = false;
                for (long i = 0; i < 6 && !lifted; ++i) {
                    for (long j = -3; j <= 3 && !lifted; ++j) {
                        for (long k = 0; k < 6 && !lifted; ++k) {
                            const Integer la = a + 48 * i, lb = b + 24 * j, ld = d + 24 * k;
                            if (parameter_violation(T::C2xC2, la, lb, ld, options)) continue;
                            lifted = true;
                            ++out.lifts_checked;
                            FamilyParameters p = normalized_params(T::C2xC2, la, lb, ld, options);
                            Minimization m = minimize(family_signature(p), options);
                            if (m.u != (case2 ? 2 : 1)) failure("unexpected scale u", a, b, d);
                            if (m.minimal.c6() != c2c2_closed_form_c6(la, lb, ld, case2)) {
                                failure("closed form c6 differs from minimal c6", a, b, d);
                            }
                            if (rmm_index(m.minimal).index != *predicted) {
                                failure("lift classifies differently", a, b, d);
                            }
                        }
                    }
                }
            }
        }
    }
    out.ok = out.failures.empty();
    return out;
}

bool reduction_cross_check(const Signature& minimal) {
    int idx;
    try {
        idx = rmm_index(minimal).index;
    } catch (const Error&) {
        return false;
    }
    for (unsigned long p : {2ul, 3ul}) {
        if (!allowed_indices_for_reduction(p, reduction_type(minimal, p)).contains(idx)) return false;
    }
    const bool additive_at_2 = reduction_type(minimal, 2) == ReductionType::Additive;
    return additive_at_2 == IndexSet{1, 3, 5}.contains(idx);
}

}  // namespace rmm
