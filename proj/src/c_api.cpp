#include "rmm/rmm.h"

#include "rmm/dataset.hpp"
#include "rmm/error.hpp"

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

using json = nlohmann::ordered_json;

struct rmm_curve {
    rmm::WeierstrassModel model;
    std::optional<rmm::FamilyParameters> family;
};

struct rmm_stats {
    rmm::ProcessedFile file;
};

namespace {

using namespace rmm;

thread_local std::string last_error;

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

void put(char** out, const std::string& s) {
    if (out) *out = dup(s);
}

template <class F>
rmm_status guard(F&& body) {
    try {
        body();
        last_error.clear();
        return RMM_OK;
    } catch (const Error& e) {
        last_error = e.what();
        return static_cast<rmm_status>(e.code());
    } catch (const std::exception& e) {
        last_error = e.what();
        return RMM_E_INTERNAL;
    }
}

void require(const void* p, const char* what) {
    if (!p) fail(ErrorCode::InvalidArgument, std::string(what) + " is NULL");
}

Integer arg(const char* s, const char* what) {
    require(s, what);
    return parse_integer(s);
}

json coefficients(const WeierstrassModel& m) {
    json a = json::array();
    for (const Integer& x : m.coefficients()) a.push_back(x.get_str());
    return a;
}

json signature_json(const Signature& s) {
    return {{"c4", s.c4().get_str()}, {"c6", s.c6().get_str()}, {"delta", s.delta().get_str()}};
}

json indices(IndexSet s) { return s.to_vector(); }

json params_json(const FamilyParameters& p) {
    json j = {{"torsion", std::string(to_string(p.torsion))}, {"a", p.a.get_str()}};
    if (parameter_count(p.torsion) >= 2) j["b"] = p.b.get_str();
    if (parameter_count(p.torsion) == 3) j["d"] = p.d.get_str();
    if (p.decomposition) {
        j["decomposition"] = {{"c", p.decomposition->c.get_str()},
                              {"d", p.decomposition->d.get_str()},
                              {"e", p.decomposition->e.get_str()}};
    }
    return j;
}

json curve_json(const WeierstrassModel& model) {
    const Signature sig = signature_of(model);
    const Minimization m = minimize(sig);
    const RmmClass cls = rmm_index(m.minimal);
    return {
        {"a_invariants", coefficients(model)},
        {"signature", signature_json(sig)},
        {"scale", m.u.get_str()},
        {"minimal_signature", signature_json(m.minimal)},
        {"rmm", cls.index},
        {"rmm_triple", {cls.a1, cls.a2, cls.a3}},
        {"reduced_model", coefficients(reduced_model(m.minimal))},
        {"reduction", {{"2", std::string(to_string(reduction_type(m.minimal, 2)))},
                       {"3", std::string(to_string(reduction_type(m.minimal, 3)))}}},
        {"cross_check", reduction_cross_check(m.minimal)},
        {"two_torsion_rank", two_torsion_rank(model)},
    };
}

FamilyParameters family_args(const char* torsion, const char* a, const char* b, const char* d) {
    require(torsion, "torsion");
    const TorsionStructure t = parse_torsion(torsion);
    const Integer av = arg(a, "a");
    const Integer bv = parameter_count(t) >= 2 ? arg(b, "b") : Integer(0);
    Integer dv = 0;
    if (parameter_count(t) == 3) {
        if (!d) fail(ErrorCode::InvalidArgument, std::string(to_string(t)) + " needs the parameter d");
        dv = parse_integer(d);
    }
    return validate_params(t, av, bv, dv);
}

json family_json(const FamilyParameters& p) {
    const WeierstrassModel model = build_model(p);
    json j = {{"params", params_json(p)}, {"model", coefficients(model)}};
    json c = curve_json(model);
    const Integer u = minimize(signature_of(model)).u;
    const Integer base = base_scale(p);
    const int idx = c["rmm"].get<int>();
    j.update(c);
    j["base_scale"] = base.get_str();
    if (auto q = exact_quotient(u, base)) j["scale_ratio"] = q->get_str();
    j["allowed"] = indices(allowed_rmm(p.torsion));
    j["allowed_contains"] = allowed_rmm(p.torsion).contains(idx);
    return j;
}

json counts_json(const std::array<std::uint64_t, 13>& counts) {
    json j = json::object();
    for (int i = 1; i <= 12; ++i) j["R" + std::to_string(i)] = counts[static_cast<std::size_t>(i)];
    return j;
}

json sweep_json(const SweepReport& r) {
    json violations = json::array();
    for (const auto& v : r.violations) {
        json p = params_json(v.params);
        p["rmm"] = v.index;
        violations.push_back(p);
    }
    json cross = json::array();
    for (const auto& p : r.cross_check_failures) cross.push_back(params_json(p));
    json witnesses = json::object();
    for (const auto& [idx, p] : r.witnesses) witnesses["R" + std::to_string(idx)] = params_json(p);
    json ratios = json::object();
    for (const auto& [k, n] : r.scale_ratios) ratios[k] = n;
    json orders = json::object();
    for (const auto& [k, n] : r.point_orders) orders[std::to_string(k)] = n;
    json j = {
        {"torsion", std::string(to_string(r.torsion))},
        {"bound", r.bound},
        {"ok", r.ok()},
        {"curves", r.curves},
        {"degenerate", r.degenerate},
        {"duplicates", r.duplicates},
        {"allowed", indices(allowed_rmm(r.torsion))},
        {"observed", indices(r.observed())},
        {"counts", counts_json(r.counts)},
        {"violations", violations},
        {"cross_check_failures", cross},
        {"witnesses", witnesses},
        {"scale_ratios", ratios},
        {"expected_scale_ratios", expected_scale_ratios(r.torsion)},
    };
    if (!orders.empty()) j["point_orders"] = orders;
    return j;
}

json residues_json(const ResidueClassification& r) {
    json entries = json::array();
    for (const auto& [key, e] : r.entries) {
        entries.push_back({{"residues", key.residues},
                           {"branch", key.branch},
                           {"classes", indices(e.classes)},
                           {"consistent", e.consistent()},
                           {"samples", e.samples},
                           {"example", params_json(e.example)}});
    }
    return {
        {"torsion", std::string(to_string(r.torsion))},
        {"modulus", r.modulus},
        {"parameters", r.parameter_names},
        {"residue_classes", r.residue_classes},
        {"empty_classes", r.empty_classes},
        {"cells", r.entries.size()},
        {"inconsistent", r.inconsistent()},
        {"observed", indices(r.observed())},
        {"allowed", indices(allowed_rmm(r.torsion))},
        {"entries", entries},
    };
}

json c2c2_json(const C2C2Check& c) {
    auto rows = [](const std::vector<C2C2CaseRow>& v) {
        json a = json::array();
        for (const auto& row : v) {
            a.push_back({{"condition", row.condition_residue}, {"c6_residue", row.c6_residue}, {"rmm", row.index}});
        }
        return a;
    };
    return {{"ok", c.ok},
            {"case1", rows(c.case1)},
            {"case2", rows(c.case2)},
            {"residue_triples", c.residue_triples},
            {"lifts_checked", c.lifts_checked},
            {"failures", c.failures}};
}

std::string percent(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", p);
    return buf;
}

json report_json(const DistributionReport& r) {
    json rows = json::object();
    for (const auto& [t, row] : r.rows) {
        json pct = json::object();
        for (int i = 1; i <= 12; ++i) pct["R" + std::to_string(i)] = row.percent(i);
        rows[std::string(to_string(t))] = {{"total", row.total}, {"counts", counts_json(row.counts)}, {"percent", pct}};
    }
    json forbidden = json::array();
    for (const auto& [t, i] : r.forbidden_nonzero()) {
        forbidden.push_back({{"torsion", std::string(to_string(t))}, {"rmm", i}});
    }
    json skipped = json::array();
    for (const auto& s : r.skipped) {
        skipped.push_back({{"line", s.line_number}, {"error", std::string(error_name(s.error))}, {"message", s.message}});
    }
    return {{"report", true}, {"curves", r.curves()}, {"rows", rows}, {"forbidden_nonzero", forbidden}, {"skipped", skipped}};
}

std::string report_tsv(const DistributionReport& r) {
    std::string out = "T\tn_T";
    for (int i = 1; i <= 12; ++i) out += "\tR" + std::to_string(i);
    out += '\n';
    for (const auto& [t, row] : r.rows) {
        out += std::string(to_string(t)) + '\t' + std::to_string(row.total);
        for (int i = 1; i <= 12; ++i) out += '\t' + percent(row.percent(i)) + '%';
        out += '\n';
    }
    return out;
}

json line_json(const LineResult& line) {
    json j = {{"line", line.line_number}};
    if (line.skipped) {
        j["skipped"] = true;
        j["error"] = std::string(error_name(line.skipped->error));
        j["message"] = line.skipped->message;
        return j;
    }
    const CurveRecord& rec = *line.record;
    const CurveClassification& c = *line.classification;
    j["label"] = std::to_string(rec.conductor) + rec.isogeny_class + std::to_string(rec.number);
    j["a_invariants"] = coefficients(rec.model);
    j["torsion_order"] = rec.torsion_order;
    j["torsion"] = std::string(to_string(c.torsion));
    j["scale"] = c.minimization.u.get_str();
    j["minimal_signature"] = signature_json(c.minimization.minimal);
    j["rmm"] = c.rmm.index;
    j["reduced_model"] = coefficients(c.reduced);
    j["cross_check"] = c.cross_check;
    return j;
}

TorsionStructure torsion_arg(const char* torsion) {
    require(torsion, "torsion");
    return parse_torsion(torsion);
}

}  // namespace

extern "C" {

const char* rmm_version(void) { return "1.0.0"; }

const char* rmm_status_name(rmm_status status) {
    if (status == RMM_OK) return "Ok";
    if (status == RMM_E_INTERNAL) return "Internal";
    if (status < RMM_E_INVALID_ARGUMENT || status > RMM_E_IO) return "Unknown";
    return error_name(static_cast<ErrorCode>(status)).data();
}

const char* rmm_last_error(void) { return last_error.c_str(); }

void rmm_string_free(char* s) { std::free(s); }

rmm_status rmm_curve_new(const char* const a[5], rmm_curve** out) {
    return guard([&] {
        require(a, "a");
        require(out, "out");
        *out = nullptr;
        Integer c[5];
        for (int i = 0; i < 5; ++i) c[i] = arg(a[i], "a-invariant");
        *out = new rmm_curve{WeierstrassModel(c[0], c[1], c[2], c[3], c[4]), std::nullopt};
    });
}

rmm_status rmm_curve_from_family(const char* torsion, const char* a, const char* b, const char* d,
                                 rmm_curve** out) {
    return guard([&] {
        require(out, "out");
        *out = nullptr;
        FamilyParameters p = family_args(torsion, a, b, d);
        WeierstrassModel m = build_model(p);
        *out = new rmm_curve{std::move(m), std::move(p)};
    });
}

void rmm_curve_free(rmm_curve* curve) { delete curve; }

rmm_status rmm_curve_signature(const rmm_curve* curve, char** c4, char** c6, char** delta) {
    return guard([&] {
        require(curve, "curve");
        Signature s = signature_of(curve->model);
        put(c4, s.c4().get_str());
        put(c6, s.c6().get_str());
        put(delta, s.delta().get_str());
    });
}

rmm_status rmm_curve_minimal_signature(const rmm_curve* curve, char** c4, char** c6, char** delta,
                                       char** u) {
    return guard([&] {
        require(curve, "curve");
        Minimization m = minimize(signature_of(curve->model));
        put(c4, m.minimal.c4().get_str());
        put(c6, m.minimal.c6().get_str());
        put(delta, m.minimal.delta().get_str());
        put(u, m.u.get_str());
    });
}

rmm_status rmm_curve_rmm_index(const rmm_curve* curve, int* index) {
    return guard([&] {
        require(curve, "curve");
        require(index, "index");
        *index = rmm_index(minimize(signature_of(curve->model)).minimal).index;
    });
}

rmm_status rmm_curve_reduced_model(const rmm_curve* curve, char** model) {
    return guard([&] {
        require(curve, "curve");
        require(model, "model");
        *model = dup(reduced_model(minimize(signature_of(curve->model)).minimal).to_string());
    });
}

rmm_status rmm_curve_reduction_type(const rmm_curve* curve, unsigned p, rmm_reduction* type) {
    return guard([&] {
        require(curve, "curve");
        require(type, "type");
        if (p != 2 && p != 3) fail(ErrorCode::UnsupportedPrime, "reduction type is reported only at 2 and 3");
        switch (reduction_type(minimize(signature_of(curve->model)).minimal, p)) {
            case ReductionType::Good: *type = RMM_REDUCTION_GOOD; break;
            case ReductionType::Multiplicative: *type = RMM_REDUCTION_MULTIPLICATIVE; break;
            case ReductionType::Additive: *type = RMM_REDUCTION_ADDITIVE; break;
        }
    });
}

rmm_status rmm_curve_two_torsion_rank(const rmm_curve* curve, int* rank) {
    return guard([&] {
        require(curve, "curve");
        require(rank, "rank");
        *rank = two_torsion_rank(curve->model);
    });
}

rmm_status rmm_curve_report_json(const rmm_curve* curve, char** out) {
    return guard([&] {
        require(curve, "curve");
        require(out, "out");
        json j = curve->family ? family_json(*curve->family) : curve_json(curve->model);
        *out = dup(j.dump(2));
    });
}

rmm_status rmm_family_report_json(const char* torsion, const char* a, const char* b, const char* d,
                                  char** out) {
    return guard([&] {
        require(out, "out");
        *out = dup(family_json(family_args(torsion, a, b, d)).dump(2));
    });
}

rmm_status rmm_sweep_json(const char* torsion, long bound, unsigned threads, size_t* violations,
                          char** out) {
    return guard([&] {
        require(out, "out");
        SweepOptions opts;
        opts.threads = threads;
        SweepReport r = sweep_verify(torsion_arg(torsion), bound, opts);
        if (violations) *violations = r.violations.size() + r.cross_check_failures.size();
        *out = dup(sweep_json(r).dump(2));
    });
}

rmm_status rmm_residues_json(const char* torsion, unsigned modulus, unsigned samples,
                             size_t* inconsistent, char** out) {
    return guard([&] {
        require(out, "out");
        ResidueClassification r = residue_classification(torsion_arg(torsion), modulus, samples);
        if (inconsistent) *inconsistent = r.inconsistent();
        *out = dup(residues_json(r).dump(2));
    });
}

rmm_status rmm_verify_c2c2_json(int* ok, char** out) {
    return guard([&] {
        require(out, "out");
        C2C2Check c = c2c2_check();
        if (ok) *ok = c.ok ? 1 : 0;
        *out = dup(c2c2_json(c).dump(2));
    });
}

rmm_status rmm_stats_process_file(const char* path, unsigned threads, rmm_stats** out) {
    return guard([&] {
        require(path, "path");
        require(out, "out");
        *out = nullptr;
        std::ifstream in(path);
        if (!in) fail(ErrorCode::Io, std::string("cannot open ") + path);
        std::vector<std::string> lines;
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        if (in.bad()) fail(ErrorCode::Io, std::string("read error on ") + path);
        *out = new rmm_stats{process_lines(lines, threads)};
    });
}

void rmm_stats_free(rmm_stats* stats) { delete stats; }

size_t rmm_stats_record_count(const rmm_stats* stats) { return stats ? stats->file.lines.size() : 0; }

rmm_status rmm_stats_record_json(const rmm_stats* stats, size_t i, char** out) {
    return guard([&] {
        require(stats, "stats");
        require(out, "out");
        if (i >= stats->file.lines.size()) fail(ErrorCode::InvalidArgument, "record index out of range");
        *out = dup(line_json(stats->file.lines[i]).dump());
    });
}

rmm_status rmm_stats_report(const rmm_stats* stats, rmm_format format, char** out) {
    return guard([&] {
        require(stats, "stats");
        require(out, "out");
        if (format == RMM_FORMAT_TSV) {
            *out = dup(report_tsv(stats->file.report));
        } else if (format == RMM_FORMAT_JSON) {
            *out = dup(report_json(stats->file.report).dump());
        } else {
            fail(ErrorCode::InvalidArgument, "unknown report format");
        }
    });
}

size_t rmm_stats_forbidden_cells(const rmm_stats* stats) {
    return stats ? stats->file.report.forbidden_nonzero().size() : 0;
}

}  // extern "C"
