#include "rmm/rmm.h"

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kViolation = 1;
constexpr int kInputError = 2;

int report_failure(rmm_status status) {
    std::cerr << "error: " << rmm_status_name(status) << ": " << rmm_last_error() << '\n';
    return kInputError;
}

// Prints and frees a string returned by the library.
void emit(char* s) {
    std::cout << s << '\n';
    rmm_string_free(s);
}

int run_curve(const std::string& ainv) {
    std::vector<std::string> parts;
    std::stringstream in(ainv);
    for (std::string part; std::getline(in, part, ',');) parts.push_back(part);
    if (parts.size() != 5) {
        std::cerr << "error: --a-invariants needs five comma-separated integers\n";
        return kInputError;
    }
    const char* a[5];
    for (int i = 0; i < 5; ++i) a[i] = parts[static_cast<std::size_t>(i)].c_str();
    rmm_curve* curve = nullptr;
    if (rmm_status s = rmm_curve_new(a, &curve)) return report_failure(s);
    char* json = nullptr;
    rmm_status s = rmm_curve_report_json(curve, &json);
    rmm_curve_free(curve);
    if (s) return report_failure(s);
    emit(json);
    return 0;
}

int run_family(const std::string& torsion, const std::string& a, const std::string& b,
               const std::optional<std::string>& d) {
    char* json = nullptr;
    if (rmm_status s = rmm_family_report_json(torsion.c_str(), a.c_str(), b.c_str(),
                                              d ? d->c_str() : nullptr, &json)) {
        return report_failure(s);
    }
    emit(json);
    return 0;
}

int run_sweep(const std::string& torsion, long bound, unsigned threads) {
    char* json = nullptr;
    size_t violations = 0;
    if (rmm_status s = rmm_sweep_json(torsion.c_str(), bound, threads, &violations, &json)) {
        return report_failure(s);
    }
    emit(json);
    return violations == 0 ? 0 : kViolation;
}

int run_residues(const std::string& torsion, unsigned modulus, unsigned samples) {
    char* json = nullptr;
    if (rmm_status s = rmm_residues_json(torsion.c_str(), modulus, samples, nullptr, &json)) {
        return report_failure(s);
    }
    emit(json);
    return 0;
}

int run_verify_c2c2() {
    char* json = nullptr;
    int ok = 0;
    if (rmm_status s = rmm_verify_c2c2_json(&ok, &json)) return report_failure(s);
    emit(json);
    return ok ? 0 : kViolation;
}

int run_stats(const std::string& path, const std::string& format, unsigned threads) {
    rmm_stats* stats = nullptr;
    if (rmm_status s = rmm_stats_process_file(path.c_str(), threads, &stats)) return report_failure(s);
    int rc = 0;
    if (format == "json") {
        for (size_t i = 0; i < rmm_stats_record_count(stats) && rc == 0; ++i) {
            char* line = nullptr;
            if (rmm_status s = rmm_stats_record_json(stats, i, &line)) {
                rc = report_failure(s);
            } else {
                emit(line);
            }
        }
    }
    if (rc == 0) {
        char* report = nullptr;
        rmm_format f = format == "tsv" ? RMM_FORMAT_TSV : RMM_FORMAT_JSON;
        if (rmm_status s = rmm_stats_report(stats, f, &report)) {
            rc = report_failure(s);
        } else {
            std::cout << report;
            if (f == RMM_FORMAT_JSON) std::cout << '\n';
            rmm_string_free(report);
        }
    }
    if (rc == 0 && rmm_stats_forbidden_cells(stats) != 0) rc = kViolation;
    rmm_stats_free(stats);
    return rc;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Reduced minimal models of rational elliptic curves"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(rmm_version()));

    std::string ainv;
    auto* curve = app.add_subcommand("curve", "Minimal signature, rmm class and reduced model of a curve");
    curve->add_option("--a-invariants", ainv, "a1,a2,a3,a4,a6")->required()->allow_extra_args(false);

    std::string torsion, a, b;
    std::optional<std::string> d;
    auto* family = app.add_subcommand("family", "Classify the family model E_T(a, b[, d])");
    family->add_option("--torsion", torsion, "C1..C12, C2xC2m, C3^0")->required();
    family->add_option("--a", a)->required();
    family->add_option("--b", b);
    family->add_option("--d", d);

    long bound = 0;
    unsigned threads = 1;
    auto* sweep = app.add_subcommand("sweep", "Check every parameter tuple up to a bound against the allowed classes");
    sweep->add_option("--torsion", torsion)->required();
    sweep->add_option("--bound", bound)->required()->check(CLI::Range(2L, 100000L));
    sweep->add_option("--threads", threads)->check(CLI::Range(1u, 256u));

    unsigned modulus = 24, samples = 3;
    auto* residues = app.add_subcommand("residues", "Empirical class of each parameter residue class");
    residues->add_option("--torsion", torsion)->required();
    residues->add_option("--modulus", modulus)->check(CLI::IsMember({24u, 48u}));
    residues->add_option("--samples", samples)->check(CLI::Range(1u, 1000u));

    auto* verify = app.add_subcommand("verify-c2c2", "Recheck the case tables of the C2xC2 family");

    std::string input, format = "json";
    auto* stats = app.add_subcommand("stats", "Distribution of rmm classes over an allcurves file");
    stats->add_option("--input", input)->required();
    stats->add_option("--format", format)->check(CLI::IsMember({"json", "tsv"}));
    stats->add_option("--threads", threads)->check(CLI::Range(1u, 256u));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kInputError;
    }

    if (*curve) return run_curve(ainv);
    if (*family) {
        if (b.empty()) b = "0";
        return run_family(torsion, a, b, d);
    }
    if (*sweep) return run_sweep(torsion, bound, threads);
    if (*residues) return run_residues(torsion, modulus, samples);
    if (*verify) return run_verify_c2c2();
    if (*stats) return run_stats(input, format, threads);
    return kInputError;
}
