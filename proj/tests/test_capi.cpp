#include "rmm/rmm.h"

#include <doctest.h>
#include <json.hpp>

#include <string>

using json = nlohmann::json;

namespace {

// Takes ownership of a library string.
std::string take(char* s) {
    std::string out = s ? s : "";
    rmm_string_free(s);
    return out;
}

}  // namespace

TEST_CASE("curve handle") {
    const char* a[5] = {"0", "0", "0", "-11346507", "16371897606"};
    rmm_curve* c = nullptr;
    REQUIRE(rmm_curve_new(a, &c) == RMM_OK);

    char *c4 = nullptr, *c6 = nullptr, *delta = nullptr, *u = nullptr;
    REQUIRE(rmm_curve_minimal_signature(c, &c4, &c6, &delta, &u) == RMM_OK);
    CHECK(take(c4) == "420241");
    CHECK(take(c6) == "-303183289");
    CHECK(take(delta) == "-10245657600000");
    CHECK(take(u) == "6");

    int idx = 0;
    REQUIRE(rmm_curve_rmm_index(c, &idx) == RMM_OK);
    CHECK(idx == 7);
    char* model = nullptr;
    REQUIRE(rmm_curve_reduced_model(c, &model) == RMM_OK);
    CHECK(take(model) == "[1,0,0,-8755,350177]");

    rmm_reduction r;
    REQUIRE(rmm_curve_reduction_type(c, 2, &r) == RMM_OK);
    CHECK(r == RMM_REDUCTION_MULTIPLICATIVE);
    CHECK(rmm_curve_reduction_type(c, 5, &r) == RMM_E_UNSUPPORTED_PRIME);
    CHECK(std::string(rmm_last_error()) != "");

    char* js = nullptr;
    REQUIRE(rmm_curve_report_json(c, &js) == RMM_OK);
    json j = json::parse(take(js));
    CHECK(j["rmm"] == 7);
    CHECK(j["cross_check"] == true);
    CHECK(j["minimal_signature"]["c4"] == "420241");
    rmm_curve_free(c);
}

TEST_CASE("errors cross the boundary as status codes") {
    const char* zero[5] = {"0", "0", "0", "0", "0"};
    rmm_curve* c = nullptr;
    CHECK(rmm_curve_new(zero, &c) == RMM_E_SINGULAR_CURVE);
    CHECK(c == nullptr);
    const char* junk[5] = {"0", "x", "0", "0", "0"};
    CHECK(rmm_curve_new(junk, &c) == RMM_E_INVALID_ARGUMENT);
    CHECK(rmm_curve_new(nullptr, &c) == RMM_E_INVALID_ARGUMENT);
    CHECK(rmm_curve_from_family("C5", "4", "2", nullptr, &c) == RMM_E_GCD_VIOLATION);
    CHECK(rmm_curve_from_family("C11", "1", "1", nullptr, &c) == RMM_E_UNSUPPORTED_TORSION);
    CHECK(rmm_curve_from_family("C2xC2", "3", "1", "1", &c) == RMM_E_PARITY_VIOLATION);
    CHECK(std::string(rmm_status_name(RMM_E_NOT_MINIMAL)) != "");
    CHECK(std::string(rmm_version()) != "");
}

TEST_CASE("family reports") {
    char* js = nullptr;
    REQUIRE(rmm_family_report_json("C12", "6", "11", nullptr, &js) == RMM_OK);
    json j = json::parse(take(js));
    CHECK(j["rmm"] == 10);
    CHECK(j["allowed_contains"] == true);
    CHECK(j["reduced_model"] == json({"1", "-1", "1", "-919077351189287", "10701785524467279561311"}));

    REQUIRE(rmm_family_report_json("C4", "36864", "4585", nullptr, &js) == RMM_OK);
    j = json::parse(take(js));
    CHECK(j["rmm"] == 3);
    CHECK(j["minimal_signature"]["c4"] == "4399653136");
    CHECK(j["minimal_signature"]["c6"] == "-286462685864384");

    rmm_curve* c = nullptr;
    REQUIRE(rmm_curve_from_family("C2xC2", "4", "1", "3", &c) == RMM_OK);
    char* c6 = nullptr;
    REQUIRE(rmm_curve_signature(c, nullptr, &c6, nullptr) == RMM_OK);
    CHECK(take(c6) == "-60480");
    int rank = -1;
    REQUIRE(rmm_curve_two_torsion_rank(c, &rank) == RMM_OK);
    CHECK(rank == 2);
    rmm_curve_free(c);
}

TEST_CASE("sweep, residues and the C2xC2 tables") {
    size_t violations = 99;
    char* js = nullptr;
    REQUIRE(rmm_sweep_json("C9", 10, 2, &violations, &js) == RMM_OK);
    CHECK(violations == 0);
    json j = json::parse(take(js));
    CHECK(j["ok"] == true);

    size_t inconsistent = 99;
    REQUIRE(rmm_residues_json("C7", 48, 1, &inconsistent, &js) == RMM_OK);
    CHECK(inconsistent == 0);
    CHECK(json::parse(take(js))["modulus"] == 48);
    CHECK(rmm_residues_json("C7", 10, 1, &inconsistent, &js) == RMM_E_INVALID_ARGUMENT);

    int ok = 0;
    REQUIRE(rmm_verify_c2c2_json(&ok, &js) == RMM_OK);
    CHECK(ok == 1);
    CHECK(json::parse(take(js))["case2"].size() == 6);
}

TEST_CASE("stats over the fixture") {
    rmm_stats* s = nullptr;
    REQUIRE(rmm_stats_process_file(RMM_FIXTURE_DIR "/allcurves_fixture.txt", 2, &s) == RMM_OK);
    CHECK(rmm_stats_record_count(s) == 20);
    CHECK(rmm_stats_forbidden_cells(s) == 0);
    char* out = nullptr;
    REQUIRE(rmm_stats_record_json(s, 17, &out) == RMM_OK);
    json line = json::parse(take(out));
    CHECK(line["rmm"] == 7);
    CHECK(rmm_stats_record_json(s, 20, &out) == RMM_E_INVALID_ARGUMENT);

    REQUIRE(rmm_stats_report(s, RMM_FORMAT_JSON, &out) == RMM_OK);
    json rep = json::parse(take(out));
    CHECK(rep["curves"] == 20);
    CHECK(rep["rows"]["C10"]["percent"]["R7"] == 100.0);

    REQUIRE(rmm_stats_report(s, RMM_FORMAT_TSV, &out) == RMM_OK);
    const std::string tsv = take(out);
    CHECK(tsv.rfind("T\tn_T\tR1\t", 0) == 0);
    CHECK(tsv.find("C10\t1\t0.00%") != std::string::npos);
    rmm_stats_free(s);

    CHECK(rmm_stats_process_file("/nonexistent/file.txt", 1, &s) == RMM_E_IO);
}
