#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "ovlc/report.hpp"
#include "ovlc/scenario.hpp"
#include "ovlc/sweep.hpp"

using namespace ovlc::cli;
namespace fs = std::filesystem;

namespace {

const char* const kBasic = R"(# weak regime, short sweep
[turbulence]
preset = weak

[relay]
spectral_efficiency = 1

[sweep]
axis = snr_db
points = 0:10:20

[sim]
samples = 20000
seed = 7
)";

Scenario parse(const std::string& text) {
    std::istringstream in(text);
    return parse_scenario(in, "test.ini");
}

ValidationError parse_error(const std::string& text) {
    try {
        parse(text);
    } catch (const ValidationError& e) {
        return e;
    }
    FAIL("expected a validation error");
    return ValidationError("", 0, "", "", "");
}

std::string csv_of(const ResultTable& t) {
    std::ostringstream os;
    write_results_csv(os, t);
    return os.str();
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) {
        out.push_back(l);
    }
    return out;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("ovlc_test_" + name);
    fs::remove_all(p);
    return p;
}

}  // namespace

TEST_CASE("presets") {
    const auto& p = regime_presets();
    REQUIRE(p.size() == 3);
    CHECK(find_preset("weak")->alpha == 8.1);
    CHECK(find_preset("weak")->beta == 4.0);
    CHECK(find_preset("moderate")->alpha == 4.2);
    CHECK(find_preset("moderate")->beta == 3.0);
    CHECK(find_preset("strong")->alpha == 2.2);
    CHECK(find_preset("strong")->beta == 2.0);
    CHECK_FALSE(find_preset("calm"));
}

TEST_CASE("a valid file parses") {
    const Scenario s = parse(kBasic);
    CHECK(s.regime == "weak");
    CHECK(s.turbulence.alpha() == 8.1);
    CHECK(s.grid == std::vector<double>{0.0, 10.0, 20.0});
    CHECK(s.samples == 20000);
    CHECK(s.seed == 7);
    CHECK(s.mode == ovlc::analytic::BoundMode::min);
    CHECK(s.axis == SweepAxis::snr_db);
}

TEST_CASE("defaults: 0-40 dB in 2 dB steps, distances 5/10/20/40") {
    const Scenario s = parse("[turbulence]\npreset = strong\n");
    REQUIRE(s.grid.size() == 21);
    CHECK(s.grid.front() == 0.0);
    CHECK(s.grid.back() == 40.0);
    const Scenario d = parse("[turbulence]\npreset = weak\n[relay]\nderive = physics\n");
    CHECK(d.axis == SweepAxis::distance_m);
    CHECK(d.grid == std::vector<double>{5.0, 10.0, 20.0, 40.0});
}

TEST_CASE("list grids and explicit shapes") {
    const Scenario s = parse("[turbulence]\nalpha = 3.5\nbeta = 2.5\n[sweep]\npoints = 1, 2.5, 7\n");
    CHECK(s.grid == std::vector<double>{1.0, 2.5, 7.0});
    CHECK(s.turbulence.beta() == 2.5);
}

TEST_CASE("validation errors name the section, key and line") {
    SUBCASE("empty grid") {
        const auto e = parse_error("[turbulence]\npreset = weak\n[sweep]\npoints =\n");
        CHECK(e.section() == "sweep");
        CHECK(e.line() == 4);
        CHECK(std::string(e.what()).find("[sweep]") != std::string::npos);
    }
    SUBCASE("non-increasing grid") {
        const auto e = parse_error("[turbulence]\npreset = weak\n[sweep]\npoints = 0, 5, 5\n");
        CHECK(e.section() == "sweep");
        CHECK(e.key() == "points");
    }
    SUBCASE("unknown key") {
        const auto e = parse_error("[turbulence]\npreset = weak\n\n[sim]\nsamplez = 10\n");
        CHECK(e.section() == "sim");
        CHECK(e.key() == "samplez");
        CHECK(e.line() == 5);
    }
    SUBCASE("duplicate key") {
        const auto e = parse_error("[turbulence]\npreset = weak\npreset = strong\n");
        CHECK(e.key() == "preset");
        CHECK(e.line() == 3);
    }
    SUBCASE("two turbulence forms") {
        const auto e = parse_error("[turbulence]\npreset = weak\nalpha = 2\nbeta = 2\n");
        CHECK(e.section() == "turbulence");
    }
    SUBCASE("missing turbulence") {
        CHECK(parse_error("[sim]\nseed = 1\n").section() == "turbulence");
    }
    SUBCASE("bad numbers") {
        CHECK(parse_error("[turbulence]\nalpha = x\nbeta = 2\n").key() == "alpha");
        CHECK(parse_error("[turbulence]\nalpha = -1\nbeta = 2\n").key() == "alpha");
        CHECK(parse_error("[turbulence]\npreset = weak\n[sim]\nsamples = -3\n").key() ==
              "samples");
        CHECK(parse_error("[turbulence]\npreset = weak\n[sim]\nmode = best\n").key() == "mode");
    }
    SUBCASE("structure") {
        CHECK(parse_error("preset = weak\n").line() == 1);
        CHECK(parse_error("[turbulence\n").line() == 1);
        CHECK(parse_error("[weather]\n").section() == "weather");
        CHECK(parse_error("[turbulence]\npreset weak\n").line() == 2);
    }
}

TEST_CASE("validation is total under random corruption") {
    const std::string base = kBasic;
    const std::string alphabet = "[]=:,#;-.0123456789abcxyz \n";
    std::mt19937 rng(11);
    int diagnosed = 0;
    for (int trial = 0; trial < 2000; ++trial) {
        std::string text = base;
        for (int k = 0; k < 4; ++k) {
            const std::size_t pos = rng() % text.size();
            text[pos] = alphabet[rng() % alphabet.size()];
        }
        try {
            parse(text);
        } catch (const ValidationError&) {
            ++diagnosed;
        }
    }
    CHECK(diagnosed > 0);
}

TEST_CASE("sweep: one row per grid point") {
    const ResultTable t = run_sweep(parse(kBasic), 2);
    REQUIRE(t.rows.size() == 3);
    for (const SweepRow& r : t.rows) {
        CHECK(r.outage_ref.value);
        CHECK(r.cap_quad.value);
        CHECK(r.outage_mc.n == 20000);
        CHECK(r.status.find("error") == std::string::npos);
    }
    CHECK(*t.rows[0].outage_ref.value > *t.rows[2].outage_ref.value);
    const auto l = lines(csv_of(t));
    REQUIRE(l.size() == 5);
    CHECK(l[0].rfind("# ovlc results schema_version=1", 0) == 0);
    CHECK(l[1] == kResultsHeader);
    CHECK(std::string(kResultsHeader) ==
          "sweep_value,alpha,beta,snr_sr_db,snr_rd_db,outage_paper,outage_ref,outage_mc,"
          "outage_mc_se,cap_paper,cap_quad,cap_mc,cap_mc_se,status");
    for (std::size_t i = 2; i < l.size(); ++i) {
        CHECK(std::count(l[i].begin(), l[i].end(), ',') == 13);
    }
}

TEST_CASE("sweep: pole at alpha + beta = 4 marks the cell") {
    const ResultTable t =
        run_sweep(parse("[turbulence]\nalpha = 2.5\nbeta = 1.5\n[sweep]\npoints = 10\n"
                        "[sim]\nsamples = 1000\n"));
    REQUIRE(t.rows.size() == 1);
    CHECK(t.rows[0].cap_paper.marker == "POLE");
    CHECK_FALSE(t.rows[0].status.empty());
    CHECK(t.rows[0].cap_quad.value);
    const auto l = lines(csv_of(t));
    CHECK(l[2].find(",POLE,") != std::string::npos);
}

TEST_CASE("sweep: physics-derived distance sweep") {
    const ResultTable t = run_sweep(
        parse("[turbulence]\npreset = weak\n[relay]\nderive = physics\n[sweep]\npoints = 5, 10, 20\n"
              "[sim]\nsamples = 2000\n"),
        2);
    REQUIRE(t.rows.size() == 3);
    CHECK(t.rows[0].snr_rd_db > t.rows[1].snr_rd_db);
    CHECK(t.rows[1].snr_rd_db > t.rows[2].snr_rd_db);
    CHECK(*t.rows[0].cap_quad.value > *t.rows[1].cap_quad.value);
    CHECK(*t.rows[1].cap_quad.value > *t.rows[2].cap_quad.value);
}

TEST_CASE("csv is byte-identical across runs and worker counts") {
    const Scenario s = parse(kBasic);
    const std::string a = csv_of(run_sweep(s, 1));
    CHECK(a == csv_of(run_sweep(s, 1)));
    CHECK(a == csv_of(run_sweep(s, 3)));
    CHECK(a == csv_of(run_sweep(s, 8)));
}

TEST_CASE("json carries the schema version") {
    const ResultTable t = run_sweep(parse(kBasic), 2);
    std::ostringstream os;
    write_results_json(os, t);
    const auto j = nlohmann::json::parse(os.str());
    CHECK(j.at("schema_version") == kSchemaVersion);
    CHECK(j.at("rows").size() == 3);
    CHECK(j.at("rows")[0].contains("outage_mc"));
}

TEST_CASE("discrepancy report") {
    const auto rows = discrepancy_report(4);
    CHECK(rows.size() >= 3 * 3 * (4 * 5 + 1));
    std::ostringstream os;
    write_discrepancy_csv(os, rows);
    const auto l = lines(os.str());
    REQUIRE(l.size() == rows.size() + 2);
    CHECK(l[0] == "# ovlc discrepancy schema_version=1");
    CHECK(l[1].rfind("gamma,regime,metric,paper_value,reference_value,abs_dev,rel_dev", 0) == 0);
    const auto columns = std::count(l[1].begin(), l[1].end(), ',');
    for (std::size_t i = 2; i < l.size(); ++i) {
        CHECK(std::count(l[i].begin(), l[i].end(), ',') == columns);
    }
}

TEST_CASE("emit_report writes files and rejects unwritable paths") {
    const ResultTable t = run_sweep(parse(kBasic), 2);
    const fs::path dir = scratch("emit");
    const std::vector<DiscrepancyRow> none;
    const auto written = emit_report(t, &none, dir / "nested", ReportFormat::csv);
    REQUIRE(written.size() == 2);
    CHECK(fs::exists(dir / "nested" / "results.csv"));
    CHECK(fs::exists(dir / "nested" / "discrepancy.csv"));
    CHECK(emit_report(t, nullptr, dir, ReportFormat::json).size() == 1);
    CHECK(fs::exists(dir / "results.json"));

    std::ofstream(dir / "blocker") << "x";
    CHECK_THROWS_AS(emit_report(t, nullptr, dir / "blocker" / "sub", ReportFormat::csv),
                    ReportError);
    fs::remove_all(dir);
}
