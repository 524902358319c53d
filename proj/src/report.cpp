#include "ovlc/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace ovlc::cli {

const char* const kResultsHeader =
    "sweep_value,alpha,beta,snr_sr_db,snr_rd_db,outage_paper,outage_ref,outage_mc,outage_mc_se,"
    "cap_paper,cap_quad,cap_mc,cap_mc_se,status";
const char* const kDiscrepancyHeader =
    "gamma,regime,metric,paper_value,reference_value,abs_dev,rel_dev,avg_snr_db";

namespace {

std::string num(double v) {
    if (!std::isfinite(v)) {
        return "NA";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string num(const std::optional<double>& v) { return v ? num(*v) : "NA"; }

std::string cell(const Cell& c) { return c.value ? num(*c.value) : c.marker; }

nlohmann::json json_cell(const Cell& c) {
    if (c.value && std::isfinite(*c.value)) {
        return *c.value;
    }
    return c.value ? "NA" : c.marker;
}

nlohmann::json json_estimate(const mc::EstimateWithError& e) {
    if (e.n == 0) {
        return nullptr;
    }
    return {{"estimate", e.estimate}, {"std_error", e.std_error}, {"n", e.n}};
}

void write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ReportError("cannot open " + path.string() + " for writing");
    }
    out << content;
    out.flush();
    if (!out) {
        throw ReportError("write failed: " + path.string());
    }
}

}  // namespace

void write_results_csv(std::ostream& out, const ResultTable& table) {
    out << "# ovlc results schema_version=" << kSchemaVersion << " regime=" << table.regime
        << " axis=" << to_string(table.axis) << " mode=" << analytic::to_string(table.mode)
        << " samples=" << table.samples << " seed=" << table.seed << '\n';
    out << kResultsHeader << '\n';
    for (const SweepRow& r : table.rows) {
        const bool mc = r.outage_mc.n > 0;
        out << num(r.sweep_value) << ',' << num(r.alpha) << ',' << num(r.beta) << ','
            << num(r.snr_sr_db) << ',' << num(r.snr_rd_db) << ',' << cell(r.outage_paper) << ','
            << cell(r.outage_ref) << ',' << (mc ? num(r.outage_mc.estimate) : "NA") << ','
            << (mc ? num(r.outage_mc.std_error) : "NA") << ',' << cell(r.cap_paper) << ','
            << cell(r.cap_quad) << ',' << (mc ? num(r.cap_mc.estimate) : "NA") << ','
            << (mc ? num(r.cap_mc.std_error) : "NA") << ',' << r.status << '\n';
    }
}

void write_results_json(std::ostream& out, const ResultTable& table) {
    nlohmann::json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["regime"] = table.regime;
    doc["axis"] = to_string(table.axis);
    doc["mode"] = analytic::to_string(table.mode);
    doc["spectral_efficiency"] = table.spectral_efficiency;
    doc["samples"] = table.samples;
    doc["seed"] = table.seed;
    nlohmann::json rows = nlohmann::json::array();
    for (const SweepRow& r : table.rows) {
        rows.push_back({{"sweep_value", r.sweep_value},
                        {"alpha", r.alpha},
                        {"beta", r.beta},
                        {"snr_sr_db", r.snr_sr_db},
                        {"snr_rd_db", r.snr_rd_db},
                        {"outage_paper", json_cell(r.outage_paper)},
                        {"outage_ref", json_cell(r.outage_ref)},
                        {"outage_mc", json_estimate(r.outage_mc)},
                        {"cap_paper", json_cell(r.cap_paper)},
                        {"cap_quad", json_cell(r.cap_quad)},
                        {"cap_mc", json_estimate(r.cap_mc)},
                        {"status", r.status}});
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

void write_discrepancy_csv(std::ostream& out, const std::vector<DiscrepancyRow>& rows) {
    out << "# ovlc discrepancy schema_version=" << kSchemaVersion << '\n';
    out << kDiscrepancyHeader << '\n';
    for (const DiscrepancyRow& r : rows) {
        out << num(r.gamma) << ',' << r.regime << ',' << r.metric << ',' << cell(r.paper_value)
            << ',' << cell(r.reference_value) << ',' << num(r.abs_dev) << ',' << num(r.rel_dev)
            << ',' << num(r.avg_snr_db) << '\n';
    }
}

std::vector<std::filesystem::path> emit_report(const ResultTable& table,
                                               const std::vector<DiscrepancyRow>* discrepancy,
                                               const std::filesystem::path& dir,
                                               ReportFormat format) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw ReportError("cannot create output directory " + dir.string() + ": " + ec.message());
    }
    std::vector<std::filesystem::path> written;
    std::ostringstream body;
    std::filesystem::path path;
    if (format == ReportFormat::json) {
        write_results_json(body, table);
        path = dir / "results.json";
    } else {
        write_results_csv(body, table);
        path = dir / "results.csv";
    }
    write_file(path, body.str());
    written.push_back(path);
    if (discrepancy != nullptr) {
        std::ostringstream disc;
        write_discrepancy_csv(disc, *discrepancy);
        write_file(dir / "discrepancy.csv", disc.str());
        written.push_back(dir / "discrepancy.csv");
    }
    return written;
}

}  // namespace ovlc::cli
