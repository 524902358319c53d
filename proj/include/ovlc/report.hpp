#pragma once

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ovlc/sweep.hpp"

namespace ovlc::cli {

inline constexpr int kSchemaVersion = 1;

/// Output file or directory could not be written.
class ReportError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Header line shared by the CSV writer and its tests.
extern const char* const kResultsHeader;
extern const char* const kDiscrepancyHeader;

/// "# ovlc results schema_version=1", the header, then one row per grid point.
/// Numbers use %.12g; missing cells carry their marker (NA, ERR, POLE).
void write_results_csv(std::ostream& out, const ResultTable& table);
void write_results_json(std::ostream& out, const ResultTable& table);
void write_discrepancy_csv(std::ostream& out, const std::vector<DiscrepancyRow>& rows);

/// Writes results.csv or results.json into dir (created if needed), plus discrepancy.csv when
/// discrepancy rows are given. Returns the paths written.
std::vector<std::filesystem::path> emit_report(const ResultTable& table,
                                               const std::vector<DiscrepancyRow>* discrepancy,
                                               const std::filesystem::path& dir,
                                               ReportFormat format);

}  // namespace ovlc::cli
