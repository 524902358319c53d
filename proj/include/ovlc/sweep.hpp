#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ovlc/montecarlo.hpp"
#include "ovlc/scenario.hpp"

namespace ovlc::cli {

/// A numeric cell that may be missing or carry a marker instead of a value.
struct Cell {
    std::optional<double> value;
    std::string marker = "NA";  // written when value is empty: NA, ERR or POLE

    static Cell of(double v) { return {v, {}}; }
    static Cell missing(std::string why) { return {std::nullopt, std::move(why)}; }
};

struct SweepRow {
    double sweep_value = 0.0;
    double alpha = 0.0;
    double beta = 0.0;
    double snr_sr_db = 0.0;
    double snr_rd_db = 0.0;
    Cell outage_paper;
    Cell outage_ref;
    mc::EstimateWithError outage_mc;
    Cell cap_paper;
    Cell cap_quad;
    mc::EstimateWithError cap_mc;
    std::string status;  // ';'-separated notes, empty when every cell is clean
};

struct ResultTable {
    std::string regime;
    SweepAxis axis = SweepAxis::snr_db;
    analytic::BoundMode mode = analytic::BoundMode::min;
    double spectral_efficiency = 1.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::vector<SweepRow> rows;
};

/// Evaluates every grid point: paper and reference outage, Monte Carlo outage, paper and
/// quadrature capacity, Monte Carlo capacity. Numeric failures mark the affected cells and
/// the status column; they never abort the sweep. Analytic work is spread over
/// worker_count threads, Monte Carlo runs with worker_count workers per point; the table
/// does not depend on worker_count.
ResultTable run_sweep(const Scenario& scen, unsigned worker_count = 1);

struct DiscrepancyRow {
    std::optional<double> gamma;  // empty for capacity rows
    std::string regime;
    std::string metric;
    Cell paper_value;
    Cell reference_value;
    std::optional<double> abs_dev;
    std::optional<double> rel_dev;
    double avg_snr_db = 0.0;
};

/// Standard comparison grid: regimes weak/moderate/strong, average SNR 10/20/30 dB (both hops),
/// gamma in {0.5, 1, 3, 10, 30}. Metrics:
///   cdf_link     closed-form per-link CDF vs quadrature CDF
///   cdf_e2e      closed-form end-to-end CDF vs reference (min-mode) CDF
///   pdf_e2e      closed-form end-to-end PDF vs reference density
///   pdf_e2e_fd   closed-form end-to-end PDF vs central difference of the closed-form CDF
///   pdf_e2e_negative  gamma points on a log grid over [0.01, 100] where the closed-form PDF < 0
///   capacity     closed-form capacity vs quadrature capacity
std::vector<DiscrepancyRow> discrepancy_report(unsigned worker_count = 1);

}  // namespace ovlc::cli
