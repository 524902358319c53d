#include "ovlc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <thread>

#include "ovlc/errors.hpp"

namespace ovlc::cli {

namespace {

// Runs fn(i) for i in [0, n) on up to worker_count threads.
void parallel_for(std::size_t n, unsigned worker_count, const std::function<void(std::size_t)>& fn) {
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
            fn(i);
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::min<std::size_t>(std::max(worker_count, 1u), n));
    if (threads <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
}

std::string sanitize(std::string text) {
    for (char& c : text) {
        if (c == ',' || c == ';' || c == '\n' || c == '\r' || c == '"') {
            c = ' ';
        }
    }
    return text;
}

void note(std::string& status, const std::string& entry) {
    if (!status.empty()) {
        status += ';';
    }
    status += entry;
}

template <class Fn>
Cell guarded(Fn fn, const char* what, std::string& status) {
    try {
        return Cell::of(fn());
    } catch (const PoleError&) {
        note(status, std::string(what) + "_pole");
        return Cell::missing("POLE");
    } catch (const std::exception& e) {
        note(status, std::string(what) + "_error: " + sanitize(e.what()));
        return Cell::missing("ERR");
    }
}

constexpr std::uint64_t kMinResolvedHits = 10;

void fill_analytic(SweepRow& row, const analytic::RelayScenario& rs, analytic::BoundMode mode) {
    row.outage_paper = guarded(
        [&] { return analytic::outage_probability(rs, analytic::Form::paper); }, "outage_paper",
        row.status);
    row.outage_ref = guarded(
        [&] { return analytic::outage_probability(rs, analytic::Form::reference, mode); },
        "outage_ref", row.status);
    row.cap_paper =
        guarded([&] { return analytic::ergodic_capacity_paper(rs); }, "cap_paper", row.status);
    row.cap_quad = guarded([&] { return analytic::ergodic_capacity_quadrature(rs).value; },
                           "cap_quad", row.status);
    if (mode != analytic::BoundMode::min && row.cap_quad.value) {
        note(row.status, "cap_quad_min_bound");
    }
}

std::optional<double> relative(double dev, std::optional<double> reference) {
    if (!reference || *reference == 0.0) {
        return std::nullopt;
    }
    return dev / std::abs(*reference);
}

DiscrepancyRow make_row(std::optional<double> gamma, const std::string& regime,
                        const std::string& metric, Cell paper, Cell reference, double snr_db) {
    DiscrepancyRow row;
    row.gamma = gamma;
    row.regime = regime;
    row.metric = metric;
    row.avg_snr_db = snr_db;
    if (paper.value && reference.value) {
        row.abs_dev = std::abs(*paper.value - *reference.value);
        row.rel_dev = relative(*row.abs_dev, reference.value);
    }
    row.paper_value = std::move(paper);
    row.reference_value = std::move(reference);
    return row;
}

Cell try_cell(const std::function<double()>& fn) {
    try {
        return Cell::of(fn());
    } catch (const PoleError&) {
        return Cell::missing("POLE");
    } catch (const std::exception&) {
        return Cell::missing("ERR");
    }
}

std::vector<DiscrepancyRow> discrepancy_block(const RegimePreset& preset, double snr_db) {
    const auto tp = channel::TurbulenceParams::direct(preset.alpha, preset.beta);
    const auto avg = channel::AvgSnr::from_db(snr_db);
    const analytic::RelayScenario rs{tp, tp, avg, avg, 1.0, std::nullopt, std::nullopt};
    std::vector<DiscrepancyRow> rows;
    for (double g : {0.5, 1.0, 3.0, 10.0, 30.0}) {
        rows.push_back(make_row(g, preset.name, "cdf_link",
                                try_cell([&] { return channel::gg_cdf_snr_paper(g, tp, avg); }),
                                try_cell([&] { return channel::gg_cdf_snr_reference(g, tp, avg); }),
                                snr_db));
        rows.push_back(make_row(g, preset.name, "cdf_e2e",
                                try_cell([&] { return analytic::e2e_cdf_paper(g, rs); }),
                                try_cell([&] { return analytic::e2e_cdf_reference(g, rs); }),
                                snr_db));
        rows.push_back(make_row(g, preset.name, "pdf_e2e",
                                try_cell([&] { return analytic::e2e_pdf_paper(g, rs); }),
                                try_cell([&] { return analytic::e2e_pdf_reference(g, rs); }),
                                snr_db));
        rows.push_back(make_row(
            g, preset.name, "pdf_e2e_fd", try_cell([&] { return analytic::e2e_pdf_paper(g, rs); }),
            try_cell([&] {
                const double h = 1e-4 * g;
                return (analytic::e2e_cdf_paper(g + h, rs) - analytic::e2e_cdf_paper(g - h, rs)) /
                       (2.0 * h);
            }),
            snr_db));
    }
    for (int k = 0; k <= 40; ++k) {
        const double g = std::pow(10.0, -2.0 + 0.1 * k);
        const Cell paper = try_cell([&] { return analytic::e2e_pdf_paper(g, rs); });
        if (paper.value && *paper.value < 0.0) {
            rows.push_back(make_row(g, preset.name, "pdf_e2e_negative", paper,
                                    try_cell([&] { return analytic::e2e_pdf_reference(g, rs); }),
                                    snr_db));
        }
    }
    rows.push_back(make_row(std::nullopt, preset.name, "capacity",
                            try_cell([&] { return analytic::ergodic_capacity_paper(rs); }),
                            try_cell([&] { return analytic::ergodic_capacity_quadrature(rs).value; }),
                            snr_db));
    return rows;
}

}  // namespace

ResultTable run_sweep(const Scenario& scen, unsigned worker_count) {
    ResultTable table;
    table.regime = scen.regime;
    table.axis = scen.axis;
    table.mode = scen.mode;
    table.spectral_efficiency = scen.spectral_efficiency;
    table.samples = scen.samples;
    table.seed = scen.seed;
    table.rows.resize(scen.grid.size());

    std::vector<std::optional<analytic::RelayScenario>> relays(scen.grid.size());
    parallel_for(scen.grid.size(), worker_count, [&](std::size_t i) {
        SweepRow& row = table.rows[i];
        row.sweep_value = scen.grid[i];
        row.alpha = scen.turbulence.alpha();
        row.beta = scen.turbulence.beta();
        if (scen.turbulence.weak_limit()) {
            note(row.status, "weak_turbulence_limit");
        }
        try {
            relays[i] = relay_scenario_at(scen, scen.grid[i]);
        } catch (const std::exception& e) {
            note(row.status, "scenario_error: " + sanitize(e.what()));
            row.outage_paper = row.outage_ref = row.cap_paper = row.cap_quad = Cell::missing("ERR");
            return;
        }
        row.snr_sr_db = relays[i]->snr_sr.db();
        row.snr_rd_db = relays[i]->snr_rd.db();
        fill_analytic(row, *relays[i], scen.mode);
    });

    for (std::size_t i = 0; i < scen.grid.size(); ++i) {
        if (!relays[i]) {
            continue;
        }
        SweepRow& row = table.rows[i];
        mc::SimConfig config{*relays[i], scen.samples, scen.seed, std::max(worker_count, 1u)};
        const double threshold = relays[i]->outage_threshold();
        try {
            const mc::PointEstimate est =
                mc::simulate_point(config, std::span<const double>(&threshold, 1), scen.mode);
            row.outage_mc = est.outage.front();
            row.cap_mc = est.capacity;
            const auto hits = static_cast<std::uint64_t>(
                std::llround(row.outage_mc.estimate * static_cast<double>(row.outage_mc.n)));
            if (hits < kMinResolvedHits) {
                note(row.status, "mc_outage_below_resolution");
            }
        } catch (const std::exception& e) {
            note(row.status, "mc_error: " + sanitize(e.what()));
        }
    }
    return table;
}

std::vector<DiscrepancyRow> discrepancy_report(unsigned worker_count) {
    const std::vector<double> snrs_db = {10.0, 20.0, 30.0};
    const auto& presets = regime_presets();
    std::vector<std::vector<DiscrepancyRow>> blocks(presets.size() * snrs_db.size());
    parallel_for(blocks.size(), worker_count, [&](std::size_t i) {
        blocks[i] = discrepancy_block(presets[i / snrs_db.size()], snrs_db[i % snrs_db.size()]);
    });
    std::vector<DiscrepancyRow> rows;
    for (auto& b : blocks) {
        rows.insert(rows.end(), std::make_move_iterator(b.begin()), std::make_move_iterator(b.end()));
    }
    return rows;
}

}  // namespace ovlc::cli
