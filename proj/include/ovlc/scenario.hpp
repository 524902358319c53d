#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ovlc/analytic.hpp"
#include "ovlc/channel.hpp"
#include "ovlc/noise.hpp"

namespace ovlc::cli {

/// A malformed scenario file. what() reads "<source>:<line>: [section] key: message".
class ValidationError : public std::runtime_error {
public:
    ValidationError(std::string source, int line, std::string section, std::string key,
                    const std::string& message);

    const std::string& section() const noexcept { return section_; }
    const std::string& key() const noexcept { return key_; }
    int line() const noexcept { return line_; }

private:
    std::string section_;
    std::string key_;
    int line_;
};

struct RegimePreset {
    const char* name;
    double alpha;
    double beta;
};

/// weak (8.1, 4), moderate (4.2, 3), strong (2.2, 2).
const std::vector<RegimePreset>& regime_presets();
std::optional<RegimePreset> find_preset(const std::string& name);

enum class SweepAxis { snr_db, distance_m };
enum class ReportFormat { csv, json };

const char* to_string(SweepAxis axis);
const char* to_string(ReportFormat format);

/// A validated scenario file.
///
/// Sections and keys (all optional unless noted):
///   [turbulence] preset = weak|moderate|strong  | alpha, beta | cn2, wavelength, aperture,
///                path_length (+ beta_xi). Exactly one of the three forms.
///   [geometry]   lambertian_order, pd_area, distance, irradiance_angle, incidence_angle,
///                filter_gain, concentrator_gain, fov, distance_exponent; each may be prefixed
///                sr_ or rd_ to set one hop only.
///   [noise]      any NoiseEnvironment field by name, spectral_max = window|global.
///   [relay]      spectral_efficiency, derive = explicit|physics, snr_sr_db, snr_rd_db,
///                tx_power_w.
///   [sweep]      axis = snr_db|distance_m, points = a:step:b or a comma list.
///   [sim]        samples, seed, mode = exact|min|harmonic.
///   [report]     out, format = csv|json, discrepancy = true|false.
struct Scenario {
    std::string source = "<memory>";
    std::string regime = "custom";
    channel::TurbulenceParams turbulence = channel::TurbulenceParams::direct(8.1, 4.0);
    channel::LinkGeometry sr_geometry;
    channel::LinkGeometry rd_geometry;
    noise::NoiseEnvironment noise;

    double spectral_efficiency = 1.0;
    bool derive_from_physics = false;
    /// On an snr_db sweep, pins one hop at a fixed value while the other follows the axis.
    std::optional<double> snr_sr_db;
    std::optional<double> snr_rd_db;
    double tx_power_w = 1.0;

    SweepAxis axis = SweepAxis::snr_db;
    std::vector<double> grid;

    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 20190601;
    analytic::BoundMode mode = analytic::BoundMode::min;

    std::string out_dir = "results";
    ReportFormat format = ReportFormat::csv;
    bool discrepancy = true;
};

/// Parses and validates. Throws ValidationError for any malformed input.
Scenario parse_scenario(std::istream& in, const std::string& source = "<memory>");
Scenario load_scenario(const std::string& path);

/// Average SNRs of both hops for one grid point.
struct HopSnrs {
    channel::AvgSnr sr;
    channel::AvgSnr rd;
};

/// Explicit mode: each hop at the axis value (dB) unless pinned by snr_sr_db / snr_rd_db.
/// Physics mode: geometry -> Lambertian gain -> noise -> SNR, with the R->D distance set to
/// the axis value on a distance_m sweep.
HopSnrs hop_snrs_at(const Scenario& scen, double sweep_value);

analytic::RelayScenario relay_scenario_at(const Scenario& scen, double sweep_value);

}  // namespace ovlc::cli
