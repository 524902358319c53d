#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ovlc/analytic.hpp"

namespace ovlc::mc {

using analytic::BoundMode;
using analytic::RelayScenario;

/// Samples per block. Block b always draws from substream b, so results depend only on
/// (scenario, sample_count, master_seed).
inline constexpr std::uint64_t kBlockSize = 1u << 16;

struct SimConfig {
    RelayScenario scenario;
    std::uint64_t sample_count = 1'000'000;
    std::uint64_t master_seed = 0x0715C0FFEEULL;
    unsigned worker_count = 1;

    /// Throws DomainError when sample_count or worker_count is zero.
    void validate() const;
};

struct EstimateWithError {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t n = 0;
};

/// Seed of substream `index`: the (index + 1)-th output of a SplitMix64 sequence started at
/// master_seed, i.e. splitmix64_mix(master_seed + (index + 1) * 0x9E3779B97F4A7C15).
std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index);

/// Random stream: std::mt19937_64 seeded with a single 64-bit value. Uniforms, normals and
/// Gamma variates are derived here (not by <random> distributions) so the draw sequence is
/// fixed across standard library implementations.
class Stream {
public:
    explicit Stream(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform on the open interval (0, 1), 53-bit resolution.
    double uniform();
    /// Standard normal, Marsaglia polar method.
    double normal();
    /// Gamma variate with the given shape and unit mean (scale 1/shape), Marsaglia-Tsang.
    double gamma_unit_mean(double shape);

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

/// One Gamma-Gamma fading draw h = X Y with X ~ Gamma(alpha, 1/alpha), Y ~ Gamma(beta, 1/beta).
double sample_gg_fading(const channel::TurbulenceParams& params, Stream& stream);

/// Per-link SNRs of one fading realization.
struct LinkSnrs {
    double sr = 0.0;
    double rd1 = 0.0;
    double rd2 = 0.0;
    double rd() const { return rd1 > rd2 ? rd1 : rd2; }
};

LinkSnrs draw_link_snrs(const RelayScenario& scen, Stream& stream);

/// Destination SNR of one realization: selection combining over the R->D links, then the
/// end-to-end formula selected by mode.
double simulate_destination_snr(const RelayScenario& scen, Stream& stream, BoundMode mode);

/// Outage (one estimate per threshold) and capacity from a single pass over the samples.
struct PointEstimate {
    std::vector<EstimateWithError> outage;
    EstimateWithError capacity;
};

PointEstimate simulate_point(const SimConfig& config, std::span<const double> thresholds,
                             BoundMode mode);

/// P(gamma_D <= 2^(2 R) - 1) with binomial standard error.
EstimateWithError estimate_outage(const SimConfig& config, double spectral_efficiency,
                                  BoundMode mode);

/// Mean of log2(1 + gamma_D) with CLT standard error.
EstimateWithError estimate_capacity(const SimConfig& config, BoundMode mode);

/// All three end-to-end modes evaluated on the same realizations.
struct ModeComparison {
    std::vector<std::uint64_t> exact_count;  // per threshold: exact SNR <= threshold
    std::vector<std::uint64_t> harmonic_count;
    std::vector<std::uint64_t> min_count;
    /// Samples where exact <= harmonic <= min failed.
    std::uint64_t dominance_violations = 0;
    std::uint64_t n = 0;
};

ModeComparison compare_modes(const SimConfig& config, std::span<const double> thresholds);

/// Draws `count` samples of a caller-defined quantity in the same deterministic block layout,
/// returned in sample order. Intended for distribution tests.
std::vector<double> draw_samples(std::uint64_t count, std::uint64_t master_seed,
                                 unsigned worker_count,
                                 const std::function<double(Stream&)>& draw);

}  // namespace ovlc::mc
