#include "ovlc/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "ovlc/errors.hpp"

namespace ovlc::mc {

namespace {

std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// Gamma(shape, 1) by Marsaglia-Tsang; shape < 1 is boosted through Gamma(shape + 1) U^(1/shape).
double standard_gamma(double shape, Stream& stream) {
    if (shape < 1.0) {
        const double g = standard_gamma(shape + 1.0, stream);
        return g * std::pow(stream.uniform(), 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = stream.normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = stream.uniform();
        const double x2 = x * x;
        if (u < 1.0 - 0.0331 * x2 * x2) {
            return d * v;
        }
        if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

// Runs fn(stream, count, acc) for every block and returns the accumulators in block order.
template <class Acc, class Fn>
std::vector<Acc> run_blocks(std::uint64_t sample_count, std::uint64_t master_seed,
                            unsigned worker_count, const Acc& init, Fn fn) {
    const std::uint64_t blocks = (sample_count + kBlockSize - 1) / kBlockSize;
    std::vector<Acc> results(blocks, init);
    std::atomic<std::uint64_t> next{0};
    auto worker = [&]() {
        for (std::uint64_t b = next.fetch_add(1); b < blocks; b = next.fetch_add(1)) {
            const std::uint64_t begin = b * kBlockSize;
            const std::uint64_t count = std::min(kBlockSize, sample_count - begin);
            Stream stream(substream_seed(master_seed, b));
            fn(stream, count, results[b]);
        }
    };
    const unsigned threads =
        static_cast<unsigned>(std::min<std::uint64_t>(std::max(worker_count, 1u), blocks));
    if (threads <= 1) {
        worker();
        return results;
    }
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    return results;
}

// Running mean / sum of squared deviations, merged pairwise in block order.
struct Moments {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const Moments& other) {
        if (other.n == 0) {
            return;
        }
        const double total = static_cast<double>(n + other.n);
        const double delta = other.mean - mean;
        mean += delta * static_cast<double>(other.n) / total;
        m2 += other.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(other.n) / total;
        n += other.n;
    }

    EstimateWithError estimate() const {
        EstimateWithError e;
        e.n = n;
        e.estimate = mean;
        if (n > 1) {
            e.std_error = std::sqrt(m2 / static_cast<double>(n - 1)) / std::sqrt(static_cast<double>(n));
        }
        return e;
    }
};

EstimateWithError binomial_estimate(std::uint64_t hits, std::uint64_t n) {
    EstimateWithError e;
    e.n = n;
    e.estimate = static_cast<double>(hits) / static_cast<double>(n);
    e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / static_cast<double>(n));
    return e;
}

struct PointAcc {
    std::vector<std::uint64_t> hits;
    Moments capacity;
};

}  // namespace

void SimConfig::validate() const {
    if (sample_count == 0) {
        throw DomainError("SimConfig: sample_count must be >= 1");
    }
    if (worker_count == 0) {
        throw DomainError("SimConfig: worker_count must be >= 1");
    }
    scenario.validate();
}

std::uint64_t substream_seed(std::uint64_t master_seed, std::uint64_t index) {
    return splitmix64_mix(master_seed + (index + 1) * 0x9E3779B97F4A7C15ULL);
}

double Stream::uniform() {
    return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
}

double Stream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * m;
    has_spare_ = true;
    return u * m;
}

double Stream::gamma_unit_mean(double shape) {
    if (!(shape > 0.0)) {
        throw DomainError("gamma_unit_mean: shape must be > 0");
    }
    return standard_gamma(shape, *this) / shape;
}

double sample_gg_fading(const channel::TurbulenceParams& params, Stream& stream) {
    const double x = stream.gamma_unit_mean(params.alpha());
    return x * stream.gamma_unit_mean(params.beta());
}

LinkSnrs draw_link_snrs(const RelayScenario& scen, Stream& stream) {
    LinkSnrs out;
    const double h_sr = sample_gg_fading(scen.sr_turbulence, stream);
    const double h_rd1 = sample_gg_fading(scen.rd_turbulence, stream);
    const double h_rd2 = sample_gg_fading(scen.rd2_params(), stream);
    out.sr = scen.snr_sr.value() * h_sr * h_sr;
    out.rd1 = scen.snr_rd.value() * h_rd1 * h_rd1;
    out.rd2 = scen.rd2_snr().value() * h_rd2 * h_rd2;
    return out;
}

double simulate_destination_snr(const RelayScenario& scen, Stream& stream, BoundMode mode) {
    const LinkSnrs s = draw_link_snrs(scen, stream);
    return analytic::e2e_snr(s.sr, s.rd(), mode);
}

PointEstimate simulate_point(const SimConfig& config, std::span<const double> thresholds,
                             BoundMode mode) {
    config.validate();
    const std::vector<double> limits(thresholds.begin(), thresholds.end());
    PointAcc init;
    init.hits.assign(limits.size(), 0);
    const auto blocks = run_blocks(
        config.sample_count, config.master_seed, config.worker_count, init,
        [&](Stream& stream, std::uint64_t count, PointAcc& acc) {
            for (std::uint64_t i = 0; i < count; ++i) {
                const double g = simulate_destination_snr(config.scenario, stream, mode);
                for (std::size_t k = 0; k < limits.size(); ++k) {
                    acc.hits[k] += g <= limits[k] ? 1u : 0u;
                }
                acc.capacity.add(std::log2(1.0 + g));
            }
        });
    std::vector<std::uint64_t> hits(limits.size(), 0);
    Moments capacity;
    for (const PointAcc& b : blocks) {
        for (std::size_t k = 0; k < limits.size(); ++k) {
            hits[k] += b.hits[k];
        }
        capacity.merge(b.capacity);
    }
    PointEstimate out;
    for (std::uint64_t h : hits) {
        out.outage.push_back(binomial_estimate(h, config.sample_count));
    }
    out.capacity = capacity.estimate();
    return out;
}

EstimateWithError estimate_outage(const SimConfig& config, double spectral_efficiency,
                                  BoundMode mode) {
    const double threshold = analytic::outage_threshold(spectral_efficiency);
    return simulate_point(config, std::span<const double>(&threshold, 1), mode).outage.front();
}

EstimateWithError estimate_capacity(const SimConfig& config, BoundMode mode) {
    return simulate_point(config, {}, mode).capacity;
}

ModeComparison compare_modes(const SimConfig& config, std::span<const double> thresholds) {
    config.validate();
    const std::vector<double> limits(thresholds.begin(), thresholds.end());
    ModeComparison init;
    init.exact_count.assign(limits.size(), 0);
    init.harmonic_count.assign(limits.size(), 0);
    init.min_count.assign(limits.size(), 0);
    const auto blocks = run_blocks(
        config.sample_count, config.master_seed, config.worker_count, init,
        [&](Stream& stream, std::uint64_t count, ModeComparison& acc) {
            for (std::uint64_t i = 0; i < count; ++i) {
                const LinkSnrs s = draw_link_snrs(config.scenario, stream);
                const double rd = s.rd();
                const double exact = analytic::e2e_snr(s.sr, rd, BoundMode::exact);
                const double harmonic = analytic::e2e_snr(s.sr, rd, BoundMode::harmonic);
                const double minimum = analytic::e2e_snr(s.sr, rd, BoundMode::min);
                if (!(exact <= harmonic && harmonic <= minimum)) {
                    ++acc.dominance_violations;
                }
                for (std::size_t k = 0; k < limits.size(); ++k) {
                    acc.exact_count[k] += exact <= limits[k] ? 1u : 0u;
                    acc.harmonic_count[k] += harmonic <= limits[k] ? 1u : 0u;
                    acc.min_count[k] += minimum <= limits[k] ? 1u : 0u;
                }
            }
            acc.n += count;
        });
    ModeComparison out = init;
    for (const ModeComparison& b : blocks) {
        for (std::size_t k = 0; k < limits.size(); ++k) {
            out.exact_count[k] += b.exact_count[k];
            out.harmonic_count[k] += b.harmonic_count[k];
            out.min_count[k] += b.min_count[k];
        }
        out.dominance_violations += b.dominance_violations;
        out.n += b.n;
    }
    return out;
}

std::vector<double> draw_samples(std::uint64_t count, std::uint64_t master_seed,
                                 unsigned worker_count,
                                 const std::function<double(Stream&)>& draw) {
    if (count == 0) {
        return {};
    }
    const auto blocks = run_blocks(count, master_seed, worker_count, std::vector<double>{},
                                   [&](Stream& stream, std::uint64_t n, std::vector<double>& acc) {
                                       acc.reserve(n);
                                       for (std::uint64_t i = 0; i < n; ++i) {
                                           acc.push_back(draw(stream));
                                       }
                                   });
    std::vector<double> out;
    out.reserve(count);
    for (const auto& b : blocks) {
        out.insert(out.end(), b.begin(), b.end());
    }
    return out;
}

}  // namespace ovlc::mc
