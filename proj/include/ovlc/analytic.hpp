#pragma once

#include <functional>
#include <optional>

#include "ovlc/channel.hpp"

namespace ovlc::analytic {

using channel::AvgSnr;
using channel::TurbulenceParams;

/// How the relay hop SNRs combine into the destination SNR.
enum class BoundMode {
    exact,     // g_sr g_rd / (g_sr + g_rd + 1)
    harmonic,  // g_sr g_rd / (g_sr + g_rd)
    min,       // min(g_sr, g_rd)
};

const char* to_string(BoundMode mode);
/// Parses "exact", "harmonic" or "min"; throws DomainError otherwise.
BoundMode parse_bound_mode(const char* text);

/// Source -> relay hop plus two selection-combined relay -> destination LED links.
///
/// The second R->D link defaults to the first one's turbulence and average SNR. The
/// published closed forms need a single (alpha, beta) and a single R->D average SNR.
struct RelayScenario {
    TurbulenceParams sr_turbulence;
    TurbulenceParams rd_turbulence;
    AvgSnr snr_sr;
    AvgSnr snr_rd;
    double spectral_efficiency = 1.0;  // R [bit/s/Hz]
    std::optional<TurbulenceParams> rd2_turbulence;
    std::optional<AvgSnr> snr_rd2;

    const TurbulenceParams& rd2_params() const { return rd2_turbulence ? *rd2_turbulence : rd_turbulence; }
    AvgSnr rd2_snr() const { return snr_rd2 ? *snr_rd2 : snr_rd; }

    /// gamma_out = 2^(2R) - 1.
    double outage_threshold() const;

    /// Throws DomainError when spectral_efficiency is not > 0.
    void validate() const;

    /// True when every link shares one (alpha, beta) and both R->D links share one SNR.
    bool paper_form_applicable() const;
};

double outage_threshold(double spectral_efficiency);

/// g_sr g_rd / (g_sr + g_rd + 1).
double e2e_snr_exact(double gamma_sr, double gamma_rd);

/// Harmonic bound g_sr g_rd / (g_sr + g_rd), or min(g_sr, g_rd) when mode is BoundMode::min.
double e2e_snr_bound(double gamma_sr, double gamma_rd, BoundMode mode = BoundMode::harmonic);

/// Destination SNR under any of the three modes.
double e2e_snr(double gamma_sr, double gamma_rd, BoundMode mode);

using Cdf = std::function<double(double)>;

/// CDF of max(X1, X2) for independent X1 ~ F1, X2 ~ F2.
Cdf sc_combine_cdf(Cdf f1, Cdf f2);

/// Published closed-form end-to-end CDF, evaluated term by term as printed.
/// Throws DomainError unless scen.paper_form_applicable().
double e2e_cdf_paper(double gamma, const RelayScenario& scen);

/// Published closed-form end-to-end PDF, evaluated term by term as printed.
double e2e_pdf_paper(double gamma, const RelayScenario& scen);

/// Exact CDF of the destination SNR built from per-link quadrature CDFs.
///
/// min mode: F_sr + F_rd - F_sr F_rd with F_rd = F_rd1 F_rd2.
/// exact / harmonic: F_sr(g) + integral_g^inf f_sr(x) F_rd(t(x)) dx with
/// t(x) = g (x + 1) / (x - g) or g x / (x - g).
double e2e_cdf_reference(double gamma, const RelayScenario& scen,
                         BoundMode mode = BoundMode::min);

/// 1 - e2e_cdf_reference in min mode, accurate in the upper tail.
double e2e_sf_reference(double gamma, const RelayScenario& scen);

/// Density of min(g_sr, max(g_rd1, g_rd2)).
double e2e_pdf_reference(double gamma, const RelayScenario& scen);

enum class Form { paper, reference };

/// P(gamma_D <= gamma_out) from either the published closed form or the reference CDF.
double outage_probability(const RelayScenario& scen, Form form,
                          BoundMode mode = BoundMode::min);

struct CapacityResult {
    double value = 0.0;           // bit/s/Hz
    double error_estimate = 0.0;  // quadrature error, bit/s/Hz
    double truncation_point = 0.0;
    double tail = 0.0;            // contribution beyond truncation_point, bit/s/Hz
};

/// Ergodic capacity (1/ln 2) integral ln(1 + g) f_D(g) dg against the min-mode reference density.
///
/// The density integral stops at the first g_max (doubling from the smaller average SNR) with
/// 1 - F(g_max) < 1e-9; the remainder ln(1 + g_max) S(g_max) + integral_{g_max}^inf S/(1+g)
/// is added and reported separately as `tail`.
CapacityResult ergodic_capacity_quadrature(const RelayScenario& scen);

/// Prefactors and Bessel-argument seeds of the published capacity expression.
struct CapacityConstants {
    double p = 0.0;
    double q = 0.0;
    double r = 0.0;
    double a = 0.0;
    double b = 0.0;
};

CapacityConstants capacity_constants(const RelayScenario& scen);

/// Published closed-form capacity as printed. The Bessel factors read K(root4(A x)) with x
/// undefined in the expression; bessel_x sets it (default 1). Throws PoleError when a csc
/// argument is within pole_epsilon of a multiple of pi.
double ergodic_capacity_paper(const RelayScenario& scen, double bessel_x = 1.0,
                              double pole_epsilon = 1e-9);

}  // namespace ovlc::analytic
