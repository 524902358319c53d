#include "ovlc/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "ovlc/errors.hpp"
#include "ovlc/specfun.hpp"

namespace ovlc::analytic {

namespace {

using channel::detail::power_bessel_product;

constexpr double kCapacityTailMass = 1e-9;

specfun::QuadratureSpec outer_quadrature() {
    specfun::QuadratureSpec spec;
    spec.abs_tolerance = 1e-13;
    spec.rel_tolerance = 1e-10;
    spec.max_subdivisions = 4000;
    return spec;
}

// Shared pieces of the published closed forms.
struct PaperForm {
    double s;          // alpha + beta
    double nu;         // alpha - beta
    double log_gg;     // log Gamma(alpha) + log Gamma(beta)
    double log_r_sr;   // log(alpha beta / sqrt(avg_sr))
    double log_r_rd;   // log(alpha beta / sqrt(avg_rd))
    double scale_sr;   // 2 sqrt(sqrt(alpha beta) / sqrt(avg_sr))
    double scale_rd;

    explicit PaperForm(const RelayScenario& scen) {
        if (!scen.paper_form_applicable()) {
            throw DomainError(
                "closed forms need one (alpha, beta) for all links and one R->D average SNR");
        }
        const double a = scen.sr_turbulence.alpha();
        const double b = scen.sr_turbulence.beta();
        s = a + b;
        nu = a - b;
        log_gg = specfun::log_gamma(a) + specfun::log_gamma(b);
        log_r_sr = std::log(a * b / std::sqrt(scen.snr_sr.value()));
        log_r_rd = std::log(a * b / std::sqrt(scen.snr_rd.value()));
        scale_sr = 2.0 * std::sqrt(std::sqrt(a * b) / std::sqrt(scen.snr_sr.value()));
        scale_rd = 2.0 * std::sqrt(std::sqrt(a * b) / std::sqrt(scen.snr_rd.value()));
    }
};

bool second_link_identical(const RelayScenario& scen) {
    return scen.rd2_params().same_shape(scen.rd_turbulence) &&
           scen.rd2_snr().value() == scen.snr_rd.value();
}

// F_rd(g) = F_rd1(g) F_rd2(g)
double cdf_rd(double gamma, const RelayScenario& scen) {
    const double f1 = channel::gg_cdf_snr_reference(gamma, scen.rd_turbulence, scen.snr_rd);
    if (second_link_identical(scen)) {
        return f1 * f1;
    }
    return f1 * channel::gg_cdf_snr_reference(gamma, scen.rd2_params(), scen.rd2_snr());
}

double sf_rd(double gamma, const RelayScenario& scen) {
    const double s1 = channel::gg_sf_snr_reference(gamma, scen.rd_turbulence, scen.snr_rd);
    const double s2 = second_link_identical(scen)
                          ? s1
                          : channel::gg_sf_snr_reference(gamma, scen.rd2_params(), scen.rd2_snr());
    return s1 + s2 - s1 * s2;
}

double combined_threshold(double gamma, double x, BoundMode mode) {
    // Largest g_rd with e2e_snr(x, g_rd) <= gamma, for x > gamma.
    const double gap = x - gamma;
    return mode == BoundMode::exact ? gamma * (x + 1.0) / gap : gamma * x / gap;
}

}  // namespace

const char* to_string(BoundMode mode) {
    switch (mode) {
        case BoundMode::exact:
            return "exact";
        case BoundMode::harmonic:
            return "harmonic";
        case BoundMode::min:
            return "min";
    }
    return "unknown";
}

BoundMode parse_bound_mode(const char* text) {
    if (std::strcmp(text, "exact") == 0) {
        return BoundMode::exact;
    }
    if (std::strcmp(text, "harmonic") == 0) {
        return BoundMode::harmonic;
    }
    if (std::strcmp(text, "min") == 0) {
        return BoundMode::min;
    }
    throw DomainError(std::string("unknown mode '") + text + "' (expected exact|min|harmonic)");
}

double outage_threshold(double spectral_efficiency) {
    if (!(spectral_efficiency > 0.0)) {
        throw DomainError("spectral efficiency must be > 0");
    }
    return std::exp2(2.0 * spectral_efficiency) - 1.0;
}

double RelayScenario::outage_threshold() const {
    return analytic::outage_threshold(spectral_efficiency);
}

void RelayScenario::validate() const {
    if (!(spectral_efficiency > 0.0) || !std::isfinite(spectral_efficiency)) {
        throw DomainError("RelayScenario: spectral_efficiency must be finite and > 0");
    }
}

bool RelayScenario::paper_form_applicable() const {
    return sr_turbulence.same_shape(rd_turbulence) && second_link_identical(*this);
}

double e2e_snr_exact(double gamma_sr, double gamma_rd) {
    if (gamma_sr < 0.0 || gamma_rd < 0.0) {
        throw DomainError("e2e_snr_exact: SNRs must be >= 0");
    }
    const double lo = std::min(gamma_sr, gamma_rd);
    const double hi = std::max(gamma_sr, gamma_rd);
    if (hi == 0.0) {
        return 0.0;
    }
    // lo hi / (lo + hi + 1) written so that exact <= harmonic <= min holds in floating point.
    return lo / (1.0 + (lo + 1.0) / hi);
}

double e2e_snr_bound(double gamma_sr, double gamma_rd, BoundMode mode) {
    if (gamma_sr < 0.0 || gamma_rd < 0.0) {
        throw DomainError("e2e_snr_bound: SNRs must be >= 0");
    }
    const double lo = std::min(gamma_sr, gamma_rd);
    const double hi = std::max(gamma_sr, gamma_rd);
    if (mode == BoundMode::min) {
        return lo;
    }
    if (hi == 0.0) {
        throw DomainError("e2e_snr_bound: harmonic bound undefined when both SNRs are 0");
    }
    return lo / (1.0 + lo / hi);
}

double e2e_snr(double gamma_sr, double gamma_rd, BoundMode mode) {
    if (mode == BoundMode::exact) {
        return e2e_snr_exact(gamma_sr, gamma_rd);
    }
    if (mode == BoundMode::harmonic && gamma_sr == 0.0 && gamma_rd == 0.0) {
        return 0.0;
    }
    return e2e_snr_bound(gamma_sr, gamma_rd, mode);
}

Cdf sc_combine_cdf(Cdf f1, Cdf f2) {
    return [f1 = std::move(f1), f2 = std::move(f2)](double x) { return f1(x) * f2(x); };
}

double e2e_cdf_paper(double gamma, const RelayScenario& scen) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("e2e_cdf_paper: gamma must be >= 0");
    }
    const PaperForm pf(scen);
    const double s = pf.s;
    const double t1 = power_bessel_product(
        gamma, 1.0, std::log(4.0) - std::log(s) - pf.log_gg + 0.5 * s * pf.log_r_sr,
        0.25 * s - 1.0, pf.nu, 0.25, {{pf.scale_sr, 1.0}});
    const double t2 = power_bessel_product(
        gamma, 1.0, std::log(16.0) - 2.0 * std::log(s) - 2.0 * pf.log_gg + s * pf.log_r_rd, s,
        pf.nu, 0.25, {{pf.scale_rd, 2.0}});
    const double t3 = power_bessel_product(
        gamma, -1.0,
        std::log(64.0) - 3.0 * std::log(s) - 3.0 * pf.log_gg + 0.5 * s * pf.log_r_sr +
            s * pf.log_r_rd,
        0.75 * s, pf.nu, 0.25, {{pf.scale_sr, 1.0}, {pf.scale_rd, 2.0}});
    return t1 + t2 + t3;
}

double e2e_pdf_paper(double gamma, const RelayScenario& scen) {
    if (!(gamma > 0.0)) {
        throw DomainError("e2e_pdf_paper: gamma must be > 0");
    }
    const PaperForm pf(scen);
    const double s = pf.s;
    const double t1 = power_bessel_product(gamma, 1.0, -pf.log_gg + 0.5 * s * pf.log_r_sr,
                                           0.25 * s - 1.0, pf.nu, 0.25, {{pf.scale_sr, 1.0}});
    const double t2 = power_bessel_product(
        gamma, 1.0, std::log(8.0) - std::log(s) - 2.0 * pf.log_gg + s * pf.log_r_rd, s - 2.0,
        pf.nu, 0.25, {{pf.scale_rd, 2.0}});
    const double t3 = power_bessel_product(
        gamma, -1.0,
        std::log(48.0) - 2.0 * std::log(s) - 3.0 * pf.log_gg + 0.5 * s * pf.log_r_sr +
            s * pf.log_r_rd,
        0.75 * s - 1.0, pf.nu, 0.25, {{pf.scale_sr, 1.0}, {pf.scale_rd, 2.0}});
    return t1 + t2 + t3;
}

double e2e_cdf_reference(double gamma, const RelayScenario& scen, BoundMode mode) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("e2e_cdf_reference: gamma must be >= 0");
    }
    if (gamma == 0.0) {
        return 0.0;
    }
    if (std::isinf(gamma)) {
        return 1.0;
    }
    const double f_sr = channel::gg_cdf_snr_reference(gamma, scen.sr_turbulence, scen.snr_sr);
    if (mode == BoundMode::min) {
        const double f_rd = cdf_rd(gamma, scen);
        if (f_sr > 0.5 || f_rd > 0.5) {
            // upper tail: the survival product keeps the result monotone near 1
            return std::clamp(1.0 - e2e_sf_reference(gamma, scen), 0.0, 1.0);
        }
        return std::clamp(f_sr + f_rd - f_sr * f_rd, 0.0, 1.0);
    }
    // x = gamma + avg_sr * u keeps the bulk of f_sr at u = O(1).
    const double avg = scen.snr_sr.value();
    const specfun::Integrand integrand = [&](double u) {
        const double x = gamma + avg * u;
        const double density = channel::gg_pdf_snr(x, scen.sr_turbulence, scen.snr_sr);
        if (density == 0.0) {
            return 0.0;
        }
        return avg * density * cdf_rd(combined_threshold(gamma, x, mode), scen);
    };
    const double tail =
        specfun::integrate(integrand, 0.0, std::numeric_limits<double>::infinity(),
                           outer_quadrature())
            .value;
    return std::clamp(f_sr + tail, 0.0, 1.0);
}

double e2e_sf_reference(double gamma, const RelayScenario& scen) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("e2e_sf_reference: gamma must be >= 0");
    }
    return channel::gg_sf_snr_reference(gamma, scen.sr_turbulence, scen.snr_sr) *
           sf_rd(gamma, scen);
}

double e2e_pdf_reference(double gamma, const RelayScenario& scen) {
    if (gamma < 0.0 || std::isnan(gamma)) {
        throw DomainError("e2e_pdf_reference: gamma must be >= 0");
    }
    const double f_sr = channel::gg_pdf_snr(gamma, scen.sr_turbulence, scen.snr_sr);
    const double s_sr = channel::gg_sf_snr_reference(gamma, scen.sr_turbulence, scen.snr_sr);
    const double pdf1 = channel::gg_pdf_snr(gamma, scen.rd_turbulence, scen.snr_rd);
    const double cdf1 = channel::gg_cdf_snr_reference(gamma, scen.rd_turbulence, scen.snr_rd);
    double pdf2 = pdf1;
    double cdf2 = cdf1;
    if (!second_link_identical(scen)) {
        pdf2 = channel::gg_pdf_snr(gamma, scen.rd2_params(), scen.rd2_snr());
        cdf2 = channel::gg_cdf_snr_reference(gamma, scen.rd2_params(), scen.rd2_snr());
    }
    const double f_rd = pdf1 * cdf2 + cdf1 * pdf2;
    const double s_rd = 1.0 - cdf1 * cdf2;
    return f_sr * s_rd + f_rd * s_sr;
}

double outage_probability(const RelayScenario& scen, Form form, BoundMode mode) {
    scen.validate();
    const double threshold = scen.outage_threshold();
    return form == Form::paper ? e2e_cdf_paper(threshold, scen)
                               : e2e_cdf_reference(threshold, scen, mode);
}

CapacityResult ergodic_capacity_quadrature(const RelayScenario& scen) {
    scen.validate();
    const double smallest =
        std::min({scen.snr_sr.value(), scen.snr_rd.value(), scen.rd2_snr().value()});
    CapacityResult out;
    double g_max = smallest;
    for (int i = 0; i < 2000 && e2e_sf_reference(g_max, scen) >= kCapacityTailMass; ++i) {
        g_max *= 2.0;
    }
    out.truncation_point = g_max;

    // Geometric breakpoints keep each piece at a single scale of the density.
    std::vector<double> breaks{0.0};
    for (double b = smallest / 64.0; b < g_max; b *= 8.0) {
        breaks.push_back(b);
    }
    breaks.push_back(g_max);

    const specfun::Integrand body = [&scen](double g) {
        const double density = e2e_pdf_reference(g, scen);
        return density == 0.0 ? 0.0 : std::log1p(g) * density;
    };
    const specfun::QuadratureSpec spec = outer_quadrature();
    double value = 0.0;
    double err = 0.0;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        const auto piece = specfun::integrate(body, breaks[i], breaks[i + 1], spec);
        value += piece.value;
        err += piece.error_estimate;
    }
    // Remainder by parts: ln(1 + g_max) S(g_max) + integral S(g) / (1 + g) beyond g_max.
    const specfun::Integrand survival = [&scen, g_max](double u) {
        const double g = g_max * (1.0 + u);
        const double s = e2e_sf_reference(g, scen);
        return s == 0.0 ? 0.0 : g_max * s / (1.0 + g);
    };
    const auto tail_integral =
        specfun::integrate(survival, 0.0, std::numeric_limits<double>::infinity(), spec);
    const double tail = std::log1p(g_max) * e2e_sf_reference(g_max, scen) + tail_integral.value;
    out.tail = tail / std::numbers::ln2;
    out.value = (value + tail) / std::numbers::ln2;
    out.error_estimate = (err + tail_integral.error_estimate) / std::numbers::ln2;
    return out;
}

CapacityConstants capacity_constants(const RelayScenario& scen) {
    const PaperForm pf(scen);
    const double s = pf.s;
    const double log_s = std::log(s);
    CapacityConstants c;
    c.p = std::exp(std::log(4.0) + 0.5 * s * pf.log_r_sr - log_s - pf.log_gg);
    c.q = std::exp(std::log(16.0) + s * pf.log_r_rd - 3.0 * log_s - 2.0 * pf.log_gg);
    c.r = std::exp(std::log(64.0) + 0.5 * s * pf.log_r_sr + s * pf.log_r_rd - 3.0 * log_s -
                   3.0 * pf.log_gg);
    c.a = pf.scale_sr;
    c.b = pf.scale_rd;
    if (!std::isfinite(c.p) || !std::isfinite(c.q) || !std::isfinite(c.r)) {
        throw OverflowError("capacity_constants: prefactor exceeds the double range");
    }
    return c;
}

double ergodic_capacity_paper(const RelayScenario& scen, double bessel_x, double pole_epsilon) {
    if (!(bessel_x > 0.0)) {
        throw DomainError("ergodic_capacity_paper: bessel_x must be > 0");
    }
    const CapacityConstants c = capacity_constants(scen);
    const double s = scen.sr_turbulence.alpha() + scen.sr_turbulence.beta();
    const double nu = scen.sr_turbulence.alpha() - scen.sr_turbulence.beta();
    const double csc3 = specfun::csc_guarded(3.0 * s * std::numbers::pi / 4.0, pole_epsilon);
    const double csc2 = specfun::csc_guarded(s * std::numbers::pi / 2.0, pole_epsilon);
    const double csc1 = specfun::csc_guarded(s * std::numbers::pi / 4.0, pole_epsilon);
    const double k_a = specfun::bessel_k(nu, std::sqrt(std::sqrt(c.a * bessel_x)));
    const double k_b = specfun::bessel_k(nu, std::sqrt(std::sqrt(c.b * bessel_x)));
    const double lead = std::numbers::pi / std::numbers::ln2;
    const double value = lead * (-c.r * k_a * k_b * k_b * csc3) + lead * (c.q * k_b * k_b * csc2) +
                         c.p * k_a * csc1;
    if (!std::isfinite(value)) {
        throw OverflowError("ergodic_capacity_paper: result exceeds the double range");
    }
    return value;
}

}  // namespace ovlc::analytic
