#include "ovlc/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <set>
#include <sstream>

#include "ovlc/errors.hpp"

namespace ovlc::cli {

namespace {

struct Entry {
    std::string value;
    int line = 0;
};

using Section = std::map<std::string, Entry>;

struct RawFile {
    std::map<std::string, Section> sections;
    std::map<std::string, int> section_lines;
};

const std::set<std::string> kSections = {"turbulence", "geometry", "noise", "relay",
                                         "sweep",      "sim",      "report"};

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

class Reader {
public:
    Reader(const RawFile& raw, std::string source) : raw_(raw), source_(std::move(source)) {}

    [[noreturn]] void fail(const std::string& section, const std::string& key,
                           const std::string& message) const {
        int line = 0;
        if (auto s = raw_.sections.find(section); s != raw_.sections.end()) {
            if (auto e = s->second.find(key); e != s->second.end()) {
                line = e->second.line;
            }
        }
        if (line == 0) {
            if (auto l = raw_.section_lines.find(section); l != raw_.section_lines.end()) {
                line = l->second;
            }
        }
        throw ValidationError(source_, line, section, key, message);
    }

    bool has_section(const std::string& section) const {
        return raw_.sections.count(section) != 0;
    }

    bool has(const std::string& section, const std::string& key) const {
        auto s = raw_.sections.find(section);
        return s != raw_.sections.end() && s->second.count(key) != 0;
    }

    const std::string* text(const std::string& section, const std::string& key) const {
        auto s = raw_.sections.find(section);
        if (s == raw_.sections.end()) {
            return nullptr;
        }
        auto e = s->second.find(key);
        return e == s->second.end() ? nullptr : &e->second.value;
    }

    double parse_number(const std::string& section, const std::string& key,
                        const std::string& value) const {
        double out = 0.0;
        const char* begin = value.data();
        const char* end = value.data() + value.size();
        auto [ptr, ec] = std::from_chars(begin, end, out);
        if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
            fail(section, key, "expected a finite number, got '" + value + "'");
        }
        return out;
    }

    std::optional<double> number(const std::string& section, const std::string& key) const {
        const std::string* v = text(section, key);
        if (v == nullptr) {
            return std::nullopt;
        }
        return parse_number(section, key, *v);
    }

    std::optional<std::uint64_t> unsigned_integer(const std::string& section,
                                                  const std::string& key) const {
        const std::string* v = text(section, key);
        if (v == nullptr) {
            return std::nullopt;
        }
        std::uint64_t out = 0;
        auto [ptr, ec] = std::from_chars(v->data(), v->data() + v->size(), out);
        if (ec != std::errc() || ptr != v->data() + v->size()) {
            fail(section, key, "expected a non-negative integer, got '" + *v + "'");
        }
        return out;
    }

    void reject_unknown(const std::string& section, const std::set<std::string>& allowed) const {
        auto s = raw_.sections.find(section);
        if (s == raw_.sections.end()) {
            return;
        }
        for (const auto& [key, entry] : s->second) {
            if (allowed.count(key) == 0) {
                fail(section, key, "unknown key");
            }
        }
    }

private:
    const RawFile& raw_;
    std::string source_;
};

RawFile read_raw(std::istream& in, const std::string& source) {
    RawFile raw;
    std::string current;
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        const auto hash = line.find_first_of("#;");
        const std::string body = trim(hash == std::string::npos ? line : line.substr(0, hash));
        if (body.empty()) {
            continue;
        }
        if (body.front() == '[') {
            if (body.back() != ']') {
                throw ValidationError(source, number, current, "", "malformed section header");
            }
            current = trim(body.substr(1, body.size() - 2));
            if (kSections.count(current) == 0) {
                throw ValidationError(source, number, current, "", "unknown section");
            }
            if (raw.section_lines.count(current) != 0) {
                throw ValidationError(source, number, current, "", "duplicate section");
            }
            raw.section_lines[current] = number;
            raw.sections[current];
            continue;
        }
        const auto eq = body.find('=');
        if (eq == std::string::npos) {
            throw ValidationError(source, number, current, "", "expected 'key = value'");
        }
        const std::string key = trim(body.substr(0, eq));
        const std::string value = trim(body.substr(eq + 1));
        if (current.empty()) {
            throw ValidationError(source, number, "", key, "key outside of any section");
        }
        if (key.empty()) {
            throw ValidationError(source, number, current, "", "empty key");
        }
        Section& section = raw.sections[current];
        if (section.count(key) != 0) {
            throw ValidationError(source, number, current, key, "duplicate key");
        }
        section[key] = Entry{value, number};
    }
    return raw;
}

std::vector<double> parse_grid(const Reader& r, const std::string& value) {
    std::vector<double> grid;
    if (value.find(':') != std::string::npos) {
        std::vector<std::string> parts;
        std::stringstream ss(value);
        std::string part;
        while (std::getline(ss, part, ':')) {
            parts.push_back(trim(part));
        }
        if (parts.size() != 3) {
            r.fail("sweep", "points", "range form is start:step:stop");
        }
        const double start = r.parse_number("sweep", "points", parts[0]);
        const double step = r.parse_number("sweep", "points", parts[1]);
        const double stop = r.parse_number("sweep", "points", parts[2]);
        if (!(step > 0.0) || stop < start) {
            r.fail("sweep", "points", "range needs step > 0 and stop >= start");
        }
        const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
        if (count > 100000) {
            r.fail("sweep", "points", "range has too many points");
        }
        for (long i = 0; i < count; ++i) {
            grid.push_back(start + static_cast<double>(i) * step);
        }
        return grid;
    }
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) {
            r.fail("sweep", "points", "empty entry in list");
        }
        grid.push_back(r.parse_number("sweep", "points", item));
    }
    return grid;
}

void read_turbulence(const Reader& r, Scenario& s) {
    if (!r.has_section("turbulence")) {
        r.fail("turbulence", "", "section is required");
    }
    r.reject_unknown("turbulence", {"preset", "alpha", "beta", "cn2", "wavelength", "aperture",
                                    "path_length", "beta_xi"});
    const bool preset = r.has("turbulence", "preset");
    const bool shape = r.has("turbulence", "alpha") || r.has("turbulence", "beta");
    const bool physical = r.has("turbulence", "cn2") || r.has("turbulence", "wavelength") ||
                          r.has("turbulence", "aperture") || r.has("turbulence", "path_length");
    if (static_cast<int>(preset) + static_cast<int>(shape) + static_cast<int>(physical) != 1) {
        r.fail("turbulence", "",
               "give exactly one of: preset | alpha and beta | cn2, wavelength, aperture, "
               "path_length");
    }
    if (!physical && r.has("turbulence", "beta_xi")) {
        r.fail("turbulence", "beta_xi", "only valid with a physical turbulence description");
    }
    try {
        if (preset) {
            const std::string name = *r.text("turbulence", "preset");
            const auto p = find_preset(name);
            if (!p) {
                r.fail("turbulence", "preset", "unknown preset '" + name + "'");
            }
            s.regime = p->name;
            s.turbulence = channel::TurbulenceParams::direct(p->alpha, p->beta);
        } else if (shape) {
            const auto a = r.number("turbulence", "alpha");
            const auto b = r.number("turbulence", "beta");
            if (!a || !b) {
                r.fail("turbulence", a ? "beta" : "alpha", "alpha and beta must both be given");
            }
            if (!(*a > 0.0) || !(*b > 0.0)) {
                r.fail("turbulence", *a > 0.0 ? "beta" : "alpha", "must be > 0");
            }
            s.regime = "custom";
            s.turbulence = channel::TurbulenceParams::direct(*a, *b);
        } else {
            channel::PhysicalTurbulence phys;
            for (const char* key : {"cn2", "wavelength", "aperture", "path_length"}) {
                const auto v = r.number("turbulence", key);
                if (!v) {
                    r.fail("turbulence", key, "required for a physical turbulence description");
                }
                if (!(*v > 0.0)) {
                    r.fail("turbulence", key, "must be > 0");
                }
            }
            phys.cn2 = *r.number("turbulence", "cn2");
            phys.wavelength = *r.number("turbulence", "wavelength");
            phys.aperture = *r.number("turbulence", "aperture");
            phys.path_length = *r.number("turbulence", "path_length");
            phys.beta_xi = r.number("turbulence", "beta_xi").value_or(1.0);
            s.regime = "physical";
            s.turbulence = channel::TurbulenceParams::from_physics(phys);
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        r.fail("turbulence", "", e.what());
    }
}

void read_geometry(const Reader& r, Scenario& s) {
    using G = channel::LinkGeometry;
    const std::vector<std::pair<std::string, double G::*>> fields = {
        {"lambertian_order", &G::lambertian_order},
        {"pd_area", &G::pd_area},
        {"distance", &G::distance},
        {"irradiance_angle", &G::irradiance_angle},
        {"incidence_angle", &G::incidence_angle},
        {"filter_gain", &G::filter_gain},
        {"concentrator_gain", &G::concentrator_gain},
        {"fov", &G::fov},
        {"distance_exponent", &G::distance_exponent},
    };
    std::set<std::string> allowed;
    for (const auto& [name, member] : fields) {
        allowed.insert(name);
        allowed.insert("sr_" + name);
        allowed.insert("rd_" + name);
    }
    r.reject_unknown("geometry", allowed);
    for (const auto& [name, member] : fields) {
        if (const auto v = r.number("geometry", name)) {
            s.sr_geometry.*member = *v;
            s.rd_geometry.*member = *v;
        }
    }
    for (const auto& [name, member] : fields) {
        if (const auto v = r.number("geometry", "sr_" + name)) {
            s.sr_geometry.*member = *v;
        }
        if (const auto v = r.number("geometry", "rd_" + name)) {
            s.rd_geometry.*member = *v;
        }
    }
    try {
        s.sr_geometry.validate();
    } catch (const DomainError& e) {
        r.fail("geometry", "", std::string("source-relay hop: ") + e.what());
    }
    try {
        s.rd_geometry.validate();
    } catch (const DomainError& e) {
        r.fail("geometry", "", std::string("relay-destination hop: ") + e.what());
    }
}

void read_noise(const Reader& r, Scenario& s) {
    using N = noise::NoiseEnvironment;
    const std::vector<std::pair<std::string, double N::*>> fields = {
        {"electron_charge", &N::electron_charge},
        {"noise_bandwidth", &N::noise_bandwidth},
        {"rect_bandwidth_factor", &N::rect_bandwidth_factor},
        {"peak_filter_transmission", &N::peak_filter_transmission},
        {"concentrator_refractive_index", &N::concentrator_refractive_index},
        {"fov_halfangle", &N::fov_halfangle},
        {"spectral_lower", &N::spectral_lower},
        {"spectral_upper", &N::spectral_upper},
        {"peak_spectral_irradiance", &N::peak_spectral_irradiance},
        {"sun_temperature", &N::sun_temperature},
        {"planck", &N::planck},
        {"boltzmann", &N::boltzmann},
        {"light_speed", &N::light_speed},
        {"absolute_temperature", &N::absolute_temperature},
        {"open_loop_gain", &N::open_loop_gain},
        {"capacitance_per_area", &N::capacitance_per_area},
        {"fet_noise_factor", &N::fet_noise_factor},
        {"fet_transconductance", &N::fet_transconductance},
        {"raised_cosine_factor", &N::raised_cosine_factor},
        {"conversion_factor", &N::conversion_factor},
    };
    std::set<std::string> allowed{"spectral_max"};
    for (const auto& [name, member] : fields) {
        allowed.insert(name);
    }
    r.reject_unknown("noise", allowed);
    for (const auto& [name, member] : fields) {
        if (const auto v = r.number("noise", name)) {
            s.noise.*member = *v;
        }
    }
    if (const std::string* v = r.text("noise", "spectral_max")) {
        if (*v == "window") {
            s.noise.spectral_max_domain = noise::SpectralMaxDomain::window;
        } else if (*v == "global") {
            s.noise.spectral_max_domain = noise::SpectralMaxDomain::global;
        } else {
            r.fail("noise", "spectral_max", "expected window|global");
        }
    }
    try {
        s.noise.validate();
    } catch (const DomainError& e) {
        r.fail("noise", "", e.what());
    }
}

void read_relay(const Reader& r, Scenario& s) {
    r.reject_unknown("relay",
                     {"spectral_efficiency", "derive", "snr_sr_db", "snr_rd_db", "tx_power_w"});
    if (const auto v = r.number("relay", "spectral_efficiency")) {
        if (!(*v > 0.0) || *v > 20.0) {
            r.fail("relay", "spectral_efficiency", "must lie in (0, 20] bit/s/Hz");
        }
        s.spectral_efficiency = *v;
    }
    if (const std::string* v = r.text("relay", "derive")) {
        if (*v == "physics") {
            s.derive_from_physics = true;
        } else if (*v == "explicit") {
            s.derive_from_physics = false;
        } else {
            r.fail("relay", "derive", "expected explicit|physics");
        }
    }
    if (const auto v = r.number("relay", "snr_sr_db")) {
        s.snr_sr_db = *v;
    }
    if (const auto v = r.number("relay", "snr_rd_db")) {
        s.snr_rd_db = *v;
    }
    if (const auto v = r.number("relay", "tx_power_w")) {
        if (!(*v > 0.0)) {
            r.fail("relay", "tx_power_w", "must be > 0");
        }
        s.tx_power_w = *v;
    }
    if (s.derive_from_physics && (r.has("relay", "snr_sr_db") || r.has("relay", "snr_rd_db"))) {
        r.fail("relay", r.has("relay", "snr_sr_db") ? "snr_sr_db" : "snr_rd_db",
               "explicit SNRs conflict with derive = physics");
    }
    if (s.snr_sr_db && s.snr_rd_db) {
        r.fail("relay", "snr_rd_db", "pinning both hops leaves nothing to sweep");
    }
}

void read_sweep(const Reader& r, Scenario& s) {
    r.reject_unknown("sweep", {"axis", "points"});
    if (const std::string* v = r.text("sweep", "axis")) {
        if (*v == "snr_db") {
            s.axis = SweepAxis::snr_db;
        } else if (*v == "distance_m") {
            s.axis = SweepAxis::distance_m;
        } else {
            r.fail("sweep", "axis", "expected snr_db|distance_m");
        }
    } else if (s.derive_from_physics) {
        s.axis = SweepAxis::distance_m;
    }
    if (s.axis == SweepAxis::distance_m && !s.derive_from_physics) {
        r.fail("sweep", "axis", "distance_m sweeps need [relay] derive = physics");
    }
    if (s.axis == SweepAxis::snr_db && s.derive_from_physics) {
        r.fail("sweep", "axis", "snr_db sweeps need [relay] derive = explicit");
    }
    if (const std::string* v = r.text("sweep", "points")) {
        if (v->empty()) {
            r.fail("sweep", "points", "sweep grid is empty");
        }
        s.grid = parse_grid(r, *v);
    } else if (s.axis == SweepAxis::snr_db) {
        for (int i = 0; i <= 20; ++i) {
            s.grid.push_back(2.0 * i);
        }
    } else {
        s.grid = {5.0, 10.0, 20.0, 40.0};
    }
    if (s.grid.empty()) {
        r.fail("sweep", "points", "sweep grid is empty");
    }
    for (std::size_t i = 1; i < s.grid.size(); ++i) {
        if (!(s.grid[i] > s.grid[i - 1])) {
            r.fail("sweep", "points", "grid must be strictly increasing");
        }
    }
    if (s.axis == SweepAxis::distance_m && !(s.grid.front() > 0.0)) {
        r.fail("sweep", "points", "distances must be > 0");
    }
}

void read_sim(const Reader& r, Scenario& s) {
    r.reject_unknown("sim", {"samples", "seed", "mode"});
    if (const auto v = r.unsigned_integer("sim", "samples")) {
        if (*v == 0) {
            r.fail("sim", "samples", "must be >= 1");
        }
        s.samples = *v;
    }
    if (const auto v = r.unsigned_integer("sim", "seed")) {
        s.seed = *v;
    }
    if (const std::string* v = r.text("sim", "mode")) {
        try {
            s.mode = analytic::parse_bound_mode(v->c_str());
        } catch (const DomainError& e) {
            r.fail("sim", "mode", e.what());
        }
    }
}

void read_report(const Reader& r, Scenario& s) {
    r.reject_unknown("report", {"out", "format", "discrepancy"});
    if (const std::string* v = r.text("report", "out")) {
        if (v->empty()) {
            r.fail("report", "out", "output directory must not be empty");
        }
        s.out_dir = *v;
    }
    if (const std::string* v = r.text("report", "format")) {
        if (*v == "csv") {
            s.format = ReportFormat::csv;
        } else if (*v == "json") {
            s.format = ReportFormat::json;
        } else {
            r.fail("report", "format", "expected csv|json");
        }
    }
    if (const std::string* v = r.text("report", "discrepancy")) {
        if (*v == "true") {
            s.discrepancy = true;
        } else if (*v == "false") {
            s.discrepancy = false;
        } else {
            r.fail("report", "discrepancy", "expected true|false");
        }
    }
}

std::string format_location(const std::string& source, int line, const std::string& section,
                            const std::string& key, const std::string& message) {
    std::ostringstream os;
    os << source;
    if (line > 0) {
        os << ':' << line;
    }
    os << ": ";
    if (!section.empty()) {
        os << '[' << section << "] ";
    }
    if (!key.empty()) {
        os << key << ": ";
    }
    os << message;
    return os.str();
}

}  // namespace

ValidationError::ValidationError(std::string source, int line, std::string section,
                                 std::string key, const std::string& message)
    : std::runtime_error(format_location(source, line, section, key, message)),
      section_(std::move(section)),
      key_(std::move(key)),
      line_(line) {}

const std::vector<RegimePreset>& regime_presets() {
    static const std::vector<RegimePreset> presets = {
        {"weak", 8.1, 4.0},
        {"moderate", 4.2, 3.0},
        {"strong", 2.2, 2.0},
    };
    return presets;
}

std::optional<RegimePreset> find_preset(const std::string& name) {
    for (const RegimePreset& p : regime_presets()) {
        if (name == p.name) {
            return p;
        }
    }
    return std::nullopt;
}

const char* to_string(SweepAxis axis) {
    return axis == SweepAxis::snr_db ? "snr_db" : "distance_m";
}

const char* to_string(ReportFormat format) {
    return format == ReportFormat::csv ? "csv" : "json";
}

Scenario parse_scenario(std::istream& in, const std::string& source) {
    const RawFile raw = read_raw(in, source);
    const Reader r(raw, source);
    Scenario s;
    s.source = source;
    read_turbulence(r, s);
    read_geometry(r, s);
    read_noise(r, s);
    read_relay(r, s);
    read_sweep(r, s);
    read_sim(r, s);
    read_report(r, s);
    // Every grid point must yield valid SNRs.
    for (double v : s.grid) {
        try {
            (void)hop_snrs_at(s, v);
        } catch (const std::exception& e) {
            r.fail(s.derive_from_physics ? "geometry" : "relay", "",
                   std::string("cannot form average SNRs: ") + e.what());
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ValidationError(path, 0, "", "", "cannot open scenario file");
    }
    return parse_scenario(in, path);
}

HopSnrs hop_snrs_at(const Scenario& scen, double sweep_value) {
    if (!scen.derive_from_physics) {
        return {channel::AvgSnr::from_db(scen.snr_sr_db.value_or(sweep_value)),
                channel::AvgSnr::from_db(scen.snr_rd_db.value_or(sweep_value))};
    }
    channel::LinkGeometry rd = scen.rd_geometry;
    if (scen.axis == SweepAxis::distance_m) {
        rd.distance = sweep_value;
    }
    return {noise::hop_average_snr(scen.sr_geometry, scen.noise, scen.tx_power_w),
            noise::hop_average_snr(rd, scen.noise, scen.tx_power_w)};
}

analytic::RelayScenario relay_scenario_at(const Scenario& scen, double sweep_value) {
    const HopSnrs snrs = hop_snrs_at(scen, sweep_value);
    return analytic::RelayScenario{scen.turbulence, scen.turbulence, snrs.sr, snrs.rd,
                                   scen.spectral_efficiency, std::nullopt, std::nullopt};
}

}  // namespace ovlc::cli
