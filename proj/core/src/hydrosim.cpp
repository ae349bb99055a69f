#include "gct/hydrosim.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "gct/errors.hpp"
#include "gct/rng.hpp"

namespace gct {

// Curve constant as conventionally written; intentionally 0.693, not ln 2.
static constexpr double kHalfDecay = 0.693;

void CycloneSimConfig::validate() const {
    auto fail = [](const std::string& msg) { throw ValidationError("sim config: " + msg); };
    if (!(feed_d63 > 0.0)) fail("feed_d63 must be > 0");
    if (!(feed_n > 0.0)) fail("feed_n must be > 0");
    if (!(d50_base > 0.0)) fail("d50_base must be > 0");
    if (!(sharpness_m > 0.0)) fail("sharpness_m must be > 0");
    if (!(bypass_rf >= 0.0 && bypass_rf < 1.0)) fail("bypass_rf must be in [0,1)");
    if (!(noise_sd >= 0.0)) fail("noise_sd must be >= 0");
    if (size_fractions.empty()) fail("size_fractions must be non-empty");
    for (std::size_t i = 0; i < size_fractions.size(); ++i) {
        if (!(size_fractions[i] > 0.0)) fail("size_fractions must be positive");
        if (i > 0 && !(size_fractions[i] > size_fractions[i - 1]))
            fail("size_fractions must be strictly increasing");
    }
    if (operating_points.empty()) fail("operating_points must be non-empty");
    for (const auto& [p, phi] : operating_points) {
        if (!(p > 0.0)) fail("operating point pressure must be > 0");
        if (!(phi >= 0.0 && phi < 100.0)) fail("operating point solids must be in [0,100)");
    }
}

double corrected_partition(double d, double d50c, double m) {
    if (!(d > 0.0) || !(d50c > 0.0)) throw DomainError("corrected_partition: sizes must be > 0");
    if (!(m > 0.0)) throw DomainError("corrected_partition: sharpness must be > 0");
    return 1.0 - std::exp(-kHalfDecay * std::pow(d / d50c, m));
}

double rosin_rammler_passing(double d, double d63, double n) {
    if (!(d > 0.0) || !(d63 > 0.0)) throw DomainError("rosin_rammler_passing: sizes must be > 0");
    if (!(n > 0.0)) throw DomainError("rosin_rammler_passing: sharpness must be > 0");
    return 1.0 - std::exp(-std::pow(d / d63, n));
}

double d50c_model(const CycloneSimConfig& cfg, double p, double phi) {
    if (!(p > 0.0)) throw DomainError("d50c_model: pressure must be > 0");
    if (!(phi >= 0.0 && phi < 100.0)) throw DomainError("d50c_model: solids must be in [0,100)");
    return cfg.d50_base * std::exp(cfg.solids_coef * phi) / std::pow(p, cfg.pressure_exp);
}

PartitionSummary partition_summary(double d50c, double m) {
    if (!(d50c > 0.0)) throw DomainError("partition_summary: d50c must be > 0");
    if (!(m > 0.0)) throw DomainError("partition_summary: sharpness must be > 0");
    auto quartile = [&](double x) {
        return d50c * std::pow(std::log(1.0 / (1.0 - x)) / kHalfDecay, 1.0 / m);
    };
    PartitionSummary s;
    s.d25 = quartile(0.25);
    s.d50 = d50c;  // defining property; the 0.5 inversion is exact by construction
    s.d75 = quartile(0.75);
    s.imperfection = (s.d75 - s.d25) / (2.0 * s.d50);
    return s;
}

PartitionMasses partition_masses(const CycloneSimConfig& cfg, double p, double phi) {
    const double d50c = d50c_model(cfg, p, phi);
    const auto& sizes = cfg.size_fractions;
    const std::size_t k = sizes.size();

    // Material above the top sieve is outside the modeled feed.
    PartitionMasses m;
    m.feed.resize(k);
    m.underflow.resize(k);
    m.overflow.resize(k);
    double prev_cum = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
        const double cum = rosin_rammler_passing(sizes[i], cfg.feed_d63, cfg.feed_n);
        m.feed[i] = cum - prev_cum;
        prev_cum = cum;
        const double lo = i == 0 ? 0.0 : sizes[i - 1];
        const double mid = 0.5 * (lo + sizes[i]);
        const double to_underflow =
            cfg.bypass_rf + (1.0 - cfg.bypass_rf) * corrected_partition(mid, d50c, cfg.sharpness_m);
        m.underflow[i] = m.feed[i] * to_underflow;
        m.overflow[i] = m.feed[i] * (1.0 - to_underflow);
    }
    return m;
}

Dataset generate(const CycloneSimConfig& cfg) {
    cfg.validate();
    Rng rng(cfg.seed);
    std::normal_distribution<double> noise(0.0, cfg.noise_sd > 0.0 ? cfg.noise_sd : 1.0);

    const auto& sizes = cfg.size_fractions;
    const std::size_t k = sizes.size();

    Dataset out;
    out.records.reserve(cfg.operating_points.size() * 2 * k);

    for (const auto& [p, phi] : cfg.operating_points) {
        const PartitionMasses masses = partition_masses(cfg, p, phi);

        for (int stream = 0; stream <= 1; ++stream) {
            const auto& stream_mass = stream == 1 ? masses.underflow : masses.overflow;
            double total = 0.0;
            for (double mass : stream_mass) total += mass;
            double running = 0.0;
            for (std::size_t i = 0; i < k; ++i) {
                running += stream_mass[i];
                double pct = total > 0.0 ? 100.0 * running / total : 0.0;
                if (cfg.noise_sd > 0.0) pct += noise(rng);
                DataRecord r;
                r.pressure_psi = p;
                r.solids_pct = phi;
                r.size_um = sizes[i];
                r.stream_flag = stream;
                r.cum_passing_pct = std::clamp(pct, 0.0, 100.0);
                out.records.push_back(r);
            }
        }
    }
    return out;
}

}  // namespace gct
