#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gct/dataset.hpp"

namespace gct {

/// Synthetic hydrocyclone test-campaign generator. The partition curve is
/// the classical exponential (Plitt-form) model and the feed follows a
/// Rosin-Rammler size distribution; the correlation constants below are
/// generator defaults, not measurements.
struct CycloneSimConfig {
    double feed_d63 = 60.0;        // Rosin-Rammler size modulus, um
    double feed_n = 1.1;           // distribution sharpness
    double d50_base = 24.0;        // cut size at 1 psi and 0% solids, um
    double pressure_exp = 0.28;    // d50c ~ p^-pressure_exp
    double solids_coef = 0.063;    // d50c ~ exp(solids_coef * phi)
    double sharpness_m = 2.0;      // partition curve sharpness
    double bypass_rf = 0.15;       // water bypass fraction to underflow
    std::vector<double> size_fractions = {5, 10, 20, 38, 53, 75, 106, 150};
    std::vector<std::pair<double, double>> operating_points = {
        {6, 10},  {6, 20},  {6, 30},  {9, 10},  {9, 20},  {9, 30},
        {12, 10}, {12, 20}, {12, 30}, {15, 10}, {15, 20}, {15, 30}};
    double noise_sd = 0.75;        // Gaussian noise on cumulative %, percent points
    std::uint64_t seed = 1;

    void validate() const;  // throws ValidationError naming the field
};

struct PartitionSummary {
    double d50 = 0.0;
    double d25 = 0.0;
    double d75 = 0.0;
    double imperfection = 0.0;
};

/// Corrected partition value E_c(d) = 1 - exp(-0.693 (d/d50c)^m).
double corrected_partition(double d, double d50c, double m);

/// Cumulative Rosin-Rammler passing fraction 1 - exp(-(d/d63)^n).
double rosin_rammler_passing(double d, double d63, double n);

/// Corrected cut size under pressure p (psi) and solids phi (%):
/// d50c = d50_base * exp(solids_coef*phi) / p^pressure_exp.
double d50c_model(const CycloneSimConfig& cfg, double p, double phi);

/// Quartile sizes of the corrected partition curve and the Imperfection
/// coefficient I = (d75 - d25) / (2 d50). d50 is the defining cut size
/// d50c itself; d25/d75 come from the closed-form curve inversion.
PartitionSummary partition_summary(double d50c, double m);

/// Feed mass split across the configured size classes at one operating
/// point. Class i spans (size_fractions[i-1], size_fractions[i]], the
/// first class starting at 0; feed[i] = underflow[i] + overflow[i].
struct PartitionMasses {
    std::vector<double> feed;
    std::vector<double> underflow;
    std::vector<double> overflow;
};

PartitionMasses partition_masses(const CycloneSimConfig& cfg, double p, double phi);

/// One DataRecord per (operating point, stream, size fraction): the
/// stream's cumulative passing percent at that sieve size, with seeded
/// Gaussian noise clamped to [0,100].
Dataset generate(const CycloneSimConfig& cfg);

}  // namespace gct
