#pragma once

#include <vector>

#include "growthlab/classical_dynamics.hpp"
#include "growthlab/quantum_evolution.hpp"

namespace growthlab {

// Classical prediction for the quantum Sobolev norm: |z*|^s + |W|^s.
inline double predicted_norm(double s, double w_norm, double zstar_norm) {
    return std::pow(zstar_norm, s) + std::pow(w_norm, s);
}

// min/max of a positive series plus the drift of its level: the geometric
// mean over the second half of the window against the first half, folded to
// be >= 1. Band-stable series have finite band() and small drift.
struct BandReport {
    double min_value = 0.0;
    double max_value = 0.0;
    double drift = 0.0;
    size_t count = 0;
    double band() const { return min_value > 0.0 ? max_value / min_value : 0.0; }
};

BandReport band_statistics(const std::vector<double>& times, const std::vector<double>& values,
                           double window_start);

struct RatioSeries {
    std::vector<double> times;
    std::vector<double> measured;   // |u(t)|_s
    std::vector<double> predicted;  // |z*(t)|^s + |W(t)|^s
    std::vector<double> ratio;
    double window_start = 0.0;
    BandReport band;
};

// Measured-over-predicted series on the shared sample grid; throws on grid
// mismatch. Band statistics are taken over times >= window_start.
RatioSeries ratio_series(const FlowResult& flow, const HermiteTrajectory& traj, double s,
                         double window_start);

// Subsequence bands along the exact zeros and peaks of sin^2(sqrt t):
//   lower: values(t_k) / t_k^{s/6}            at t_k = (k pi)^2
//   upper: values(t_k) / (t_k^{s/6} ln^{s/2}) at t_k = ((k + 1/2) pi)^2
// `values` must already be the Sobolev-norm-like series (|u|_s, or |W|^s on
// the classical side); evaluation between samples is linear interpolation.
struct EnvelopeBands {
    BandReport lower;
    BandReport upper;
};

EnvelopeBands oscillatory_envelope(const std::vector<double>& times,
                                   const std::vector<double>& values, double s);

// Linear interpolation helper shared by the envelope checks.
double interp_series(const std::vector<double>& times, const std::vector<double>& values,
                     double t);

}  // namespace growthlab
