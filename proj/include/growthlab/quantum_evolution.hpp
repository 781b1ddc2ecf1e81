#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

namespace growthlab {

// Banded real symmetric matrix given by its diagonal and superdiagonals;
// bands[k][i] is the (i, i+k) entry.
struct RealBandedSym {
    int size = 0;
    std::vector<std::vector<double>> bands;

    double entry(int i, int j) const {
        const int k = j >= i ? j - i : i - j;
        const int m = j >= i ? i : j;
        if (k >= static_cast<int>(bands.size())) return 0.0;
        return bands[k][m];
    }
};

// Position operator in the oscillator eigenbasis: <n+1|X|n> = sqrt((n+1)/2).
RealBandedSym matrix_X(int n);

// X^2: diagonal <n|X^2|n> = n + 1/2, second band <n+2|X^2|n> = sqrt((n+1)(n+2))/2.
RealBandedSym matrix_X2(int n);

// Quantum state as coefficients over oscillator eigenfunctions (modes
// 0 .. N-1, eigenvalue of mode n is n + 1/2).
struct HermiteState {
    std::vector<std::complex<double>> coeffs;
    double time = 0.0;

    int truncation() const { return static_cast<int>(coeffs.size()); }
    double l2_norm() const;
    // Mass fraction in modes n >= 0.9 N; the truncation is adequate while
    // this stays below the configured threshold.
    double tail_mass() const;
    // sqrt( sum ((n + 1/2)^s + 1) |c_n|^2 ), exact in this basis.
    double sobolev_norm(double s) const;
};

HermiteState ground_state(int n_modes, double t0);

struct QuantumHamiltonianSpec {
    std::function<double(double)> phi;  // time-dependent X^2 coefficient; null = 0
    double a = 0.0;                     // amplitude of the a sin(t) X forcing
    int initial_truncation = 256;
    double dt = 1e-3;
};

struct EvolveOptions {
    double sample_step = 0.1;
    double tail_threshold = 1e-12;
    int max_truncation = 1 << 16;
    double l2_drift_per_unit_time = 1e-8;
    // Apply the diagonal oscillator phases exactly and take the Cayley step
    // on the phase-twisted banded remainder. Keeps the level spacing exact,
    // which the resonant growth mechanisms depend on; the plain scheme
    // detunes modes with (n dt) no longer small. Either way the step is
    // unitary and second order; norms are frame independent.
    bool rotating_frame = true;
};

struct HermiteTrajectory {
    std::vector<double> times;
    std::vector<double> l2;
    std::vector<double> tail;
    std::vector<int> truncation;
    std::vector<double> s_values;
    std::vector<std::vector<double>> norms;  // norms[k][i] = |u(times[i])|_{s_values[k]}
    HermiteState final_state;

    const std::vector<double>& norms_for(double s) const;
};

// Midpoint Cayley evolution of
//   u' = i [ T + (phi(t)/2) X^2 + a sin(t) X ] u,   T = diag(n + 1/2),
// with one banded Hermitian solve per step. dt is snapped to an integer
// divisor of sample_step. The truncation doubles (zero padded) whenever the
// tail mass crosses the threshold; exceeding max_truncation or the L2 drift
// budget throws.
HermiteTrajectory evolve(const HermiteState& initial, const QuantumHamiltonianSpec& spec,
                         double t_end, const std::vector<double>& s_values,
                         const EvolveOptions& opts = {});

}  // namespace growthlab
