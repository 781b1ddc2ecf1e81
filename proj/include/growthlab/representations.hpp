#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <vector>

namespace growthlab {

// Complex function sampled at x_j = -L + j (2L/M), j = 0 .. M-1, M a power
// of two so the discrete Fourier transform applies directly.
struct GridFunction {
    double half_width = 0.0;  // L
    std::vector<std::complex<double>> values;

    int size() const { return static_cast<int>(values.size()); }
    double dx() const { return 2.0 * half_width / size(); }
    double x(int j) const { return -half_width + j * dx(); }

    double l2_norm() const;
    // Largest |value| over the outer 5% of points, relative to the max;
    // the grid truncation is adequate while this stays below 1e-6.
    double boundary_level() const;
    bool boundary_ok(double tol = 1e-6) const { return boundary_level() <= tol; }
};

// u(x) = exp(-(x - center)^2 / 2 + i * momentum * x), unnormalized.
GridFunction gaussian_grid(double half_width, int points, double center = 0.0,
                           double momentum = 0.0);

// Oscillator eigenfunction values via the stable normalized recurrence.
double hermite_function(int n, double x);
GridFunction hermite_grid(int n, double half_width, int points);

// Forward transform with the nonunitary kernel exp(-i x xi); the result is
// sampled on the dual grid xi_k = (k - M/2) pi / L, returned as a
// GridFunction of half-width M pi / (2L).
GridFunction fourier_transform(const GridFunction& u);
GridFunction inverse_fourier_transform(const GridFunction& uhat);

// (rho(v) u)(x) = exp(i q x + i p q / 2) u(x + p) for v = (p, q); the shift
// is band-limited (Fourier). Throws when |p| exceeds half the grid width.
GridFunction schrodinger_rep(std::array<double, 2> v, const GridFunction& u);

// 2x2 symplectic matrix [[a, b], [c, f]] with det = af - bc = 1.
struct SymplecticMatrix {
    double a = 1.0, b = 0.0, c = 0.0, f = 1.0;

    double det() const { return a * f - b * c; }
    double two_norm() const;
    std::array<double, 2> apply(std::array<double, 2> v) const {
        return {a * v[0] + b * v[1], c * v[0] + f * v[1]};
    }
    static SymplecticMatrix rotation(double theta);
    static SymplecticMatrix dilation(double lambda);  // diag(lambda, 1/lambda)
    static SymplecticMatrix standard_J();             // [[0, 1], [-1, 0]]
};

// Metaplectic operator by the oscillatory-integral formulas; branch (i)
// (Fourier side) when |a| >= |b|, branch (ii) (direct kernel) otherwise.
// The result carries the usual square-root sign ambiguity, so compare
// outputs modulo a global phase. Throws when both pivots |a|, |b| < 1e-6.
GridFunction metaplectic_apply(const SymplecticMatrix& m, const GridFunction& u);

// Force a specific branch (1 or 2) regardless of pivot sizes; used by the
// cross-branch consistency check.
GridFunction metaplectic_apply_branch(const SymplecticMatrix& m, const GridFunction& u,
                                      int branch);

// L2 distance minimized over a global phase applied to the second argument.
double phase_aligned_distance(const GridFunction& g, const GridFunction& h);

// |rho(Av) M(A) u - M(A) rho(v) u| in the phase-aligned L2 sense.
double verify_conjugation(const SymplecticMatrix& m, std::array<double, 2> v,
                          const GridFunction& u);

// |u|_L2 + ||x|^s u|_L2 + ||xi|^s u^|_L2 with the unitary transform
// normalization in the last term.
double sobolev_norm_grid(const GridFunction& u, double s);

struct NormEquivalenceReport {
    double ratio = 0.0;           // |M(A)u|_s / |A|^s
    double composed_ratio = 0.0;  // |rho(v)M(A)u|_s / (|v|^s + |A|^s)
};

NormEquivalenceReport verify_norm_equivalence(const SymplecticMatrix& m, std::array<double, 2> v,
                                              const GridFunction& u, double s);

// Deterministic random symplectic matrix R(theta1) diag(lambda, 1/lambda)
// R(theta2) with lambda in [1, lambda_max].
class SymplecticSampler {
public:
    explicit SymplecticSampler(uint64_t seed, double lambda_max = 5.0);
    SymplecticMatrix next();
    std::array<double, 2> next_vector(double radius);

private:
    uint64_t state_;
    double lambda_max_;
    double uniform();  // [0, 1)
};

// Property suite over the representation identities; defects are maxima over
// the sampled test set.
struct RepresentationSuiteReport {
    double group_law_defect = 0.0;
    double rho_inverse_defect = 0.0;
    double rho_isometry_defect = 0.0;
    double unitarity_defect = 0.0;
    double conjugation_defect = 0.0;
    double cross_branch_defect = 0.0;
    double norm_ratio_min = 0.0, norm_ratio_max = 0.0;
    double composed_ratio_min = 0.0, composed_ratio_max = 0.0;
    bool pass = false;
};

RepresentationSuiteReport run_representation_suite(uint64_t seed);

}  // namespace growthlab
