#include "growthlab/representations.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "growthlab/fft.hpp"

namespace growthlab {

using cd = std::complex<double>;

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

}  // namespace

double GridFunction::l2_norm() const {
    double s = 0.0;
    for (const cd& v : values) s += std::norm(v);
    return std::sqrt(s * dx());
}

double GridFunction::boundary_level() const {
    const int m = size();
    const int edge = std::max(1, m / 20);
    double peak = 0.0, border = 0.0;
    for (int j = 0; j < m; ++j) {
        const double a = std::abs(values[j]);
        peak = std::max(peak, a);
        if (j < edge || j >= m - edge) border = std::max(border, a);
    }
    return peak > 0.0 ? border / peak : 0.0;
}

GridFunction gaussian_grid(double half_width, int points, double center, double momentum) {
    GridFunction u;
    u.half_width = half_width;
    u.values.resize(points);
    for (int j = 0; j < points; ++j) {
        const double x = u.x(j);
        const double g = std::exp(-0.5 * (x - center) * (x - center));
        u.values[j] = std::polar(g, momentum * x);
    }
    return u;
}

double hermite_function(int n, double x) {
    // normalized oscillator eigenfunctions: psi_0 = pi^{-1/4} e^{-x^2/2},
    // psi_n = x sqrt(2/n) psi_{n-1} - sqrt((n-1)/n) psi_{n-2}
    double h0 = std::pow(kPi, -0.25) * std::exp(-0.5 * x * x);
    if (n == 0) return h0;
    double h1 = std::sqrt(2.0) * x * h0;
    for (int k = 2; k <= n; ++k) {
        const double h2 = x * std::sqrt(2.0 / k) * h1 - std::sqrt((k - 1.0) / k) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

GridFunction hermite_grid(int n, double half_width, int points) {
    GridFunction u;
    u.half_width = half_width;
    u.values.resize(points);
    for (int j = 0; j < points; ++j) u.values[j] = hermite_function(n, u.x(j));
    return u;
}

GridFunction fourier_transform(const GridFunction& u) {
    const int m = u.size();
    std::vector<cd> work(u.values);
    for (int j = 0; j < m; ++j)
        if (j & 1) work[j] = -work[j];
    fft_forward(work);
    GridFunction out;
    out.half_width = m * kPi / (2.0 * u.half_width);
    out.values.resize(m);
    const double dx = u.dx();
    for (int k = 0; k < m; ++k) {
        const double sign = ((k - m / 2) & 1) ? -1.0 : 1.0;
        out.values[k] = dx * sign * work[k];
    }
    return out;
}

GridFunction inverse_fourier_transform(const GridFunction& uhat) {
    const int m = uhat.size();
    std::vector<cd> work(m);
    for (int k = 0; k < m; ++k) {
        const double sign = ((k - m / 2) & 1) ? -1.0 : 1.0;
        work[k] = sign * uhat.values[k];
    }
    fft_inverse_unscaled(work);
    GridFunction out;
    out.half_width = m * kPi / (2.0 * uhat.half_width);
    out.values.resize(m);
    const double dxi = uhat.dx();
    const double scale = dxi / kTwoPi;
    for (int j = 0; j < m; ++j) {
        const double sign = (j & 1) ? -1.0 : 1.0;
        out.values[j] = scale * sign * work[j];
    }
    return out;
}

GridFunction schrodinger_rep(std::array<double, 2> v, const GridFunction& u) {
    const double p = v[0], q = v[1];
    if (std::abs(p) > 0.5 * u.half_width)
        throw std::domain_error("schrodinger_rep: shift exceeds grid margin");
    GridFunction uhat = fourier_transform(u);
    for (int k = 0; k < uhat.size(); ++k)
        uhat.values[k] *= std::polar(1.0, p * uhat.x(k));
    GridFunction out = inverse_fourier_transform(uhat);
    const double half_pq = 0.5 * p * q;
    for (int j = 0; j < out.size(); ++j)
        out.values[j] *= std::polar(1.0, q * out.x(j) + half_pq);
    return out;
}

double SymplecticMatrix::two_norm() const {
    // cancellation-free discriminant, exact for rotations
    const double e = a * a + b * b + c * c + f * f;
    const double disc =
        ((a - f) * (a - f) + (b + c) * (b + c)) * ((a + f) * (a + f) + (b - c) * (b - c));
    return std::sqrt(0.5 * (e + std::sqrt(std::max(0.0, disc))));
}

SymplecticMatrix SymplecticMatrix::rotation(double theta) {
    return {std::cos(theta), std::sin(theta), -std::sin(theta), std::cos(theta)};
}

SymplecticMatrix SymplecticMatrix::dilation(double lambda) {
    return {lambda, 0.0, 0.0, 1.0 / lambda};
}

SymplecticMatrix SymplecticMatrix::standard_J() { return {0.0, 1.0, -1.0, 0.0}; }

namespace {

SymplecticMatrix compose(const SymplecticMatrix& l, const SymplecticMatrix& r) {
    return {l.a * r.a + l.b * r.c, l.a * r.b + l.b * r.f,
            l.c * r.a + l.f * r.c, l.c * r.b + l.f * r.f};
}

// result(x_m) = pref * e^{i quad_row x_m^2} * sum_k e^{i x_m s_k cross} q_k
// evaluated with an incremental phase rotation per row; the sum is restricted
// to the contiguous range where |q| is non-negligible.
GridFunction oscillatory_sum(const GridFunction& row_grid, const std::vector<cd>& q,
                             const GridFunction& col_grid, double cross, double quad_row,
                             cd pref) {
    double peak = 0.0;
    for (const cd& v : q) peak = std::max(peak, std::abs(v));
    const double cut = 1e-18 * peak;
    int k_lo = 0, k_hi = static_cast<int>(q.size()) - 1;
    while (k_lo < k_hi && std::abs(q[k_lo]) < cut) ++k_lo;
    while (k_hi > k_lo && std::abs(q[k_hi]) < cut) --k_hi;

    GridFunction out;
    out.half_width = row_grid.half_width;
    out.values.resize(row_grid.size());
    const double ds = col_grid.dx();
    const double s_lo = col_grid.x(k_lo);
    for (int m = 0; m < row_grid.size(); ++m) {
        const double xm = row_grid.x(m);
        const cd step = std::polar(1.0, xm * ds * cross);
        cd z = std::polar(1.0, xm * s_lo * cross);
        cd acc(0.0, 0.0);
        for (int k = k_lo; k <= k_hi; ++k) {
            acc += q[k] * z;
            z *= step;
        }
        out.values[m] = pref * std::polar(1.0, quad_row * xm * xm) * acc;
    }
    return out;
}

int next_pow2(double need) {
    int r = 1;
    while (r < need && r < 64) r *= 2;
    return r;
}

// u extended by zeros to [-rL, rL) at the same spacing; refines the dual grid
// r-fold, which pushes the Poisson replication period of the branch-(i) sum
// out of the window.
GridFunction zero_pad_window(const GridFunction& u, int r) {
    if (r <= 1) return u;
    GridFunction out;
    out.half_width = r * u.half_width;
    out.values.assign(static_cast<size_t>(r) * u.size(), cd(0.0, 0.0));
    const int offset = (r - 1) * u.size() / 2;
    for (int j = 0; j < u.size(); ++j) out.values[offset + j] = u.values[j];
    return out;
}

// band-limited refinement of u on the same window to r M points (spectrum
// extended by zeros); scales the branch-(ii) replication period r-fold.
GridFunction upsample(const GridFunction& u, int r) {
    if (r <= 1) return u;
    const GridFunction uhat = fourier_transform(u);
    GridFunction padded = zero_pad_window(uhat, r);
    return inverse_fourier_transform(padded);
}

}  // namespace

GridFunction metaplectic_apply_branch(const SymplecticMatrix& m, const GridFunction& u,
                                      int branch) {
    if (std::abs(m.det() - 1.0) > 1e-10)
        throw std::invalid_argument("metaplectic_apply: matrix is not symplectic");
    if (branch == 1) {
        if (std::abs(m.a) < 1e-6)
            throw std::domain_error("metaplectic_apply: branch (i) needs det A != 0");
        // (1/2pi) a^{-1/2} e^{-i(c/a)x^2/2} integral e^{i x xi / a} e^{i(b/a)xi^2/2} uhat(xi) dxi;
        // the window is zero-padded so the discrete sum's replication period
        // 2|a| r L clears the output window.
        const int r = next_pow2(1.8 / std::abs(m.a));
        const GridFunction uhat = fourier_transform(zero_pad_window(u, r));
        std::vector<cd> q(uhat.size());
        const double half_ba = 0.5 * m.b / m.a;
        const double dxi = uhat.dx();
        for (int k = 0; k < uhat.size(); ++k) {
            const double xi = uhat.x(k);
            q[k] = uhat.values[k] * std::polar(dxi / kTwoPi, half_ba * xi * xi);
        }
        const cd pref = 1.0 / std::sqrt(cd(m.a, 0.0));
        return oscillatory_sum(u, q, uhat, 1.0 / m.a, -0.5 * m.c / m.a, pref);
    }
    if (branch == 2) {
        if (std::abs(m.b) < 1e-6)
            throw std::domain_error("metaplectic_apply: branch (ii) needs det B != 0");
        // (i/2pi)^{1/2} b^{-1/2} e^{-i(f/b)x^2/2} integral e^{i x y / b} e^{-i(a/b)y^2/2} u(y) dy;
        // band-limited upsampling scales the replication period pi |b| r M / L
        // past the window.
        const double L = u.half_width;
        const int r =
            next_pow2(2.5 * L * L / (kPi * std::abs(m.b) * static_cast<double>(u.size())));
        const GridFunction uu = upsample(u, r);
        std::vector<cd> q(uu.size());
        const double half_ab = 0.5 * m.a / m.b;
        const double dx = uu.dx();
        for (int j = 0; j < uu.size(); ++j) {
            const double y = uu.x(j);
            q[j] = uu.values[j] * std::polar(dx, -half_ab * y * y);
        }
        const cd pref = std::polar(1.0, kPi / 4.0) / std::sqrt(kTwoPi) / std::sqrt(cd(m.b, 0.0));
        return oscillatory_sum(u, q, uu, 1.0 / m.b, -0.5 * m.f / m.b, pref);
    }
    throw std::invalid_argument("metaplectic_apply_branch: branch must be 1 or 2");
}

GridFunction metaplectic_apply(const SymplecticMatrix& m, const GridFunction& u) {
    const double pa = std::abs(m.a), pb = std::abs(m.b);
    if (pa < 1e-6 && pb < 1e-6)
        throw std::domain_error(
            "metaplectic_apply: both pivots degenerate; factor the matrix first");
    return metaplectic_apply_branch(m, u, pa >= pb ? 1 : 2);
}

double phase_aligned_distance(const GridFunction& g, const GridFunction& h) {
    if (g.size() != h.size()) throw std::invalid_argument("phase_aligned_distance: size mismatch");
    cd inner(0.0, 0.0);
    for (int j = 0; j < g.size(); ++j) inner += std::conj(h.values[j]) * g.values[j];
    const cd phase = std::abs(inner) > 0.0 ? inner / std::abs(inner) : cd(1.0, 0.0);
    // subtract after alignment; the norm-difference form loses half the
    // digits to cancellation when the functions nearly coincide
    double d2 = 0.0;
    for (int j = 0; j < g.size(); ++j) d2 += std::norm(g.values[j] - phase * h.values[j]);
    return std::sqrt(d2 * g.dx());
}

double verify_conjugation(const SymplecticMatrix& m, std::array<double, 2> v,
                          const GridFunction& u) {
    const GridFunction lhs = schrodinger_rep(m.apply(v), metaplectic_apply(m, u));
    const GridFunction rhs = metaplectic_apply(m, schrodinger_rep(v, u));
    return phase_aligned_distance(lhs, rhs);
}

double sobolev_norm_grid(const GridFunction& u, double s) {
    const double dx = u.dx();
    double moment = 0.0;
    for (int j = 0; j < u.size(); ++j) {
        const double xs = s == 0.0 ? 1.0 : std::pow(std::abs(u.x(j)), 2.0 * s);
        moment += xs * std::norm(u.values[j]);
    }
    const GridFunction uhat = fourier_transform(u);
    const double dxi = uhat.dx();
    double fmoment = 0.0;
    for (int k = 0; k < uhat.size(); ++k) {
        const double xs = s == 0.0 ? 1.0 : std::pow(std::abs(uhat.x(k)), 2.0 * s);
        fmoment += xs * std::norm(uhat.values[k]);
    }
    return u.l2_norm() + std::sqrt(moment * dx) + std::sqrt(fmoment * dxi / kTwoPi);
}

NormEquivalenceReport verify_norm_equivalence(const SymplecticMatrix& m, std::array<double, 2> v,
                                              const GridFunction& u, double s) {
    NormEquivalenceReport rep;
    const GridFunction mu = metaplectic_apply(m, u);
    const double norm_a = m.two_norm();
    rep.ratio = sobolev_norm_grid(mu, s) / std::pow(norm_a, s);
    const GridFunction rmu = schrodinger_rep(v, mu);
    const double norm_v = std::sqrt(v[0] * v[0] + v[1] * v[1]);
    rep.composed_ratio =
        sobolev_norm_grid(rmu, s) / (std::pow(norm_v, s) + std::pow(norm_a, s));
    return rep;
}

SymplecticSampler::SymplecticSampler(uint64_t seed, double lambda_max)
    : state_(seed ? seed : 0x9e3779b97f4a7c15ull), lambda_max_(lambda_max) {}

double SymplecticSampler::uniform() {
    // splitmix64: deterministic across platforms
    state_ += 0x9e3779b97f4a7c15ull;
    uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    z = z ^ (z >> 31);
    return static_cast<double>(z >> 11) * 0x1.0p-53;
}

SymplecticMatrix SymplecticSampler::next() {
    const double th1 = kTwoPi * uniform();
    const double th2 = kTwoPi * uniform();
    const double lambda = 1.0 + (lambda_max_ - 1.0) * uniform();
    return compose(SymplecticMatrix::rotation(th1),
                   compose(SymplecticMatrix::dilation(lambda), SymplecticMatrix::rotation(th2)));
}

std::array<double, 2> SymplecticSampler::next_vector(double radius) {
    return {radius * (2.0 * uniform() - 1.0), radius * (2.0 * uniform() - 1.0)};
}

RepresentationSuiteReport run_representation_suite(uint64_t seed) {
    RepresentationSuiteReport rep;

    // rho tests on the default grid
    {
        const double L = 20.0;
        const int M = 1024;
        GridFunction u = gaussian_grid(L, M);
        const double nrm = u.l2_norm();
        for (auto& z : u.values) z /= nrm;

        SymplecticSampler sampler(seed);
        for (int trial = 0; trial < 20; ++trial) {
            const auto v1 = sampler.next_vector(2.0);
            const auto v2 = sampler.next_vector(2.0);
            GridFunction lhs = schrodinger_rep(v1, schrodinger_rep(v2, u));
            GridFunction rhs = schrodinger_rep({v1[0] + v2[0], v1[1] + v2[1]}, u);
            const double phase = 0.5 * (v1[0] * v2[1] - v1[1] * v2[0]);
            double diff = 0.0;
            for (int j = 0; j < M; ++j)
                diff = std::max(diff,
                                std::abs(lhs.values[j] - std::polar(1.0, phase) * rhs.values[j]));
            rep.group_law_defect = std::max(rep.group_law_defect, diff);

            GridFunction inv = schrodinger_rep({-v1[0], -v1[1]}, schrodinger_rep(v1, u));
            double idiff = 0.0;
            for (int j = 0; j < M; ++j) idiff = std::max(idiff, std::abs(inv.values[j] - u.values[j]));
            rep.rho_inverse_defect = std::max(rep.rho_inverse_defect, idiff);

            rep.rho_isometry_defect =
                std::max(rep.rho_isometry_defect,
                         std::abs(schrodinger_rep(v1, u).l2_norm() - u.l2_norm()));
        }
    }

    // metaplectic tests on a wider grid sized for |A| <= 5 images
    {
        const double L = 40.0;
        const int M = 4096;
        GridFunction u = gaussian_grid(L, M);
        const double nrm = u.l2_norm();
        for (auto& z : u.values) z /= nrm;

        SymplecticSampler sampler(seed + 1);
        rep.norm_ratio_min = rep.composed_ratio_min = 1e300;
        for (int trial = 0; trial < 50; ++trial) {
            const SymplecticMatrix a = sampler.next();
            const GridFunction mu = metaplectic_apply(a, u);
            rep.unitarity_defect =
                std::max(rep.unitarity_defect, std::abs(mu.l2_norm() - u.l2_norm()));
            const auto v = sampler.next_vector(3.0);
            const auto eq = verify_norm_equivalence(a, v, u, 1.0);
            rep.norm_ratio_min = std::min(rep.norm_ratio_min, eq.ratio);
            rep.norm_ratio_max = std::max(rep.norm_ratio_max, eq.ratio);
            rep.composed_ratio_min = std::min(rep.composed_ratio_min, eq.composed_ratio);
            rep.composed_ratio_max = std::max(rep.composed_ratio_max, eq.composed_ratio);
        }

        // conjugation identity, moderate matrices and shifts
        SymplecticSampler csampler(seed + 2, 2.0);
        for (int trial = 0; trial < 10; ++trial) {
            const SymplecticMatrix a = csampler.next();
            const auto v = csampler.next_vector(1.0);
            rep.conjugation_defect =
                std::max(rep.conjugation_defect, verify_conjugation(a, v, u));
        }

        // both branches on matrices with comfortably nondegenerate pivots
        SymplecticSampler bsampler(seed + 3, 2.0);
        int done = 0;
        while (done < 10) {
            const SymplecticMatrix a = bsampler.next();
            if (std::abs(a.a) < 0.5 || std::abs(a.b) < 0.5) continue;
            const GridFunction m1 = metaplectic_apply_branch(a, u, 1);
            const GridFunction m2 = metaplectic_apply_branch(a, u, 2);
            rep.cross_branch_defect =
                std::max(rep.cross_branch_defect, phase_aligned_distance(m1, m2));
            ++done;
        }
    }

    // frozen regression bands for the s = 1 equivalence ratios (unit-norm
    // Gaussian input, |A| <= 5, |v| <= 3); calibrated observations with the
    // default seed are [0.95, 2.35] and [0.80, 1.43]
    const double ratio_lo = 0.5, ratio_hi = 4.0;
    const double comp_lo = 0.45, comp_hi = 2.5;
    rep.pass = rep.group_law_defect <= 1e-6 && rep.rho_inverse_defect <= 1e-6 &&
               rep.rho_isometry_defect <= 1e-8 && rep.unitarity_defect <= 1e-4 &&
               rep.conjugation_defect <= 1e-3 && rep.cross_branch_defect <= 1e-3 &&
               rep.norm_ratio_min >= ratio_lo && rep.norm_ratio_max <= ratio_hi &&
               rep.composed_ratio_min >= comp_lo && rep.composed_ratio_max <= comp_hi;
    return rep;
}

}  // namespace growthlab
