#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "growthlab/dopri5.hpp"
#include "growthlab/linalg.hpp"
#include "growthlab/perturbation.hpp"

namespace growthlab {

// Affine system z' = A(t) z + ell(t) on R^{2n} with A(t) Hamiltonian.
struct AffineSystemSpec {
    int dim = 1;  // n
    std::function<Mat(double)> coeff;                    // A(t), 2n x 2n
    std::function<std::vector<double>(double)> forcing;  // ell(t); null means 0
    std::string label;
};

// The scalar oscillator system (xi, x)' = [[0, 1], [-(1+phi), 0]] (xi, x)
// plus forcing a (0, sin t).
AffineSystemSpec oscillator_system(const Perturbation& p, double a = 0.0);

// Jointly integrated fundamental matrix W (W(t0) = I), reducing transform U
// (U' = A U - U J, U(t0) = J) and particular solution z* (z*(t0) = z0),
// sampled on the uniform grid t0 + k * sample_step via dense output.
struct FlowResult {
    int dim = 1;
    double t0 = 0.0;
    std::vector<double> times;
    std::vector<Mat> W;
    std::vector<Mat> U;
    std::vector<std::vector<double>> zstar;
    Dopri5Stats stats;

    double w_norm(size_t i) const { return flow_matrix_norm(W[i]); }
    double zstar_norm(size_t i) const { return euclidean_norm(zstar[i]); }
};

FlowResult integrate_flow(const AffineSystemSpec& spec, double t0, double t_end, double tol,
                          double sample_step, const std::vector<double>& z0);

// max over stored samples of |W^T J W - J| (same for U).
double max_symplectic_defect_W(const FlowResult& flow);
double max_symplectic_defect_U(const FlowResult& flow);

// max over stored samples of |W(t) - U(t) exp((t - t0) J) J^T|.
double max_wtex_residual(const FlowResult& flow);

// Pairing defects of the columns X_j of U:
//   diag:  max |<X_j, J X_{n+j}> - 1|
//   upper: max |<X_j, J X_i>|, i, j <= n  (and the lower block analogue)
//   cross: max |<X_j, J X_{n+i}>|, i != j
struct SymplecticPairingReport {
    double diag_defect = 0.0;
    double block_defect = 0.0;
    double cross_defect = 0.0;
    double max_defect() const { return std::max({diag_defect, block_defect, cross_defect}); }
};

SymplecticPairingReport check_symplectic_pairings(const FlowResult& flow);

// Closed-form solution basis of xi'' + (1 + phi_f) xi = 0:
//   xi1 = cos(t) H,   x1 = (-sin t + g cos^3 t) H
//   xi2 = sin(t)/H + cos(t) H G(t)
//   x2  = (cos t + g cos^2 t sin t)/H + (g cos^3 t - sin t) H G(t)
// with g = f'/f, H = H_f and G(t) the cached inner integral of
// sin(2s) g(s) / H(s)^2. Independent of the ODE integrator.
class AnalyticBasis {
public:
    explicit AnalyticBasis(GrowthRate rate, double quad_tol = 1e-10);

    struct Values {
        double xi1, x1, xi2, x2;
    };

    Values eval(double t) const;

    double hf(double t) const { return hf_.value(t); }
    double inner_integral(double t) const { return g_->value(t); }

    // [[xi2, -xi1], [x2, -x1]](t); requires t0 = 2k pi + pi/2 so that the
    // value at t0 is the identity.
    Mat fundamental(double t) const;

    // Same matrix right-normalized by its value at t0; valid for any t0.
    Mat fundamental_general(double t) const;

    // Residual of xi'' + (1 + phi) xi = 0 for basis member j in {1, 2} at t,
    // via central differences of step h (O(h^2) if the basis is correct).
    double ode_residual(int j, double t, double h) const;

    const GrowthRate& rate() const { return rate_; }
    const HfEvaluator& hf_evaluator() const { return hf_; }
    double quad_tol() const { return quad_tol_; }
    bool t0_aligned() const;

    // Duhamel particular solution of the forced system with z(t0) = 0:
    //   z(t) = a W(t) * integral of W(s)^{-1} (0, sin s) ds.
    std::vector<double> forced_particular(double a, double t, double quad_tol) const;

    // Integral bounds behind the forced-growth estimate, reported both raw
    // and in normalized band form:
    //   i1 = integral sin^2(s)/H,        band1 = i1 sqrt(f(t)) / (t - t0)
    //   i2 = integral sin(2s) H,         band2 = |i2| / sqrt(f(t))
    //   i3 = double integral             band3 = |i3|
    struct AppendixReport {
        double i1, i2, i3;
        double band1, band2, band3;
    };
    AppendixReport appendix_integrals(double t) const;

private:
    const CumulativeIntegral& forced_sin_xi2() const;
    const CumulativeIntegral& forced_sin_xi1() const;
    const CumulativeIntegral& app_i1() const;
    const CumulativeIntegral& app_i2() const;
    const CumulativeIntegral& app_i3q() const;

    GrowthRate rate_;
    double quad_tol_;
    HfEvaluator hf_;
    std::shared_ptr<CumulativeIntegral> g_;
    mutable std::mutex lazy_mu_;
    mutable std::shared_ptr<CumulativeIntegral> sin_xi2_, sin_xi1_, i1_, i2_, i3q_;
};

// Convenience wrappers mirroring the operation names used elsewhere.
inline Mat fundamental_from_analytic(const AnalyticBasis& basis, double t) {
    return basis.fundamental(t);
}

inline std::vector<double> forced_particular_solution(const AnalyticBasis& basis, double a,
                                                      double t, double quad_tol) {
    return basis.forced_particular(a, t, quad_tol);
}

// Running suprema of |integral cos(2s) G| and |integral sin(2s) G| over
// [t0, horizon]; bounded_on_horizon when the running sup grew by less than 1%
// over the last decade [horizon/10, horizon]. deriv_tail_sup is the largest
// |G^(j)|, 0 <= j <= N-1, over the trailing 10% of the grid (decay evidence).
struct OscillatoryIntegralReport {
    double sup_cos = 0.0;
    double sup_sin = 0.0;
    bool bounded_on_horizon = false;
    double tail_increase = 0.0;  // relative growth of max(sup_cos, sup_sin) over the last decade
    double deriv_tail_sup = 0.0;
};

OscillatoryIntegralReport oscillatory_integral_check(
    const std::function<double(double)>& G,
    const std::vector<std::function<double(double)>>& derivatives, int N, double t0,
    double horizon, double quad_tol = 1e-10);

}  // namespace growthlab
