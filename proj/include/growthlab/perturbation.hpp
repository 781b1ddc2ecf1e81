#pragma once

#include <memory>
#include <string>

#include "growthlab/growth_rates.hpp"
#include "growthlab/quadrature.hpp"

namespace growthlab {

// The time-decaying oscillator perturbation derived from a growth rate:
//   phi(t) = -(f'/f)^2 cos^4 t - ((f'' f - f'^2)/f^2) cos^2 t
//            + 4 (f'/f) cos t sin t.
// Evaluated pointwise from the rate's closed forms, never tabulated.
struct Perturbation {
    GrowthRate rate;
    std::string label;

    double phi(double t) const {
        const double g = rate.log_deriv(t);
        const double gp = rate.log_deriv_prime(t);
        const double c = std::cos(t), s = std::sin(t);
        const double c2 = c * c;
        return -g * g * c2 * c2 - gp * c2 + 4.0 * g * c * s;
    }
};

Perturbation build_phi(const GrowthRate& rate);

// H_f(t) = exp( integral of (f'/f) cos^2 over [t0, t] ), with cumulative
// breakpoint caching so evaluation along an increasing sweep costs one short
// tail quadrature per call. Copyable; copies share the cache. Thread safe.
class HfEvaluator {
public:
    explicit HfEvaluator(GrowthRate rate, double rel_tol = 1e-10);

    double log_value(double t) const { return cum_->value(t); }
    double value(double t) const { return std::exp(log_value(t)); }

    const GrowthRate& rate() const { return rate_; }
    double rel_tol() const { return rel_tol_; }

private:
    GrowthRate rate_;
    double rel_tol_;
    std::shared_ptr<CumulativeIntegral> cum_;
};

// sup |phi| over the trailing 10% of the sample grid on [t0, horizon].
struct DecayReport {
    double sup_tail = 0.0;
};

DecayReport check_decay(const Perturbation& p, double horizon, double step);

// Running suprema, over [t0, horizon], of the three quantities whose
// boundedness the construction assumes:
//   sup_c1 = sup |f'/f|
//   sup_c2 = sup |integral of cos(2s) f'/f|
//   sup_c3 = sup |integral of sin(2s) (f'/f) / H_f^2|
// Finite-horizon evidence only; bounded values over growing horizons support
// the hypotheses, they do not prove them.
struct HypothesesReport {
    double sup_c1 = 0.0;
    double sup_c2 = 0.0;
    double sup_c3 = 0.0;
};

HypothesesReport check_hypotheses(const GrowthRate& rate, double horizon, double step = 0.1,
                                  double quad_tol = 1e-10);

}  // namespace growthlab
