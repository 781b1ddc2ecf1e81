#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace growthlab {

// A prescribed growth-rate function together with its first two derivatives
// and the left end of its domain. Immutable after construction; all catalog
// rates carry closed-form derivatives.
struct GrowthRate {
    std::string label;
    double t0 = 0.0;
    std::function<double(double)> f;
    std::function<double(double)> d1;
    std::function<double(double)> d2;

    // f'/f and its derivative, the combinations the dynamics actually uses.
    double log_deriv(double t) const { return d1(t) / f(t); }
    double log_deriv_prime(double t) const {
        const double v = f(t), p = d1(t);
        return (d2(t) * v - p * p) / (v * v);
    }
};

// Catalog family names (bare names resolve to the default member):
//   power_log        params {mu, alpha, beta}: mu * t^alpha * ln(t)^beta   (default 1 1 0)
//   exp_log_power    params {a}:               exp(ln(t)^a), a > 0         (default 2)
//   exp_power        params {sigma}:           exp(t^sigma), 0 < sigma < 1 (default 0.5)
//   t_over_log       no params:                t / ln(t)
//   iterated_log     params {k}:               ln applied k times, k >= 1  (default 1)
//   exponential      params {lambda}:          exp(lambda * t), lambda > 0 (default 1)
//   constant         params {c}:               c > 0                       (default 1)
//   oscillatory      no params:                t^(1/3) (1 + ln(t) sin^2(sqrt t))
// Domain starts: pi/2 for pure power-type families (which also aligns with
// the 2k*pi + pi/2 phase the forced construction needs), e where a logarithm
// must be positive, exp^(k-1)(e) for iterated_log.
GrowthRate make_catalog_rate(const std::string& name, const std::vector<double>& params = {},
                             std::optional<double> t0_override = std::nullopt);

// The oscillatory rate t^(1/3) (1 + ln(t) sin^2(sqrt t)) on [e, inf) with
// closed-form derivatives, self-checked against finite differences.
GrowthRate oscillatory_rate();

// Rate from a user-supplied function; derivatives fall back to central
// finite differences with step 1e-5 * max(1, |t|) when not provided.
GrowthRate make_custom_rate(std::string label, std::function<double(double)> f, double t0,
                            std::function<double(double)> d1 = nullptr,
                            std::function<double(double)> d2 = nullptr);

struct ClassMOptions {
    double growth_factor = 1e3;  // tends_to_infinity: f(horizon) >= factor * f(t0)
    double ratio_tol = 1e-3;     // ratio_to_zero: f'/f below this at the horizon
    double mono_slack = 1e-10;   // per-step tolerance for monotone decrease of f'/f
};

// Finite-horizon verdict, not a proof: the flags say the sampled data is
// consistent with membership at the supplied thresholds.
struct ClassMReport {
    bool inf_positive = false;
    bool tends_to_infinity = false;
    bool ratio_to_zero = false;
    bool ratio_monotone = false;
    double horizon = 0.0;
    double grid_step = 0.0;
    bool in_class() const {
        return inf_positive && tends_to_infinity && ratio_to_zero && ratio_monotone;
    }
};

ClassMReport check_class_M(const GrowthRate& rate, double horizon, double step,
                           const ClassMOptions& opts = {});

// Checks t f'/f <= kappa < 2 with t f'/f non-increasing, plus f = o(t^2),
// all as sampled-grid verdicts.
struct SupportConditionReport {
    double kappa_bound = 0.0;  // sup of t f'/f over the grid
    bool monotone = false;     // t f'/f non-increasing within slack
    bool subquadratic = false; // f/t^2 decays across the horizon
};

SupportConditionReport check_support_condition(const GrowthRate& rate, double horizon,
                                               double step, double mono_slack = 1e-10);

// Central finite differences, for consistency tests and custom-rate fallback.
double central_diff1(const std::function<double(double)>& f, double t, double h);
double central_diff2(const std::function<double(double)>& f, double t, double h);

}  // namespace growthlab
