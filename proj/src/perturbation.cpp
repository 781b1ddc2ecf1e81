#include "growthlab/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growthlab {

Perturbation build_phi(const GrowthRate& rate) {
    Perturbation p;
    p.rate = rate;
    p.label = "phi[" + rate.label + "]";
    if (!std::isfinite(p.phi(rate.t0)))
        throw std::domain_error("build_phi: phi not finite at t0");
    return p;
}

HfEvaluator::HfEvaluator(GrowthRate rate, double rel_tol)
    : rate_(std::move(rate)), rel_tol_(rel_tol) {
    auto r = rate_;
    cum_ = std::make_shared<CumulativeIntegral>(
        [r](double s) {
            const double c = std::cos(s);
            return r.log_deriv(s) * c * c;
        },
        rate_.t0, rel_tol_);
}

DecayReport check_decay(const Perturbation& p, double horizon, double step) {
    if (horizon <= p.rate.t0) throw std::invalid_argument("check_decay: horizon must exceed t0");
    const double tail_start = horizon - 0.1 * (horizon - p.rate.t0);
    DecayReport rep;
    for (double t = p.rate.t0; t <= horizon + 1e-12 * horizon; t += step)
        if (t >= tail_start) rep.sup_tail = std::max(rep.sup_tail, std::abs(p.phi(t)));
    return rep;
}

HypothesesReport check_hypotheses(const GrowthRate& rate, double horizon, double step,
                                  double quad_tol) {
    if (horizon <= rate.t0) throw std::invalid_argument("check_hypotheses: horizon must exceed t0");
    HypothesesReport rep;
    HfEvaluator hf(rate, quad_tol);

    GrowthRate r = rate;
    CumulativeIntegral c2_int(
        [r](double s) { return std::cos(2.0 * s) * r.log_deriv(s); }, rate.t0, quad_tol);
    CumulativeIntegral c3_int(
        [r, hf](double s) {
            return std::sin(2.0 * s) * r.log_deriv(s) * std::exp(-2.0 * hf.log_value(s));
        },
        rate.t0, quad_tol);

    for (double t = rate.t0; t <= horizon + 1e-12 * horizon; t += step) {
        rep.sup_c1 = std::max(rep.sup_c1, std::abs(rate.log_deriv(t)));
        rep.sup_c2 = std::max(rep.sup_c2, std::abs(c2_int.value(t)));
        rep.sup_c3 = std::max(rep.sup_c3, std::abs(c3_int.value(t)));
    }
    return rep;
}

}  // namespace growthlab
