#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "growthlab/perturbation.hpp"

using namespace growthlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

// closed form of H_f for f = exp(lambda t): the integrand is
// lambda cos^2, with antiderivative lambda (t/2 + sin(2t)/4)
double hf_exponential(double lambda, double t0, double t) {
    return std::exp(lambda * (t - t0) / 2.0 +
                    lambda * (std::sin(2.0 * t) - std::sin(2.0 * t0)) / 4.0);
}

}  // namespace

TEST_CASE("phi closed forms") {
    SUBCASE("constant rate gives phi identically zero") {
        const Perturbation p = build_phi(make_catalog_rate("constant", {2.0}));
        for (double t = p.rate.t0; t < p.rate.t0 + 20.0; t += 0.37)
            CHECK(p.phi(t) == 0.0);
    }
    SUBCASE("exponential rate: -lambda^2 cos^4 + 2 lambda sin(2t)") {
        const double lambda = 0.4;
        const Perturbation p = build_phi(make_catalog_rate("exponential", {lambda}));
        for (double t = p.rate.t0; t < p.rate.t0 + 10.0; t += 0.21) {
            const double c = std::cos(t);
            const double expected =
                -lambda * lambda * c * c * c * c + 2.0 * lambda * std::sin(2.0 * t);
            CHECK(p.phi(t) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("f(t) = t: -cos^4/t^2 + cos^2/t^2 + (2/t) sin(2t)") {
        const Perturbation p = build_phi(make_catalog_rate("power_log", {1.0, 1.0, 0.0}));
        for (double t = p.rate.t0; t < p.rate.t0 + 10.0; t += 0.21) {
            const double c2 = std::cos(t) * std::cos(t);
            const double expected =
                -c2 * c2 / (t * t) + c2 / (t * t) + 2.0 / t * std::sin(2.0 * t);
            CHECK(p.phi(t) == doctest::Approx(expected).epsilon(1e-12));
        }
    }
}

TEST_CASE("H_f basics") {
    SUBCASE("value 1 at the domain start") {
        for (const char* name : {"constant", "t_over_log", "oscillatory"}) {
            const HfEvaluator hf(make_catalog_rate(name, {}));
            CHECK(hf.value(hf.rate().t0) == 1.0);
        }
    }
    SUBCASE("exponential closed form at 1e-8 relative") {
        const double lambda = 0.3;
        const HfEvaluator hf(make_catalog_rate("exponential", {lambda}));
        const double t0 = hf.rate().t0;
        for (double t = t0; t <= t0 + 30.0; t += 0.73)
            CHECK(hf.value(t) ==
                  doctest::Approx(hf_exponential(lambda, t0, t)).epsilon(1e-8));
    }
    SUBCASE("nondecreasing for monotone rates") {
        const HfEvaluator hf(make_catalog_rate("power_log", {1.0, 1.0, 0.0}));
        double prev = 0.0;
        for (double t = hf.rate().t0; t <= hf.rate().t0 + 50.0; t += 0.37) {
            const double v = hf.value(t);
            CHECK(v >= prev * (1.0 - 1e-12));
            prev = v;
        }
    }
    SUBCASE("cached sweep agrees with a fresh evaluator") {
        const GrowthRate rate = make_catalog_rate("power_log", {1.0, 1.0, 0.0});
        const HfEvaluator swept(rate, 1e-10);
        for (double t = rate.t0; t <= rate.t0 + 40.0; t += 0.11) swept.value(t);
        const HfEvaluator fresh(rate, 1e-10);
        const double t_probe = rate.t0 + 23.4;
        CHECK(swept.value(t_probe) ==
              doctest::Approx(fresh.value(t_probe)).epsilon(2e-10));
    }
    SUBCASE("H^2/f band is stable under tolerance refinement") {
        const GrowthRate rate = make_catalog_rate("power_log", {1.0, 1.0, 0.0});
        auto band = [&rate](double tol) {
            const HfEvaluator hf(rate, tol);
            double lo = 1e300, hi = 0.0;
            for (double t = rate.t0; t <= rate.t0 + 100.0; t += 0.13) {
                const double v = hf.value(t);
                const double r = v * v / rate.f(t);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            return std::pair<double, double>(lo, hi);
        };
        const auto coarse = band(1e-9);
        const auto fine = band(1e-10);
        CHECK(coarse.first > 0.0);
        CHECK(std::abs(coarse.first - fine.first) / fine.first < 0.01);
        CHECK(std::abs(coarse.second - fine.second) / fine.second < 0.01);
    }
}

TEST_CASE("decay of phi") {
    SUBCASE("f(t) = t decays like 1/t") {
        const Perturbation p = build_phi(make_catalog_rate("power_log", {1.0, 1.0, 0.0}));
        const DecayReport rep = check_decay(p, 500.0, 0.05);
        CHECK(rep.sup_tail < 2.3 / 450.0 * 1.2);
        CHECK(rep.sup_tail > 0.0);
    }
    SUBCASE("exponential keeps an order-one oscillating term") {
        const double lambda = 0.5;
        const Perturbation p = build_phi(make_catalog_rate("exponential", {lambda}));
        const DecayReport rep = check_decay(p, 200.0, 0.05);
        CHECK(rep.sup_tail > 0.5);  // the 2 lambda sin(2t) term persists
    }
    SUBCASE("oscillatory rate decays") {
        const Perturbation p = build_phi(oscillatory_rate());
        const DecayReport near = check_decay(p, 200.0, 0.05);
        const DecayReport far = check_decay(p, 2000.0, 0.1);
        CHECK(far.sup_tail < near.sup_tail);
        CHECK(far.sup_tail < 0.1);
    }
}

TEST_CASE("hypothesis suprema") {
    SUBCASE("constant rate: everything vanishes") {
        const HypothesesReport rep =
            check_hypotheses(make_catalog_rate("constant", {1.0}), 50.0);
        CHECK(rep.sup_c1 == 0.0);
        CHECK(rep.sup_c2 == 0.0);
        CHECK(rep.sup_c3 == 0.0);
    }
    SUBCASE("exponential: sup|f'/f| = lambda, cosine integral bounded by closed form") {
        const double lambda = 0.25;
        const GrowthRate rate = make_catalog_rate("exponential", {lambda});
        const HypothesesReport rep = check_hypotheses(rate, rate.t0 + 60.0);
        CHECK(rep.sup_c1 == doctest::Approx(lambda));
        // integral of lambda cos(2s) = lambda (sin 2t - sin 2t0)/2, sup <= lambda
        CHECK(rep.sup_c2 <= lambda * (1.0 + 1e-6));
        CHECK(rep.sup_c2 > 0.3 * lambda);
    }
    SUBCASE("f(t) = t: running sups stabilize between horizons") {
        const GrowthRate rate = make_catalog_rate("power_log", {1.0, 1.0, 0.0});
        const HypothesesReport h100 = check_hypotheses(rate, rate.t0 + 100.0);
        const HypothesesReport h1000 = check_hypotheses(rate, rate.t0 + 1000.0);
        CHECK(h1000.sup_c2 <= h100.sup_c2 * 1.05);
        CHECK(h1000.sup_c3 <= h100.sup_c3 * 1.05);
        CHECK(h1000.sup_c1 == doctest::Approx(h100.sup_c1));  // sup at t0
    }
}

TEST_CASE("build_phi rejects rates that blow up at t0") {
    CHECK_THROWS_AS(
        build_phi(make_custom_rate("bad", [](double t) { return 1.0 / (t - 1.0); }, 1.0)),
        std::exception);
}

TEST_CASE("phi at aligned starting phase vanishes for power rates") {
    // at t0 = 2k pi + pi/2 the cosine factors kill every term
    const Perturbation p = build_phi(make_catalog_rate("power_log", {1.0, 1.0, 0.0}));
    CHECK(p.rate.t0 == doctest::Approx(kPi / 2.0));
    CHECK(std::abs(p.phi(p.rate.t0)) < 1e-14);
}
