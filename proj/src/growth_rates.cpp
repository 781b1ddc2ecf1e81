#include "growthlab/growth_rates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace growthlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

void require(bool cond, const std::string& msg) {
    if (!cond) throw std::invalid_argument("growth_rates: " + msg);
}

double finite_or_throw(double v, const char* what) {
    if (!std::isfinite(v)) throw std::domain_error(std::string("growth_rates: non-finite ") + what);
    return v;
}

GrowthRate from_log_deriv(std::string label, double t0, std::function<double(double)> f,
                          std::function<double(double)> g, std::function<double(double)> gp) {
    // f' = g f, f'' = (g^2 + g') f with g = f'/f.
    GrowthRate r;
    r.label = std::move(label);
    r.t0 = t0;
    r.f = f;
    r.d1 = [f, g](double t) { return g(t) * f(t); };
    r.d2 = [f, g, gp](double t) {
        const double gv = g(t);
        return (gv * gv + gp(t)) * f(t);
    };
    return r;
}

}  // namespace

double central_diff1(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - f(t - h)) / (2.0 * h);
}

double central_diff2(const std::function<double(double)>& f, double t, double h) {
    return (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
}

GrowthRate oscillatory_rate() {
    const double t0 = kE;
    auto f = [](double t) {
        const double r = std::sqrt(t), s = std::sin(r);
        return std::cbrt(t) * (1.0 + std::log(t) * s * s);
    };
    auto d1 = [](double t) {
        const double r = std::sqrt(t), s = std::sin(r), c = std::cos(r), lt = std::log(t);
        const double p = 1.0 + lt * s * s;
        const double pp = s * s / t + lt * s * c / r;
        const double u = std::cbrt(t);
        return u / (3.0 * t) * p + u * pp;
    };
    auto d2 = [](double t) {
        const double r = std::sqrt(t), s = std::sin(r), c = std::cos(r), lt = std::log(t);
        const double p = 1.0 + lt * s * s;
        const double pp = s * s / t + lt * s * c / r;
        const double ppp = 2.0 * s * c / (r * t) - s * s / (t * t) +
                           lt * (std::cos(2.0 * r) / (2.0 * t) - s * c / (2.0 * r * t));
        const double u = std::cbrt(t);
        return -2.0 * u / (9.0 * t * t) * p + 2.0 * u / (3.0 * t) * pp + u * ppp;
    };
    GrowthRate rate;
    rate.label = "oscillatory";
    rate.t0 = t0;
    rate.f = f;
    rate.d1 = d1;
    rate.d2 = d2;
    // derivative self-check at a few interior points
    for (double t : {t0 + 1.0, 10.0, 100.0}) {
        const double h = 1e-5 * std::max(1.0, std::abs(t));
        if (std::abs(rate.d1(t) - central_diff1(f, t, h)) > 1e-5 * (1.0 + std::abs(rate.d1(t))) ||
            std::abs(rate.d2(t) - central_diff2(f, t, h)) > 1e-3 * (1.0 + std::abs(rate.d2(t))))
            throw std::logic_error("oscillatory_rate: derivative self-check failed");
    }
    return rate;
}

GrowthRate make_catalog_rate(const std::string& name, const std::vector<double>& params_in,
                             std::optional<double> t0_override) {
    // bare family names resolve to a canonical member
    std::vector<double> params = params_in;
    if (params.empty()) {
        if (name == "power_log") params = {1.0, 1.0, 0.0};
        else if (name == "exp_log_power") params = {2.0};
        else if (name == "exp_power") params = {0.5};
        else if (name == "exponential") params = {1.0};
        else if (name == "iterated_log") params = {1.0};
    }
    GrowthRate rate;
    if (name == "power_log") {
        require(params.size() == 3, "power_log expects {mu, alpha, beta}");
        const double mu = params[0], alpha = params[1], beta = params[2];
        require(mu > 0.0, "power_log: mu must be positive");
        require(alpha >= 0.0 && beta >= 0.0, "power_log: alpha, beta must be nonnegative");
        const double t0 = beta > 0.0 ? kE : kPi / 2.0;
        auto f = [mu, alpha, beta](double t) {
            return mu * std::pow(t, alpha) * (beta == 0.0 ? 1.0 : std::pow(std::log(t), beta));
        };
        auto g = [alpha, beta](double t) {
            return alpha / t + (beta == 0.0 ? 0.0 : beta / (t * std::log(t)));
        };
        auto gp = [alpha, beta](double t) {
            double v = -alpha / (t * t);
            if (beta != 0.0) {
                const double lt = std::log(t);
                v -= beta * (lt + 1.0) / (t * t * lt * lt);
            }
            return v;
        };
        rate = from_log_deriv("power_log", t0, f, g, gp);
    } else if (name == "exp_log_power") {
        require(params.size() == 1 && params[0] > 0.0, "exp_log_power expects {a}, a > 0");
        const double a = params[0];
        auto f = [a](double t) { return std::exp(std::pow(std::log(t), a)); };
        auto g = [a](double t) { return a * std::pow(std::log(t), a - 1.0) / t; };
        auto gp = [a](double t) {
            const double lt = std::log(t);
            return a * std::pow(lt, a - 2.0) * ((a - 1.0) - lt) / (t * t);
        };
        rate = from_log_deriv("exp_log_power", kE, f, g, gp);
    } else if (name == "exp_power") {
        require(params.size() == 1 && params[0] > 0.0 && params[0] < 1.0,
                "exp_power expects {sigma}, 0 < sigma < 1");
        const double sigma = params[0];
        auto f = [sigma](double t) { return std::exp(std::pow(t, sigma)); };
        auto g = [sigma](double t) { return sigma * std::pow(t, sigma - 1.0); };
        auto gp = [sigma](double t) { return sigma * (sigma - 1.0) * std::pow(t, sigma - 2.0); };
        rate = from_log_deriv("exp_power", kPi / 2.0, f, g, gp);
    } else if (name == "t_over_log") {
        require(params.empty(), "t_over_log takes no params");
        auto f = [](double t) { return t / std::log(t); };
        auto g = [](double t) {
            const double lt = std::log(t);
            return 1.0 / t - 1.0 / (t * lt);
        };
        auto gp = [](double t) {
            const double lt = std::log(t);
            return -1.0 / (t * t) + (lt + 1.0) / (t * t * lt * lt);
        };
        rate = from_log_deriv("t_over_log", kE, f, g, gp);
    } else if (name == "iterated_log") {
        require(params.size() == 1, "iterated_log expects {k}");
        const int k = static_cast<int>(params[0]);
        require(k >= 1 && params[0] == k, "iterated_log: k must be a positive integer");
        double t0 = kE;
        for (int i = 1; i < k; ++i) t0 = std::exp(t0);
        auto iter = [k](double t) {
            std::vector<double> levels(k + 1);
            levels[0] = t;
            for (int i = 1; i <= k; ++i) levels[i] = std::log(levels[i - 1]);
            return levels;
        };
        auto f = [iter, k](double t) { return iter(t)[k]; };
        auto d1 = [iter, k](double t) {
            const auto lv = iter(t);
            double prod = t;
            for (int i = 1; i < k; ++i) prod *= lv[i];
            return 1.0 / prod;
        };
        auto d2 = [iter, k](double t) {
            const auto lv = iter(t);
            double prod = t;
            for (int i = 1; i < k; ++i) prod *= lv[i];
            double sum = 1.0;
            double inner = 1.0;
            for (int j = 1; j < k; ++j) {
                inner *= lv[j];
                sum += 1.0 / inner;
            }
            return -sum / (t * prod);
        };
        rate.label = "iterated_log";
        rate.t0 = t0;
        rate.f = f;
        rate.d1 = d1;
        rate.d2 = d2;
    } else if (name == "exponential") {
        require(params.size() == 1 && params[0] > 0.0, "exponential expects {lambda}, lambda > 0");
        const double lambda = params[0];
        auto f = [lambda](double t) { return std::exp(lambda * t); };
        rate = from_log_deriv("exponential", kPi / 2.0, f,
                              [lambda](double) { return lambda; }, [](double) { return 0.0; });
    } else if (name == "constant") {
        require(params.size() <= 1, "constant expects {c} or nothing");
        const double c = params.empty() ? 1.0 : params[0];
        require(c > 0.0, "constant: c must be positive");
        rate.label = "constant";
        rate.t0 = kPi / 2.0;
        rate.f = [c](double) { return c; };
        rate.d1 = [](double) { return 0.0; };
        rate.d2 = [](double) { return 0.0; };
    } else if (name == "oscillatory") {
        require(params.empty(), "oscillatory takes no params");
        rate = oscillatory_rate();
    } else {
        throw std::invalid_argument("growth_rates: unknown catalog rate '" + name + "'");
    }
    if (t0_override) {
        require(*t0_override >= rate.t0, "t0 override below the family's domain start");
        rate.t0 = *t0_override;
    }
    finite_or_throw(rate.f(rate.t0), "f(t0)");
    require(rate.f(rate.t0) > 0.0, "f(t0) must be positive");
    return rate;
}

GrowthRate make_custom_rate(std::string label, std::function<double(double)> f, double t0,
                            std::function<double(double)> d1, std::function<double(double)> d2) {
    GrowthRate rate;
    rate.label = std::move(label);
    rate.t0 = t0;
    rate.f = f;
    rate.d1 = d1 ? std::move(d1) : std::function<double(double)>([f](double t) {
        return central_diff1(f, t, 1e-5 * std::max(1.0, std::abs(t)));
    });
    rate.d2 = d2 ? std::move(d2) : std::function<double(double)>([f](double t) {
        return central_diff2(f, t, 1e-5 * std::max(1.0, std::abs(t)));
    });
    finite_or_throw(rate.f(t0), "f(t0)");
    return rate;
}

ClassMReport check_class_M(const GrowthRate& rate, double horizon, double step,
                           const ClassMOptions& opts) {
    require(horizon > rate.t0, "check_class_M: horizon must exceed t0");
    require(step > 0.0, "check_class_M: step must be positive");
    ClassMReport rep;
    rep.horizon = horizon;
    rep.grid_step = step;

    double fmin = std::numeric_limits<double>::infinity();
    double fmax = -fmin;
    double prev_ratio = std::numeric_limits<double>::infinity();
    bool monotone = true;
    double last_ratio = 0.0;
    const double f0 = finite_or_throw(rate.f(rate.t0), "f on grid");
    for (double t = rate.t0; t <= horizon + 1e-12 * horizon; t += step) {
        const double v = finite_or_throw(rate.f(t), "f on grid");
        const double r = finite_or_throw(rate.d1(t), "f' on grid") / v;
        fmin = std::min(fmin, v);
        fmax = std::max(fmax, v);
        if (r > prev_ratio + opts.mono_slack) monotone = false;
        prev_ratio = r;
        last_ratio = r;
    }
    rep.inf_positive = fmin > 0.0;
    rep.tends_to_infinity = fmax >= opts.growth_factor * f0;
    rep.ratio_to_zero = std::abs(last_ratio) < opts.ratio_tol;
    rep.ratio_monotone = monotone;
    return rep;
}

SupportConditionReport check_support_condition(const GrowthRate& rate, double horizon,
                                               double step, double mono_slack) {
    require(horizon > rate.t0, "check_support_condition: horizon must exceed t0");
    require(step > 0.0, "check_support_condition: step must be positive");
    SupportConditionReport rep;
    std::vector<double> ts, gs, fq;
    for (double t = rate.t0; t <= horizon + 1e-12 * horizon; t += step) {
        const double v = finite_or_throw(rate.f(t), "f on grid");
        const double g = t * finite_or_throw(rate.d1(t), "f' on grid") / v;
        ts.push_back(t);
        gs.push_back(g);
        fq.push_back(v / (t * t));
    }
    rep.kappa_bound = *std::max_element(gs.begin(), gs.end());
    rep.monotone = true;
    for (size_t i = 1; i < gs.size(); ++i)
        if (gs[i] > gs[i - 1] + mono_slack) rep.monotone = false;
    // f = o(t^2) proxy: the trailing decade of f/t^2 sits strictly below the
    // leading decade.
    const size_t n = fq.size();
    const size_t head = std::max<size_t>(1, n / 10);
    double head_min = fq[0], tail_max = fq[n - 1];
    for (size_t i = 0; i < head; ++i) head_min = std::min(head_min, fq[i]);
    for (size_t i = n - head; i < n; ++i) tail_max = std::max(tail_max, fq[i]);
    rep.subquadratic = tail_max < head_min;
    return rep;
}

}  // namespace growthlab
