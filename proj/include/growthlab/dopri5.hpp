#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace growthlab {

// Dormand-Prince 5(4) embedded pair with PI step control and the standard
// fourth-order dense output. Non-stiff smooth systems only.

struct Dopri5Options {
    double rtol = 1e-10;
    double atol = 1e-10;
    double initial_step = 0.0;  // 0 = choose automatically
    double max_step = 0.0;      // 0 = no cap
    long max_steps = 200'000'000;
};

struct Dopri5Stats {
    long accepted = 0;
    long rejected = 0;
    double rtol = 0.0;
};

namespace dopri5_detail {

inline constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
inline constexpr double a21 = 1.0 / 5;
inline constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
inline constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
inline constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                        a54 = -212.0 / 729;
inline constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                        a64 = 49.0 / 176, a65 = -5103.0 / 18656;
inline constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                        b5 = -2187.0 / 6784, b6 = 11.0 / 84;
inline constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                        e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
inline constexpr double d1 = -12715105075.0 / 11282082432.0;
inline constexpr double d3 = 87487479700.0 / 32700410799.0;
inline constexpr double d4 = -10690763975.0 / 1880347072.0;
inline constexpr double d5 = 701980252875.0 / 199316789632.0;
inline constexpr double d6 = -1453857185.0 / 822651844.0;
inline constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace dopri5_detail

// Integrates y' = rhs(t, y) from t0 to t_end, invoking
// observe(t, y_interpolated) at t0, t0 + sample_step, ..., and at t_end.
// rhs signature: void(double t, const std::vector<double>& y, std::vector<double>& dy).
template <typename Rhs, typename Observer>
Dopri5Stats integrate_dopri5(Rhs&& rhs, std::vector<double> y, double t0, double t_end,
                             double sample_step, Observer&& observe,
                             const Dopri5Options& opt = {}) {
    using namespace dopri5_detail;
    if (t_end <= t0) throw std::invalid_argument("integrate_dopri5: t_end must exceed t0");
    const size_t n = y.size();
    const double span = t_end - t0;
    const double hmax = opt.max_step > 0 ? opt.max_step : span;

    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);
    std::vector<double> cont2(n), cont3(n), cont4(n), cont5(n);

    auto sc = [&](double yi, double yni) {
        return opt.atol + opt.rtol * std::max(std::abs(yi), std::abs(yni));
    };

    double t = t0;
    rhs(t, y, k1);
    observe(t0, y);
    long next_sample = 1;
    auto sample_time = [&](long k) { return t0 + static_cast<double>(k) * sample_step; };

    // initial step heuristic (Hairer HINIT, simplified)
    double h = opt.initial_step;
    if (h <= 0.0) {
        double d0 = 0.0, dd1 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double s = sc(y[i], y[i]);
            d0 += (y[i] / s) * (y[i] / s);
            dd1 += (k1[i] / s) * (k1[i] / s);
        }
        d0 = std::sqrt(d0 / n);
        dd1 = std::sqrt(dd1 / n);
        double h0 = (d0 < 1e-5 || dd1 < 1e-5) ? 1e-6 : 0.01 * d0 / dd1;
        h0 = std::min(h0, span);
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h0 * k1[i];
        rhs(t + h0, ytmp, k2);
        double d2 = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double s = sc(y[i], y[i]);
            d2 += ((k2[i] - k1[i]) / s) * ((k2[i] - k1[i]) / s);
        }
        d2 = std::sqrt(d2 / n) / h0;
        const double dm = std::max(dd1, d2);
        const double h1 = dm <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dm, 0.2);
        h = std::min({100.0 * h0, h1, hmax});
    }

    Dopri5Stats stats;
    stats.rtol = opt.rtol;
    double facold = 1e-4;
    const double safe = 0.9, beta = 0.04, expo1 = 0.2 - beta * 0.75;
    bool last_rejected = false;
    long step_count = 0;

    while (t < t_end) {
        if (++step_count > opt.max_steps) throw std::runtime_error("integrate_dopri5: step budget exhausted");
        if (h < 1e-14 * std::max(1.0, std::abs(t)))
            throw std::runtime_error("integrate_dopri5: step size underflow");
        if (t + h > t_end) h = t_end - t;

        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7);

        double err = 0.0;
        for (size_t i = 0; i < n; ++i) {
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                  e6 * k6[i] + e7 * k7[i]);
            const double s = sc(y[i], ynew[i]);
            err += (e / s) * (e / s);
        }
        err = std::sqrt(err / n);

        const double fac11 = std::pow(std::max(err, 1e-50), expo1);
        if (err <= 1.0) {
            // dense output coefficients for this step
            for (size_t i = 0; i < n; ++i) {
                const double ydiff = ynew[i] - y[i];
                const double bspl = h * k1[i] - ydiff;
                cont2[i] = ydiff;
                cont3[i] = bspl;
                cont4[i] = ydiff - h * k7[i] - bspl;
                cont5[i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] +
                                d6 * k6[i] + d7 * k7[i]);
            }
            const double t_new = t + h;
            while (true) {
                const double ts = sample_time(next_sample);
                if (ts > t_new + 1e-9 * std::max(1.0, std::abs(t_new)) || ts > t_end + 1e-9)
                    break;
                const double th = (ts - t) / h;
                for (size_t i = 0; i < n; ++i)
                    ytmp[i] = y[i] + th * (cont2[i] +
                                           (1.0 - th) * (cont3[i] +
                                                         th * (cont4[i] + (1.0 - th) * cont5[i])));
                observe(ts, ytmp);
                ++next_sample;
            }

            stats.accepted++;
            t = t_new;
            std::swap(y, ynew);
            std::swap(k1, k7);
            double fac = safe * std::pow(facold, beta) / fac11;
            fac = std::min(last_rejected ? 1.0 : 5.0, std::max(0.2, fac));
            h = std::min(h * fac, hmax);
            facold = std::max(err, 1e-4);
            last_rejected = false;
        } else {
            stats.rejected++;
            h *= std::max(0.2, safe / fac11);
            last_rejected = true;
        }
    }
    return stats;
}

}  // namespace growthlab
