#pragma once

#include <cmath>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace growthlab {

struct QuadratureError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename F>
double simpson_recurse(const F& f, double a, double b, double fa, double fm, double fb,
                       double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double h = b - a;
    const double left = h / 12.0 * (fa + 4.0 * flm + fm);
    const double right = h / 12.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (std::abs(delta) <= 15.0 * tol || h <= 1e-14 * (1.0 + std::abs(a)))
        return left + right + delta / 15.0;
    if (depth <= 0) throw QuadratureError("adaptive Simpson failed to converge");
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace detail

// Adaptive Simpson on [a, b]. The tolerance is relative to the unsigned
// integrand mass (|f| integrated by the same rule), not to the signed value,
// so oscillatory pieces that nearly cancel do not force unbounded
// subdivision; a caller-supplied scale can raise it further.
template <typename F>
double integrate(const F& f, double a, double b, double rel_tol,
                 double abs_tol = 1e-300, double scale = 0.0, int max_depth = 48) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    if (!std::isfinite(fa) || !std::isfinite(fb) || !std::isfinite(fm))
        throw QuadratureError("integrand not finite");
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    const double mass =
        std::abs(b - a) / 6.0 * (std::abs(fa) + 4.0 * std::abs(fm) + std::abs(fb));
    const double tol = rel_tol * std::max({std::abs(whole), mass, scale}) + abs_tol;
    return detail::simpson_recurse(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

inline double integrate_fn(const std::function<double(double)>& f, double a, double b,
                           double rel_tol, double abs_tol = 1e-300) {
    return integrate(f, a, b, rel_tol, abs_tol);
}

// Cumulative integral from a fixed start, cached at uniformly spaced
// breakpoints plus an in-segment forward cache, so monotone sweeps and the
// mostly-forward evaluation pattern of nested quadratures cost one short
// tail integral per call. Thread safe; concurrent calls see values within
// quadrature tolerance of the sequential ones.
class CumulativeIntegral {
public:
    CumulativeIntegral(std::function<double(double)> integrand, double start,
                       double rel_tol, double segment = 0.39269908169872414)
        : integrand_(std::move(integrand)), start_(start), rel_tol_(rel_tol), segment_(segment) {
        cum_.push_back(0.0);
    }

    double start() const { return start_; }

    // Integral of the integrand over [start, t], t >= start.
    double value(double t) const {
        if (t < start_ - 1e-12) throw QuadratureError("CumulativeIntegral: t below start");
        if (t <= start_) return 0.0;
        const size_t k = static_cast<size_t>((t - start_) / segment_);
        std::lock_guard<std::mutex> lock(mu_);
        while (cum_.size() <= k) {
            const size_t i = cum_.size() - 1;
            const double a = start_ + static_cast<double>(i) * segment_;
            const double piece =
                integrate(integrand_, a, a + segment_, rel_tol_, 1e-300, scale_hint_);
            scale_hint_ = std::max(scale_hint_, std::abs(piece));
            cum_.push_back(cum_.back() + piece);
        }
        double a = start_ + static_cast<double>(k) * segment_;
        double base = cum_[k];
        if (last_k_ == k && last_t_ <= t && last_t_ >= a) {
            a = last_t_;
            base = last_v_;
        }
        const double v =
            t <= a ? base : base + integrate(integrand_, a, t, rel_tol_, 1e-300, scale_hint_);
        last_k_ = k;
        last_t_ = t;
        last_v_ = v;
        return v;
    }

private:
    std::function<double(double)> integrand_;
    double start_;
    double rel_tol_;
    double segment_;
    mutable std::mutex mu_;
    mutable std::vector<double> cum_;
    mutable double scale_hint_ = 0.0;
    mutable size_t last_k_ = static_cast<size_t>(-1);
    mutable double last_t_ = 0.0;
    mutable double last_v_ = 0.0;
};

}  // namespace growthlab
