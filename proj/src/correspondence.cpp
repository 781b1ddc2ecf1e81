#include "growthlab/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace growthlab {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

BandReport band_statistics(const std::vector<double>& times, const std::vector<double>& values,
                           double window_start) {
    BandReport rep;
    double t_last = times.empty() ? window_start : times.back();
    const double mid = 0.5 * (window_start + t_last);
    double log_first = 0.0, log_second = 0.0;
    size_t n_first = 0, n_second = 0;
    rep.min_value = 1e300;
    rep.max_value = -1e300;
    for (size_t i = 0; i < times.size(); ++i) {
        if (times[i] < window_start) continue;
        const double v = values[i];
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::domain_error("band_statistics: series must be positive and finite");
        rep.min_value = std::min(rep.min_value, v);
        rep.max_value = std::max(rep.max_value, v);
        ++rep.count;
        if (times[i] <= mid) {
            log_first += std::log(v);
            ++n_first;
        } else {
            log_second += std::log(v);
            ++n_second;
        }
    }
    if (rep.count == 0) throw std::invalid_argument("band_statistics: empty window");
    if (n_first > 0 && n_second > 0) {
        const double g1 = log_first / n_first, g2 = log_second / n_second;
        rep.drift = std::exp(std::abs(g2 - g1));
    } else {
        rep.drift = 1.0;
    }
    return rep;
}

RatioSeries ratio_series(const FlowResult& flow, const HermiteTrajectory& traj, double s,
                         double window_start) {
    if (flow.times.size() != traj.times.size())
        throw std::invalid_argument("ratio_series: sample grids differ in length");
    for (size_t i = 0; i < flow.times.size(); ++i)
        if (std::abs(flow.times[i] - traj.times[i]) > 1e-9 * std::max(1.0, std::abs(flow.times[i])))
            throw std::invalid_argument("ratio_series: sample grids do not match");

    const std::vector<double>& measured = traj.norms_for(s);
    RatioSeries out;
    out.window_start = window_start;
    out.times = flow.times;
    out.measured = measured;
    out.predicted.resize(flow.times.size());
    out.ratio.resize(flow.times.size());
    for (size_t i = 0; i < flow.times.size(); ++i) {
        out.predicted[i] = predicted_norm(s, flow.w_norm(i), flow.zstar_norm(i));
        out.ratio[i] = out.measured[i] / out.predicted[i];
    }
    out.band = band_statistics(out.times, out.ratio, window_start);
    return out;
}

double interp_series(const std::vector<double>& times, const std::vector<double>& values,
                     double t) {
    if (times.empty()) throw std::invalid_argument("interp_series: empty series");
    if (t <= times.front()) return values.front();
    if (t >= times.back()) return values.back();
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    const size_t i = static_cast<size_t>(it - times.begin());
    const double t1 = times[i - 1], t2 = times[i];
    const double w = (t - t1) / (t2 - t1);
    return (1.0 - w) * values[i - 1] + w * values[i];
}

EnvelopeBands oscillatory_envelope(const std::vector<double>& times,
                                   const std::vector<double>& values, double s) {
    if (times.size() != values.size())
        throw std::invalid_argument("oscillatory_envelope: size mismatch");
    const double t_min = times.front(), t_max = times.back();

    std::vector<double> lo_t, lo_v, hi_t, hi_v;
    for (int k = 1;; ++k) {
        const double tk = (k * kPi) * (k * kPi);
        if (tk > t_max) break;
        if (tk < t_min) continue;
        lo_t.push_back(tk);
        lo_v.push_back(interp_series(times, values, tk) / std::pow(tk, s / 6.0));
    }
    for (int k = 0;; ++k) {
        const double tk = ((k + 0.5) * kPi) * ((k + 0.5) * kPi);
        if (tk > t_max) break;
        if (tk < t_min) continue;
        hi_t.push_back(tk);
        hi_v.push_back(interp_series(times, values, tk) /
                       (std::pow(tk, s / 6.0) * std::pow(std::log(tk), s / 2.0)));
    }
    if (lo_t.empty() || hi_t.empty())
        throw std::invalid_argument("oscillatory_envelope: window holds no subsequence points");

    EnvelopeBands bands;
    bands.lower = band_statistics(lo_t, lo_v, lo_t.front());
    bands.upper = band_statistics(hi_t, hi_v, hi_t.front());
    return bands;
}

}  // namespace growthlab
