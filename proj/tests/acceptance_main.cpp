// Acceptance suite: prints one [PASS]/[FAIL] line per criterion and exits
// nonzero if any criterion fails. The heavy simulations are shared between
// criteria, so the whole run stays at desk scale (a few minutes).
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "growthlab/classical_dynamics.hpp"
#include "growthlab/correspondence.hpp"
#include "growthlab/growth_rates.hpp"
#include "growthlab/perturbation.hpp"
#include "growthlab/quantum_evolution.hpp"
#include "growthlab/representations.hpp"
#include "growthlab/scenario.hpp"

using namespace growthlab;

namespace {

constexpr double kPi = 3.14159265358979323846;

int g_failures = 0;

void report(int criterion, bool pass, const std::string& what) {
    std::printf("[%s] criterion-%d: %s\n", pass ? "PASS" : "FAIL", criterion, what.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

struct Sim {
    GrowthRate rate;
    FlowResult flow;
    HermiteTrajectory traj;
};

Sim run_sim(const GrowthRate& rate, double a, double horizon_offset,
            double classical_offset, const std::vector<double>& s_values, double dt,
            int n0, double ode_tol = 1e-10) {
    Sim sim;
    sim.rate = rate;
    const Perturbation pert = build_phi(rate);
    sim.flow = integrate_flow(oscillator_system(pert, a), rate.t0,
                              rate.t0 + classical_offset, ode_tol, 0.1, {0.0, 0.0});
    QuantumHamiltonianSpec qspec;
    qspec.phi = [pert](double t) { return pert.phi(t); };
    qspec.a = a;
    qspec.dt = dt;
    qspec.initial_truncation = n0;
    sim.traj = evolve(ground_state(n0, rate.t0), qspec, rate.t0 + horizon_offset, s_values, {});
    return sim;
}

FlowResult truncate_flow(const FlowResult& flow, size_t n) {
    FlowResult out;
    out.dim = flow.dim;
    out.t0 = flow.t0;
    out.stats = flow.stats;
    out.times.assign(flow.times.begin(), flow.times.begin() + n);
    out.W.assign(flow.W.begin(), flow.W.begin() + n);
    out.U.assign(flow.U.begin(), flow.U.begin() + n);
    out.zstar.assign(flow.zstar.begin(), flow.zstar.begin() + n);
    return out;
}

BandReport growth_band(const Sim& sim, double s, double window_lo, double window_hi,
                       bool forced) {
    std::vector<double> t, r;
    const std::vector<double>& norms = sim.traj.norms_for(s);
    for (size_t i = 0; i < sim.traj.times.size(); ++i) {
        const double ti = sim.traj.times[i];
        if (ti > window_hi) break;
        t.push_back(ti);
        const double target = forced ? std::pow(ti, s) : std::pow(sim.rate.f(ti), 0.5 * s);
        r.push_back(norms[i] / target);
    }
    return band_statistics(t, r, window_lo);
}

// ---------------------------------------------------------------- criteria

void criterion_1_oracle_equivalence() {
    struct Case {
        const char* label;
        GrowthRate rate;
    };
    const std::vector<Case> cases = {
        {"constant", make_catalog_rate("constant", {1.0})},
        {"t", make_catalog_rate("power_log", {1.0, 1.0, 0.0})},
        {"sqrt", make_catalog_rate("power_log", {1.0, 0.5, 0.0})},
        {"t*log", make_catalog_rate("power_log", {1.0, 1.0, 1.0})},
        {"oscillatory", oscillatory_rate()},
    };
    bool pass = true;
    double worst = 0.0;
    std::string worst_label;
    for (const Case& c : cases) {
        const double tol = 1e-10;
        const FlowResult flow = integrate_flow(oscillator_system(build_phi(c.rate)), c.rate.t0,
                                               c.rate.t0 + 100.0, tol, 0.5, {0.0, 0.0});
        const AnalyticBasis basis(c.rate, 1e-11);
        const bool aligned = basis.t0_aligned();
        for (size_t i = 0; i < flow.times.size(); ++i) {
            const Mat w = aligned ? basis.fundamental(flow.times[i])
                                  : basis.fundamental_general(flow.times[i]);
            for (int r = 0; r < 2; ++r)
                for (int col = 0; col < 2; ++col) {
                    const double diff = std::abs(flow.W[i](r, col) - w(r, col));
                    const double bound =
                        std::max({1e-6, 1e-6 * std::abs(w(r, col)),
                                  10.0 * tol * (flow.times[i] - c.rate.t0)});
                    const double rel = diff / bound;
                    if (rel > worst) {
                        worst = rel;
                        worst_label = c.label;
                    }
                    if (diff > bound) pass = false;
                }
        }
    }
    report(1, pass,
           "oracle equivalence of integrated and closed-form fundamental matrices over "
           "[t0, t0+100] (worst defect " +
               fmt(worst) + "x bound, rate " + worst_label + ")");
}

void criterion_2_symplectic_invariants() {
    bool pass = true;
    std::string detail;
    for (const char* name : {"t", "oscillatory"}) {
        const GrowthRate rate = name == std::string("t")
                                    ? make_catalog_rate("power_log", {1.0, 1.0, 0.0})
                                    : oscillatory_rate();
        const FlowResult flow = integrate_flow(oscillator_system(build_phi(rate)), rate.t0,
                                               rate.t0 + 200.0, 1e-10, 0.1, {0.0, 0.0});
        const double dw = max_symplectic_defect_W(flow);
        const double du = max_symplectic_defect_U(flow);
        const double dp = check_symplectic_pairings(flow).max_defect();
        const double wtex = max_wtex_residual(flow);
        pass = pass && dw <= 1e-8 && du <= 1e-8 && dp <= 1e-8 && wtex <= 1e-6;
        detail += std::string(name) + ": sympl " + fmt(std::max({dw, du, dp})) + ", wtex " +
                  fmt(wtex) + "; ";
    }
    report(2, pass, "symplectic pairings <= 1e-8 and reducing-transform relation <= 1e-6 (" +
                        detail + ")");
}

void criterion_3_hf() {
    bool pass = true;
    double worst_rel = 0.0;
    for (double lambda : {0.1, 0.5}) {
        const GrowthRate rate = make_catalog_rate("exponential", {lambda});
        const HfEvaluator hf(rate, 1e-10);
        for (double t = rate.t0; t <= rate.t0 + 50.0; t += 0.37) {
            const double closed =
                std::exp(lambda * (t - rate.t0) / 2.0 +
                         lambda * (std::sin(2.0 * t) - std::sin(2.0 * rate.t0)) / 4.0);
            const double rel = std::abs(hf.value(t) - closed) / closed;
            worst_rel = std::max(worst_rel, rel);
            if (rel > 1e-8) pass = false;
        }
    }
    double worst_drift = 0.0;
    const std::vector<GrowthRate> rates = {
        make_catalog_rate("power_log", {1.0, 1.0, 0.0}),
        make_catalog_rate("power_log", {1.0, 0.5, 0.0}),
        make_catalog_rate("power_log", {1.0, 1.0, 1.0}),
        make_catalog_rate("exp_log_power", {2.0}),
        make_catalog_rate("exp_power", {0.5}),
        make_catalog_rate("t_over_log", {}),
    };
    for (const GrowthRate& rate : rates) {
        auto band = [&rate](double tol) {
            const HfEvaluator hf(rate, tol);
            double lo = 1e300, hi = 0.0;
            for (double t = rate.t0; t <= rate.t0 + 1000.0; t += 0.25) {
                const double h = hf.value(t);
                const double r = h * h / rate.f(t);
                lo = std::min(lo, r);
                hi = std::max(hi, r);
            }
            return std::pair<double, double>(lo, hi);
        };
        const auto coarse = band(1e-9);
        const auto fine = band(1e-10);
        const double drift = std::max(std::abs(coarse.first - fine.first) / fine.first,
                                      std::abs(coarse.second - fine.second) / fine.second);
        worst_drift = std::max(worst_drift, drift);
        if (drift > 0.01) pass = false;
        if (!(fine.first > 0.0) || !std::isfinite(fine.second)) pass = false;
    }
    report(3, pass, "H_f exponential closed form (worst rel " + fmt(worst_rel) +
                        " <= 1e-8) and H_f^2/f band drift under 10x tolerance refinement (" +
                        fmt(worst_drift) + " <= 1%)");
}

void criterion_4_homogeneous_growth(const Sim& lin, const Sim& sqrt_sim) {
    bool pass = true;
    std::string detail;
    for (const Sim* sim : {&lin, &sqrt_sim}) {
        const double t0 = sim->rate.t0;
        for (double s : {1.0, 2.0}) {
            const BandReport base = growth_band(*sim, s, t0 + 10.0, t0 + 200.0, false);
            const BandReport ext = growth_band(*sim, s, t0 + 10.0, t0 + 400.0, false);
            const double doubling = ext.band() / base.band();
            if (base.band() > 10.0 || doubling > 2.0) pass = false;
            detail += "s=" + format_s_value(s) + ": band " + fmt(base.band()) + " drift " +
                      fmt(doubling) + "; ";
        }
    }
    report(4, pass, "homogeneous growth |u|_s / f^(s/2) band <= 10 with horizon-doubling "
                    "drift <= 2 for f = t and f = sqrt(t) (" + detail + ")");
}

void criterion_5_forced_growth(const Sim& forced) {
    const double t0 = forced.rate.t0;
    std::vector<double> t, zr;
    for (size_t i = 0; i < forced.flow.times.size(); ++i) {
        const double ti = forced.flow.times[i];
        if (ti <= t0) continue;
        t.push_back(ti);
        zr.push_back(forced.flow.zstar_norm(i) / (ti - t0));
    }
    const BandReport classical = band_statistics(t, zr, t0 + 10.0);
    const BandReport quantum = growth_band(forced, 1.0, t0 + 10.0, t0 + 200.0, true);
    const bool pass = classical.band() <= 5.0 && quantum.band() <= 10.0;
    report(5, pass, "forced growth: classical |z|/(t-t0) band " + fmt(classical.band()) +
                        " <= 5, quantum |u|_1/t band " + fmt(quantum.band()) + " <= 10");
}

void criterion_6_oscillatory_dichotomy(const Sim& osc) {
    const double s = 1.0;
    std::vector<double> ws(osc.flow.times.size());
    for (size_t i = 0; i < osc.flow.times.size(); ++i)
        ws[i] = std::pow(osc.flow.w_norm(i), s);
    const EnvelopeBands classical = oscillatory_envelope(osc.flow.times, ws, s);
    const EnvelopeBands quantum =
        oscillatory_envelope(osc.traj.times, osc.traj.norms_for(s), s);
    const bool pass = classical.lower.band() <= 10.0 && classical.upper.band() <= 10.0 &&
                      quantum.lower.band() <= 10.0 && quantum.upper.band() <= 10.0;
    report(6, pass,
           "oscillatory dichotomy: classical bands " + fmt(classical.lower.band()) + "/" +
               fmt(classical.upper.band()) + " (to t0+3000), quantum bands " +
               fmt(quantum.lower.band()) + "/" + fmt(quantum.upper.band()) +
               " (to t0+300), all <= 10");
}

void criterion_7_correspondence(const std::map<std::string, const Sim*>& sims) {
    bool pass = true;
    std::string detail;
    for (const auto& [name, sim] : sims) {
        const double t0 = sim->rate.t0;
        const FlowResult matched = sim->flow.times.size() == sim->traj.times.size()
                                       ? sim->flow
                                       : truncate_flow(sim->flow, sim->traj.times.size());
        for (double s : sim->traj.s_values) {
            const RatioSeries rs = ratio_series(matched, sim->traj, s, t0 + 10.0);
            const bool finite = rs.band.min_value > 0.0 && std::isfinite(rs.band.max_value);
            if (!finite || rs.band.drift > 2.0) pass = false;
            if (name == "qho-baseline") {
                const double spread =
                    (rs.band.max_value - rs.band.min_value) / rs.band.min_value;
                if (spread > 1e-6) pass = false;
                detail += "qho spread " + fmt(spread) + "; ";
            }
        }
        const RatioSeries rs1 = ratio_series(matched, sim->traj, sim->traj.s_values[0], t0 + 10.0);
        detail += name + " drift " + fmt(rs1.band.drift) + "; ";
    }
    report(7, pass, "correspondence ratio bands finite with drift <= 2 on every shipped "
                    "scenario (" + detail + ")");
}

void criterion_8_representations() {
    const RepresentationSuiteReport rep = run_representation_suite(12345);
    report(8, rep.pass,
           "representation identities: group law " + fmt(rep.group_law_defect) +
               " <= 1e-6, unitarity " + fmt(rep.unitarity_defect) + " <= 1e-4, conjugation " +
               fmt(rep.conjugation_defect) + " <= 1e-3, cross-branch " +
               fmt(rep.cross_branch_defect) + " <= 1e-3, ratio bands [" +
               fmt(rep.norm_ratio_min) + "," + fmt(rep.norm_ratio_max) + "] and [" +
               fmt(rep.composed_ratio_min) + "," + fmt(rep.composed_ratio_max) +
               "] inside frozen brackets");
}

void criterion_9_appendix() {
    const GrowthRate rate = make_catalog_rate("power_log", {1.0, 1.0, 0.0});
    const AnalyticBasis basis(rate);
    auto scan = [&](double offset) {
        double b1_lo = 1e300, b1_hi = 0.0, b2_sup = 0.0, b3_sup = 0.0;
        for (double t = rate.t0 + 10.0; t <= rate.t0 + offset; t += 2.0) {
            const auto rep = basis.appendix_integrals(t);
            b1_lo = std::min(b1_lo, rep.band1);
            b1_hi = std::max(b1_hi, rep.band1);
            b2_sup = std::max(b2_sup, rep.band2);
            b3_sup = std::max(b3_sup, rep.band3);
        }
        return std::array<double, 4>{b1_lo, b1_hi, b2_sup, b3_sup};
    };
    const auto h1 = scan(500.0);
    const auto h2 = scan(1000.0);
    const double drift = std::max({std::abs(h2[0] - h1[0]) / h1[0],
                                   std::abs(h2[1] - h1[1]) / h1[1],
                                   (h2[2] - h1[2]) / std::max(h1[2], 1e-12),
                                   (h2[3] - h1[3]) / std::max(h1[3], 1e-12)});
    bool pass = h1[0] > 0.0 && std::isfinite(h1[1]) && drift <= 0.2;

    GrowthRate osc = oscillatory_rate();
    const auto oscrep = oscillatory_integral_check(
        [osc](double t) { return osc.log_deriv(t); },
        {[osc](double t) { return osc.log_deriv_prime(t); }}, 1, osc.t0, 1e4, 1e-9);
    if (!oscrep.bounded_on_horizon) pass = false;
    report(9, pass, "appendix integral bands stable under horizon doubling (drift " +
                        fmt(drift) + " <= 20%) and oscillatory-rate f'/f integrals bounded on "
                        "horizon 1e4 (sup " +
                        fmt(std::max(oscrep.sup_cos, oscrep.sup_sin)) + ", tail increase " +
                        fmt(oscrep.tail_increase) + ")");
}

void criterion_10_hygiene(const Sim& lin) {
    // L2 drift from the heaviest homogeneous run
    double drift = 0.0;
    const double l2sq0 = lin.traj.l2.front() * lin.traj.l2.front();
    for (size_t i = 1; i < lin.traj.times.size(); ++i) {
        const double d = std::abs(lin.traj.l2[i] * lin.traj.l2[i] - l2sq0) / l2sq0;
        drift = std::max(drift, d / std::max(1.0, lin.traj.times[i] - lin.rate.t0));
    }

    // dt halving: second-order convergence of the final Sobolev norm
    const GrowthRate rate = make_catalog_rate("power_log", {1.0, 1.0, 0.0});
    const Perturbation pert = build_phi(rate);
    auto final_norm = [&](double dt) {
        QuantumHamiltonianSpec spec;
        spec.phi = [pert](double t) { return pert.phi(t); };
        spec.a = 0.5;
        spec.dt = dt;
        spec.initial_truncation = 128;
        EvolveOptions opts;
        opts.sample_step = 0.5;
        return evolve(ground_state(128, rate.t0), spec, rate.t0 + 5.0, {1.0}, opts)
            .norms_for(1.0)
            .back();
    };
    const double n1 = final_norm(4e-3), n2 = final_norm(2e-3), n3 = final_norm(1e-3);
    const double ratio = (n1 - n2) / (n2 - n3);

    // truncation doubling with a small tail
    auto final_norm_n = [&](int n0) {
        QuantumHamiltonianSpec spec;
        spec.phi = [pert](double t) { return pert.phi(t); };
        spec.dt = 2e-3;
        spec.initial_truncation = n0;
        const HermiteTrajectory traj =
            evolve(ground_state(n0, rate.t0), spec, rate.t0 + 20.0, {1.0, 2.0}, {});
        return std::pair<double, double>(traj.norms_for(1.0).back(),
                                         traj.norms_for(2.0).back());
    };
    const auto a = final_norm_n(256);
    const auto b = final_norm_n(512);
    const double nref = std::max(std::abs(a.first - b.first) / b.first,
                                 std::abs(a.second - b.second) / b.second);

    const bool pass = drift <= 1e-8 && ratio >= 3.0 && ratio <= 5.0 && nref < 1e-6;
    report(10, pass, "hygiene: L2 drift " + fmt(drift) + " <= 1e-8 per unit time, dt-halving "
                     "error ratio " + fmt(ratio) + " in [3,5], truncation-doubling change " +
                     fmt(nref) + " < 1e-6");
}

}  // namespace

int main() {
    std::setvbuf(stdout, nullptr, _IONBF, 0);
    std::printf("building shared simulations...\n");

    const GrowthRate rate_t = make_catalog_rate("power_log", {1.0, 1.0, 0.0});
    const GrowthRate rate_sqrt = make_catalog_rate("power_log", {1.0, 0.5, 0.0});
    const GrowthRate rate_plog = make_catalog_rate("power_log", {1.0, 1.0, 1.0});
    const GrowthRate rate_const = make_catalog_rate("constant", {1.0});
    const GrowthRate rate_exp = make_catalog_rate("exponential", {0.1});
    const GrowthRate rate_osc = oscillatory_rate();

    std::printf("  mono-linear to t0+400...\n");
    const Sim lin = run_sim(rate_t, 0.0, 400.0, 400.0, {1.0, 2.0}, 1e-3, 256);
    std::printf("  mono-sqrt to t0+400...\n");
    const Sim sq = run_sim(rate_sqrt, 0.0, 400.0, 400.0, {1.0, 2.0}, 1e-3, 256);
    std::printf("  forced-linear to t0+200...\n");
    const Sim forced = run_sim(rate_t, 1.0, 200.0, 200.0, {1.0}, 1e-3, 256);
    std::printf("  oscillatory to t0+300 (classical t0+3000)...\n");
    const Sim osc = run_sim(rate_osc, 0.0, 300.0, 3000.0, {1.0}, 1e-3, 256);
    std::printf("  qho-baseline to t0+50...\n");
    const Sim qho = run_sim(rate_const, 0.0, 50.0, 50.0, {1.0}, 1e-3, 256);
    std::printf("  mono-powerlog to t0+200...\n");
    const Sim plog = run_sim(rate_plog, 0.0, 200.0, 200.0, {1.0}, 1e-3, 256);
    std::printf("  exponential-remark to t0+40...\n");
    const Sim expo = run_sim(rate_exp, 0.0, 40.0, 40.0, {1.0}, 1e-3, 256);

    criterion_1_oracle_equivalence();
    criterion_2_symplectic_invariants();
    criterion_3_hf();
    criterion_4_homogeneous_growth(lin, sq);
    criterion_5_forced_growth(forced);
    criterion_6_oscillatory_dichotomy(osc);
    const std::map<std::string, const Sim*> sims = {
        {"qho-baseline", &qho},   {"mono-linear", &lin},     {"mono-powerlog", &plog},
        {"oscillatory", &osc},    {"forced-linear", &forced}, {"exponential-remark", &expo},
    };
    criterion_7_correspondence(sims);
    criterion_8_representations();
    criterion_9_appendix();
    criterion_10_hygiene(lin);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
