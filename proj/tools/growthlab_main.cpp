#include <cstdlib>
#include <iostream>

#include "CLI11.hpp"
#include "growthlab/classical_dynamics.hpp"
#include "growthlab/growth_rates.hpp"
#include "growthlab/perturbation.hpp"
#include "growthlab/representations.hpp"
#include "growthlab/scenario.hpp"

namespace {

using namespace growthlab;

std::string output_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    if (const char* env = std::getenv("GROWTHLAB_OUT_DIR")) return env;
    return ".";
}

int cmd_simulate(const std::string& target, const std::string& out_dir_flag) {
    Scenario sc;
    try {
        sc = find_scenario(target);
    } catch (const std::invalid_argument&) {
        sc = load_scenario_file(target);
    }
    RunOptions io;
    io.out_dir = output_dir(out_dir_flag);
    std::cout << "scenario " << sc.name << " (rate " << sc.rate_name << ", a = " << sc.a
              << ")\n";
    const ScenarioArtifacts art = run_scenario(sc, io);
    for (const Verdict& v : art.verdicts) {
        std::cout << (v.pass ? "[PASS] " : "[FAIL] ") << v.name << "  value=" << v.value
                  << " threshold=" << v.threshold;
        if (!v.note.empty()) std::cout << "  (" << v.note << ")";
        std::cout << "\n";
    }
    for (const std::string& f : art.files_written) std::cout << "wrote " << f << "\n";
    std::cout << (art.all_pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return art.all_pass ? 0 : 1;
}

int cmd_check_rate(const std::string& name, const std::vector<double>& params, double horizon,
                   double step) {
    const GrowthRate rate = make_catalog_rate(name, params);
    const double h = rate.t0 + horizon;
    const ClassMReport m = check_class_M(rate, h, step);
    std::cout << "rate " << rate.label << "  t0 = " << rate.t0 << "  horizon = " << h << "\n";
    std::cout << "class-M: inf_positive=" << m.inf_positive
              << " tends_to_infinity=" << m.tends_to_infinity
              << " ratio_to_zero=" << m.ratio_to_zero << " ratio_monotone=" << m.ratio_monotone
              << "  => " << (m.in_class() ? "consistent with class M" : "fails");
    if (!m.in_class()) {
        std::cout << " (";
        bool first = true;
        auto flag = [&](bool ok, const char* nm) {
            if (!ok) {
                if (!first) std::cout << ", ";
                std::cout << nm;
                first = false;
            }
        };
        flag(m.inf_positive, "inf_positive");
        flag(m.tends_to_infinity, "tends_to_infinity");
        flag(m.ratio_to_zero, "ratio_to_zero");
        flag(m.ratio_monotone, "ratio_monotone");
        std::cout << ")";
    }
    std::cout << "\n";
    const SupportConditionReport sup = check_support_condition(rate, h, step);
    std::cout << "support condition: kappa_bound=" << sup.kappa_bound << " (< 2: "
              << (sup.kappa_bound < 2.0) << ") monotone=" << sup.monotone
              << " subquadratic=" << sup.subquadratic << "\n";
    const HypothesesReport hyp = check_hypotheses(rate, h);
    std::cout << "hypothesis suprema on horizon: sup|f'/f|=" << hyp.sup_c1
              << " sup|int cos(2s) f'/f|=" << hyp.sup_c2
              << " sup|int sin(2s) f'/f / H^2|=" << hyp.sup_c3 << "\n";
    const DecayReport dec = check_decay(build_phi(rate), h, step);
    std::cout << "phi tail sup (last 10% of horizon): " << dec.sup_tail << "\n";
    std::cout << "note: finite-horizon evidence, not a proof; thresholds are configurable\n";
    return 0;
}

int cmd_metaplectic(uint64_t seed) {
    const RepresentationSuiteReport rep = run_representation_suite(seed);
    std::cout << "group-law defect:        " << rep.group_law_defect << "  (<= 1e-6)\n";
    std::cout << "rho inverse defect:      " << rep.rho_inverse_defect << "  (<= 1e-6)\n";
    std::cout << "rho isometry defect:     " << rep.rho_isometry_defect << "  (<= 1e-8)\n";
    std::cout << "unitarity defect:        " << rep.unitarity_defect << "  (<= 1e-4)\n";
    std::cout << "conjugation defect:      " << rep.conjugation_defect << "  (<= 1e-3)\n";
    std::cout << "cross-branch defect:     " << rep.cross_branch_defect << "  (<= 1e-3)\n";
    std::cout << "norm ratio band:         [" << rep.norm_ratio_min << ", " << rep.norm_ratio_max
              << "]\n";
    std::cout << "composed ratio band:     [" << rep.composed_ratio_min << ", "
              << rep.composed_ratio_max << "]\n";
    std::cout << (rep.pass ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    return rep.pass ? 0 : 1;
}

int cmd_appendix(const std::string& name, const std::vector<double>& params, double horizon) {
    const GrowthRate rate = make_catalog_rate(name, params);
    const AnalyticBasis basis(rate);
    const double t_half = rate.t0 + 0.5 * horizon;
    const double t_full = rate.t0 + horizon;
    for (double t : {t_half, t_full}) {
        const auto rep = basis.appendix_integrals(t);
        std::cout << "t = " << t << ": I1=" << rep.i1 << " I2=" << rep.i2 << " I3=" << rep.i3
                  << "  bands: I1*sqrt(f)/(t-t0)=" << rep.band1 << " |I2|/sqrt(f)=" << rep.band2
                  << " |I3|=" << rep.band3 << "\n";
    }
    GrowthRate r = rate;
    const auto osc = oscillatory_integral_check(
        [r](double t) { return r.log_deriv(t); },
        {[r](double t) { return r.log_deriv_prime(t); }}, 1, rate.t0, t_full);
    std::cout << "oscillatory integrals of f'/f: sup|cos|=" << osc.sup_cos
              << " sup|sin|=" << osc.sup_sin
              << " bounded_on_horizon=" << osc.bounded_on_horizon
              << " (tail increase " << osc.tail_increase << ")\n";
    return 0;
}

int cmd_list() {
    for (const Scenario& sc : shipped_scenarios()) {
        std::cout << sc.name << ": rate=" << sc.rate_name;
        if (!sc.rate_params.empty()) {
            std::cout << " params=";
            for (size_t i = 0; i < sc.rate_params.size(); ++i)
                std::cout << (i ? "," : "") << sc.rate_params[i];
        }
        std::cout << " a=" << sc.a << " s=";
        for (size_t i = 0; i < sc.s_values.size(); ++i)
            std::cout << (i ? "," : "") << sc.s_values[i];
        std::cout << " horizon=" << sc.horizon;
        if (sc.classical_horizon > 0.0) std::cout << " classical_horizon=" << sc.classical_horizon;
        std::cout << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "growthlab: prescribed Sobolev-growth experiments for the time-dependent "
        "quantum oscillator"};
    app.require_subcommand(1);

    std::string sim_target, sim_out_dir;
    auto* sim = app.add_subcommand(
        "simulate", "run a scenario (shipped name or config file); exit 0 iff all verdicts pass");
    sim->add_option("config", sim_target, "scenario name or path to a key=value / JSON config")
        ->required();
    sim->add_option("--out-dir", sim_out_dir,
                    "output directory (default: $GROWTHLAB_OUT_DIR or '.')");

    std::string rate_name;
    std::vector<double> rate_params;
    double horizon = 1e4, grid_step = 0.5;
    auto* chk = app.add_subcommand(
        "check-rate", "class-M, support-condition and hypothesis reports for a catalog rate "
                      "(diagnostic; exit 0 when evaluation succeeds)");
    chk->add_option("name", rate_name, "catalog rate name")->required();
    chk->add_option("params", rate_params, "family parameters");
    chk->add_option("--horizon", horizon, "horizon beyond t0")->capture_default_str();
    chk->add_option("--step", grid_step, "grid step")->capture_default_str();

    uint64_t seed = 12345;
    auto* meta = app.add_subcommand("metaplectic-test",
                                    "representation identity property suite; exit 0 iff all pass");
    meta->add_option("--seed", seed, "sampler seed")->capture_default_str();

    std::string app_name;
    std::vector<double> app_params;
    double app_horizon = 1000.0;
    auto* apx = app.add_subcommand("appendix-integrals",
                                   "integral-estimate bands for a catalog rate");
    apx->add_option("name", app_name, "catalog rate name")->required();
    apx->add_option("params", app_params, "family parameters");
    apx->add_option("--horizon", app_horizon, "horizon beyond t0")->capture_default_str();

    app.add_subcommand("list-scenarios", "print the shipped scenario catalog");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(sim_target, sim_out_dir);
        if (chk->parsed()) return cmd_check_rate(rate_name, rate_params, horizon, grid_step);
        if (meta->parsed()) return cmd_metaplectic(seed);
        if (apx->parsed()) return cmd_appendix(app_name, app_params, app_horizon);
        return cmd_list();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
