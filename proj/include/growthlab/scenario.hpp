#pragma once

#include <optional>
#include <string>
#include <vector>

#include "growthlab/correspondence.hpp"
#include "growthlab/growth_rates.hpp"
#include "growthlab/perturbation.hpp"

namespace growthlab {

// One experiment: a rate, the Sobolev indices to track, optional forcing,
// horizons and tolerances. Horizons are absolute times and must exceed the
// rate's t0.
struct Scenario {
    std::string name = "custom";
    std::string rate_name;
    std::vector<double> rate_params;
    std::optional<double> t0_override;
    std::vector<double> s_values = {1.0};
    double a = 0.0;                  // forcing amplitude; 0 = homogeneous
    double horizon = 0.0;            // quantum horizon
    double classical_horizon = 0.0;  // 0 = same as horizon
    double ode_tol = 1e-10;
    double quad_tol = 1e-10;
    double dt = 1e-3;
    int initial_truncation = 256;
    int max_truncation = 1 << 16;
    double sample_step = 0.1;
    double tail_threshold = 1e-12;
    double window_offset = 10.0;  // band statistics start at t0 + offset
    bool envelope_check = false;  // subsequence bands for the oscillatory rate
    std::string out_prefix;       // defaults to the scenario name
};

std::vector<Scenario> shipped_scenarios();
Scenario find_scenario(const std::string& name);

// Flat "key = value" text (# comments) or a JSON object with the same keys.
Scenario parse_scenario_config(const std::string& text);
Scenario load_scenario_file(const std::string& path);

struct Verdict {
    std::string name;
    bool pass = false;
    double value = 0.0;
    double threshold = 0.0;
    std::string note;
};

struct ScenarioArtifacts {
    Scenario scenario;
    GrowthRate rate;
    FlowResult flow;          // over [t0, classical_horizon]
    HermiteTrajectory traj;   // over [t0, horizon]
    std::vector<RatioSeries> ratios;  // one per s
    std::vector<Verdict> verdicts;
    bool all_pass = false;
    std::vector<std::string> files_written;
    // informational rate diagnostics, serialized with the verdicts
    ClassMReport class_m;
    SupportConditionReport support;
    HypothesesReport hypotheses;
    DecayReport decay;
};

struct RunOptions {
    std::string out_dir = ".";
    bool write_files = true;
    bool quiet = false;
};

// Full pipeline: classical flow, quantum trajectory, correspondence, growth
// and hygiene verdicts, CSV and verdict-report emission. Deterministic for a
// fixed scenario; CSV output is byte-identical across runs.
ScenarioArtifacts run_scenario(const Scenario& sc, const RunOptions& io = {});

// CSV writers (17 significant digits, fixed column order).
void write_classical_csv(const std::string& path, const FlowResult& flow);
void write_quantum_csv(const std::string& path, const HermiteTrajectory& traj);
void write_ratio_csv(const std::string& path, const RatioSeries& series);
void write_verdicts_json(const std::string& path, const ScenarioArtifacts& artifacts);

std::string format_s_value(double s);

}  // namespace growthlab
