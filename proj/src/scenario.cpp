#include "growthlab/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace growthlab {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kE = 2.71828182845904523536;

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

FlowResult slice_flow(const FlowResult& flow, size_t n) {
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

}  // namespace

std::string format_s_value(double s) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", s);
    return buf;
}

std::vector<Scenario> shipped_scenarios() {
    std::vector<Scenario> list;

    Scenario qho;
    qho.name = "qho-baseline";
    qho.rate_name = "constant";
    qho.rate_params = {1.0};
    qho.s_values = {1.0};
    qho.horizon = kPi / 2.0 + 50.0;
    list.push_back(qho);

    Scenario lin;
    lin.name = "mono-linear";
    lin.rate_name = "power_log";
    lin.rate_params = {1.0, 1.0, 0.0};
    lin.s_values = {1.0, 2.0};
    lin.horizon = kPi / 2.0 + 200.0;
    list.push_back(lin);

    Scenario plog;
    plog.name = "mono-powerlog";
    plog.rate_name = "power_log";
    plog.rate_params = {1.0, 1.0, 1.0};
    plog.s_values = {1.0};
    plog.horizon = kE + 200.0;
    list.push_back(plog);

    Scenario osc;
    osc.name = "oscillatory";
    osc.rate_name = "oscillatory";
    osc.s_values = {1.0};
    osc.horizon = kE + 300.0;
    osc.classical_horizon = kE + 3000.0;
    osc.envelope_check = true;
    list.push_back(osc);

    Scenario forced;
    forced.name = "forced-linear";
    forced.rate_name = "power_log";
    forced.rate_params = {1.0, 1.0, 0.0};
    forced.s_values = {1.0};
    forced.a = 1.0;
    forced.horizon = kPi / 2.0 + 200.0;
    list.push_back(forced);

    Scenario expo;
    expo.name = "exponential-remark";
    expo.rate_name = "exponential";
    expo.rate_params = {0.1};
    expo.s_values = {1.0};
    expo.horizon = kPi / 2.0 + 40.0;
    list.push_back(expo);

    return list;
}

Scenario find_scenario(const std::string& name) {
    for (const Scenario& sc : shipped_scenarios())
        if (sc.name == name) return sc;
    throw std::invalid_argument("unknown scenario '" + name + "' (see list-scenarios)");
}

namespace {

std::vector<double> parse_number_list(const std::string& text) {
    std::vector<double> out;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        if (!tok.empty() && tok.back() == ',') tok.pop_back();
        if (tok.empty()) continue;
        out.push_back(std::stod(tok));
    }
    return out;
}

void apply_key(Scenario& sc, const std::string& key, const std::string& value) {
    if (key == "name") sc.name = value;
    else if (key == "rate") sc.rate_name = value;
    else if (key == "params") sc.rate_params = parse_number_list(value);
    else if (key == "t0") sc.t0_override = std::stod(value);
    else if (key == "s") sc.s_values = parse_number_list(value);
    else if (key == "a") sc.a = std::stod(value);
    else if (key == "horizon") sc.horizon = std::stod(value);
    else if (key == "classical_horizon") sc.classical_horizon = std::stod(value);
    else if (key == "ode_tol") sc.ode_tol = std::stod(value);
    else if (key == "quad_tol") sc.quad_tol = std::stod(value);
    else if (key == "dt") sc.dt = std::stod(value);
    else if (key == "N0") sc.initial_truncation = std::stoi(value);
    else if (key == "max_N") sc.max_truncation = std::stoi(value);
    else if (key == "sample_step") sc.sample_step = std::stod(value);
    else if (key == "tail_threshold") sc.tail_threshold = std::stod(value);
    else if (key == "window_offset") sc.window_offset = std::stod(value);
    else if (key == "envelope_check") sc.envelope_check = (value == "true" || value == "1");
    else if (key == "out_prefix") sc.out_prefix = value;
    else throw std::invalid_argument("config: unknown key '" + key + "'");
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

Scenario parse_scenario_config(const std::string& text) {
    Scenario sc;
    const std::string body = trim(text);
    if (!body.empty() && body.front() == '{') {
        const auto j = nlohmann::json::parse(body);
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_array()) {
                std::string flat;
                for (const auto& v : it.value()) flat += std::to_string(v.get<double>()) + " ";
                apply_key(sc, it.key(), flat);
            } else if (it.value().is_string()) {
                apply_key(sc, it.key(), it.value().get<std::string>());
            } else if (it.value().is_boolean()) {
                apply_key(sc, it.key(), it.value().get<bool>() ? "true" : "false");
            } else {
                std::ostringstream os;
                os.precision(17);
                os << it.value().get<double>();
                apply_key(sc, it.key(), os.str());
            }
        }
        return sc;
    }
    std::istringstream in(body);
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config: expected 'key = value', got '" + line + "'");
        apply_key(sc, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_config(buf.str());
}

void write_classical_csv(const std::string& path, const FlowResult& flow) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    const int d = 2 * flow.dim;
    out << "t";
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) out << ",w" << i << j;
    out << ",norm_W";
    for (int i = 0; i < d; ++i) out << ",z" << i;
    out << ",norm_z,sympl_defect\n";
    for (size_t k = 0; k < flow.times.size(); ++k) {
        out << fmt17(flow.times[k]);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) out << ',' << fmt17(flow.W[k](i, j));
        out << ',' << fmt17(flow.w_norm(k));
        for (int i = 0; i < d; ++i) out << ',' << fmt17(flow.zstar[k][i]);
        out << ',' << fmt17(flow.zstar_norm(k));
        out << ',' << fmt17(symplectic_defect(flow.W[k])) << '\n';
    }
}

void write_quantum_csv(const std::string& path, const HermiteTrajectory& traj) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "t,l2";
    for (double s : traj.s_values) out << ",norm_s" << format_s_value(s);
    out << ",tail_mass,truncation\n";
    for (size_t k = 0; k < traj.times.size(); ++k) {
        out << fmt17(traj.times[k]) << ',' << fmt17(traj.l2[k]);
        for (size_t i = 0; i < traj.s_values.size(); ++i) out << ',' << fmt17(traj.norms[i][k]);
        out << ',' << fmt17(traj.tail[k]) << ',' << traj.truncation[k] << '\n';
    }
}

void write_ratio_csv(const std::string& path, const RatioSeries& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << "t,measured,predicted,ratio\n";
    for (size_t k = 0; k < series.times.size(); ++k)
        out << fmt17(series.times[k]) << ',' << fmt17(series.measured[k]) << ','
            << fmt17(series.predicted[k]) << ',' << fmt17(series.ratio[k]) << '\n';
}

void write_verdicts_json(const std::string& path, const ScenarioArtifacts& artifacts) {
    nlohmann::ordered_json j;
    j["scenario"] = artifacts.scenario.name;
    j["rate"] = artifacts.scenario.rate_name;
    j["t0"] = artifacts.rate.t0;
    j["horizon"] = artifacts.scenario.horizon;
    j["a"] = artifacts.scenario.a;
    j["all_pass"] = artifacts.all_pass;
    nlohmann::ordered_json verdicts = nlohmann::ordered_json::array();
    for (const Verdict& v : artifacts.verdicts) {
        nlohmann::ordered_json e;
        e["name"] = v.name;
        e["pass"] = v.pass;
        e["value"] = v.value;
        e["threshold"] = v.threshold;
        if (!v.note.empty()) e["note"] = v.note;
        verdicts.push_back(e);
    }
    j["verdicts"] = verdicts;
    nlohmann::ordered_json reports;
    reports["class_m"] = {{"inf_positive", artifacts.class_m.inf_positive},
                          {"tends_to_infinity", artifacts.class_m.tends_to_infinity},
                          {"ratio_to_zero", artifacts.class_m.ratio_to_zero},
                          {"ratio_monotone", artifacts.class_m.ratio_monotone},
                          {"horizon", artifacts.class_m.horizon},
                          {"note", "finite-horizon evidence with configurable thresholds"}};
    reports["support_condition"] = {{"kappa_bound", artifacts.support.kappa_bound},
                                    {"monotone", artifacts.support.monotone},
                                    {"subquadratic", artifacts.support.subquadratic}};
    reports["hypotheses"] = {{"sup_log_deriv", artifacts.hypotheses.sup_c1},
                             {"sup_cos_integral", artifacts.hypotheses.sup_c2},
                             {"sup_damped_sin_integral", artifacts.hypotheses.sup_c3},
                             {"note", "suprema supported on the run horizon, not proved"}};
    reports["phi_decay"] = {{"tail_sup", artifacts.decay.sup_tail}};
    j["reports"] = reports;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

ScenarioArtifacts run_scenario(const Scenario& sc_in, const RunOptions& io) {
    ScenarioArtifacts art;
    Scenario sc = sc_in;
    if (sc.out_prefix.empty()) sc.out_prefix = sc.name;
    if (sc.rate_name.empty()) throw std::invalid_argument("scenario: rate is required");
    for (double s : sc.s_values)
        if (!(s > 0.0)) throw std::invalid_argument("scenario: s values must be positive");

    art.rate = make_catalog_rate(sc.rate_name, sc.rate_params, sc.t0_override);
    const double t0 = art.rate.t0;
    if (!(sc.horizon > t0))
        throw std::invalid_argument("scenario: horizon must exceed the rate's t0 = " +
                                    std::to_string(t0));
    const double classical_horizon =
        sc.classical_horizon > 0.0 ? sc.classical_horizon : sc.horizon;
    if (classical_horizon < sc.horizon)
        throw std::invalid_argument("scenario: classical_horizon must cover the quantum horizon");
    art.scenario = sc;

    const Perturbation pert = build_phi(art.rate);
    const AffineSystemSpec sys = oscillator_system(pert, sc.a);
    art.flow = integrate_flow(sys, t0, classical_horizon, sc.ode_tol, sc.sample_step,
                              {0.0, 0.0});

    QuantumHamiltonianSpec qspec;
    qspec.phi = [pert](double t) { return pert.phi(t); };
    qspec.a = sc.a;
    qspec.initial_truncation = sc.initial_truncation;
    qspec.dt = sc.dt;
    EvolveOptions eopts;
    eopts.sample_step = sc.sample_step;
    eopts.tail_threshold = sc.tail_threshold;
    eopts.max_truncation = sc.max_truncation;
    art.traj = evolve(ground_state(sc.initial_truncation, t0), qspec, sc.horizon, sc.s_values,
                      eopts);

    const double window = t0 + sc.window_offset;
    auto add = [&art](std::string name, double value, double threshold, bool smaller_is_pass,
                      std::string note = "") {
        Verdict v;
        v.name = std::move(name);
        v.value = value;
        v.threshold = threshold;
        v.pass = smaller_is_pass ? value <= threshold : value >= threshold;
        v.note = std::move(note);
        art.verdicts.push_back(v);
    };

    // classical invariants
    const double sympl = std::max({max_symplectic_defect_W(art.flow),
                                   max_symplectic_defect_U(art.flow),
                                   check_symplectic_pairings(art.flow).max_defect()});
    add("classical-symplectic-defect", sympl, 1e-8, true);
    add("classical-wtex-residual", max_wtex_residual(art.flow), 1e-6, true);

    // growth laws
    for (size_t k = 0; k < sc.s_values.size(); ++k) {
        const double s = sc.s_values[k];
        std::vector<double> ratio(art.traj.times.size());
        for (size_t i = 0; i < art.traj.times.size(); ++i) {
            const double t = art.traj.times[i];
            const double norm = art.traj.norms[k][i];
            const double target =
                sc.a == 0.0 ? std::pow(art.rate.f(t), 0.5 * s) : std::pow(t, s);
            ratio[i] = norm / target;
        }
        const BandReport band = band_statistics(art.traj.times, ratio, window);
        const std::string tag = sc.a == 0.0 ? "growth-band-s" : "forced-quantum-band-s";
        add(tag + format_s_value(s), band.band(), 10.0, true,
            sc.a == 0.0 ? "|u|_s / f^(s/2) max/min" : "|u|_s / t^s max/min");
    }
    if (sc.a != 0.0) {
        std::vector<double> zr;
        std::vector<double> zt;
        for (size_t i = 0; i < art.flow.times.size(); ++i) {
            const double t = art.flow.times[i];
            if (t <= t0) continue;
            zt.push_back(t);
            zr.push_back(art.flow.zstar_norm(i) / (t - t0));
        }
        const BandReport band = band_statistics(zt, zr, window);
        add("forced-classical-band", band.band(), 5.0, true, "|z*| / (t - t0) max/min");
    }

    // correspondence
    const FlowResult matched = art.flow.times.size() == art.traj.times.size()
                                   ? art.flow
                                   : slice_flow(art.flow, art.traj.times.size());
    for (double s : sc.s_values) {
        RatioSeries rs = ratio_series(matched, art.traj, s, window);
        add("correspondence-drift-s" + format_s_value(s), rs.band.drift, 2.0, true,
            "band [" + fmt17(rs.band.min_value) + ", " + fmt17(rs.band.max_value) + "]");
        if (sc.rate_name == "constant") {
            const double spread =
                (rs.band.max_value - rs.band.min_value) / rs.band.min_value;
            add("correspondence-constant-s" + format_s_value(s), spread, 1e-6, true);
        }
        art.ratios.push_back(std::move(rs));
    }

    // oscillatory envelope subsequences
    if (sc.envelope_check) {
        for (size_t k = 0; k < sc.s_values.size(); ++k) {
            const double s = sc.s_values[k];
            const EnvelopeBands qb =
                oscillatory_envelope(art.traj.times, art.traj.norms[k], s);
            add("envelope-lower-quantum-s" + format_s_value(s), qb.lower.band(), 10.0, true);
            add("envelope-upper-quantum-s" + format_s_value(s), qb.upper.band(), 10.0, true);
            std::vector<double> ws(art.flow.times.size());
            for (size_t i = 0; i < art.flow.times.size(); ++i)
                ws[i] = std::pow(art.flow.w_norm(i), s);
            const EnvelopeBands cb = oscillatory_envelope(art.flow.times, ws, s);
            add("envelope-lower-classical-s" + format_s_value(s), cb.lower.band(), 10.0, true);
            add("envelope-upper-classical-s" + format_s_value(s), cb.upper.band(), 10.0, true);
        }
    }

    // informational rate diagnostics (finite-horizon evidence, not verdicts)
    const double diag_horizon = std::min(classical_horizon, t0 + 1000.0);
    art.class_m = check_class_M(art.rate, diag_horizon, 0.5);
    art.support = check_support_condition(art.rate, diag_horizon, 0.5);
    art.hypotheses =
        check_hypotheses(art.rate, std::min(classical_horizon, t0 + 200.0), 0.1, sc.quad_tol);
    art.decay = check_decay(pert, diag_horizon, 0.5);

    // numerics hygiene
    double drift = 0.0;
    const double l2sq0 = art.traj.l2.front() * art.traj.l2.front();
    for (size_t i = 0; i < art.traj.times.size(); ++i) {
        const double d = std::abs(art.traj.l2[i] * art.traj.l2[i] - l2sq0) / l2sq0;
        drift = std::max(drift, d / std::max(1.0, art.traj.times[i] - t0));
    }
    add("l2-drift-per-unit-time", drift, 1e-8, true);
    add("tail-mass-final", art.traj.tail.back(), sc.tail_threshold, true);

    art.all_pass = true;
    for (const Verdict& v : art.verdicts) art.all_pass = art.all_pass && v.pass;

    if (io.write_files) {
        const std::string base = io.out_dir + "/" + sc.out_prefix;
        write_classical_csv(base + "_classical.csv", art.flow);
        art.files_written.push_back(base + "_classical.csv");
        write_quantum_csv(base + "_quantum.csv", art.traj);
        art.files_written.push_back(base + "_quantum.csv");
        for (size_t k = 0; k < art.ratios.size(); ++k) {
            const std::string p = base + "_ratio_s" + format_s_value(sc.s_values[k]) + ".csv";
            write_ratio_csv(p, art.ratios[k]);
            art.files_written.push_back(p);
        }
        write_verdicts_json(base + "_verdicts.json", art);
        art.files_written.push_back(base + "_verdicts.json");
    }
    return art;
}

}  // namespace growthlab
