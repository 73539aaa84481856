// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end: run, sweep, validate, plotdata, pp-check.
// Exit codes: 0 success, 1 validation failure, 2 bad input.

#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "qsd/harness.hpp"

namespace {

using namespace qsd;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitBadInput = 2;

StateLabel parse_state(const std::string& s) {
    if (s == "psi1") return StateLabel::Psi1;
    if (s == "psi2") return StateLabel::Psi2;
    throw std::invalid_argument("--state must be psi1 or psi2, got '" + s + "'");
}

harness::Engine parse_engine(const std::string& s) {
    if (s == "gate") return harness::Engine::Gate;
    if (s == "pulse") return harness::Engine::Pulse;
    if (s == "both") return harness::Engine::Both;
    throw std::invalid_argument("--engine must be gate, pulse, or both, got '" + s + "'");
}

std::vector<double> parse_number_list(const std::string& s) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t comma = s.find(',', pos);
        if (comma == std::string::npos) comma = s.size();
        out.push_back(std::stod(s.substr(pos, comma - pos)));
        pos = comma + 1;
    }
    return out;
}

// Config-file values fill any flag the command line left at its default.
void apply_config(const std::string& path, std::map<std::string, std::string*> slots) {
    if (path.empty()) return;
    auto kv = harness::parse_config_file(path);
    for (auto& [key, value] : kv) {
        auto it = slots.find(key);
        if (it == slots.end()) throw std::invalid_argument("unknown config key '" + key + "'");
        if (it->second->empty()) *it->second = value;
    }
}

void print_record(const harness::SweepRecord& r) {
    std::cout << harness::kCsvHeader << '\n'
              << r.engine << ',' << harness::fmt_num(r.alpha_deg) << ','
              << harness::fmt_num(r.two_theta1_deg) << ','
              << harness::fmt_num(r.ellipticity_deg) << ',' << r.input_state << ','
              << harness::fmt_num(r.two_theta2_deg) << ',' << harness::fmt_num(r.probability)
              << ',' << r.verdict << ',' << harness::fmt_num(r.line_00_10) << ','
              << harness::fmt_num(r.line_01_11) << '\n';
}

int cmd_run(const std::string& alpha_s, const std::string& tt1_s, const std::string& eps_s,
            const std::string& state_s, const std::string& engine_s) {
    double alpha = std::stod(alpha_s);
    double tt1 = std::stod(tt1_s);
    double eps = std::stod(eps_s);
    StateLabel state = parse_state(state_s);
    harness::Engine engine = parse_engine(engine_s);

    // Surface module errors as diagnostics rather than error rows.
    QubitStateSpec spec{tt1, eps, state};
    spec.validate();
    QubitStateSpec p1 = spec;
    p1.which = StateLabel::Psi1;
    Ket2 psi1 = make_data_state(p1);
    (void)solve_ancilla(alpha, psi1[0], psi1[1]);

    bool first = true;
    for (const char* eng : {"gate", "pulse"}) {
        if (engine == harness::Engine::Gate && std::string(eng) == "pulse") continue;
        if (engine == harness::Engine::Pulse && std::string(eng) == "gate") continue;
        harness::SweepRecord rec = harness::run_point(eng, alpha, tt1, eps, state);
        if (rec.verdict == "error") {
            std::cerr << "error: protocol run failed on engine " << eng << '\n';
            return kExitBadInput;
        }
        if (first) {
            print_record(rec);
            first = false;
        } else {
            std::cout << rec.engine << ',' << harness::fmt_num(rec.alpha_deg) << ','
                      << harness::fmt_num(rec.two_theta1_deg) << ','
                      << harness::fmt_num(rec.ellipticity_deg) << ',' << rec.input_state << ','
                      << harness::fmt_num(rec.two_theta2_deg) << ','
                      << harness::fmt_num(rec.probability) << ',' << rec.verdict << ','
                      << harness::fmt_num(rec.line_00_10) << ','
                      << harness::fmt_num(rec.line_01_11) << '\n';
        }
    }
    return kExitOk;
}

int cmd_sweep(const std::string& preset, const std::string& alphas_s, const std::string& tt1s_s,
              const std::string& epss_s, const std::string& states_s,
              const std::string& engine_s, const std::string& out) {
    harness::SweepConfig config;
    if (preset == "fig7") {
        config = harness::fig7_config();
    } else if (preset == "fig9") {
        config = harness::fig9_config();
    } else if (!preset.empty()) {
        throw std::invalid_argument("--preset must be fig7 or fig9, got '" + preset + "'");
    }
    if (!alphas_s.empty()) config.alphas_deg = parse_number_list(alphas_s);
    if (!tt1s_s.empty()) config.two_theta1s_deg = parse_number_list(tt1s_s);
    if (!epss_s.empty()) config.ellipticities_deg = parse_number_list(epss_s);
    if (!states_s.empty()) {
        config.states.clear();
        for (const std::string& s : {states_s}) {
            std::size_t pos = 0;
            while (pos < s.size()) {
                std::size_t comma = s.find(',', pos);
                if (comma == std::string::npos) comma = s.size();
                config.states.push_back(parse_state(s.substr(pos, comma - pos)));
                pos = comma + 1;
            }
        }
    }
    if (!engine_s.empty()) config.engine = parse_engine(engine_s);
    config.output_path = out;
    config.validate();

    std::string csv = harness::to_csv(harness::run_sweep(config));
    if (out.empty() || out == "-") {
        std::cout << csv;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot write " << out << '\n';
            return kExitBadInput;
        }
        f << csv;
    }
    return kExitOk;
}

int cmd_validate() {
    double tol = harness::cross_engine_tolerance();
    auto results = harness::run_validation(tol);
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name
                  << "  max_deviation=" << harness::fmt_num(r.max_deviation);
        if (!r.detail.empty()) std::cout << "  (" << r.detail << ')';
        std::cout << '\n';
        all = all && r.passed;
    }
    return all ? kExitOk : kExitValidationFailure;
}

int cmd_plotdata(const std::string& preset_s, const std::string& out_dir) {
    harness::PlotPreset preset;
    if (preset_s == "fig7")
        preset = harness::PlotPreset::Fig7;
    else if (preset_s == "fig8")
        preset = harness::PlotPreset::Fig8;
    else if (preset_s == "fig9")
        preset = harness::PlotPreset::Fig9;
    else
        throw std::invalid_argument("--preset must be fig7, fig8, or fig9");
    harness::write_plot_data(harness::plot_data(preset), out_dir);
    return kExitOk;
}

int cmd_pp_check() {
    nmr::SpinSystem sys;
    nmr::DeviationDensityMatrix rho = nmr::prepare_pseudopure(sys);
    std::cout << "PASS  pseudopure checkpoints\n";
    std::cout << "final diagonal:";
    for (std::size_t i = 0; i < 4; ++i)
        std::cout << ' ' << harness::fmt_num(rho.m.at(i, i).real());
    std::cout << '\n';
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit programmable quantum state discriminator laboratory"};
    app.require_subcommand(1);

    std::string alpha, tt1, eps, state, engine, config_path;
    auto* run = app.add_subcommand("run", "run one protocol instance");
    run->add_option("--alpha", alpha, "rotation angle of U, degrees");
    run->add_option("--two-theta1", tt1, "separation of the pair, degrees [0,180]");
    run->add_option("--ellipticity", eps, "ellipticity, degrees [0,45)");
    run->add_option("--state", state, "input member: psi1 | psi2");
    run->add_option("--engine", engine, "gate | pulse | both");
    run->add_option("--config", config_path, "key = value config file");

    std::string sw_preset, sw_alphas, sw_tt1s, sw_epss, sw_states, sw_engine, sw_out,
        sw_config;
    auto* sweep = app.add_subcommand("sweep", "run a parameter grid, emit CSV");
    sweep->add_option("--preset", sw_preset, "fig7 | fig9");
    sweep->add_option("--alphas", sw_alphas, "comma-separated alpha list, degrees");
    sweep->add_option("--two-theta1s", sw_tt1s, "comma-separated 2theta1 list, degrees");
    sweep->add_option("--ellipticities", sw_epss, "comma-separated ellipticity list, degrees");
    sweep->add_option("--states", sw_states, "comma-separated subset of psi1,psi2");
    sweep->add_option("--engine", sw_engine, "gate | pulse | both");
    sweep->add_option("--out", sw_out, "output CSV path ('-' = stdout)");
    sweep->add_option("--config", sw_config, "key = value config file");

    auto* validate = app.add_subcommand("validate", "run the bundled validation suites");

    std::string pd_preset, pd_out;
    auto* plotdata = app.add_subcommand("plotdata", "emit (x, P) series files");
    plotdata->add_option("--preset", pd_preset, "fig7 | fig8 | fig9")->required();
    plotdata->add_option("--out", pd_out, "output directory")->required();

    auto* ppcheck = app.add_subcommand("pp-check", "run the pseudopure checkpoints alone");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) {
            apply_config(config_path, {{"alpha", &alpha},
                                       {"two-theta1", &tt1},
                                       {"ellipticity", &eps},
                                       {"state", &state},
                                       {"engine", &engine}});
            if (alpha.empty() || tt1.empty())
                throw std::invalid_argument("--alpha and --two-theta1 are required");
            if (eps.empty()) eps = "0";
            if (state.empty()) state = "psi1";
            if (engine.empty()) engine = "gate";
            return cmd_run(alpha, tt1, eps, state, engine);
        }
        if (sweep->parsed()) {
            apply_config(sw_config, {{"preset", &sw_preset},
                                     {"alphas", &sw_alphas},
                                     {"two-theta1s", &sw_tt1s},
                                     {"ellipticities", &sw_epss},
                                     {"states", &sw_states},
                                     {"engine", &sw_engine},
                                     {"out", &sw_out}});
            return cmd_sweep(sw_preset, sw_alphas, sw_tt1s, sw_epss, sw_states, sw_engine,
                             sw_out);
        }
        if (validate->parsed()) return cmd_validate();
        if (plotdata->parsed()) return cmd_plotdata(pd_preset, pd_out);
        if (ppcheck->parsed()) return cmd_pp_check();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitBadInput;
    }
    return kExitOk;
}
