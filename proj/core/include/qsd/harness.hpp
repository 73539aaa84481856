// Copyright 2026 The qsdlab authors.
// SPDX-License-Identifier: Apache-2.0

#ifndef QSD_HARNESS_HPP
#define QSD_HARNESS_HPP

#include <map>
#include <string>
#include <vector>

#include "qsd/nmr.hpp"

// Sweep/validation layer behind the CLI: single runs, the preset parameter
// grids, CSV and plot-data emission, and the bundled validation suites.

namespace qsd::harness {

enum class Engine { Gate, Pulse, Both };

struct SweepConfig {
    std::vector<double> alphas_deg;
    std::vector<double> two_theta1s_deg;
    std::vector<double> ellipticities_deg;
    std::vector<StateLabel> states;
    Engine engine = Engine::Gate;
    std::string output_path;

    /// Throws std::invalid_argument on empty lists or out-of-domain angles.
    void validate() const;
};

struct SweepRecord {
    std::string engine;       // "gate" or "pulse"
    double alpha_deg = 0.0;
    double two_theta1_deg = 0.0;
    double ellipticity_deg = 0.0;
    std::string input_state;  // "psi1" or "psi2"
    double two_theta2_deg = 0.0;  // signed 2theta2 (real programme) or prep flip angle
    double probability = 0.0;
    std::string verdict;      // "psi1", "psi2", "inconclusive", or "error"
    double line_00_10 = 0.0;
    double line_01_11 = 0.0;
};

inline constexpr const char* kCsvHeader =
    "engine,alpha_deg,two_theta1_deg,ellipticity_deg,input_state,two_theta2_deg,"
    "probability,verdict,line_00_10,line_01_11";

/// Fixed-notation, 12 significant digits, locale-independent.
std::string fmt_num(double v);

std::string to_string(StateLabel s);
std::string to_string(Verdict v);

/// One grid point on one engine. Module errors surface as verdict = "error".
SweepRecord run_point(const std::string& engine_name, double alpha_deg, double two_theta1_deg,
                      double ellipticity_deg, StateLabel state);

/// Cartesian product in deterministic order: alpha, two_theta1, ellipticity,
/// state; Engine::Both emits a gate row then a pulse row per point.
std::vector<SweepRecord> run_sweep(const SweepConfig& config);

std::string to_csv(const std::vector<SweepRecord>& records);

/// Preset grid: alphas {30,45,60,90} x 2theta1 {20..160} x eps 0, psi1.
SweepConfig fig7_config();
/// Preset grid: alpha 90 x 2theta1 {20,40,60,90,120,140,160} x eps {0,15,30}, psi1.
SweepConfig fig9_config();

enum class PlotPreset { Fig7, Fig8, Fig9 };

/// One two-column (x, P) series.
struct PlotSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};

std::vector<PlotSeries> plot_data(PlotPreset preset);

/// Writes each series as <out_dir>/<name>.dat.
void write_plot_data(const std::vector<PlotSeries>& series, const std::string& out_dir);

struct SuiteResult {
    std::string name;
    bool passed = false;
    double max_deviation = 0.0;
    std::string detail;
};

/// Bundled validation suites: pseudopure checkpoints, decomposition equality,
/// CNOT pulse / composite-z phase equality, cross-engine grid, and the
/// alpha=60 ancilla table. cross_engine_tol defaults from QSD_TOL (1e-9).
/// The compile options are a test hook for sensitivity checks.
std::vector<SuiteResult> run_validation(double cross_engine_tol,
                                        const nmr::CompileOptions& options = {});

/// Cross-engine tolerance: QSD_TOL env var if set, else 1e-9.
double cross_engine_tolerance();

/// Flat key = value config file; '#' starts a comment.
std::map<std::string, std::string> parse_config_file(const std::string& path);

}  // namespace qsd::harness

#endif  // QSD_HARNESS_HPP
