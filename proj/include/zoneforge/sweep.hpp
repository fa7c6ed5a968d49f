#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zoneforge/cell_model.hpp"
#include "zoneforge/floquet.hpp"

namespace zoneforge {

enum class ScenarioKind { fig1a, fig1b, fig1c, fig1d, symmetry, custom };

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

/// Every numeric knob of the pipeline, resolved (no hidden defaults: the
/// full set is echoed into each report).
struct Tolerances {
    double scan_step = 0.005;
    double root_tol = 1e-10;
    double gap_tol = 1e-3;
    double degenerate_tol = 1e-3;
    double theta_tol = 1e-8;  // relative Wronskian-zero guard
    double ode_abs_tol = 1e-12;
    double ode_rel_tol = 1e-12;
    double curve_step = 0.02;

    BandOptions band_options() const;
    IntegratorOptions integrator_options() const;
};

struct Scenario {
    ScenarioKind kind = ScenarioKind::custom;
    double comb_strength = 4.0;
    int level = 2;
    std::vector<double> sweep_values;               // shifts t, or ratios for fig1d
    std::vector<std::pair<int, double>> pairs;      // (n, t) specs, symmetry scenario
    double window_lo = 0.0;
    double window_hi = 16.0;
    double e_point = 2.0;  // forbidden-zone anchor energy, fig1d
    int grid_size = 2048;
    int symmetry_grid_points = 500;
    Tolerances tol;
};

/// Documented per-scenario defaults: fig1a/b (V0=4, level 2, window [0,16]),
/// fig1c (V0=-4, level 1, window [0,16]), fig1d (V0=4, E=2, window [0,12]),
/// symmetry (V0=0, window [0,16]).
Scenario scenario_defaults(ScenarioKind kind);

struct SweepEntry {
    double sweep_value = 0.0;
    bool ok = false;
    std::string error;  // validation/numerical message for failed entries
    std::optional<BandStructure> bands;
    std::optional<ForbiddennessCurve> curve;
    std::optional<double> gap_of_interest;  // scenario's headline gap width
    std::optional<double> shifted_level;    // E_n + t
    std::string shifted_level_role;         // which zone edge the level supplies
    std::optional<double> imk_at_point;     // ImK at the fig1d anchor energy
};

struct SweepReport {
    Scenario scenario;  // complete resolved parameter echo
    std::vector<SweepEntry> entries;
    // Interpolated from the sign change of (gap width - gap_tol) between
    // consecutive sweep values, when the sweep brackets a merge.
    std::optional<double> merge_sweep_value;
};

SweepReport run_fig1a(const std::vector<double>& deltas, const Scenario& base);
SweepReport run_fig1b(const std::vector<double>& deltas, const Scenario& base);
SweepReport run_fig1c(const std::vector<double>& deltas, const Scenario& base);
SweepReport run_fig1d(const std::vector<double>& ratios, const Scenario& base);
SweepReport run_scenario(const Scenario& sc);

/// Headline gap width for one sweep value of a zone-merge scenario
/// (fig1a: zones 2-3, fig1b/c: zones 1-2). Throws on validation failure.
/// Used to refine merge locations beyond the sweep grid.
double scenario_gap(const Scenario& sc, double sweep_value);

struct SymmetryReport {
    Scenario scenario;
    std::vector<std::pair<int, double>> specs;
    std::vector<std::string> errors;            // one per spec, empty when valid
    std::vector<double> grid;                   // energy grid
    std::vector<std::vector<double>> curves;    // discriminant per valid spec
    std::vector<std::vector<double>> distances; // sup |Delta_i - Delta_j|; NaN when invalid
    double coincidence_threshold = 1e-6;
    bool all_coincide = false;  // verdict over valid specs at the threshold
};

/// Free-motion base (no comb): shift level n by t for each spec and compare
/// the resulting discriminant curves pairwise. No pass/fail is imposed; the
/// distances themselves are the result.
SymmetryReport run_symmetry_experiment(const std::vector<std::pair<int, double>>& pairs,
                                       const Scenario& base);

/// Declarative JSON config with keys {scenario, comb_strength, level,
/// sweep_values, window, grid_size, tolerances}; unknown keys are rejected
/// with the offending key named.
Scenario parse_config(const std::string& path);
Scenario parse_config_text(const std::string& text, const std::string& origin = "<config>");

}  // namespace zoneforge
