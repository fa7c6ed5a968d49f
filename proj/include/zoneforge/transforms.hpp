#pragma once

#include <optional>
#include <string>

#include "zoneforge/auxiliary_well.hpp"
#include "zoneforge/cell_model.hpp"

namespace zoneforge {

/// Outcome of the no-crossing / nonsingularity check for a level shift.
struct ShiftValidation {
    bool ok = false;
    std::string reason;      // names the violated condition when !ok
    double shifted_energy = 0.0;   // n^2 + t
    double theta_min_abs = 0.0;    // min |theta| over the closed cell
    double theta_max_abs = 0.0;
};

/// Check that shifting level n by t keeps the shifted energy strictly
/// between the neighbor auxiliary levels (the lower guard is -inf for
/// n = 1) and that the Wronskian stays bounded away from zero. Never
/// throws; returns a report.
ShiftValidation validate_shift(int n, double t, double theta_tol_rel = 1e-8);

/// Level-shift transform of the auxiliary well: moves E_n to E_n + t,
/// keeps every other eigenvalue fixed. The resulting smooth correction is
/// fully analytic; the comb delta strength is carried through unchanged.
struct LevelShiftResult {
    CellPotential potential;
    int n;
    double t;
    double theta_min_abs;
};

LevelShiftResult level_shift(int n, double t, double comb_strength,
                             int grid_size = 2048, double theta_tol_rel = 1e-8);

/// Transformed solution at arbitrary energy E (left-wall anchored base
/// solution; the indefinite integral is fixed at the left cell edge, which
/// preserves psi(0) = 0). Returns value and x-derivative.
ValueDeriv level_shift_solution(const LevelShiftResult& res, double energy, double x);

/// The eigenfunction the shift creates at E_n + t: psi0(x) / theta(x).
ValueDeriv shifted_eigenfunction(const LevelShiftResult& res, double x);

/// Spectral-weight transform. sigma = 1 - ratio^2; the denominator
/// w(x) = 1 - sigma * I(x) stays >= min(1, ratio^2) > 0 over the cell.
struct WeightChangeResult {
    CellPotential potential;
    double ratio;
    double sigma;
    std::optional<int> anchor_level;       // well-level anchor m
    std::optional<double> anchor_energy;   // general-BC anchor energy point
    double min_denominator;
    // |smooth(0+) - smooth(pi-)|; zero analytically for the well anchor,
    // generally nonzero for the general-BC anchor (reported, not asserted).
    double seam_jump;
};

/// Weight change anchored at well level m (unit-normalized sin eigenstate).
WeightChangeResult weight_change(int anchor_level, double ratio,
                                 double comb_strength, int grid_size = 2048);

/// Weight change anchored at a general-boundary-condition cell eigenstate
/// (the Fig-style forbidden-energy-point lever). The potential is produced
/// on the standard left-edge cell with a seam breakpoint at pi/2.
WeightChangeResult weight_change(const GeneralBCEigenstate& anchor, double ratio,
                                 int grid_size = 2048);

/// Transformed eigenfunction at well level n for a well-anchored weight
/// change. Rejects general-BC-anchored results.
ValueDeriv weight_change_solution(const WeightChangeResult& res, int n, double x);

}  // namespace zoneforge
