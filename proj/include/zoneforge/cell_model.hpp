#pragma once

#include <functional>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace zoneforge {

// Units: hbar^2/2m = 1, lattice period a = pi. The auxiliary well on one
// period then has eigenvalues E_n = n^2 exactly, which keeps the scenario
// energies (1, 4, 9, ...) integer.
inline constexpr double cell_period = 3.14159265358979323846;

/// Potential on one period cell: a delta kick of strength `delta_strength`
/// at the left cell edge plus a smooth correction on the open interior
/// (0, pi). The smooth part is a closed-form evaluator; the uniform
/// tabulation exists for diagnostics only and is never used for integration.
class CellPotential {
public:
    using SmoothFn = std::function<double(double)>;

    // A null `smooth` means the smooth part is identically zero (bare comb).
    // `breakpoints` lists interior x where the smooth part may jump; ODE
    // drivers split integration segments there. Construction samples the
    // evaluator on the diagnostic grid and rejects non-finite values.
    CellPotential(double delta_strength, SmoothFn smooth = nullptr,
                  std::string meta = "", int grid_size = 2048,
                  std::vector<double> breakpoints = {});

    static CellPotential dirac_comb(double delta_strength, int grid_size = 2048);

    double delta_strength() const { return delta_strength_; }
    int grid_size() const { return grid_size_; }
    const std::string& meta() const { return meta_; }
    const std::vector<double>& breakpoints() const { return breakpoints_; }
    bool has_smooth() const { return static_cast<bool>(smooth_); }

    /// Smooth part at x in the open cell (0, pi); the delta is not included
    /// (it enters as a matrix kick in the monodromy). Throws outside the cell.
    double eval_cell(double x) const;

    /// Periodic continuation: eval_cell(x mod pi). Throws exactly at lattice
    /// points m*pi, where the delta sits.
    double eval_periodic(double x) const;

    // Evaluator for integrators: no domain policing, defined on the closed
    // cell [0, pi] (every smooth part built here has finite edge limits).
    double smooth_value(double x) const { return smooth_ ? smooth_(x) : 0.0; }

    struct Sample {
        double x;
        double v;
    };
    /// Uniform midpoint tabulation of the smooth part, grid_size samples.
    std::vector<Sample> tabulate() const;

private:
    double delta_strength_;
    SmoothFn smooth_;
    std::string meta_;
    int grid_size_;
    std::vector<double> breakpoints_;
};

/// One allowed band. `index` is the 1-based ordinal inside the scanned
/// window. `merged_with_next` marks a gap to the next zone narrower than
/// the merge tolerance (including exact tangencies).
struct Zone {
    double lower = 0.0;
    double upper = 0.0;
    int index = 0;
    bool merged_with_next = false;
    bool lower_is_window_edge = false;
    bool upper_is_window_edge = false;

    double width() const { return upper - lower; }
};

struct BandStructure {
    std::vector<Zone> zones;  // disjoint, strictly increasing
    double window_lo = 0.0;
    double window_hi = 0.0;
    std::vector<double> gap_widths;  // between consecutive zones, zones.size()-1 entries
    // Collapsed zones (width below the degeneracy tolerance) are not stored
    // as zones; their midpoint energies are reported here.
    std::vector<double> degenerate;

    /// Gap between zones with in-window ordinals k and k+1 (1-based).
    /// Returns nothing when either zone is absent.
    std::optional<double> gap_after(int k) const;
};

struct LevelShiftSpec {
    int level = 0;   // n >= 1
    double shift = 0.0;  // t, energy shift of level n
};

struct WeightChangeSpec {
    // Anchor: either a well level index m (Dirichlet eigenstate) or an energy
    // point resolved through the general-boundary-condition cell eigenstate.
    std::variant<int, double> anchor;
    double ratio = 1.0;  // c / c_ring > 0
};

/// A single control-lever request.
struct TransformSpec {
    std::variant<LevelShiftSpec, WeightChangeSpec> variant;
};

}  // namespace zoneforge
