#include "zoneforge/cell_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace zoneforge {

CellPotential::CellPotential(double delta_strength, SmoothFn smooth,
                             std::string meta, int grid_size,
                             std::vector<double> breakpoints)
    : delta_strength_(delta_strength),
      smooth_(std::move(smooth)),
      meta_(std::move(meta)),
      grid_size_(grid_size),
      breakpoints_(std::move(breakpoints)) {
    if (grid_size_ < 2) throw std::invalid_argument("CellPotential: grid_size must be >= 2");
    std::sort(breakpoints_.begin(), breakpoints_.end());
    for (double b : breakpoints_) {
        if (!(b > 0.0 && b < cell_period))
            throw std::invalid_argument("CellPotential: breakpoint outside open cell");
    }
    if (smooth_) {
        // A non-finite sample means the upstream transform was invalid
        // (e.g. a Wronskian zero slipped through); fail construction.
        auto check = [this](double x) {
            if (!std::isfinite(smooth_(x)))
                throw std::invalid_argument("CellPotential: smooth part not finite at x=" + std::to_string(x));
        };
        check(0.0);
        check(cell_period);
        for (int i = 0; i < grid_size_; ++i)
            check((i + 0.5) * cell_period / grid_size_);
    }
}

CellPotential CellPotential::dirac_comb(double delta_strength, int grid_size) {
    return CellPotential(delta_strength, nullptr, "dirac-comb", grid_size);
}

double CellPotential::eval_cell(double x) const {
    if (!(x > 0.0 && x < cell_period))
        throw std::domain_error("eval_cell: x outside open cell (0, pi)");
    return smooth_ ? smooth_(x) : 0.0;
}

double CellPotential::eval_periodic(double x) const {
    double r = std::fmod(x, cell_period);
    if (r < 0.0) r += cell_period;
    if (r == 0.0 || r == cell_period)
        throw std::domain_error("eval_periodic: x at a lattice point (delta location)");
    return eval_cell(r);
}

std::vector<CellPotential::Sample> CellPotential::tabulate() const {
    std::vector<Sample> out;
    out.reserve(static_cast<size_t>(grid_size_));
    for (int i = 0; i < grid_size_; ++i) {
        double x = (i + 0.5) * cell_period / grid_size_;
        out.push_back({x, smooth_value(x)});
    }
    return out;
}

std::optional<double> BandStructure::gap_after(int k) const {
    if (k < 1 || static_cast<size_t>(k) >= zones.size() + 0) return std::nullopt;
    if (static_cast<size_t>(k) > gap_widths.size()) return std::nullopt;
    return gap_widths[static_cast<size_t>(k) - 1];
}

}  // namespace zoneforge
