#include "zoneforge/transforms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "zoneforge/errors.hpp"

namespace zoneforge {

namespace {

constexpr double pi = cell_period;

double theta_abs(int n, double t, double x) { return std::abs(wronskian_theta(n, t, x)); }

// Golden-section minimum of |theta| on [a, b].
double refine_theta_min(int n, double t, double a, double b) {
    const double gr = 0.6180339887498949;
    double fa = theta_abs(n, t, a), fb = theta_abs(n, t, b);
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = theta_abs(n, t, x1), f2 = theta_abs(n, t, x2);
    for (int it = 0; it < 80 && (b - a) > 1e-13; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = theta_abs(n, t, x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = theta_abs(n, t, x2);
        }
    }
    return std::min(std::min(fa, fb), std::min(f1, f2));
}

// Smooth correction of the level-shift transform,
//   -2t d/dx { psi0 psibar / theta },
// expanded with theta' = t psi0 psibar so no numerical differentiation
// is involved anywhere.
double level_shift_smooth(int n, double t, double x) {
    const double p = well_eigenfunction(n, x);
    const double dp = well_eigenfunction_deriv(n, x);
    const ValueDeriv b = nonphysical_solution(n, t, x);
    const double th = dp * b.value - p * b.deriv;
    const double pb = p * b.value;
    return -2.0 * t * ((dp * b.value + p * b.deriv) * th - t * pb * pb) / (th * th);
}

}  // namespace

ShiftValidation validate_shift(int n, double t, double theta_tol_rel) {
    ShiftValidation v;
    if (n < 1) {
        v.reason = "level index must be >= 1";
        return v;
    }
    v.shifted_energy = static_cast<double>(n) * n + t;
    if (t == 0.0) {
        v.reason = "degenerate shift t = 0 (the identity is only a limit; use no transform instead)";
        return v;
    }
    const double upper = static_cast<double>(n + 1) * (n + 1);
    if (!(v.shifted_energy < upper)) {
        std::ostringstream os;
        os << "no-crossing violation: shifted energy " << v.shifted_energy
           << " reaches the next level E_" << n + 1 << " = " << upper;
        v.reason = os.str();
        return v;
    }
    if (n > 1) {
        const double lower = static_cast<double>(n - 1) * (n - 1);
        if (!(v.shifted_energy > lower)) {
            std::ostringstream os;
            os << "no-crossing violation: shifted energy " << v.shifted_energy
               << " reaches the previous level E_" << n - 1 << " = " << lower;
            v.reason = os.str();
            return v;
        }
    }

    // Wronskian zero scan: coarse grid plus golden-section refinement around
    // the coarse minimum. A zero of theta poles the transformed potential.
    const int samples = 2048;
    double min_abs = theta_abs(n, t, 0.0), max_abs = min_abs;
    int argmin = 0;
    for (int i = 1; i <= samples; ++i) {
        const double x = i * pi / samples;
        const double a = theta_abs(n, t, x);
        if (a < min_abs) {
            min_abs = a;
            argmin = i;
        }
        if (a > max_abs) max_abs = a;
    }
    const double lo = std::max(0.0, (argmin - 1) * pi / samples);
    const double hi = std::min(pi, (argmin + 1) * pi / samples);
    min_abs = std::min(min_abs, refine_theta_min(n, t, lo, hi));
    v.theta_min_abs = min_abs;
    v.theta_max_abs = max_abs;
    if (!(min_abs > theta_tol_rel * max_abs)) {
        std::ostringstream os;
        os << "Wronskian vanishes on the cell (min |theta| = " << min_abs
           << "): transform is singular, shifted level degenerates with a neighbor";
        v.reason = os.str();
        return v;
    }
    v.ok = true;
    return v;
}

LevelShiftResult level_shift(int n, double t, double comb_strength, int grid_size,
                             double theta_tol_rel) {
    const ShiftValidation v = validate_shift(n, t, theta_tol_rel);
    if (!v.ok) throw std::domain_error("level_shift rejected: " + v.reason);
    std::ostringstream meta;
    meta << "level-shift n=" << n << " t=" << t << " comb=" << comb_strength;
    CellPotential pot(
        comb_strength, [n, t](double x) { return level_shift_smooth(n, t, x); },
        meta.str(), grid_size);
    return {std::move(pot), n, t, v.theta_min_abs};
}

namespace {

// Base well solution at arbitrary energy with the left-wall anchor
// psi(0) = 0 (trig / linear / hyperbolic branch by sign of E).
ValueDeriv base_solution(double energy, double x) {
    if (energy > 0.0) {
        const double k = std::sqrt(energy);
        return {std::sin(k * x), k * std::cos(k * x)};
    }
    if (energy < 0.0) {
        const double k = std::sqrt(-energy);
        return {std::sinh(k * x), k * std::cosh(k * x)};
    }
    return {x, 1.0};
}

// Closed form of J(x) = int_0^x sin(n y) * g(y) dy for the base solution g.
double cumulative_product(int n, double energy, double x) {
    const double dn = n;
    if (energy > 0.0) {
        const double k = std::sqrt(energy);
        if (k == dn)  // limit formula at the anchor level itself
            return x / 2 - std::sin(2 * dn * x) / (4 * dn);
        const double a = dn - k, b = dn + k;
        return std::sin(a * x) / (2 * a) - std::sin(b * x) / (2 * b);
    }
    if (energy < 0.0) {
        const double k = std::sqrt(-energy);
        return (k * std::sin(dn * x) * std::cosh(k * x) -
                dn * std::cos(dn * x) * std::sinh(k * x)) /
               (dn * dn + k * k);
    }
    return std::sin(dn * x) / (dn * dn) - x * std::cos(dn * x) / dn;
}

}  // namespace

ValueDeriv level_shift_solution(const LevelShiftResult& res, double energy, double x) {
    const int n = res.n;
    const double t = res.t;
    const ValueDeriv g = base_solution(energy, x);
    const double p = well_eigenfunction(n, x);
    const ValueDeriv b = nonphysical_solution(n, t, x);
    const double th = well_eigenfunction_deriv(n, x) * b.value - p * b.deriv;
    const double j = cumulative_product(n, energy, x);
    const double value = g.value - t * b.value * j / th;
    // theta' = t psi0 psibar, J' = psi0 g
    const double deriv = g.deriv - t * (b.deriv * j + b.value * p * g.value) / th +
                         t * t * p * b.value * b.value * j / (th * th);
    return {value, deriv};
}

ValueDeriv shifted_eigenfunction(const LevelShiftResult& res, double x) {
    const int n = res.n;
    const double t = res.t;
    const double p = well_eigenfunction(n, x);
    const double dp = well_eigenfunction_deriv(n, x);
    const ValueDeriv b = nonphysical_solution(n, t, x);
    const double th = dp * b.value - p * b.deriv;
    return {p / th, dp / th - t * p * p * b.value / (th * th)};
}

namespace {

// Unit-normalized well eigenstate and its running square integral.
double anchor_fn(int m, double x) { return std::sqrt(2.0 / pi) * std::sin(m * x); }
double anchor_fn_deriv(int m, double x) { return std::sqrt(2.0 / pi) * m * std::cos(m * x); }
double anchor_cum(int m, double x) { return x / pi - std::sin(2.0 * m * x) / (2.0 * pi * m); }

// Eq.-style weight-change correction 2 d/dx [ sigma psi^2 / w ] expanded
// with w' = -sigma psi^2.
double weight_smooth(double sigma, double psi, double dpsi, double w) {
    const double p2 = psi * psi;
    return (4.0 * sigma * psi * dpsi * w + 2.0 * sigma * sigma * p2 * p2) / (w * w);
}

}  // namespace

WeightChangeResult weight_change(int anchor_level, double ratio, double comb_strength,
                                 int grid_size) {
    if (!(ratio > 0.0)) throw std::domain_error("weight_change: ratio must be > 0");
    if (anchor_level < 1) throw std::domain_error("weight_change: anchor level must be >= 1");
    const double sigma = 1.0 - ratio * ratio;
    const int m = anchor_level;
    std::ostringstream meta;
    meta << "weight-change m=" << m << " ratio=" << ratio << " comb=" << comb_strength;
    CellPotential::SmoothFn smooth = nullptr;
    if (sigma != 0.0) {
        smooth = [m, sigma](double x) {
            const double w = 1.0 - sigma * anchor_cum(m, x);
            return weight_smooth(sigma, anchor_fn(m, x), anchor_fn_deriv(m, x), w);
        };
    }
    CellPotential pot(comb_strength, std::move(smooth), meta.str(), grid_size);
    WeightChangeResult res{std::move(pot), ratio, sigma, m, std::nullopt,
                           std::min(1.0, ratio * ratio), 0.0};
    return res;
}

WeightChangeResult weight_change(const GeneralBCEigenstate& anchor, double ratio,
                                 int grid_size) {
    if (!(ratio > 0.0)) throw std::domain_error("weight_change: ratio must be > 0");
    const double sigma = 1.0 - ratio * ratio;
    std::ostringstream meta;
    meta << "weight-change general-bc E=" << anchor.e_point() << " ratio=" << ratio
         << " comb=" << anchor.delta_strength();
    // Map the standard cell onto the re-centered one: x in (0, pi/2] is
    // u = x, x in (pi/2, pi) is u = x - pi. The correction may jump at the
    // seam x = pi/2, so the potential carries a breakpoint there.
    CellPotential::SmoothFn smooth = nullptr;
    if (sigma != 0.0) {
        GeneralBCEigenstate st = anchor;  // shared tables, cheap copy
        smooth = [st, sigma](double x) {
            const double u = (x <= pi / 2) ? x : x - pi;
            const double w = 1.0 - sigma * st.cumulative(u);
            return weight_smooth(sigma, st.value(u), st.deriv(u), w);
        };
    }
    CellPotential pot(anchor.delta_strength(), std::move(smooth), meta.str(), grid_size,
                      {pi / 2});
    const double seam = std::abs(pot.smooth_value(pi / 2) -
                                 pot.smooth_value(std::nextafter(pi / 2, pi)));
    WeightChangeResult res{std::move(pot), ratio,        sigma, std::nullopt,
                           anchor.e_point(), std::min(1.0, ratio * ratio), seam};
    return res;
}

ValueDeriv weight_change_solution(const WeightChangeResult& res, int n, double x) {
    if (!res.anchor_level)
        throw std::domain_error(
            "weight_change_solution: only well-level anchors produce transformed solutions");
    if (n < 1) throw std::domain_error("weight_change_solution: level must be >= 1");
    const int m = *res.anchor_level;
    const double sigma = res.sigma;
    const double pm = anchor_fn(m, x), dpm = anchor_fn_deriv(m, x);
    const double pn = anchor_fn(n, x), dpn = anchor_fn_deriv(n, x);
    const double w = 1.0 - sigma * anchor_cum(m, x);
    double q;  // int_0^x psi_m psi_n
    if (n == m) {
        q = anchor_cum(m, x);
    } else {
        const double a = m - n, b = m + n;
        q = (std::sin(a * x) / (2 * a) - std::sin(b * x) / (2 * b)) * 2.0 / pi;
    }
    const double acoef = sigma * pm / w;
    const double da = sigma * dpm / w + sigma * sigma * pm * pm * pm / (w * w);
    return {pn + acoef * q, dpn + da * q + acoef * pm * pn};
}

}  // namespace zoneforge
