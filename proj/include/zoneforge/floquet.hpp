#pragma once

#include <vector>

#include "zoneforge/cell_model.hpp"

namespace zoneforge {

struct Matrix2 {
    double a11 = 1.0, a12 = 0.0, a21 = 0.0, a22 = 1.0;

    double det() const { return a11 * a22 - a12 * a21; }
    Matrix2 operator*(const Matrix2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
};

/// Transfer of (psi, psi') across one period at fixed energy, in the
/// kick-then-propagate convention M = D(V0) * T. Unimodular up to
/// integrator error.
struct MonodromyMatrix {
    double m11, m12, m21, m22;
    double energy;

    double det() const { return m11 * m22 - m12 * m21; }
    double half_trace() const { return 0.5 * (m11 + m22); }
};

struct IntegratorOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
};

/// Transfer matrix of the smooth cell interior (no delta kick), from two
/// independent initial-value integrations with an adaptive high-order
/// stepper. Splits at the potential's interior breakpoints.
Matrix2 propagate_cell(const CellPotential& p, double energy,
                       const IntegratorOptions& opts = {});

MonodromyMatrix monodromy(const CellPotential& p, double energy,
                          const IntegratorOptions& opts = {});

/// Hill discriminant, half the monodromy trace. |Delta| <= 1 on allowed
/// zones, > 1 in gaps, = 1 at band edges.
double discriminant(const CellPotential& p, double energy,
                    const IntegratorOptions& opts = {});

/// Textbook Dirac-comb discriminant cos(k pi) + V0 sin(k pi) / (2k); the
/// independent closed-form oracle for the numeric pipeline. Continues
/// hyperbolically below zero energy.
double kronig_penney_discriminant(double comb_strength, double energy);

double imag_quasimomentum_from_discriminant(double delta);

/// Per-period exponential growth exponent in units of inverse length:
/// 0 on allowed zones, arccosh(|Delta|)/pi in gaps.
double imag_quasimomentum(const CellPotential& p, double energy,
                          const IntegratorOptions& opts = {});

struct BandOptions {
    double scan_step = 0.005;
    double root_tol = 1e-10;
    double gap_tol = 1e-3;         // gaps narrower than this flag a merge
    double degenerate_tol = 1e-3;  // zones narrower than this are degenerate
    IntegratorOptions integrator{};
};

/// Scan the discriminant over the window, bracket and bisect every
/// crossing of +1 and -1, resolve tangential touches (double roots) via
/// the energy-derivative zero, and assemble alternating allowed zones.
/// A window with no allowed zone yields an empty structure.
BandStructure band_edges(const CellPotential& p, double window_lo, double window_hi,
                         const BandOptions& opts = {});

struct ForbiddennessCurve {
    std::vector<double> energies;  // sorted ascending
    std::vector<double> delta;     // discriminant values
    std::vector<double> im_k;      // >= 0, zero exactly where |Delta| <= 1
};

ForbiddennessCurve forbiddenness_curve(const CellPotential& p, double window_lo,
                                       double window_hi, double step,
                                       const IntegratorOptions& opts = {});

}  // namespace zoneforge
