#pragma once

#include <memory>
#include <vector>

#include "zoneforge/cell_model.hpp"

namespace zoneforge {

// Parity of a cell function about the midpoint pi/2.
enum class Parity { even, odd };

/// Auxiliary infinite-well level on the period cell: E_n = n^2, with
/// eigenfunction parity alternating with n (n odd -> even about pi/2).
struct AuxLevel {
    int n;
    double energy;
    Parity parity_about_midpoint;

    static AuxLevel make(int n);
};

struct ValueDeriv {
    double value;
    double deriv;
};

/// Well eigenfunction sin(n x), unnormalized by design: the level-shift
/// construction is scale invariant in each factor separately.
double well_eigenfunction(int n, double x);
double well_eigenfunction_deriv(int n, double x);

/// Non-physical auxiliary solution at the shifted energy n^2 + t, with
/// parity about pi/2 opposite to sin(n x), anchored at the midpoint with
/// unit amplitude. Below zero energy the hyperbolic branch is used; at
/// exactly zero the linear limit. Throws on t == 0 (degenerate shift).
ValueDeriv nonphysical_solution(int n, double t, double x);

/// Wronskian theta(x) = psi0' psibar - psi0 psibar' of the two solutions
/// above. Satisfies theta'(x) = t * psi0(x) * psibar(x), hence
/// theta(pi) = theta(0) by the opposite-parity product integrating to zero.
double wronskian_theta(int n, double t, double x);
double wronskian_theta_deriv(int n, double t, double x);

/// Homogeneous boundary condition at both cell edges,
///   psi(edge) * cos(angle) + d_out psi(edge) * sin(angle) = 0,
/// where d_out is the outward derivative (-psi' at the left edge, +psi' at
/// the right). The outward form is what a symmetric cell state satisfies
/// with one angle at both edges. angle in [0, pi).
struct AuxBC {
    double angle;
};

/// Real cell solution at a fixed energy on the comb cell re-centered about
/// the delta: cell [-pi/2, pi/2] with the kick at u = 0, solution symmetric
/// about the delta, normalized to unit squared integral over the cell.
/// Built by direct numerical integration; values between stored nodes come
/// from cubic Hermite interpolation at machine-level accuracy.
class GeneralBCEigenstate {
public:
    double value(double u) const;
    double deriv(double u) const;
    /// Cumulative integral I(u) of psi^2 from the left edge -pi/2; I(pi/2) = 1.
    double cumulative(double u) const;

    AuxBC bc() const { return bc_; }
    double e_point() const { return e_point_; }
    double delta_strength() const { return delta_strength_; }
    // Residuals |psi cos a + d_out psi sin a| at each edge with the single
    // returned angle; both should sit at integrator accuracy.
    double edge_residual_left() const { return res_left_; }
    double edge_residual_right() const { return res_right_; }

private:
    friend GeneralBCEigenstate general_bc_eigenstate(const CellPotential&, double);

    struct Half {  // one half of the cell, nodes from the delta outward
        std::vector<double> psi, dpsi, ddpsi;  // ddpsi = (V - E) psi at nodes
        std::vector<double> cum, cum_d;        // running integral of psi^2 and its slope
        double h = 0.0;                        // node spacing (in |u|)
    };
    std::shared_ptr<const Half> right_, left_;
    AuxBC bc_{0.0};
    double e_point_ = 0.0;
    double delta_strength_ = 0.0;
    double res_left_ = 0.0, res_right_ = 0.0;
    double cum_left_total_ = 0.0;  // I(0), after normalization
};

/// Solve the re-centered comb-cell problem at the given energy point and
/// read off the homogeneous boundary angle. E_point may lie anywhere on the
/// real axis (typically inside a forbidden zone of the comb).
GeneralBCEigenstate general_bc_eigenstate(const CellPotential& p, double e_point);

}  // namespace zoneforge
