#include "zoneforge/auxiliary_well.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

#include "zoneforge/errors.hpp"

namespace zoneforge {

namespace {
constexpr double pi = cell_period;
}

AuxLevel AuxLevel::make(int n) {
    if (n < 1) throw std::invalid_argument("AuxLevel: level index must be >= 1");
    return {n, static_cast<double>(n) * n, (n % 2 == 1) ? Parity::even : Parity::odd};
}

double well_eigenfunction(int n, double x) { return std::sin(n * x); }

double well_eigenfunction_deriv(int n, double x) { return n * std::cos(n * x); }

ValueDeriv nonphysical_solution(int n, double t, double x) {
    if (t == 0.0) throw std::domain_error("nonphysical_solution: degenerate shift t = 0");
    const double s = static_cast<double>(n) * n + t;
    const double u = x - pi / 2;
    const bool opposite_even = (n % 2 == 0);  // sin(nx) is odd about pi/2 for even n
    if (s > 0.0) {
        const double k = std::sqrt(s);
        if (opposite_even) return {std::cos(k * u), -k * std::sin(k * u)};
        return {std::sin(k * u), k * std::cos(k * u)};
    }
    if (s < 0.0) {
        const double k = std::sqrt(-s);
        if (opposite_even) return {std::cosh(k * u), k * std::sinh(k * u)};
        return {std::sinh(k * u), k * std::cosh(k * u)};
    }
    // zero-energy limit
    if (opposite_even) return {1.0, 0.0};
    return {u, 1.0};
}

double wronskian_theta(int n, double t, double x) {
    const ValueDeriv b = nonphysical_solution(n, t, x);
    return well_eigenfunction_deriv(n, x) * b.value - well_eigenfunction(n, x) * b.deriv;
}

double wronskian_theta_deriv(int n, double t, double x) {
    return t * well_eigenfunction(n, x) * nonphysical_solution(n, t, x).value;
}

namespace {

// Cubic Hermite on a uniform node table (values f, derivatives df w.r.t. the
// table coordinate). s is clamped to the table range.
double hermite_eval(const std::vector<double>& f, const std::vector<double>& df,
                    double h, double s) {
    const int n = static_cast<int>(f.size()) - 1;
    double p = s / h;
    int i = static_cast<int>(p);
    if (i < 0) i = 0;
    if (i > n - 1) i = n - 1;
    const double xi = p - i;
    const double a = f[i], b = df[i] * h, c = f[i + 1], d = df[i + 1] * h;
    const double xi2 = xi * xi, xi3 = xi2 * xi;
    return a * (2 * xi3 - 3 * xi2 + 1) + b * (xi3 - 2 * xi2 + xi) +
           c * (-2 * xi3 + 3 * xi2) + d * (xi3 - xi2);
}

constexpr int half_steps = 8192;

}  // namespace

double GeneralBCEigenstate::value(double u) const {
    if (u >= 0.0) return hermite_eval(right_->psi, right_->dpsi, right_->h, u);
    return hermite_eval(left_->psi, left_->dpsi, left_->h, -u);
}

double GeneralBCEigenstate::deriv(double u) const {
    if (u >= 0.0) return hermite_eval(right_->dpsi, right_->ddpsi, right_->h, u);
    return -hermite_eval(left_->dpsi, left_->ddpsi, left_->h, -u);
}

double GeneralBCEigenstate::cumulative(double u) const {
    if (u >= 0.0) return cum_left_total_ + hermite_eval(right_->cum, right_->cum_d, right_->h, u);
    return cum_left_total_ - hermite_eval(left_->cum, left_->cum_d, left_->h, -u);
}

GeneralBCEigenstate general_bc_eigenstate(const CellPotential& p, double e_point) {
    // Integrate chi'' = (V(s) - E) chi outward from the delta on each half,
    // chi(0) = 1, chi'(0) = delta/2 (the symmetric derivative jump split),
    // accumulating the running integral of chi^2. Fixed-step RK4; the node
    // tables double as interpolation data.
    auto integrate_half = [&](const std::function<double(double)>& pot,
                              GeneralBCEigenstate::Half* out) {
        const int n = half_steps;
        const double h = (pi / 2) / n;
        out->h = h;
        out->psi.resize(n + 1);
        out->dpsi.resize(n + 1);
        out->ddpsi.resize(n + 1);
        out->cum.resize(n + 1);
        out->cum_d.resize(n + 1);
        double y0 = 1.0, y1 = p.delta_strength() / 2, y2 = 0.0;
        auto record = [&](int i, double s) {
            out->psi[i] = y0;
            out->dpsi[i] = y1;
            out->ddpsi[i] = (pot(s) - e_point) * y0;
            out->cum[i] = y2;
            out->cum_d[i] = y0 * y0;
        };
        record(0, 0.0);
        for (int i = 0; i < n; ++i) {
            const double s = i * h;
            auto f = [&](double sx, double a0, double a1) {
                return std::array<double, 3>{a1, (pot(sx) - e_point) * a0, a0 * a0};
            };
            const auto k1 = f(s, y0, y1);
            const auto k2 = f(s + h / 2, y0 + h / 2 * k1[0], y1 + h / 2 * k1[1]);
            const auto k3 = f(s + h / 2, y0 + h / 2 * k2[0], y1 + h / 2 * k2[1]);
            const auto k4 = f(s + h, y0 + h * k3[0], y1 + h * k3[1]);
            y0 += h / 6 * (k1[0] + 2 * k2[0] + 2 * k3[0] + k4[0]);
            y1 += h / 6 * (k1[1] + 2 * k2[1] + 2 * k3[1] + k4[1]);
            y2 += h / 6 * (k1[2] + 2 * k2[2] + 2 * k3[2] + k4[2]);
            record(i + 1, s + h);
            if (!std::isfinite(y0) || !std::isfinite(y1))
                throw numerical_error("general_bc_eigenstate: integration diverged near |u|=" +
                                      std::to_string(s + h));
        }
    };

    auto right = std::make_shared<GeneralBCEigenstate::Half>();
    auto left = std::make_shared<GeneralBCEigenstate::Half>();
    // Right half lives on standard-cell coordinates x = s; the left half on
    // x = pi - s (u = -s shifted one period up).
    integrate_half([&](double s) { return p.smooth_value(s); }, right.get());
    integrate_half([&](double s) { return p.smooth_value(pi - s); }, left.get());

    const double total = right->cum.back() + left->cum.back();
    if (!(total > 0.0) || !std::isfinite(total))
        throw numerical_error("general_bc_eigenstate: non-normalizable solution");
    const double scale = 1.0 / std::sqrt(total);
    for (auto* half : {right.get(), left.get()}) {
        for (auto& v : half->psi) v *= scale;
        for (auto& v : half->dpsi) v *= scale;
        for (auto& v : half->ddpsi) v *= scale;
        for (auto& v : half->cum) v /= total;
        for (auto& v : half->cum_d) v /= total;
    }

    GeneralBCEigenstate st;
    st.right_ = right;
    st.left_ = left;
    st.e_point_ = e_point;
    st.delta_strength_ = p.delta_strength();
    st.cum_left_total_ = left->cum.back();

    // Boundary angle from the right edge, with the outward derivative; then
    // residuals of the same angle at both edges.
    const double pe = right->psi.back(), de = right->dpsi.back();
    double angle = std::atan2(-pe, de);
    if (angle < 0.0) angle += pi;
    if (angle >= pi) angle -= pi;
    st.bc_ = AuxBC{angle};
    const double ca = std::cos(angle), sa = std::sin(angle);
    st.res_right_ = std::abs(ca * pe + sa * de);
    st.res_left_ = std::abs(ca * left->psi.back() + sa * left->dpsi.back());
    return st;
}

}  // namespace zoneforge
