#include "zoneforge/floquet.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "zoneforge/errors.hpp"

namespace zoneforge {

namespace {

constexpr double pi = cell_period;

using State = std::array<double, 2>;

// Integrate (psi, psi') across [a, b] for -psi'' + V psi = E psi.
void integrate_segment(const CellPotential& p, double energy, double a, double b,
                       State& y, const IntegratorOptions& opts) {
    namespace ode = boost::numeric::odeint;
    auto rhs = [&](const State& s, State& dsdt, double x) {
        dsdt[0] = s[1];
        dsdt[1] = (p.smooth_value(x) - energy) * s[0];
    };
    using Stepper = ode::runge_kutta_fehlberg78<State>;
    auto controlled = ode::make_controlled<Stepper>(opts.abs_tol, opts.rel_tol);
    ode::integrate_adaptive(controlled, rhs, y, a, b, (b - a) / 16.0);
    if (!std::isfinite(y[0]) || !std::isfinite(y[1]))
        throw numerical_error("propagate_cell: integration diverged at E=" +
                              std::to_string(energy));
}

State propagate_columns(const CellPotential& p, double energy, State y,
                        const IntegratorOptions& opts) {
    double a = 0.0;
    for (double b : p.breakpoints()) {
        integrate_segment(p, energy, a, b, y, opts);
        a = b;
    }
    integrate_segment(p, energy, a, pi, y, opts);
    return y;
}

}  // namespace

Matrix2 propagate_cell(const CellPotential& p, double energy, const IntegratorOptions& opts) {
    const State c1 = propagate_columns(p, energy, {1.0, 0.0}, opts);
    const State c2 = propagate_columns(p, energy, {0.0, 1.0}, opts);
    Matrix2 t{c1[0], c2[0], c1[1], c2[1]};
    if (std::abs(t.det() - 1.0) > 1e-6)
        throw numerical_error("propagate_cell: transfer matrix lost unimodularity at E=" +
                              std::to_string(energy));
    return t;
}

MonodromyMatrix monodromy(const CellPotential& p, double energy, const IntegratorOptions& opts) {
    const Matrix2 t = propagate_cell(p, energy, opts);
    const double v0 = p.delta_strength();
    // delta kick D = [[1,0],[V0,1]] applied at the lattice point
    return {t.a11, t.a12, v0 * t.a11 + t.a21, v0 * t.a12 + t.a22, energy};
}

double discriminant(const CellPotential& p, double energy, const IntegratorOptions& opts) {
    return monodromy(p, energy, opts).half_trace();
}

double kronig_penney_discriminant(double comb_strength, double energy) {
    if (energy > 0.0) {
        const double k = std::sqrt(energy);
        return std::cos(k * pi) + comb_strength / (2.0 * k) * std::sin(k * pi);
    }
    if (energy < 0.0) {
        const double k = std::sqrt(-energy);
        return std::cosh(k * pi) + comb_strength / (2.0 * k) * std::sinh(k * pi);
    }
    return 1.0 + comb_strength * pi / 2.0;
}

double imag_quasimomentum_from_discriminant(double delta) {
    const double a = std::abs(delta);
    if (a <= 1.0) return 0.0;
    return std::acosh(a) / pi;
}

double imag_quasimomentum(const CellPotential& p, double energy, const IntegratorOptions& opts) {
    return imag_quasimomentum_from_discriminant(discriminant(p, energy, opts));
}

namespace {

// Bisect f on [a, b] with f(a), f(b) of opposite sign, down to interval tol.
template <typename F>
double bisect(F&& f, double a, double b, double fa, double fb, double tol) {
    for (int it = 0; it < 200 && (b - a) > tol; ++it) {
        const double m = 0.5 * (a + b);
        const double fm = f(m);
        if (fm == 0.0) return m;
        if ((fa < 0.0) != (fm < 0.0)) {
            b = m;
            fb = fm;
        } else {
            a = m;
            fa = fm;
        }
    }
    (void)fb;
    return 0.5 * (a + b);
}

// Five-point central difference of the discriminant in energy; used to pin
// tangential band touches, where Delta -+ 1 has a double root and the
// derivative crosses zero transversally.
template <typename F>
double five_point_deriv(F&& f, double e, double h) {
    return (f(e - 2 * h) - 8 * f(e - h) + 8 * f(e + h) - f(e + 2 * h)) / (12 * h);
}

}  // namespace

BandStructure band_edges(const CellPotential& p, double window_lo, double window_hi,
                         const BandOptions& opts) {
    if (!(window_lo < window_hi))
        throw std::invalid_argument("band_edges: window must satisfy E_min < E_max");

    auto delta_at = [&](double e) { return discriminant(p, e, opts.integrator); };

    const int n_grid = std::max(2, static_cast<int>(std::ceil((window_hi - window_lo) /
                                                              opts.scan_step)));
    std::vector<double> grid(n_grid + 1), d(n_grid + 1);
    for (int i = 0; i <= n_grid; ++i) {
        grid[i] = window_lo + (window_hi - window_lo) * i / n_grid;
        d[i] = delta_at(grid[i]);
    }

    // Simple crossings of Delta = +1 and Delta = -1.
    std::vector<double> roots;
    for (double target : {1.0, -1.0}) {
        for (int i = 0; i < n_grid; ++i) {
            const double fa = d[i] - target, fb = d[i + 1] - target;
            if (fa == 0.0) {
                roots.push_back(grid[i]);
                continue;
            }
            if ((fa < 0.0) != (fb < 0.0)) {
                roots.push_back(bisect([&](double e) { return delta_at(e) - target; },
                                       grid[i], grid[i + 1], fa, fb, opts.root_tol));
            }
        }
        if (d[n_grid] - target == 0.0) roots.push_back(grid[n_grid]);
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end(),
                            [&](double a, double b) { return std::abs(a - b) < opts.root_tol; }),
                roots.end());

    // Tangential touches: local maxima of |Delta| near 1 that the crossing
    // scan cannot see (gap narrower than the grid, or an exact double root).
    std::vector<std::pair<double, double>> touches;  // (lower, upper) boundary pairs
    const double tangency_tol = 1e-9;
    for (int i = 1; i < n_grid; ++i) {
        const double ai = std::abs(d[i]);
        if (ai < 0.9) continue;
        if (!(std::abs(d[i - 1]) < ai && std::abs(d[i + 1]) <= ai)) continue;
        const double lo = grid[i - 1], hi = grid[i + 1];
        bool has_root = false;
        for (double r : roots)
            if (r > lo && r < hi) has_root = true;
        if (has_root) continue;
        // locate the extremum as a zero of dDelta/dE
        const double sgn = d[i] > 0.0 ? 1.0 : -1.0;
        auto dabs = [&](double e) { return sgn * delta_at(e); };
        const double h = 1e-3;
        auto g = [&](double e) { return five_point_deriv(dabs, e, h); };
        const double ga = g(lo), gb = g(hi);
        if (!((ga < 0.0) != (gb < 0.0))) continue;
        const double estar = bisect(g, lo, hi, ga, gb, opts.root_tol);
        const double peak = std::abs(delta_at(estar));
        if (peak >= 1.0 + tangency_tol) {
            // genuine narrow gap: split into its two edge roots
            auto f = [&](double e) { return std::abs(delta_at(e)) - 1.0; };
            const double fl = f(lo), fm = peak - 1.0, fr = f(hi);
            if (fl < 0.0 && fr < 0.0) {
                double r1 = bisect(f, lo, estar, fl, fm, opts.root_tol);
                double r2 = bisect(f, estar, hi, fm, fr, opts.root_tol);
                if (r2 - r1 < opts.root_tol) r1 = r2 = estar;
                touches.emplace_back(r1, r2);
            }
        } else if (peak > 1.0 - tangency_tol) {
            touches.emplace_back(estar, estar);  // coincident pair
        }
    }

    // Ordered boundary walk. A coincident touch pair appears as a duplicated
    // value and acts as a zero-width separator between two abutting zones.
    std::vector<double> bounds = roots;
    for (const auto& [a, b] : touches) {
        bounds.push_back(a);
        bounds.push_back(b);  // equals a for a tangency
    }
    std::sort(bounds.begin(), bounds.end());

    std::vector<double> cuts;
    cuts.push_back(window_lo);
    for (double b : bounds)
        if (b > window_lo + opts.root_tol && b < window_hi - opts.root_tol) cuts.push_back(b);
    cuts.push_back(window_hi);

    BandStructure bs;
    bs.window_lo = window_lo;
    bs.window_hi = window_hi;
    std::vector<Zone> zones;
    bool open = false;
    Zone cur;
    for (size_t j = 0; j + 1 < cuts.size(); ++j) {
        const double lo = cuts[j], hi = cuts[j + 1];
        if (hi <= lo) {  // duplicated cut: close the running zone here
            if (open) {
                zones.push_back(cur);
                open = false;
            }
            continue;
        }
        const bool allowed = std::abs(delta_at(0.5 * (lo + hi))) <= 1.0;
        if (allowed) {
            if (!open) {
                cur = Zone{};
                cur.lower = lo;
                cur.lower_is_window_edge = (j == 0);
                open = true;
            }
            cur.upper = hi;
            cur.upper_is_window_edge = (j + 2 == cuts.size());
        } else if (open) {
            zones.push_back(cur);
            open = false;
        }
    }
    if (open) zones.push_back(cur);

    for (const Zone& z : zones) {
        if (z.width() < opts.degenerate_tol)
            bs.degenerate.push_back(0.5 * (z.lower + z.upper));
        else
            bs.zones.push_back(z);
    }
    for (size_t i = 0; i < bs.zones.size(); ++i) {
        bs.zones[i].index = static_cast<int>(i) + 1;
        if (i + 1 < bs.zones.size()) {
            const double gap = bs.zones[i + 1].lower - bs.zones[i].upper;
            bs.gap_widths.push_back(gap);
            bs.zones[i].merged_with_next = gap < opts.gap_tol;
        }
    }
    return bs;
}

ForbiddennessCurve forbiddenness_curve(const CellPotential& p, double window_lo,
                                       double window_hi, double step,
                                       const IntegratorOptions& opts) {
    if (!(window_lo < window_hi) || !(step > 0.0))
        throw std::invalid_argument("forbiddenness_curve: bad window or step");
    const int n = static_cast<int>(std::round((window_hi - window_lo) / step));
    ForbiddennessCurve c;
    c.energies.reserve(n + 1);
    c.delta.reserve(n + 1);
    c.im_k.reserve(n + 1);
    for (int i = 0; i <= n; ++i) {
        const double e = window_lo + (window_hi - window_lo) * i / n;
        const double d = discriminant(p, e, opts);
        c.energies.push_back(e);
        c.delta.push_back(d);
        c.im_k.push_back(imag_quasimomentum_from_discriminant(d));
    }
    return c;
}

}  // namespace zoneforge
