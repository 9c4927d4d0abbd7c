#include "orbits/density.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbits {

namespace {

double rho_at_radians(const DensityParams& p, double t) {
    return 2.0 * p.y1p /
           (p.beta - (p.beta - 2.0) * std::cos(t) + 2.0 * p.x1p * std::sin(t));
}

// Recursive adaptive Simpson on [a, b].
template <typename F>
double adaptive_simpson(const F& f, double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m);
    double rm = 0.5 * (m + b);
    double flm = f(lm);
    double frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <typename F>
double integrate(const F& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double m = 0.5 * (a + b);
    double fa = f(a), fm = f(m), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Splits [a, b] at interior stationary points of rho's denominator.
template <typename F>
double integrate_split(const F& f, double a, double b, const DensityParams& p, double tol) {
    double t_star = std::atan2(-2.0 * p.x1p, p.beta - 2.0);  // denominator extremum (radians)
    std::vector<double> cuts{a, b};
    for (int k = -2; k <= 2; ++k) {
        double w = (t_star + k * M_PI) / (2.0 * M_PI);
        if (w > a && w < b) cuts.push_back(w);
    }
    std::sort(cuts.begin(), cuts.end());
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
        total += integrate(f, cuts[i], cuts[i + 1], tol / static_cast<double>(cuts.size()));
    return total;
}

}  // namespace

double rho(const DensityParams& p, NormalizedAngle w) {
    return rho_at_radians(p, 2.0 * M_PI * w.omega);
}

double rho_general_frame(Point z0, Point z1, double omega) {
    double t = 2.0 * M_PI * omega;
    double dx2 = (z0.x - z1.x) * (z0.x - z1.x);
    double den = (dx2 + z0.y * z0.y + z1.y * z1.y) * (1.0 - std::cos(t)) +
                 2.0 * z0.y * z0.y * std::cos(t) + 2.0 * (z1.x - z0.x) * z0.y * std::sin(t);
    return 2.0 * z0.y * z1.y / den;
}

double eta(const DensityParams& p, double t) {
    double dx = p.z0.x - p.z1.x;
    double y0 = p.z0.y, y1 = p.z1.y;
    double s = y0 * y0 + y1 * y1 + dx * dx;
    double osc = (y1 * y1 - y0 * y0 + dx * dx) * std::cos(t) + 2.0 * y0 * dx * std::sin(t);
    return 2.0 * y0 * y1 * s / (s * s - osc * osc);
}

double k_theta(const DensityParams& p, NormalizedAngle w) {
    return rho_at_radians(p, 2.0 * M_PI * w.omega);
}

Point ray_point(double t, double dist) {
    // omega = t/(2 pi) corresponds to polar angle phi = t/2 + pi/2 (mod pi)
    double phi = std::fmod(0.5 * t + 0.5 * M_PI, M_PI);
    if (phi < 0.0) phi += M_PI;
    return from_polar({dist, phi});
}

double sector_radius_exact(Point z1, double t, double r_radius) {
    Point i(0.0, 1.0);
    if (!(r_radius > std::acosh(cosh_distance(i, z1))))
        throw std::domain_error("sector_radius_exact: requires R > d(i, z1)");
    // Normalize t to (-pi, pi].
    t = std::remainder(t, 2.0 * M_PI);
    const double ch = std::cosh(r_radius);
    const double x1 = z1.x, y1 = z1.y;
    const double beta = x1 * x1 + y1 * y1 + 1.0;

    const double s = std::sin(t);
    if (s == 0.0) {
        // Vertical ray: x = 0 meets the circle at y1 ch +/- sqrt(y1^2 ch^2 - |z1|^2).
        double disc = std::sqrt(y1 * y1 * ch * ch - (beta - 1.0));
        if (std::cos(t) > 0.0 || t == 0.0) return std::log(y1 * ch + disc);
        return -std::log((beta - 1.0) / (y1 * ch + disc));  // lower root, stably
    }

    const double alpha = -std::cos(t) / s;   // cot with the sign of t folded in
    const double delta2 = 1.0 / (s * s);
    const double q = 1.0 / (y1 * y1 * ch * ch);
    const double a2 = (alpha - x1) * (alpha - x1) * q;
    const double sgn = t > 0.0 ? 1.0 : -1.0;
    const double rad = delta2 + a2 - beta * beta * q / 4.0 - alpha * beta * (alpha - x1) * q;
    const double xp = (alpha - beta * (alpha - x1) * q / 2.0 - sgn * std::sqrt(std::max(0.0, rad))) /
                      (1.0 + a2);

    // y' from the circle equation (the geodesic form sqrt(delta^2-(x'-alpha)^2)
    // cancels catastrophically at large R). Roots y1 ch +/- sqrt(y1^2 ch^2 - C);
    // pick the one lying on the geodesic.
    const double cc = (xp - x1) * (xp - x1) + y1 * y1;
    const double root = std::sqrt(std::max(0.0, y1 * y1 * ch * ch - cc));
    const double y_hi = y1 * ch + root;
    const double y_lo = cc / y_hi;
    auto geodesic_miss = [&](double y) {
        return std::fabs((xp - alpha) * (xp - alpha) + y * y - delta2);
    };
    const double yp = geodesic_miss(y_lo) <= geodesic_miss(y_hi) ? y_lo : y_hi;

    return std::acosh(std::max(1.0, 1.0 + (xp * xp + (yp - 1.0) * (yp - 1.0)) / (2.0 * yp)));
}

double sector_radius_asymptotic(const DensityParams& p, double t, double r_radius) {
    double den = p.beta - (p.beta - 2.0) * std::cos(t) + 2.0 * p.x1p * std::sin(t);
    return r_radius + std::log(2.0 * p.y1p) - std::log(den);
}

double integrate_density(const DensityParams& p, AngleInterval interval) {
    double len = std::min(interval.length, 1.0);
    auto f = [&](double w) { return rho_at_radians(p, 2.0 * M_PI * w); };
    return integrate_split(f, interval.start.omega, interval.start.omega + len, p, 1e-11);
}

double integrate_eta(const DensityParams& p, double t_lo, double t_hi) {
    auto f = [&](double t) { return eta(p, t); };
    return integrate(f, t_lo, t_hi, 1e-11) / M_PI;
}

Theorem3Report theorem3_report(const GroupSpec& group, Point z0, Point z1, Point w, double x,
                               int bins, const EnumerationOptions& opt) {
    if (bins < 2) throw std::invalid_argument("theorem3_report: bins must be >= 2");
    BallQuery q{group, z1, w, z0, x};
    std::vector<OrbitRecord> records = enumerate_ball(q, opt);
    DensityParams p = DensityParams::make(z0, z1);

    Theorem3Report rep{group, z0, z1, w, x, std::acosh(x), records.size(), {}, 0.0};
    const double n = static_cast<double>(records.size());
    for (int j = 0; j < bins; ++j) {
        double lo = static_cast<double>(j) / bins;
        double hi = static_cast<double>(j + 1) / bins;
        AngleInterval bin{NormalizedAngle::wrap(lo), hi - lo};
        double empirical = n == 0.0 ? 0.0 : sector_count(records, bin) / n;
        double predicted = integrate_density(p, bin);
        double diff = empirical - predicted;
        rep.bins.push_back({lo, hi, empirical, predicted, diff});
        rep.max_abs_diff = std::max(rep.max_abs_diff, std::fabs(diff));
    }
    return rep;
}

Theorem2Report theorem2_report(const GroupSpec& group, Point z0, Point z1, double x, int bins,
                               const EnumerationOptions& opt) {
    if (bins < 2) throw std::invalid_argument("theorem2_report: bins must be >= 2");
    BallQuery q{group, z1, z1, z0, x};
    std::vector<OrbitRecord> records = enumerate_ball(q, opt);
    DensityParams p = DensityParams::make(z0, z1);

    std::vector<double> folded;
    folded.reserve(records.size());
    for (const auto& rec : records) folded.push_back(fold_to_line_angle(rec.omega));

    Theorem2Report rep{group, z0, z1, x, std::acosh(x), records.size(), {}, 0.0, 0.0};
    const double n = static_cast<double>(records.size());
    for (int j = 0; j < bins; ++j) {
        double t_lo = -M_PI / 2.0 + M_PI * j / bins;
        double t_hi = -M_PI / 2.0 + M_PI * (j + 1) / bins;
        std::size_t count = 0;
        for (double t : folded)
            if (t >= t_lo && t < t_hi) ++count;
        double empirical = n == 0.0 ? 0.0 : count / n;
        double pred_eta = integrate_eta(p, t_lo, t_hi);
        // Folded rho over the matching omega bin and its antipode:
        // int (rho(w) + rho(w+1/2)) dw over [t_lo/2pi, t_hi/2pi].
        AngleInterval wbin{NormalizedAngle::wrap(t_lo / (2.0 * M_PI)),
                           (t_hi - t_lo) / (2.0 * M_PI)};
        AngleInterval wbin2{NormalizedAngle::wrap(t_lo / (2.0 * M_PI) + 0.5), wbin.length};
        double pred_rho = integrate_density(p, wbin) + integrate_density(p, wbin2);
        double diff = empirical - pred_eta;
        rep.bins.push_back({t_lo, t_hi, empirical, pred_eta, pred_rho, diff});
        rep.max_abs_diff = std::max(rep.max_abs_diff, std::fabs(diff));
        rep.max_prediction_gap = std::max(rep.max_prediction_gap, std::fabs(pred_eta - pred_rho));
    }
    return rep;
}

}  // namespace orbits
