#pragma once

#include <vector>

#include "orbits/angular.hpp"
#include "orbits/halfplane.hpp"
#include "orbits/lattice.hpp"

namespace orbits {

/// A (z0, z1) pair together with z1 moved to the frame where z0 = i,
/// and beta = |z1'|^2 + 1.
struct DensityParams {
    Point z0;
    Point z1;
    double x1p;
    double y1p;
    double beta;

    static DensityParams make(Point z0, Point z1) {
        double x1p = (z1.x - z0.x) / z0.y;
        double y1p = z1.y / z0.y;
        return DensityParams{z0, z1, x1p, y1p, x1p * x1p + y1p * y1p + 1.0};
    }
};

/// Limiting angular density on R/Z, evaluated in the conjugated frame:
/// 2 y1' / (beta - (beta-2)cos(2 pi w) + 2 x1' sin(2 pi w)).
double rho(const DensityParams& p, NormalizedAngle w);

/// The same density from the general-frame display; cross-check path only.
double rho_general_frame(Point z0, Point z1, double omega);

/// Line-angle density on [-pi/2, pi/2]; (1/pi) integral over the full
/// interval is 1.
double eta(const DensityParams& p, double t);

/// Coefficient k of e^{D(R,theta)} = k(theta) e^R + O(1); equals rho pointwise.
double k_theta(const DensityParams& p, NormalizedAngle w);

/// Q(z1, t, R): hyperbolic distance from i to where the ray from i at angle t
/// (t = 2 pi omega, 0 = up, positive toward negative real part) exits the
/// hyperbolic circle of center z1 and radius R. Requires R > d(i, z1).
double sector_radius_exact(Point z1, double t, double r_radius);

/// Log of the main term of e^{Q}: R + log(2 y1') - log(beta - (beta-2)cos t
/// + 2 x1' sin t), in the conjugated frame of p.
double sector_radius_asymptotic(const DensityParams& p, double t, double r_radius);

/// Point at hyperbolic distance `dist` along the angle-t ray from i.
Point ray_point(double t, double dist);

/// Adaptive quadrature of rho over the interval, absolute tolerance 1e-10.
double integrate_density(const DensityParams& p, AngleInterval interval);

/// (1/pi) integral of eta over [t_lo, t_hi].
double integrate_eta(const DensityParams& p, double t_lo, double t_hi);

struct BinRow {
    double lo, hi;  // omega bin bounds
    double empirical;
    double predicted;
    double diff;
};

struct Theorem3Report {
    GroupSpec group;
    Point z0, z1, w;
    double x;
    double r;
    std::size_t n_total;
    std::vector<BinRow> bins;
    double max_abs_diff;
};

/// Orbit of w in the ball of cosh-radius X about z1, binned by the angle seen
/// from z0 against the predicted integral of rho.
Theorem3Report theorem3_report(const GroupSpec& group, Point z0, Point z1, Point w, double x,
                               int bins, const EnumerationOptions& opt = {});

struct Theorem2BinRow {
    double t_lo, t_hi;  // line-angle bin bounds in [-pi/2, pi/2)
    double empirical;
    double predicted_eta;  // (1/pi) integral of eta
    double predicted_rho;  // folded-rho integral, cross-check
    double diff;           // empirical - predicted_eta
};

struct Theorem2Report {
    GroupSpec group;
    Point z0, z1;
    double x;
    double r;
    std::size_t n_total;
    std::vector<Theorem2BinRow> bins;
    double max_abs_diff;
    double max_prediction_gap;  // |predicted_eta - predicted_rho| over bins
};

/// Folded-angle statistic: orbit of z1 in the ball about z1, binned by the
/// line angle seen from z0.
Theorem2Report theorem2_report(const GroupSpec& group, Point z0, Point z1, double x, int bins,
                               const EnumerationOptions& opt = {});

}  // namespace orbits
