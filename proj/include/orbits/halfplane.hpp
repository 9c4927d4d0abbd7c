#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace orbits {

/// A point x+iy of the upper half-plane (y > 0 strictly).
struct Point {
    double x;
    double y;

    Point(double x_, double y_) : x(x_), y(y_) {
        if (!(y > 0.0))
            throw std::invalid_argument("Point: y must be strictly positive");
    }

    std::complex<double> as_complex() const { return {x, y}; }

    static Point from_complex(std::complex<double> z) { return Point(z.real(), z.imag()); }

    friend bool operator==(const Point& a, const Point& b) { return a.x == b.x && a.y == b.y; }
};

/// Geodesic polar coordinates about i: radius r >= 0, angle phi in [0, pi).
struct GeodesicPolar {
    double r;
    double phi;
};

/// An element of R/Z stored by its representative in [0, 1).
struct NormalizedAngle {
    double omega = 0.0;

    static NormalizedAngle wrap(double value) {
        double w = value - std::floor(value);
        if (w >= 1.0) w = 0.0;  // value was a tiny negative number
        return NormalizedAngle{w};
    }

    NormalizedAngle operator+(NormalizedAngle o) const { return wrap(omega + o.omega); }
    NormalizedAngle operator-() const { return wrap(-omega); }

    friend bool operator==(NormalizedAngle a, NormalizedAngle b) { return a.omega == b.omega; }
};

/// (az+b)/(cz+d) for a real matrix with ad-bc = 1.
Point mobius_apply(double a, double b, double c, double d, Point z);

/// u(z,w) = |z-w|^2 / (4 Im z Im w).
double point_pair_invariant(Point z, Point w);

/// cosh of the hyperbolic distance, 1 + 2u(z,w).
double cosh_distance(Point z, Point w);

Point from_polar(GeodesicPolar p);

/// Inverse of from_polar; phi = 0 by convention at z = i.
GeodesicPolar to_polar(Point z);

/// Angle at z0 from the upward vertical ray to the ray toward target,
/// divided by 2*pi, mod 1; positive direction is toward decreasing real part.
/// Throws std::domain_error if target == z0.
NormalizedAngle normalized_angle(Point z0, Point target);

/// Representative of 2*pi*omega modulo pi lying in [-pi/2, pi/2).
double fold_to_line_angle(NormalizedAngle omega);

}  // namespace orbits
