#include "orbits/halfplane.hpp"

#include <cmath>

namespace orbits {

Point mobius_apply(double a, double b, double c, double d, Point z) {
    std::complex<double> w = z.as_complex();
    std::complex<double> num = a * w + b;
    std::complex<double> den = c * w + d;
    // Im(gz) = y / |cz+d|^2, positive by construction.
    double q = std::norm(den);
    std::complex<double> r = num * std::conj(den);
    return Point(r.real() / q, z.y / q);
}

double point_pair_invariant(Point z, Point w) {
    double dx = z.x - w.x;
    double dy = z.y - w.y;
    return (dx * dx + dy * dy) / (4.0 * z.y * w.y);
}

double cosh_distance(Point z, Point w) {
    return 1.0 + 2.0 * point_pair_invariant(z, w);
}

Point from_polar(GeodesicPolar p) {
    // k(phi) applied to exp(-r)i, written out to avoid cancellation at large r:
    //   x = sin(phi)cos(phi)(1 - q^2) / (cos^2(phi) + q^2 sin^2(phi))
    //   y = q / (cos^2(phi) + q^2 sin^2(phi)),  q = exp(-r).
    double q = std::exp(-p.r);
    double c = std::cos(p.phi);
    double s = std::sin(p.phi);
    double den = c * c + q * q * s * s;
    double x = s * c * (1.0 - q * q) / den;
    double y = q / den;
    return Point(x, y);
}

GeodesicPolar to_polar(Point z) {
    double ch = cosh_distance(z, Point(0.0, 1.0));
    double r = std::acosh(std::max(1.0, ch));
    if (r == 0.0) return {0.0, 0.0};
    // Disk model about i: w = (z-i)/(z+i) = -tanh(r/2) e^{2i phi}.
    std::complex<double> zc = z.as_complex();
    std::complex<double> i(0.0, 1.0);
    std::complex<double> w = (zc - i) / (zc + i);
    double theta = std::arg(-w);  // 2*phi mod 2*pi, in (-pi, pi]
    double phi = 0.5 * theta;
    if (phi < 0.0) phi += M_PI;
    if (phi >= M_PI) phi -= M_PI;
    return {r, phi};
}

NormalizedAngle normalized_angle(Point z0, Point target) {
    if (z0 == target)
        throw std::domain_error("normalized_angle: target coincides with base point");
    // Conjugate so that z0 goes to i; gamma_0 z = (z - x0)/y0.
    Point t((target.x - z0.x) / z0.y, target.y / z0.y);
    std::complex<double> i(0.0, 1.0);
    std::complex<double> w = (t.as_complex() - i) / (t.as_complex() + i);
    double theta = std::arg(-w);  // 2*phi, phi the polar angle of t about i
    // omega = phi/pi - 1/2 (mod 1)
    return NormalizedAngle::wrap(theta / (2.0 * M_PI) - 0.5);
}

double fold_to_line_angle(NormalizedAngle omega) {
    double half = omega.omega;
    if (half >= 0.5) half -= 0.5;  // exact (Sterbenz), so fold(w) == fold(w + 1/2)
    double t = 2.0 * M_PI * half;
    if (t >= M_PI / 2.0) t -= M_PI;
    return t;
}

}  // namespace orbits
