#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "orbits/lattice.hpp"

namespace testutil {

inline bool close(double a, double b, double tol, double scale = 1.0) {
    return std::fabs(a - b) <= tol * std::max({scale, std::fabs(a), std::fabs(b)});
}

/// Random element of SL(2,Z) as a short word in T^k and S.
inline orbits::GroupElement random_element(std::mt19937& rng) {
    std::uniform_int_distribution<int> shift(-3, 3);
    std::int64_t a = 1, b = 0, c = 0, d = 1;
    for (int i = 0; i < 3; ++i) {
        int k = shift(rng);
        // right-multiply by T^k = [[1,k],[0,1]]
        b += a * k;
        d += c * k;
        // right-multiply by S = [[0,1],[-1,0]]
        std::int64_t na = -b, nb = a, nc = -d, nd = c;
        a = na; b = nb; c = nc; d = nd;
    }
    return orbits::GroupElement(a, b, c, d);
}

inline orbits::Point random_point(std::mt19937& rng, double x_half = 2.0, double y_lo = 0.1,
                                  double y_hi = 5.0) {
    std::uniform_real_distribution<double> ux(-x_half, x_half);
    std::uniform_real_distribution<double> uy(y_lo, y_hi);
    return orbits::Point(ux(rng), uy(rng));
}

/// Independent disk-model radius oracle: |(z-i)/(z+i)| = tanh(r/2), i.e.
/// r = log((|z+i| + |z-i|) / (|z+i| - |z-i|)).  Since |z+i|^2 - |z-i|^2 = 4y
/// exactly, the difference is rewritten to avoid cancellation at large r.
inline double disk_radius(orbits::Point z) {
    double num = std::sqrt(z.x * z.x + (z.y - 1.0) * (z.y - 1.0));
    double den = std::sqrt(z.x * z.x + (z.y + 1.0) * (z.y + 1.0));
    return 2.0 * std::log(num + den) - std::log(4.0 * z.y);
}

inline std::vector<std::int64_t> quad_key(const orbits::OrbitRecord& r) {
    return {r.element.a, r.element.b, r.element.c, r.element.d};
}

inline std::vector<std::vector<std::int64_t>> quad_set(const std::vector<orbits::OrbitRecord>& v) {
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(quad_key(r));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace testutil
