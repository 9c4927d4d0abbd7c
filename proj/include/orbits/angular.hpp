#pragma once

#include <complex>
#include <span>
#include <vector>

#include "orbits/lattice.hpp"

namespace orbits {

/// Wraparound arc of R/Z starting at `start` with length in (0, 1].
struct AngleInterval {
    NormalizedAngle start;
    double length;

    bool contains(NormalizedAngle w) const {
        if (length >= 1.0) return true;
        double rel = w.omega - start.omega;
        rel -= std::floor(rel);
        return rel < length;
    }
};

std::size_t sector_count(std::span<const OrbitRecord> records, AngleInterval interval);

/// sum of e(n*omega) over the records; (N, 0) at n = 0.
std::complex<double> exponential_sum(std::span<const OrbitRecord> records, int n);
std::complex<double> exponential_sum(std::span<const double> omegas, int n);

/// Exact star discrepancy D*_N over anchored intervals [0, x).
/// Arc discrepancy over all intervals of R/Z is at most 2 D*_N.
/// Throws std::invalid_argument on empty input.
double star_discrepancy(std::span<const double> omegas);

/// Erdos-Turan bound C1/(M+1) + C2 sum_{m<=M} |S_m|/(m N), C1 = 6, C2 = 4/pi.
double erdos_turan_bound(std::span<const OrbitRecord> records, int m_max);
double erdos_turan_bound(std::span<const double> omegas, int m_max);

struct DecayFit {
    double slope;
    double residual;  // rms residual of the log-log fit
};

/// Least-squares slope of log|error| against log X. Rows with zero error are
/// skipped; fewer than 3 usable rows is an error.
DecayFit fit_decay_exponent(std::span<const std::pair<double, double>> rows);

/// Partial sum of e(n*omega)/cosh_dist^s over the ball of cosh-radius X, with
/// the n = 0 tail correction c X^{1-s}/(s-1), c = kappa 2 pi / vol.
/// Requires s > 1.
std::complex<double> g_series_partial(std::span<const OrbitRecord> records, int n, double s,
                                      double x, const GroupSpec& group);

struct EquidistributionRow {
    double x;
    std::size_t n_total;
    std::size_t n_sector;
    double error;  // n_sector/n_total - |I|
};

struct EquidistributionReport {
    GroupSpec group;
    Point z0;
    Point z1;
    AngleInterval interval;
    std::vector<EquidistributionRow> rows;
    bool has_fit = false;
    DecayFit fit{};
};

/// Sector counts across a list of cosh thresholds (one enumeration at the
/// largest, nested sub-balls by filtering), plus the fitted decay exponent
/// when at least 3 rows have nonzero error.
EquidistributionReport equidistribution_report(const GroupSpec& group, Point z0, Point z1,
                                               std::span<const double> thresholds,
                                               AngleInterval interval,
                                               const EnumerationOptions& opt = {});

}  // namespace orbits
