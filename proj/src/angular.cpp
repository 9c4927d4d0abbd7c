#include "orbits/angular.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace orbits {

std::size_t sector_count(std::span<const OrbitRecord> records, AngleInterval interval) {
    std::size_t n = 0;
    for (const auto& r : records)
        if (interval.contains(r.omega)) ++n;
    return n;
}

std::complex<double> exponential_sum(std::span<const double> omegas, int n) {
    if (n == 0) return {static_cast<double>(omegas.size()), 0.0};
    std::complex<double> s{0.0, 0.0};
    for (double w : omegas) {
        double arg = 2.0 * M_PI * n * w;
        s += std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return s;
}

std::complex<double> exponential_sum(std::span<const OrbitRecord> records, int n) {
    if (n == 0) return {static_cast<double>(records.size()), 0.0};
    std::complex<double> s{0.0, 0.0};
    for (const auto& r : records) {
        double arg = 2.0 * M_PI * n * r.omega.omega;
        s += std::complex<double>(std::cos(arg), std::sin(arg));
    }
    return s;
}

double star_discrepancy(std::span<const double> omegas) {
    if (omegas.empty()) throw std::invalid_argument("star_discrepancy: empty input");
    std::vector<double> sorted(omegas.begin(), omegas.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        double hi = (i + 1) / n - sorted[i];
        double lo = sorted[i] - i / n;
        d = std::max(d, std::max(hi, lo));
    }
    return d;
}

namespace {

double erdos_turan_from_sums(std::size_t n, const std::vector<double>& abs_sums, int m_max) {
    double bound = 6.0 / (m_max + 1);
    for (int m = 1; m <= m_max; ++m)
        bound += (4.0 / M_PI) * abs_sums[m - 1] / (m * static_cast<double>(n));
    return bound;
}

}  // namespace

double erdos_turan_bound(std::span<const double> omegas, int m_max) {
    if (m_max < 1) throw std::invalid_argument("erdos_turan_bound: M must be >= 1");
    if (omegas.empty()) throw std::invalid_argument("erdos_turan_bound: empty input");
    // e(m w) accumulated by repeated multiplication: one sincos per point.
    std::vector<std::complex<double>> sums(m_max, {0.0, 0.0});
    for (double w : omegas) {
        double arg = 2.0 * M_PI * w;
        std::complex<double> base(std::cos(arg), std::sin(arg));
        std::complex<double> p = base;
        for (int m = 0; m < m_max; ++m) {
            sums[m] += p;
            p *= base;
        }
    }
    std::vector<double> abs_sums(m_max);
    for (int m = 0; m < m_max; ++m) abs_sums[m] = std::abs(sums[m]);
    return erdos_turan_from_sums(omegas.size(), abs_sums, m_max);
}

double erdos_turan_bound(std::span<const OrbitRecord> records, int m_max) {
    if (m_max < 1) throw std::invalid_argument("erdos_turan_bound: M must be >= 1");
    if (records.empty()) throw std::invalid_argument("erdos_turan_bound: empty input");
    std::vector<double> omegas;
    omegas.reserve(records.size());
    for (const auto& r : records) omegas.push_back(r.omega.omega);
    return erdos_turan_bound(std::span<const double>(omegas), m_max);
}

DecayFit fit_decay_exponent(std::span<const std::pair<double, double>> rows) {
    std::vector<std::pair<double, double>> pts;  // (log X, log |error|)
    for (const auto& [x, err] : rows)
        if (err != 0.0 && x > 0.0) pts.emplace_back(std::log(x), std::log(std::fabs(err)));
    if (pts.size() < 3)
        throw std::invalid_argument("fit_decay_exponent: need at least 3 rows with nonzero error");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [u, v] : pts) {
        sx += u;
        sy += v;
        sxx += u * u;
        sxy += u * v;
    }
    const double n = static_cast<double>(pts.size());
    double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    double intercept = (sy - slope * sx) / n;
    double ss = 0.0;
    for (const auto& [u, v] : pts) {
        double r = v - (slope * u + intercept);
        ss += r * r;
    }
    return {slope, std::sqrt(ss / n)};
}

std::complex<double> g_series_partial(std::span<const OrbitRecord> records, int n, double s,
                                      double x, const GroupSpec& group) {
    if (!(s > 1.0)) throw std::domain_error("g_series_partial: s must be > 1");
    std::complex<double> sum{0.0, 0.0};
    for (const auto& r : records) {
        if (r.cosh_dist > x * (1.0 + 1e-12)) continue;
        double weight = std::pow(r.cosh_dist, -s);
        if (n == 0) {
            sum += weight;
        } else {
            double arg = 2.0 * M_PI * n * r.omega.omega;
            sum += weight * std::complex<double>(std::cos(arg), std::sin(arg));
        }
    }
    if (n == 0) {
        double c = group.kappa * 2.0 * M_PI / group.covolume;
        sum += c * std::pow(x, 1.0 - s) / (s - 1.0);
    }
    return sum;
}

EquidistributionReport equidistribution_report(const GroupSpec& group, Point z0, Point z1,
                                               std::span<const double> thresholds,
                                               AngleInterval interval,
                                               const EnumerationOptions& opt) {
    if (thresholds.empty())
        throw std::invalid_argument("equidistribution_report: no thresholds");
    std::vector<double> xs(thresholds.begin(), thresholds.end());
    std::sort(xs.begin(), xs.end());
    BallQuery q{group, z0, z1, z0, xs.back()};
    std::vector<OrbitRecord> records = enumerate_ball(q, opt);

    EquidistributionReport rep{group, z0, z1, interval, {}, false, {}};
    for (double x : xs) {
        // Records are sorted by cosh_dist; the sub-ball is a prefix.
        auto end = std::upper_bound(records.begin(), records.end(), x * (1.0 + 1e-12),
                                    [](double v, const OrbitRecord& r) { return v < r.cosh_dist; });
        std::span<const OrbitRecord> sub(records.data(),
                                         static_cast<std::size_t>(end - records.begin()));
        std::size_t total = sub.size();
        std::size_t in_sector = sector_count(sub, interval);
        double err = total == 0 ? 0.0
                                : static_cast<double>(in_sector) / static_cast<double>(total) -
                                      std::min(interval.length, 1.0);
        rep.rows.push_back({x, total, in_sector, err});
    }
    std::vector<std::pair<double, double>> fit_rows;
    for (const auto& row : rep.rows) fit_rows.emplace_back(row.x, row.error);
    try {
        rep.fit = fit_decay_exponent(fit_rows);
        rep.has_fit = true;
    } catch (const std::invalid_argument&) {
        rep.has_fit = false;
    }
    return rep;
}

}  // namespace orbits
