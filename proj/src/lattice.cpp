#include "orbits/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

namespace orbits {

namespace {

constexpr double kBoundaryTol = 1e-12;
// Images closer than this (in the point-pair invariant) to the viewpoint are
// treated as coincident; genuine distinct orbit points are far above it.
constexpr double kCoincidenceU = 1e-20;

std::int64_t mod_pos(std::int64_t x, std::int64_t n) {
    std::int64_t m = x % n;
    return m < 0 ? m + n : m;
}

// u*c + v*d = gcd(c,d)
void extended_gcd(std::int64_t c, std::int64_t d, std::int64_t& u, std::int64_t& v) {
    std::int64_t old_r = c, r = d;
    std::int64_t old_u = 1, uu = 0;
    std::int64_t old_v = 0, vv = 1;
    while (r != 0) {
        std::int64_t q = old_r / r;
        std::int64_t t;
        t = old_r - q * r; old_r = r; r = t;
        t = old_u - q * uu; old_u = uu; uu = t;
        t = old_v - q * vv; old_v = vv; vv = t;
    }
    if (old_r < 0) { old_u = -old_u; old_v = -old_v; }
    u = old_u;
    v = old_v;
}

bool congruent_to_identity(const GroupElement& g, int n) {
    return mod_pos(g.a - 1, n) == 0 && mod_pos(g.b, n) == 0 && mod_pos(g.c, n) == 0 &&
           mod_pos(g.d - 1, n) == 0;
}

void validate_query(const BallQuery& q) {
    if (!(q.cosh_threshold >= 1.0))
        throw std::invalid_argument("BallQuery: cosh_threshold must be >= 1");
    if (!(q.center.y > 0.0) || !(q.base.y > 0.0) || !(q.viewpoint.y > 0.0))
        throw std::invalid_argument("BallQuery: points must lie in the upper half-plane");
}

NormalizedAngle record_angle(const Point& viewpoint, const Point& image) {
    if (point_pair_invariant(viewpoint, image) <= kCoincidenceU) return NormalizedAngle{0.0};
    return normalized_angle(viewpoint, image);
}

void sort_canonical(std::vector<OrbitRecord>& out) {
    std::sort(out.begin(), out.end(), [](const OrbitRecord& p, const OrbitRecord& r) {
        if (p.cosh_dist != r.cosh_dist) return p.cosh_dist < r.cosh_dist;
        return p.element < r.element;
    });
}

struct BallContext {
    const BallQuery& q;
    double x_tol;            // inclusive membership threshold
    bool integer_membership; // center = base = i: test a^2+b^2+c^2+d^2 <= 2X exactly
    int level;               // 1 for SL2Z
};

// All elements of the ball with bottom row (c,d), appended to out.
// Top rows form the coset a = a0 + t c, b = b0 + t d; gamma*base = w0 + t,
// so membership is a quadratic inequality in the integer t.
void emit_coset(const BallContext& ctx, std::int64_t c, std::int64_t d,
                std::vector<OrbitRecord>& out) {
    const BallQuery& q = ctx.q;
    if (std::gcd(c, d) != 1) return;
    std::int64_t u, v;
    extended_gcd(c, d, u, v);
    std::int64_t a0 = v, b0 = -u;  // a0*d - b0*c = 1

    std::complex<double> zb = q.base.as_complex();
    std::complex<double> den = static_cast<double>(c) * zb + static_cast<double>(d);
    double den2 = std::norm(den);
    double yw = q.base.y / den2;
    std::complex<double> w0 =
        (static_cast<double>(a0) * zb + static_cast<double>(b0)) * std::conj(den) / den2;
    double xw = w0.real();

    // (xw + t - xc)^2 <= 2 yc yw (X - 1) - (yw - yc)^2
    double rhs = 2.0 * q.center.y * yw * (ctx.x_tol - 1.0) -
                 (yw - q.center.y) * (yw - q.center.y);
    if (rhs < 0.0) return;
    double half = std::sqrt(rhs);
    double t_center = q.center.x - xw;
    // Widen by one on each side; every candidate is re-checked below.
    std::int64_t t_lo = static_cast<std::int64_t>(std::ceil(t_center - half)) - 1;
    std::int64_t t_hi = static_cast<std::int64_t>(std::floor(t_center + half)) + 1;

    for (std::int64_t t = t_lo; t <= t_hi; ++t) {
        std::int64_t a = a0 + t * c;
        std::int64_t b = b0 + t * d;
        if (ctx.level > 1 &&
            !(mod_pos(a - 1, ctx.level) == 0 && mod_pos(b, ctx.level) == 0))
            continue;
        Point image(xw + static_cast<double>(t), yw);
        double cosh_dist;
        if (ctx.integer_membership) {
            std::int64_t s2 = a * a + b * b + c * c + d * d;
            if (static_cast<double>(s2) > 2.0 * q.cosh_threshold) continue;
            cosh_dist = static_cast<double>(s2) / 2.0;
        } else {
            cosh_dist = cosh_distance(q.center, image);
            if (cosh_dist > ctx.x_tol) continue;
        }
        out.push_back(OrbitRecord{GroupElement(a, b, c, d), image, cosh_dist,
                                  record_angle(q.viewpoint, image)});
    }
}

}  // namespace

GroupSpec make_group(GroupKind kind, int level) {
    if (kind == GroupKind::SL2Z) level = 1;
    if (level < 1) throw std::invalid_argument("make_group: level must be >= 1");
    GroupSpec g;
    g.kind = kind;
    g.level = level;
    // [SL2Z : Gamma(N)] = N^3 prod_{p|N} (1 - p^-2)
    double index = 1.0;
    int n = level;
    double n3 = static_cast<double>(level) * level * level;
    index = n3;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            index *= 1.0 - 1.0 / (static_cast<double>(p) * p);
            while (n % p == 0) n /= p;
        }
    }
    if (n > 1) index *= 1.0 - 1.0 / (static_cast<double>(n) * n);
    g.contains_minus_identity = (level <= 2);
    g.kappa = g.contains_minus_identity ? 2 : 1;
    // vol(Gamma(N)\H) = (pi/3) * [PSL(2,Z) : image of Gamma(N)].  When -I is
    // not in Gamma(N) the group injects into PSL(2,Z) and the index halves
    // relative to the SL(2,Z) index computed above.
    g.covolume = M_PI / 3.0 * index * (g.contains_minus_identity ? 1.0 : 0.5);
    return g;
}

bool GroupSpec::contains(const GroupElement& g) const {
    if (level <= 1) return true;
    return congruent_to_identity(g, level);
}

std::string GroupSpec::name() const {
    if (kind == GroupKind::SL2Z) return "SL2Z";
    return "Gamma(" + std::to_string(level) + ")";
}

std::vector<OrbitRecord> enumerate_ball(const BallQuery& q, const EnumerationOptions& opt) {
    validate_query(q);
    const double x = q.cosh_threshold;
    BallContext ctx{q, x * (1.0 + kBoundaryTol),
                    q.center == q.base && q.center == Point(0.0, 1.0), q.group.level};

    // Necessary condition: Im(gamma*base) = y_base/|c z_base + d|^2 >= y_center*e^{-R},
    // so |c z_base + d|^2 <= y_base * e^R / y_center.
    const double exp_r = x + std::sqrt(std::max(0.0, x * x - 1.0));
    const double big = q.base.y * exp_r / q.center.y * (1.0 + 1e-9);
    const std::int64_t c_max =
        static_cast<std::int64_t>(std::floor(std::sqrt(big) / q.base.y)) + 1;

    const int level = q.group.level;
    std::vector<std::int64_t> cs;
    for (std::int64_t c = -c_max; c <= c_max; ++c) {
        if (level > 1 && mod_pos(c, level) != 0) continue;
        cs.push_back(c);
    }

    auto run_chunk = [&](std::int64_t c, std::vector<OrbitRecord>& out) {
        double disc = big - static_cast<double>(c) * c * q.base.y * q.base.y;
        if (disc < 0.0) return;
        double half = std::sqrt(disc);
        double d_center = -static_cast<double>(c) * q.base.x;
        std::int64_t d_lo = static_cast<std::int64_t>(std::ceil(d_center - half)) - 1;
        std::int64_t d_hi = static_cast<std::int64_t>(std::floor(d_center + half)) + 1;
        for (std::int64_t d = d_lo; d <= d_hi; ++d) {
            if (level > 1 && mod_pos(d, level) != 1) continue;
            emit_coset(ctx, c, d, out);
        }
    };

    unsigned n_threads = opt.threads > 0 ? static_cast<unsigned>(opt.threads)
                                         : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, 64);

    std::vector<OrbitRecord> result;
    if (n_threads <= 1 || cs.size() < 2) {
        for (std::int64_t c : cs) {
            run_chunk(c, result);
            if (result.size() > opt.budget) throw BudgetExceeded(opt.budget);
        }
    } else {
        // One bucket per c value, claimed dynamically; concatenation in c order
        // keeps the pre-sort sequence independent of scheduling.
        std::vector<std::vector<OrbitRecord>> buckets(cs.size());
        std::atomic<std::size_t> next{0};
        std::atomic<std::size_t> produced{0};
        std::atomic<bool> over_budget{false};
        auto worker = [&] {
            for (;;) {
                std::size_t idx = next.fetch_add(1);
                if (idx >= cs.size() || over_budget.load()) return;
                run_chunk(cs[idx], buckets[idx]);
                if (produced.fetch_add(buckets[idx].size()) + buckets[idx].size() > opt.budget)
                    over_budget.store(true);
            }
        };
        std::vector<std::thread> pool;
        for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
        if (over_budget.load()) throw BudgetExceeded(opt.budget);
        std::size_t total = 0;
        for (const auto& b : buckets) total += b.size();
        result.reserve(total);
        for (auto& b : buckets)
            result.insert(result.end(), b.begin(), b.end());
    }
    if (result.size() > opt.budget) throw BudgetExceeded(opt.budget);
    sort_canonical(result);
    return result;
}

std::int64_t sufficient_entry_bound(const BallQuery& q) {
    Point i(0.0, 1.0);
    double r = std::acosh(std::max(1.0, q.cosh_threshold)) +
               std::acosh(cosh_distance(i, q.center)) + std::acosh(cosh_distance(i, q.base));
    return static_cast<std::int64_t>(std::ceil(std::sqrt(2.0 * std::cosh(r)))) + 1;
}

std::vector<OrbitRecord> brute_force_ball(const BallQuery& q, std::int64_t entry_bound,
                                          const EnumerationOptions& opt) {
    validate_query(q);
    if (entry_bound < 1) throw std::invalid_argument("brute_force_ball: entry_bound must be >= 1");
    const double x_tol = q.cosh_threshold * (1.0 + kBoundaryTol);
    const bool integer_membership =
        q.center == q.base && q.center == Point(0.0, 1.0);
    std::vector<OrbitRecord> result;
    for (std::int64_t a = -entry_bound; a <= entry_bound; ++a)
        for (std::int64_t b = -entry_bound; b <= entry_bound; ++b)
            for (std::int64_t c = -entry_bound; c <= entry_bound; ++c)
                for (std::int64_t d = -entry_bound; d <= entry_bound; ++d) {
                    if (a * d - b * c != 1) continue;
                    GroupElement g(a, b, c, d);
                    if (!q.group.contains(g)) continue;
                    Point image = mobius_apply(g, q.base);
                    double cosh_dist;
                    if (integer_membership) {
                        std::int64_t s2 = a * a + b * b + c * c + d * d;
                        if (static_cast<double>(s2) > 2.0 * q.cosh_threshold) continue;
                        cosh_dist = static_cast<double>(s2) / 2.0;
                    } else {
                        cosh_dist = cosh_distance(q.center, image);
                        if (cosh_dist > x_tol) continue;
                    }
                    result.push_back(
                        OrbitRecord{g, image, cosh_dist, record_angle(q.viewpoint, image)});
                    if (result.size() > opt.budget) throw BudgetExceeded(opt.budget);
                }
    sort_canonical(result);
    return result;
}

std::size_t count_ball(const BallQuery& q, const EnumerationOptions& opt) {
    return enumerate_ball(q, opt).size();
}

double main_term(const BallQuery& q) {
    return q.group.kappa * 2.0 * M_PI * q.cosh_threshold / q.group.covolume;
}

std::vector<OrbitRecord> enumerate_with_angular_radius(
    const BallQuery& q, const std::function<double(NormalizedAngle)>& radius_fn,
    const EnumerationOptions& opt) {
    std::vector<OrbitRecord> all = enumerate_ball(q, opt);
    std::vector<OrbitRecord> result;
    result.reserve(all.size());
    for (const auto& rec : all)
        if (rec.cosh_dist <= radius_fn(rec.omega) * (1.0 + kBoundaryTol))
            result.push_back(rec);
    return result;
}

}  // namespace orbits
