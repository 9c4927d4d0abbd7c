#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "orbits/halfplane.hpp"

namespace orbits {

/// Integer matrix [[a,b],[c,d]] with ad - bc = 1.
struct GroupElement {
    std::int64_t a, b, c, d;

    GroupElement(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t d_)
        : a(a_), b(b_), c(c_), d(d_) {
        if (a * d - b * c != 1)
            throw std::invalid_argument("GroupElement: determinant must be 1");
    }

    GroupElement operator-() const { return GroupElement(-a, -b, -c, -d); }

    friend bool operator==(const GroupElement& x, const GroupElement& y) {
        return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
    }
    friend auto operator<=>(const GroupElement& x, const GroupElement& y) {
        if (auto c0 = x.a <=> y.a; c0 != 0) return c0;
        if (auto c1 = x.b <=> y.b; c1 != 0) return c1;
        if (auto c2 = x.c <=> y.c; c2 != 0) return c2;
        return x.d <=> y.d;
    }
};

inline Point mobius_apply(const GroupElement& g, Point z) {
    return mobius_apply(static_cast<double>(g.a), static_cast<double>(g.b),
                        static_cast<double>(g.c), static_cast<double>(g.d), z);
}

enum class GroupKind { SL2Z, GammaN };

/// Descriptor for SL(2,Z) or a principal congruence subgroup Gamma(N).
struct GroupSpec {
    GroupKind kind;
    int level;  // 1 for SL2Z
    double covolume;
    int kappa;
    bool contains_minus_identity;

    bool contains(const GroupElement& g) const;
    std::string name() const;
};

/// Throws std::invalid_argument for level 0 (or negative).
GroupSpec make_group(GroupKind kind, int level = 1);

/// One orbit point gamma*base, with cosh distance from the query center and
/// the normalized angle seen from the query viewpoint.
struct OrbitRecord {
    GroupElement element;
    Point image;
    double cosh_dist;
    NormalizedAngle omega;
};

/// Enumeration request: all gamma in `group` with
/// cosh d(center, gamma*base) <= cosh_threshold; angles measured from viewpoint.
struct BallQuery {
    GroupSpec group;
    Point center;
    Point base;
    Point viewpoint;
    double cosh_threshold;
};

struct EnumerationOptions {
    std::size_t budget = 50'000'000;
    int threads = 0;  // 0 = hardware concurrency
};

struct BudgetExceeded : std::runtime_error {
    std::size_t budget;
    explicit BudgetExceeded(std::size_t b)
        : std::runtime_error("element budget exceeded (budget = " + std::to_string(b) + ")"),
          budget(b) {}
};

/// All group elements mapping base into the ball, sorted by ascending
/// cosh_dist with ties broken lexicographically on (a,b,c,d).
std::vector<OrbitRecord> enumerate_ball(const BallQuery& q, const EnumerationOptions& opt = {});

/// Exhaustive-scan oracle over |a|,|b|,|c|,|d| <= entry_bound; same contract
/// and output order as enumerate_ball.
std::vector<OrbitRecord> brute_force_ball(const BallQuery& q, std::int64_t entry_bound,
                                          const EnumerationOptions& opt = {});

/// Entry bound guaranteed to cover the ball: from the triangle inequality,
/// a^2+b^2+c^2+d^2 <= 2 cosh(arcosh X + d(i,center) + d(i,base)).
std::int64_t sufficient_entry_bound(const BallQuery& q);

std::size_t count_ball(const BallQuery& q, const EnumerationOptions& opt = {});

/// kappa * 2*pi*X / vol(Gamma\H).
double main_term(const BallQuery& q);

/// Elements with cosh d(center, gamma*base) <= radius_fn(omega(gamma)).
/// The cosh_threshold of q acts as the X_max ball that is enumerated and
/// filtered; radius_fn must be bounded by it.
std::vector<OrbitRecord> enumerate_with_angular_radius(
    const BallQuery& q, const std::function<double(NormalizedAngle)>& radius_fn,
    const EnumerationOptions& opt = {});

}  // namespace orbits
