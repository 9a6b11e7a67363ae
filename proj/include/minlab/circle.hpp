#pragma once

#include <cstdint>
#include <vector>

#include "minlab/util.hpp"

namespace minlab::circle {

inline constexpr double kAngleTol = 1e-12;

/** Point on R/Z, stored as its representative in [0, 1). */
class CirclePoint {
  public:
    CirclePoint() = default;
    explicit CirclePoint(double angle) : angle_(mod1(angle)) {}

    double angle() const { return angle_; }

    // Equality at the standard angular tolerance, measured around the circle.
    bool almost_equal(CirclePoint other, double tol = kAngleTol) const {
        return circle_dist(angle_, other.angle_) <= tol;
    }

  private:
    double angle_ = 0.0;
};

inline double distance(CirclePoint a, CirclePoint b) {
    return circle_dist(a.angle(), b.angle());
}

inline CirclePoint rotate(CirclePoint x, double alpha) {
    return CirclePoint(x.angle() + alpha);
}

/**
 * Rigid rotation by alpha. The rotation number is classified as rational
 * p/q (q <= 1e6, |alpha - p/q| < 1e-12) or irrational once, at construction,
 * by continued fractions.
 */
class RotationSystem {
  public:
    explicit RotationSystem(double alpha);

    double alpha() const { return alpha_; }
    bool is_rational() const { return rational_; }
    // Lowest-terms p/q; only meaningful when is_rational().
    long long numerator() const { return p_; }
    long long denominator() const { return q_; }

    CirclePoint apply(CirclePoint x) const { return rotate(x, alpha_); }
    CirclePoint apply_inverse(CirclePoint x) const { return rotate(x, -alpha_); }

  private:
    double alpha_;
    bool rational_ = false;
    long long p_ = 0;
    long long q_ = 1;
};

// First n points x, f(x), ..., f^{n-1}(x). n >= 1.
std::vector<CirclePoint> orbit(const RotationSystem& sys, CirclePoint x0, long long n);

// Largest circular gap left uncovered by the sample: the radius below which
// the sample fails to be eps-dense. Errors on empty input.
double eps_density(const std::vector<CirclePoint>& pts);

// Which side a Cantor point approaches a blown orbit point from. Only
// meaningful when the base angle lies on a blown orbit.
enum class Side { Left, Right };

/**
 * Point of the blown-up (Denjoy) circle: either a point of the surviving
 * Cantor set, addressed by its base angle, or a point inside the interval
 * glued in at orbit position seed_j + k*alpha, addressed by (j, k) and the
 * normalized position s in [0, 1] across the gap.
 */
class DenjoyPoint {
  public:
    static DenjoyPoint cantor(CirclePoint base, Side side = Side::Left) {
        DenjoyPoint p;
        p.base_ = base;
        p.side_ = side;
        return p;
    }
    static DenjoyPoint gap(int seed, int k, double s);

    bool is_gap() const { return is_gap_; }
    CirclePoint base() const { return base_; }
    Side side() const { return side_; }
    int seed() const { return seed_; }
    int k() const { return k_; }
    double s() const { return s_; }

  private:
    bool is_gap_ = false;
    CirclePoint base_;
    Side side_ = Side::Left;
    int seed_ = 0;
    int k_ = 0;
    double s_ = 0.0;
};

/**
 * Geometric gap schedule: gap at orbit position (j, k) gets length
 * scale * 2^{-|k|}, |k| <= depth. scale = 0 requests the default scale,
 * chosen so that the total gap mass over all seeds is 1/2.
 */
struct GapSchedule {
    double scale = 0.0;
    int depth = 64;
};

/**
 * Denjoy blow-up data: an irrational rotation, the seeds whose orbits are
 * blown, and the truncated gap schedule. Gap positions and lengths are
 * precomputed and sorted once for the order-preserving embedding.
 */
class DenjoySystem {
  public:
    double alpha() const { return alpha_; }
    const std::vector<CirclePoint>& seeds() const { return seeds_; }
    int depth() const { return depth_; }
    double scale() const { return scale_; }
    double total_gap() const { return total_gap_; }
    // Certified bound on the gap mass dropped past |k| = depth.
    double tail_bound() const { return tail_bound_; }

    double gap_length(int seed, int k) const;
    // Rotation-orbit angle seed_j + k*alpha that the gap (j, k) replaces.
    CirclePoint gap_anchor(int seed, int k) const;
    // True when the angle coincides (at tolerance) with a stored gap anchor.
    bool on_blown_orbit(CirclePoint x, int* seed = nullptr, int* k = nullptr) const;

    // Sorted-by-angle table used by the embedding; angle measured from seed 0.
    struct GapEntry {
        double offset;  // (anchor - seed_0) mod 1
        int seed;
        int k;
        double length;
        double mass_before;  // total length of gaps with strictly smaller offset
    };
    const std::vector<GapEntry>& gap_table() const { return table_; }

  private:
    friend DenjoySystem denjoy_build(double, const std::vector<CirclePoint>&, const GapSchedule&);
    double alpha_ = 0.0;
    std::vector<CirclePoint> seeds_;
    int depth_ = 0;
    double scale_ = 0.0;
    double total_gap_ = 0.0;
    double tail_bound_ = 0.0;
    std::vector<GapEntry> table_;
};

// Validates alpha (irrational), seeds (distinct orbits to depth K), and the
// schedule (positive scale, total mass < 1, tail below 1e-9 of the total).
DenjoySystem denjoy_build(double alpha, const std::vector<CirclePoint>& seeds,
                          const GapSchedule& schedule = {});

// The blown-up homeomorphism: gap (j,k,s) -> (j,k+1,s), Cantor x -> x+alpha.
// Walking past the stored depth raises a truncation error carrying the tail
// bound certificate.
DenjoyPoint denjoy_map(const DenjoySystem& sys, const DenjoyPoint& p);
DenjoyPoint denjoy_map_inverse(const DenjoySystem& sys, const DenjoyPoint& p);

// Order-preserving embedding of the blown circle back into R/Z, normalized
// to full circumference 1 with the left end of gap (0, 0) at angle 0.
CirclePoint denjoy_embed(const DenjoySystem& sys, const DenjoyPoint& p);

// Factor map collapsing every gap to the rotation-orbit point it replaced.
CirclePoint denjoy_semiconjugacy(const DenjoySystem& sys, const DenjoyPoint& p);

std::vector<DenjoyPoint> orbit(const DenjoySystem& sys, const DenjoyPoint& p0, long long n);

}  // namespace minlab::circle
