#pragma once

#include <utility>
#include <vector>

#include "minlab/util.hpp"

namespace minlab::skew {

/** Point of the flat torus R^2/Z^2, both coordinates reduced to [0, 1). */
struct TorusPoint {
    double x = 0.0;
    double y = 0.0;
    TorusPoint() = default;
    TorusPoint(double x_, double y_) : x(mod1(x_)), y(mod1(y_)) {}
};

// Euclidean distance on the flat torus.
inline double torus_distance(TorusPoint a, TorusPoint b) {
    double dx = circle_dist(a.x, b.x);
    double dy = circle_dist(a.y, b.y);
    return std::sqrt(dx * dx + dy * dy);
}

/**
 * Finite sine series r(x) = sum a_k sin(2 pi m_k x) with distinct integer
 * frequencies. Odd frequencies give r(x + 1/2) = -r(x) identically, the
 * symmetry the Klein quotient needs; even frequencies are representable so
 * that the quotient's own symmetry check has something to reject.
 */
class RoofFunction {
  public:
    RoofFunction() = default;  // identically zero roof
    explicit RoofFunction(std::vector<std::pair<int, double>> harmonics);

    const std::vector<std::pair<int, double>>& harmonics() const { return harmonics_; }
    bool all_frequencies_odd() const;
    // Sum of |a_k| * 2 pi m_k, a uniform bound on |r'|.
    double derivative_bound() const { return derivative_bound_; }

  private:
    std::vector<std::pair<int, double>> harmonics_;
    double derivative_bound_ = 0.0;
};

double roof_eval(const RoofFunction& r, double x);
double roof_derivative(const RoofFunction& r, double x);

// Largest residual |r(x + 1/2) + r(x)| over a 128-point grid.
double half_turn_antisymmetry_residual(const RoofFunction& r);

/** Skew product F(x, y) = (x + alpha, y + r(x)) on the torus. */
struct SkewSystem {
    double alpha = 0.0;
    RoofFunction roof;
};

TorusPoint skew_apply(const SkewSystem& F, TorusPoint p);
// Explicit inverse (x - alpha, y - r(x - alpha)).
TorusPoint skew_apply_inverse(const SkewSystem& F, TorusPoint p);

/**
 * Direction through the origin, coordinatized by the arc parameter
 * u = (2/pi) arctan(slope) in [-1, 1]. The endpoints u = -1 and u = +1 both
 * denote the vertical line but are kept distinct: the parameter space is an
 * arc, not a circle.
 */
class Direction {
  public:
    Direction() = default;
    explicit Direction(double u);
    static Direction from_slope(double beta) {
        return Direction((2.0 / kPi) * std::atan(beta));
    }

    double u() const { return u_; }
    bool is_vertical() const { return u_ == 1.0 || u_ == -1.0; }
    // Finite slope tan(u pi / 2); only valid when not vertical.
    double slope() const { return std::tan(u_ * kPi / 2.0); }

  private:
    static constexpr double kPi = 3.141592653589793238462643383279502884;
    double u_ = 0.0;
};

// Derivative action of F on directions at base coordinate x: vertical lines
// are fixed, finite slopes shift by r'(x).
Direction slope_transport(const SkewSystem& F, double x, Direction d);

/** Torus point in the canonical fundamental domain x in [0, 1/2) for the
 *  relation (x, y) ~ (x + 1/2, 1 - y). */
struct KleinPoint {
    TorusPoint rep;
};

KleinPoint klein_project(TorusPoint p);
// The non-identity relation image of p.
TorusPoint klein_partner(TorusPoint p);
// Distance on the quotient: minimum over relation images.
double klein_distance(KleinPoint a, KleinPoint b);

// Map induced by F on the quotient. Rejects roofs whose half-turn
// antisymmetry residual exceeds 1e-12 on the 128-point grid.
KleinPoint klein_induced(const SkewSystem& F, KleinPoint q);

}  // namespace minlab::skew
