#include "minlab/skew.hpp"

#include <cmath>
#include <cstdio>

#include "minlab/errors.hpp"

namespace minlab::skew {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

RoofFunction::RoofFunction(std::vector<std::pair<int, double>> harmonics)
    : harmonics_(std::move(harmonics)) {
    for (size_t i = 0; i < harmonics_.size(); ++i) {
        if (harmonics_[i].first < 1)
            throw PreconditionError("roof: frequencies must be positive integers");
        for (size_t j = i + 1; j < harmonics_.size(); ++j)
            if (harmonics_[i].first == harmonics_[j].first)
                throw PreconditionError("roof: duplicate frequency");
        derivative_bound_ +=
            std::fabs(harmonics_[i].second) * kTwoPi * harmonics_[i].first;
    }
}

bool RoofFunction::all_frequencies_odd() const {
    for (const auto& [m, a] : harmonics_)
        if (m % 2 == 0) return false;
    return true;
}

double roof_eval(const RoofFunction& r, double x) {
    double sum = 0.0;
    for (const auto& [m, a] : r.harmonics()) sum += a * std::sin(kTwoPi * m * x);
    return sum;
}

double roof_derivative(const RoofFunction& r, double x) {
    double sum = 0.0;
    for (const auto& [m, a] : r.harmonics())
        sum += a * kTwoPi * m * std::cos(kTwoPi * m * x);
    return sum;
}

double half_turn_antisymmetry_residual(const RoofFunction& r) {
    double worst = 0.0;
    for (int i = 0; i < 128; ++i) {
        double x = i / 128.0;
        double res = std::fabs(roof_eval(r, x + 0.5) + roof_eval(r, x));
        if (res > worst) worst = res;
    }
    return worst;
}

TorusPoint skew_apply(const SkewSystem& F, TorusPoint p) {
    return TorusPoint(p.x + F.alpha, p.y + roof_eval(F.roof, p.x));
}

TorusPoint skew_apply_inverse(const SkewSystem& F, TorusPoint p) {
    double x_prev = mod1(p.x - F.alpha);
    return TorusPoint(x_prev, p.y - roof_eval(F.roof, x_prev));
}

Direction::Direction(double u) : u_(u) {
    if (u < -1.0 || u > 1.0)
        throw PreconditionError("direction: arc coordinate must lie in [-1,1]");
}

Direction slope_transport(const SkewSystem& F, double x, Direction d) {
    if (d.is_vertical()) return d;
    return Direction::from_slope(d.slope() + roof_derivative(F.roof, x));
}

TorusPoint klein_partner(TorusPoint p) {
    return TorusPoint(p.x + 0.5, 1.0 - p.y);
}

KleinPoint klein_project(TorusPoint p) {
    if (p.x >= 0.5) return KleinPoint{klein_partner(p)};
    return KleinPoint{p};
}

double klein_distance(KleinPoint a, KleinPoint b) {
    double d = torus_distance(a.rep, b.rep);
    double d2 = torus_distance(a.rep, klein_partner(b.rep));
    return d < d2 ? d : d2;
}

KleinPoint klein_induced(const SkewSystem& F, KleinPoint q) {
    double res = half_turn_antisymmetry_residual(F.roof);
    if (res > 1e-12) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "klein_induced: roof breaks r(x+1/2) = -r(x), residual %.3g",
                      res);
        throw EquivarianceError(buf);
    }
    return klein_project(skew_apply(F, q.rep));
}

}  // namespace minlab::skew
