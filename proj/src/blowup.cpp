#include "minlab/blowup.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "minlab/errors.hpp"
#include "minlab/util.hpp"

namespace minlab::blowup {

bool index_in_set(const BlownIndexSet& s, int i) {
    if (s.mode == Mode::TwoSided) return i >= -s.n && i <= s.n;
    return i >= -s.n && i <= -1;
}

std::vector<int> index_list(const BlownIndexSet& s) {
    std::vector<int> out;
    int hi = s.mode == Mode::TwoSided ? s.n : -1;
    for (int i = -s.n; i <= hi; ++i) out.push_back(i);
    return out;
}

BaseSystem BaseSystem::suspension_time_t(susp::SuspensionSystem sys, double t,
                                         susp::SuspensionPoint seed) {
    if (!(t > 0.0)) throw PreconditionError("base system: need t > 0");
    BaseSystem b;
    b.kind_ = Kind::SuspensionTimeT;
    b.susp_ = std::move(sys);
    b.t_ = t;
    b.susp_.base().validate(seed.base);
    b.seed_ = seed;
    return b;
}

BaseSystem BaseSystem::skew_product(skew::SkewSystem F, skew::TorusPoint seed) {
    BaseSystem b;
    b.kind_ = Kind::Skew;
    b.skew_ = std::move(F);
    b.seed_ = seed;
    return b;
}

BasePointVar BaseSystem::apply(const BasePointVar& p) const {
    if (kind_ == Kind::SuspensionTimeT)
        return susp::flow(susp_, std::get<susp::SuspensionPoint>(p), t_);
    return skew::skew_apply(skew_, std::get<skew::TorusPoint>(p));
}

BasePointVar BaseSystem::apply_inverse(const BasePointVar& p) const {
    if (kind_ == Kind::SuspensionTimeT)
        return susp::flow(susp_, std::get<susp::SuspensionPoint>(p), -t_);
    return skew::skew_apply_inverse(skew_, std::get<skew::TorusPoint>(p));
}

double BaseSystem::distance(const BasePointVar& a, const BasePointVar& b) const {
    if (kind_ == Kind::SuspensionTimeT)
        return susp::suspension_metric(susp_, std::get<susp::SuspensionPoint>(a),
                                       std::get<susp::SuspensionPoint>(b));
    return skew::torus_distance(std::get<skew::TorusPoint>(a),
                                std::get<skew::TorusPoint>(b));
}

StagePoint StagePoint::regular(BasePointVar q) {
    StagePoint p;
    p.is_fiber_ = false;
    p.base_ = std::move(q);
    return p;
}

StagePoint StagePoint::fiber(int index, double u) {
    if (u < -1.0 || u > 1.0)
        throw PreconditionError("fiber coordinate must lie in [-1,1]");
    StagePoint p;
    p.is_fiber_ = true;
    p.index_ = index;
    p.coord_ = u;
    return p;
}

StagePoint StagePoint::fiber(int index, pseudoarc::Tower t) {
    StagePoint p;
    p.is_fiber_ = true;
    p.index_ = index;
    p.coord_ = std::move(t);
    return p;
}

double StageSpace::weight(int i) const {
    return std::pow(opts_.weight_base, std::abs(i));
}

const BasePointVar& StageSpace::orbit_point(int i) const {
    int off = i + indices_.n + 1;
    if (off < 0 || off >= static_cast<int>(orbit_.size()))
        throw PreconditionError("orbit point index outside the cached range");
    return orbit_[static_cast<size_t>(off)];
}

StageSpace build_stage(BaseSystem base, BlownIndexSet indices, FiberKind kind,
                       StageOptions opts) {
    if (indices.n < 1) throw PreconditionError("build_stage: need n >= 1");
    if (!(opts.weight_base > 0.0 && opts.weight_base < 1.0))
        throw PreconditionError("build_stage: weight base must lie in (0,1)");
    if (!(opts.chart_radius > 0.0))
        throw PreconditionError("build_stage: chart radius must be positive");
    if (kind == FiberKind::TowerT && opts.tower_depth < 1)
        throw PreconditionError("build_stage: tower depth must be >= 1");

    int n = indices.n;
    std::vector<BasePointVar> orbit(static_cast<size_t>(2 * n + 3));
    orbit[static_cast<size_t>(n + 1)] = base.seed();
    for (int i = 1; i <= n + 1; ++i)
        orbit[static_cast<size_t>(n + 1 + i)] =
            base.apply(orbit[static_cast<size_t>(n + i)]);
    for (int i = -1; i >= -(n + 1); --i)
        orbit[static_cast<size_t>(n + 1 + i)] =
            base.apply_inverse(orbit[static_cast<size_t>(n + 2 + i)]);

    for (size_t a = 0; a < orbit.size(); ++a)
        for (size_t b = a + 1; b < orbit.size(); ++b)
            if (base.distance(orbit[a], orbit[b]) <= 1e-9) {
                char buf[128];
                std::snprintf(buf, sizeof buf,
                              "build_stage: orbit points %d and %d collide; "
                              "the seed orbit must be aperiodic out to the max index",
                              static_cast<int>(a) - n - 1, static_cast<int>(b) - n - 1);
                throw AperiodicityError(buf);
            }

    StageSpace X(std::move(base), indices, kind, opts);
    X.orbit_ = std::move(orbit);
    if (kind == FiberKind::TowerT) X.bonding_ = pseudoarc::crooked_map(opts.tower_level);
    return X;
}

namespace {

void validate_point(const StageSpace& X, const StagePoint& p) {
    if (p.is_fiber()) {
        if (!index_in_set(X.index_set(), p.index()))
            throw PreconditionError("stage point: fiber index outside the blown set");
        if (X.fiber_kind() == FiberKind::IntervalU) {
            if (!std::holds_alternative<double>(p.coord()))
                throw PreconditionError("stage point: expected an interval coordinate");
        } else {
            const auto* t = std::get_if<pseudoarc::Tower>(&p.coord());
            if (!t) throw PreconditionError("stage point: expected a tower coordinate");
            if (static_cast<int>(t->coords.size()) != X.options().tower_depth)
                throw PreconditionError("stage point: tower depth mismatch");
            if (!pseudoarc::tower_check(X.bonding(), *t))
                throw PreconditionError("stage point: tower is not backward-consistent");
        }
        return;
    }
    for (int i : index_list(X.index_set()))
        if (X.base().distance(p.base(), X.orbit_point(i)) <= 1e-12)
            throw ChartSingularityError(
                "regular point coincides with blown orbit point; address the fiber "
                "explicitly");
}

// Interval transition along one index step: identity over a suspension base,
// the derivative shift u -> arc(slope(u) + r'(x_i)) over a skew base.
double transport_u(const StageSpace& X, int i, double u) {
    if (X.base().kind() == BaseSystem::Kind::SuspensionTimeT) return u;
    skew::Direction d(u);
    double x_i = std::get<skew::TorusPoint>(X.orbit_point(i)).x;
    return skew::slope_transport(X.base().skew_system(), x_i, d).u();
}

}  // namespace

StagePoint stage_map(const StageSpace& X, const StagePoint& p) {
    validate_point(X, p);
    if (!p.is_fiber()) return StagePoint::regular(X.base().apply(p.base()));
    int next = p.index() + 1;
    if (!index_in_set(X.index_set(), next))
        return StagePoint::regular(X.orbit_point(next));
    if (X.fiber_kind() == FiberKind::IntervalU)
        return StagePoint::fiber(next, transport_u(X, p.index(), p.interval_u()));
    return StagePoint::fiber(next, p.tower());
}

BasePointVar stage_project(const StageSpace& X, const StagePoint& p) {
    if (p.is_fiber()) return X.orbit_point(p.index());
    return p.base();
}

StagePoint stage_refine(const StageSpace& X, const StagePoint& p) {
    validate_point(X, p);
    if (!p.is_fiber()) return p;
    if (std::abs(p.index()) == X.index_set().n)
        return StagePoint::regular(X.orbit_point(p.index()));
    return p;
}

double direction_coordinate(const StageSpace& X, int i, const BasePointVar& q) {
    const BasePointVar& z = X.orbit_point(i);
    double rho, raw;
    if (X.base().kind() == BaseSystem::Kind::SuspensionTimeT) {
        const auto& qs = std::get<susp::SuspensionPoint>(q);
        const auto& zs = std::get<susp::SuspensionPoint>(z);
        const auto& h = X.base().suspension().base();
        double diff = qs.s - zs.s;
        double dt = signed_mod1(diff);
        long long wraps = std::llround(diff - dt);
        double transverse = h.distance(h.advance(qs.base, wraps), zs.base);
        rho = std::sqrt(dt * dt + transverse * transverse);
        if (rho <= 1e-12)
            throw UndefinedDirectionError(
                "direction_coordinate: point sits on the blown orbit point");
        raw = dt / rho;
    } else {
        const auto& qt = std::get<skew::TorusPoint>(q);
        const auto& zt = std::get<skew::TorusPoint>(z);
        double dx = signed_mod1(qt.x - zt.x);
        double dy = signed_mod1(qt.y - zt.y);
        rho = std::sqrt(dx * dx + dy * dy);
        if (rho <= 1e-12)
            throw UndefinedDirectionError(
                "direction_coordinate: point sits on the blown orbit point");
        raw = dx == 0.0 ? 1.0 : skew::Direction::from_slope(dy / dx).u();
    }
    double R = X.options().chart_radius;
    if (rho >= 2.0 * R) return 0.0;
    if (rho <= R) return raw;
    return raw * (2.0 * R - rho) / R;
}

namespace {

// Scalar coordinate used in the metric's per-index term when the point is
// not a fiber point of that index.
double chi(const StageSpace& X, int i, const StagePoint& p) {
    if (p.is_fiber() && p.index() == i) {
        if (X.fiber_kind() == FiberKind::IntervalU) return p.interval_u();
        return 2.0 * p.tower().coords[0] - 1.0;
    }
    return direction_coordinate(X, i, stage_project(X, p));
}

}  // namespace

double stage_metric(const StageSpace& X, const StagePoint& a, const StagePoint& b) {
    validate_point(X, a);
    validate_point(X, b);
    double d = X.base().distance(stage_project(X, a), stage_project(X, b));
    for (int i : index_list(X.index_set())) {
        bool a_here = a.is_fiber() && a.index() == i;
        bool b_here = b.is_fiber() && b.index() == i;
        double term;
        if (a_here && b_here) {
            if (X.fiber_kind() == FiberKind::IntervalU)
                term = std::fabs(a.interval_u() - b.interval_u());
            else
                term = pseudoarc::tower_metric(a.tower(), b.tower());
        } else if (!a_here && !b_here && a.is_fiber() && b.is_fiber() &&
                   a.index() == b.index()) {
            term = 0.0;  // same projection, chi values cancel
        } else {
            term = std::fabs(chi(X, i, a) - chi(X, i, b));
        }
        d += X.weight(i) * term;
    }
    return d;
}

double fiber_diameter(const StageSpace& X, int i) {
    if (!index_in_set(X.index_set(), i))
        throw PreconditionError("fiber_diameter: index outside the blown set");
    return 2.0 * X.weight(i);
}

NoninvertibilityWitness noninvertibility_witness(const StageSpace& X) {
    if (X.index_set().mode != Mode::BackwardOnly)
        throw ModeError(
            "noninvertibility_witness: the two-sided stage map is invertible; "
            "use backward-only mode");
    NoninvertibilityWitness w{StagePoint::fiber(-1, -0.5), StagePoint::fiber(-1, 0.5)};
    if (X.fiber_kind() == FiberKind::TowerT) {
        pseudoarc::Tower lo, hi;
        lo.coords.assign(static_cast<size_t>(X.options().tower_depth), 0.0);
        hi.coords.assign(static_cast<size_t>(X.options().tower_depth), 1.0);
        w.a = StagePoint::fiber(-1, lo);
        w.b = StagePoint::fiber(-1, hi);
    }
    w.separation = stage_metric(X, w.a, w.b);
    w.imageDistance = stage_metric(X, stage_map(X, w.a), stage_map(X, w.b));
    return w;
}

AlmostOneToOneReport almost_one_to_one_report(const StageSpace& X, long long sampleCount,
                                              const std::vector<double>& thresholds,
                                              std::uint64_t seed) {
    if (sampleCount < 1)
        throw PreconditionError("almost_one_to_one_report: need at least one sample");
    AlmostOneToOneReport rep;
    rep.samples = sampleCount;
    rep.thresholds = thresholds;
    SplitMix64 rng(seed);
    for (long long s = 0; s < sampleCount; ++s) {
        BasePointVar q;
        if (X.base().kind() == BaseSystem::Kind::SuspensionTimeT) {
            const auto& h = X.base().suspension().base();
            susp::BasePoint bp;
            if (h.kind() == susp::CantorSystem::Kind::Odometer)
                bp = susp::OdometerWord{
                    static_cast<std::uint32_t>(rng.below(1ull << h.word_depth())),
                    h.word_depth()};
            else
                bp = circle::DenjoyPoint::cantor(circle::CirclePoint(rng.uniform()));
            q = susp::SuspensionPoint{bp, rng.uniform()};
        } else {
            q = skew::TorusPoint(rng.uniform(), rng.uniform());
        }
        bool singleton = true;
        for (int i : index_list(X.index_set()))
            if (X.base().distance(q, X.orbit_point(i)) <= 1e-12) singleton = false;
        if (singleton) rep.singletonHits += 1;
    }
    rep.singletonFraction =
        static_cast<double>(rep.singletonHits) / static_cast<double>(rep.samples);
    for (double thr : thresholds) {
        long long count = 0;
        for (int i : index_list(X.index_set()))
            if (fiber_diameter(X, i) < thr) count += 1;
        rep.fibersBelow.push_back(count);
    }
    return rep;
}

}  // namespace minlab::blowup
