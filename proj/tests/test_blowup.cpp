#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "minlab/blowup.hpp"
#include "minlab/errors.hpp"
#include "minlab/util.hpp"

using namespace minlab;
using namespace minlab::blowup;
using minlab::skew::RoofFunction;
using minlab::skew::SkewSystem;
using minlab::skew::TorusPoint;
using minlab::susp::CantorSystem;
using minlab::susp::OdometerWord;
using minlab::susp::SuspensionPoint;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

BaseSystem odometer_base(int word_depth = 8, double t = kGolden, double s0 = 0.25) {
    auto sys = susp::suspend(CantorSystem::odometer(word_depth));
    return BaseSystem::suspension_time_t(sys, t,
                                         SuspensionPoint{OdometerWord{0, word_depth}, s0});
}

BaseSystem golden_skew_base(double amplitude = 0.3) {
    return BaseSystem::skew_product(SkewSystem{kGolden, RoofFunction({{1, amplitude}})},
                                    TorusPoint(0.0, 0.0));
}

bool same_stage_point(const StageSpace& X, const StagePoint& a, const StagePoint& b) {
    if (a.is_fiber() != b.is_fiber()) return false;
    if (a.is_fiber()) {
        if (a.index() != b.index()) return false;
        if (X.fiber_kind() == FiberKind::IntervalU)
            return std::fabs(a.interval_u() - b.interval_u()) < 1e-12;
        return pseudoarc::tower_metric(a.tower(), b.tower()) < 1e-12;
    }
    return X.base().distance(a.base(), b.base()) < 1e-12;
}

}  // namespace

TEST_CASE("blown index sets") {
    BlownIndexSet two{Mode::TwoSided, 8};
    CHECK(index_list(two).size() == 17);
    CHECK(index_in_set(two, 8));
    CHECK(index_in_set(two, -8));
    CHECK_FALSE(index_in_set(two, 9));

    BlownIndexSet back{Mode::BackwardOnly, 4};
    auto list = index_list(back);
    REQUIRE(list.size() == 4);
    CHECK(list.front() == -4);
    CHECK(list.back() == -1);
    CHECK_FALSE(index_in_set(back, 0));
}

TEST_CASE("build_stage caches the orbit and validates its inputs") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);
    for (int i = -9; i <= 9; ++i) CHECK_NOTHROW(X.orbit_point(i));
    CHECK_THROWS_AS(X.orbit_point(10), PreconditionError);

    // Forward and backward caches agree with iterating the base map.
    BasePointVar z = X.base().seed();
    for (int i = 1; i <= 9; ++i) {
        z = X.base().apply(z);
        CHECK(X.base().distance(z, X.orbit_point(i)) < 1e-12);
    }

    CHECK_THROWS_AS(build_stage(odometer_base(), {Mode::TwoSided, 0}, FiberKind::IntervalU),
                    PreconditionError);
    StageOptions bad;
    bad.weight_base = 1.5;
    CHECK_THROWS_AS(
        build_stage(odometer_base(), {Mode::TwoSided, 4}, FiberKind::IntervalU, bad),
        PreconditionError);
}

TEST_CASE("a periodic seed orbit is rejected") {
    auto base = BaseSystem::skew_product(SkewSystem{0.25, RoofFunction()},
                                         TorusPoint(0.0, 0.0));
    CHECK_THROWS_AS(build_stage(base, {Mode::TwoSided, 4}, FiberKind::IntervalU),
                    AperiodicityError);
}

TEST_CASE("stage map shifts fiber indices over a suspension base") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);
    auto q = stage_map(X, StagePoint::fiber(2, 0.3));
    CHECK(q.is_fiber());
    CHECK(q.index() == 3);
    CHECK(q.interval_u() == 0.3);

    // Regular points just follow the base dynamics.
    SuspensionPoint p{OdometerWord{37, 8}, 0.6};
    auto r = stage_map(X, StagePoint::regular(p));
    CHECK_FALSE(r.is_fiber());
    CHECK(X.base().distance(r.base(), X.base().apply(p)) == 0.0);
}

TEST_CASE("the outermost fiber collapses to its orbit point") {
    auto X = build_stage(odometer_base(), {Mode::BackwardOnly, 4}, FiberKind::IntervalU);
    auto a = stage_map(X, StagePoint::fiber(-1, -0.8));
    auto b = stage_map(X, StagePoint::fiber(-1, 0.8));
    CHECK_FALSE(a.is_fiber());
    CHECK_FALSE(b.is_fiber());
    CHECK(X.base().distance(a.base(), X.orbit_point(0)) == 0.0);
    CHECK(X.base().distance(a.base(), b.base()) == 0.0);

    // The collapse target is an ordinary regular point afterwards.
    CHECK_NOTHROW(stage_map(X, a));

    auto Y = build_stage(odometer_base(), {Mode::TwoSided, 4}, FiberKind::IntervalU);
    auto c = stage_map(Y, StagePoint::fiber(4, 0.1));
    CHECK_FALSE(c.is_fiber());
    CHECK(Y.base().distance(c.base(), Y.orbit_point(5)) == 0.0);
}

TEST_CASE("regular points on the blown orbit must be addressed as fibers") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);
    CHECK_THROWS_AS(stage_map(X, StagePoint::regular(X.orbit_point(2))),
                    ChartSingularityError);
    CHECK_THROWS_AS(stage_metric(X, StagePoint::regular(X.orbit_point(0)),
                                 StagePoint::fiber(0, 0.0)),
                    ChartSingularityError);
    CHECK_THROWS_AS(StagePoint::fiber(0, 1.5), PreconditionError);
    CHECK_THROWS_AS(stage_map(X, StagePoint::fiber(9, 0.0)), PreconditionError);
}

TEST_CASE("skew transitions transport the arc coordinate by the derivative") {
    auto X = build_stage(golden_skew_base(0.3), {Mode::TwoSided, 4}, FiberKind::IntervalU);

    auto vert = stage_map(X, StagePoint::fiber(0, 1.0));
    CHECK(vert.index() == 1);
    CHECK(vert.interval_u() == 1.0);

    auto q = stage_map(X, StagePoint::fiber(0, 0.25));
    double x0 = std::get<TorusPoint>(X.orbit_point(0)).x;
    double expected =
        skew::slope_transport(X.base().skew_system(), x0, skew::Direction(0.25)).u();
    CHECK(q.interval_u() == doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("projection semiconjugates the stage map to the base map") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 6}, FiberKind::IntervalU);

    CHECK(X.base().distance(stage_project(X, StagePoint::fiber(-3, 0.9)),
                            X.orbit_point(-3)) == 0.0);

    for (int i = -6; i <= 6; ++i) {
        StagePoint p = StagePoint::fiber(i, 0.4);
        BasePointVar lhs = stage_project(X, stage_map(X, p));
        BasePointVar rhs = X.base().apply(stage_project(X, p));
        CHECK(X.base().distance(lhs, rhs) < 1e-9);
    }

    SplitMix64 rng(0x5eed);
    for (int trial = 0; trial < 10000; ++trial) {
        SuspensionPoint p{OdometerWord{static_cast<std::uint32_t>(rng.below(256)), 8},
                          rng.uniform()};
        bool clear = true;
        for (int i = -6; i <= 6; ++i)
            if (X.base().distance(p, X.orbit_point(i)) <= 1e-12) clear = false;
        if (!clear) continue;
        StagePoint sp = StagePoint::regular(p);
        CHECK(X.base().distance(stage_project(X, stage_map(X, sp)),
                                X.base().apply(p)) < 1e-9);
    }
}

TEST_CASE("refinement collapses exactly the outermost fibers") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 5}, FiberKind::IntervalU);

    auto top = stage_refine(X, StagePoint::fiber(5, 0.3));
    CHECK_FALSE(top.is_fiber());
    CHECK(X.base().distance(top.base(), X.orbit_point(5)) == 0.0);

    auto low = stage_refine(X, StagePoint::fiber(-5, 0.3));
    CHECK_FALSE(low.is_fiber());

    auto keep = stage_refine(X, StagePoint::fiber(2, 0.3));
    CHECK(keep.is_fiber());
    CHECK(keep.index() == 2);
    CHECK(keep.interval_u() == 0.3);

    // Refining commutes with the dynamics wherever neither side collapses.
    for (int i = -3; i <= 3; ++i) {
        StagePoint p = StagePoint::fiber(i, 0.7);
        auto lhs = stage_refine(X, stage_map(X, p));
        auto rhs = stage_map(X, stage_refine(X, p));
        CHECK(same_stage_point(X, lhs, rhs));
    }
}

TEST_CASE("direction coordinate separates flow from transverse displacement") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);
    auto z0 = std::get<SuspensionPoint>(X.orbit_point(0));

    // Pure flow displacement.
    SuspensionPoint flow_q{z0.base, z0.s + 0.01};
    CHECK(direction_coordinate(X, 0, flow_q) == doctest::Approx(1.0).epsilon(1e-12));
    SuspensionPoint flow_back{z0.base, z0.s - 0.01};
    CHECK(direction_coordinate(X, 0, flow_back) == doctest::Approx(-1.0).epsilon(1e-12));

    // Pure transverse displacement: flip a high word bit, keep the time.
    SuspensionPoint side{OdometerWord{128, 8}, z0.s};
    CHECK(direction_coordinate(X, 0, side) == 0.0);

    // Mixed 3-4-5 displacement lands at 3/5.
    SuspensionPoint mixed{OdometerWord{128, 8}, z0.s + 0.75 * std::pow(2.0, -7)};
    CHECK(direction_coordinate(X, 0, mixed) == doctest::Approx(0.6).epsilon(1e-14));

    // Taper: halfway through the collar the value halves; outside it vanishes.
    SuspensionPoint collar{z0.base, z0.s + 0.075};
    CHECK(direction_coordinate(X, 0, collar) == doctest::Approx(0.5).epsilon(1e-12));
    SuspensionPoint far{z0.base, z0.s + 0.15};
    CHECK(direction_coordinate(X, 0, far) == 0.0);

    CHECK_THROWS_AS(direction_coordinate(X, 0, X.orbit_point(0)), UndefinedDirectionError);
}

TEST_CASE("stage metric on fibers and far regular points") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);

    CHECK(stage_metric(X, StagePoint::fiber(0, -0.25), StagePoint::fiber(0, 0.75)) ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(stage_metric(X, StagePoint::fiber(3, -1.0), StagePoint::fiber(3, 1.0)) ==
          doctest::Approx(0.25).epsilon(1e-15));

    SplitMix64 rng(0xbee);
    for (int trial = 0; trial < 200; ++trial) {
        StagePoint a = StagePoint::fiber(static_cast<int>(rng.below(17)) - 8,
                                         rng.uniform() * 2.0 - 1.0);
        StagePoint b = StagePoint::fiber(static_cast<int>(rng.below(17)) - 8,
                                         rng.uniform() * 2.0 - 1.0);
        CHECK(stage_metric(X, a, b) == doctest::Approx(stage_metric(X, b, a)).epsilon(1e-15));
    }

    // Regular points clear of every chart collar see the base distance alone.
    SuspensionPoint p{OdometerWord{77, 8}, 0.5};
    SuspensionPoint q{OdometerWord{77, 8}, 0.62};
    bool clear = true;
    for (int i = -8; i <= 8; ++i) {
        if (X.base().distance(p, X.orbit_point(i)) < 3 * X.options().chart_radius)
            clear = false;
        if (X.base().distance(q, X.orbit_point(i)) < 3 * X.options().chart_radius)
            clear = false;
    }
    REQUIRE(clear);
    CHECK(stage_metric(X, StagePoint::regular(p), StagePoint::regular(q)) ==
          doctest::Approx(X.base().distance(p, q)).epsilon(1e-15));
}

TEST_CASE("fiber diameters follow the weight sequence") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);
    CHECK(fiber_diameter(X, 0) == 2.0);
    CHECK(fiber_diameter(X, 3) == 0.25);
    CHECK(fiber_diameter(X, -3) == 0.25);
    for (int i = 1; i <= 8; ++i) CHECK(fiber_diameter(X, i) < fiber_diameter(X, i - 1));
    CHECK_THROWS_AS(fiber_diameter(X, 9), PreconditionError);

    // Walking a fiber k steps moves the diameter along the same sequence.
    StagePoint p = StagePoint::fiber(-8, 0.0);
    for (int k = 1; k <= 16; ++k) {
        p = stage_map(X, p);
        CHECK(p.index() == -8 + k);
        CHECK(fiber_diameter(X, p.index()) == 2.0 * std::pow(0.5, std::abs(-8 + k)));
    }
}

TEST_CASE("interval fibers ride suspension transitions isometrically") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 6}, FiberKind::IntervalU);
    SplitMix64 rng(0x77);
    for (int trial = 0; trial < 500; ++trial) {
        double u1 = rng.uniform() * 2.0 - 1.0;
        double u2 = rng.uniform() * 2.0 - 1.0;
        auto a = stage_map(X, StagePoint::fiber(2, u1));
        auto b = stage_map(X, StagePoint::fiber(2, u2));
        CHECK(std::fabs(a.interval_u() - b.interval_u()) ==
              doctest::Approx(std::fabs(u1 - u2)).epsilon(1e-15));
    }
}

TEST_CASE("backward-only stages admit a noninvertibility witness") {
    auto X = build_stage(odometer_base(), {Mode::BackwardOnly, 4}, FiberKind::IntervalU);
    auto w = noninvertibility_witness(X);
    CHECK(w.separation == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(w.imageDistance == 0.0);
    CHECK(same_stage_point(X, stage_map(X, w.a), stage_map(X, w.b)));

    auto Y = build_stage(odometer_base(), {Mode::TwoSided, 4}, FiberKind::IntervalU);
    CHECK_THROWS_AS(noninvertibility_witness(Y), ModeError);
}

TEST_CASE("regular base points have singleton preimages almost surely") {
    auto X = build_stage(odometer_base(), {Mode::TwoSided, 8}, FiberKind::IntervalU);
    std::vector<double> thresholds;
    for (int n = 1; n <= 10; ++n) thresholds.push_back(1.0 / n);
    auto rep = almost_one_to_one_report(X, 10000, thresholds, 0x5eed);

    CHECK(rep.samples == 10000);
    CHECK(rep.singletonFraction == 1.0);

    // Closed form: fibers with diameter 2 w^{|i|} under the threshold.
    std::vector<long long> expected;
    for (int n = 1; n <= 10; ++n) {
        long long count = 0;
        for (int i = -8; i <= 8; ++i)
            if (2.0 * std::pow(0.5, std::abs(i)) < 1.0 / n) ++count;
        expected.push_back(count);
    }
    CHECK(rep.fibersBelow == expected);
    CHECK(expected == std::vector<long long>{14, 12, 12, 10, 10, 10, 10, 8, 8, 8});
}

TEST_CASE("skew stage images converge to the transported fiber coordinate") {
    auto X = build_stage(golden_skew_base(0.3), {Mode::TwoSided, 4}, FiberKind::IntervalU);
    auto z0 = std::get<TorusPoint>(X.orbit_point(0));

    double u = 0.25;
    double theta = u * 3.14159265358979323846 / 2.0;
    double u_next = skew::slope_transport(X.base().skew_system(), z0.x,
                                          skew::Direction(u)).u();
    StagePoint target = StagePoint::fiber(1, u_next);

    double prev = 1e9;
    for (double rho : {1e-2, 1e-3, 1e-4}) {
        TorusPoint q(z0.x + rho * std::cos(theta), z0.y + rho * std::sin(theta));
        double d = stage_metric(X, stage_map(X, StagePoint::regular(q)), target);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("tower fibers carry crooked coordinates through the stage map") {
    StageOptions opts;
    opts.tower_level = 2;
    opts.tower_depth = 3;
    auto X = build_stage(odometer_base(), {Mode::BackwardOnly, 4}, FiberKind::TowerT, opts);
    CHECK(X.bonding().xs.size() == 15);

    pseudoarc::Tower zero{{0.0, 0.0, 0.0}};
    auto p = stage_map(X, StagePoint::fiber(-3, zero));
    CHECK(p.is_fiber());
    CHECK(p.index() == -2);
    CHECK(pseudoarc::tower_metric(p.tower(), zero) == 0.0);

    // Inconsistent towers are rejected at the door.
    pseudoarc::Tower bad{{0.9, 0.2, 0.2}};
    CHECK_THROWS_AS(stage_map(X, StagePoint::fiber(-3, bad)), PreconditionError);

    auto w = noninvertibility_witness(X);
    CHECK(w.separation == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(w.imageDistance == 0.0);
}
