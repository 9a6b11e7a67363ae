#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "minlab/errors.hpp"
#include "minlab/pseudoarc.hpp"

using namespace minlab;
using namespace minlab::pseudoarc;

namespace {

// Monotone laps of a piecewise-linear map whose closed value range contains y
// strictly in its interior. Each such lap crosses level y exactly once, so
// for generic y the lap count equals the preimage count.
int laps_covering(const BondingMap& g, double y) {
    std::vector<std::pair<double, double>> laps;
    size_t i = 0;
    while (i + 1 < g.ys.size()) {
        size_t j = i + 1;
        bool up = g.ys[j] > g.ys[i];
        while (j + 1 < g.ys.size() && (g.ys[j + 1] > g.ys[j]) == up &&
               g.ys[j + 1] != g.ys[j]) {
            ++j;
        }
        laps.emplace_back(std::min(g.ys[i], g.ys[j]), std::max(g.ys[i], g.ys[j]));
        i = j;
    }
    int count = 0;
    for (auto [lo, hi] : laps) {
        if (lo < y && y < hi) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("crooked walk breakpoint counts grow strictly with the level") {
    size_t prev = 0;
    for (int level = 1; level <= 5; ++level) {
        BondingMap g = crooked_map(level);
        REQUIRE(g.xs.size() == g.ys.size());
        CHECK(g.xs.size() > prev);
        prev = g.xs.size();
        CHECK(g.ys.front() == 0.0);
        CHECK(g.ys.back() == 1.0);
        for (size_t i = 1; i < g.xs.size(); ++i) CHECK(g.xs[i] > g.xs[i - 1]);
    }
    CHECK(crooked_map(2).xs.size() == 15);
    CHECK_THROWS_AS(crooked_map(0), PreconditionError);
}

TEST_CASE("crooked_map(level) is 1/level crooked") {
    CHECK(is_delta_crooked(crooked_map(1), 1.0));
    CHECK(is_delta_crooked(crooked_map(2), 0.5));
    CHECK(is_delta_crooked(crooked_map(3), 1.0 / 3.0));
}

TEST_CASE("the identity is only vacuously crooked") {
    BondingMap id = identity_map();
    CHECK(is_delta_crooked(id, 1.0));
    CHECK_FALSE(is_delta_crooked(id, 0.49));
    CHECK_FALSE(is_delta_crooked(id, 0.25));
    CHECK_FALSE(is_delta_crooked(id, 0.1));
}

TEST_CASE("crookedness checker validates its inputs") {
    CHECK_THROWS_AS(is_delta_crooked(identity_map(), 0.0), PreconditionError);
    CHECK_THROWS_AS(is_delta_crooked(identity_map(), 1.5), PreconditionError);
    BondingMap not_onto{{0.0, 1.0}, {0.0, 0.5}};
    CHECK_THROWS_AS(is_delta_crooked(not_onto, 0.5), PreconditionError);
}

TEST_CASE("composing a crooked map with itself keeps the crookedness level") {
    BondingMap g = crooked_map(2);
    BondingMap h = g;
    for (int m = 2; m <= 4; ++m) {
        h = compose(g, h);
        CHECK(is_delta_crooked(h, 0.5));
    }
}

TEST_CASE("bonding evaluation interpolates the breakpoint graph") {
    BondingMap g = crooked_map(2);
    CHECK(bonding_eval(g, 0.0) == 0.0);
    CHECK(bonding_eval(g, 1.0) == 1.0);

    BondingMap seg{{0.0, 0.2, 0.4, 1.0}, {0.0, 0.4, 0.1, 1.0}};
    CHECK(bonding_eval(seg, 0.3) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK_THROWS_AS(bonding_eval(seg, 1.5), DomainError);
    CHECK_THROWS_AS(bonding_eval(seg, -0.1), DomainError);
}

TEST_CASE("extension by the identity outside the unit interval") {
    BondingMap g = crooked_map(2);
    BondingMap e = extend_map(g);
    CHECK(bonding_eval(e, -0.5) == doctest::Approx(-0.5));
    CHECK(bonding_eval(e, -1.0) == doctest::Approx(-1.0));
    CHECK(bonding_eval(e, 1.7) == doctest::Approx(1.7));
    for (double x : g.xs) CHECK(bonding_eval(e, x) == bonding_eval(g, x));
    for (size_t i = 1; i < g.xs.size(); ++i) {
        double mid = (g.xs[i - 1] + g.xs[i]) / 2.0;
        CHECK(bonding_eval(e, mid) == bonding_eval(g, mid));
    }
}

TEST_CASE("composition evaluates as f after g") {
    BondingMap g = crooked_map(2);
    BondingMap gg = compose(g, g);
    for (int i = 0; i <= 200; ++i) {
        double x = i / 200.0;
        CHECK(bonding_eval(gg, x) ==
              doctest::Approx(bonding_eval(g, bonding_eval(g, x))).epsilon(1e-12));
    }
}

TEST_CASE("preimage count equals the lap count at a generic level") {
    BondingMap g = crooked_map(2);
    auto pre = preimages(g, 0.4);
    CHECK(static_cast<int>(pre.size()) == laps_covering(g, 0.4));
    CHECK(pre.size() == 3);
    for (size_t i = 1; i < pre.size(); ++i) CHECK(pre[i] > pre[i - 1]);
    for (double x : pre) CHECK(bonding_eval(g, x) == doctest::Approx(0.4).epsilon(1e-12));

    CHECK(preimages(g, 0.0).size() == 1);
    CHECK(preimages(g, 1.0).size() == 1);
}

TEST_CASE("towers extend along preimage branches") {
    BondingMap g = crooked_map(2);

    Tower zero{{0.0}};
    Tower z2 = tower_extend(g, zero, 0);
    REQUIRE(z2.coords.size() == 2);
    CHECK(z2.coords[1] == doctest::Approx(0.0));

    Tower one{{1.0}};
    Tower o2 = tower_extend(g, one, 0);
    CHECK(o2.coords[1] == doctest::Approx(1.0));

    Tower mid{{0.5}};
    auto pre = preimages(g, 0.5);
    REQUIRE(pre.size() >= 1);
    for (size_t b = 0; b < pre.size(); ++b) {
        Tower t = tower_extend(g, mid, static_cast<int>(b));
        CHECK(t.coords[1] == doctest::Approx(pre[b]));
        CHECK(tower_check(g, t));
    }
    CHECK_THROWS_AS(tower_extend(g, mid, static_cast<int>(pre.size())), BranchError);
    CHECK_THROWS_AS(tower_extend(g, Tower{}, 0), PreconditionError);
}

TEST_CASE("tower consistency check") {
    BondingMap g{{0.0, 0.1, 1.0}, {0.0, 0.3, 1.0}};
    CHECK(tower_check(g, Tower{{0.3, 0.1}}));
    CHECK_FALSE(tower_check(g, Tower{{0.5, 0.1}}));
    CHECK(tower_check(g, Tower{{0.7}}));
    CHECK(tower_check(crooked_map(2), Tower{{0.0, 0.0, 0.0}}));
}

TEST_CASE("tower metric is a normalized weighted l1 distance") {
    Tower a{{0.0, 0.0, 0.0}};
    Tower b{{1.0, 1.0, 1.0}};
    CHECK(tower_metric(a, a) == 0.0);
    CHECK(tower_metric(a, b) == doctest::Approx(2.0).epsilon(1e-14));
    Tower c{{0.25, 0.5, 0.75}};
    CHECK(tower_metric(a, c) == doctest::Approx(tower_metric(c, a)).epsilon(1e-15));
    CHECK(tower_metric(a, c) > 0.0);
    CHECK(tower_metric(a, c) < 2.0);
    CHECK_THROWS_AS(tower_metric(a, Tower{{0.0}}), DepthError);
}
