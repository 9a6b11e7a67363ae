#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "minlab/errors.hpp"
#include "minlab/rigidity.hpp"

using namespace minlab;
using namespace minlab::rigidity;
using minlab::skew::TorusPoint;

namespace {

const double kGolden = (std::sqrt(5.0) - 1.0) / 2.0;

LatticeMap translation(const TilingWindow& w, int t1, int t2) {
    LatticeMap m;
    for (Cell c : window_cells(w)) m.images.push_back({c.i + t1, c.j + t2});
    return m;
}

LatticeMap swapped_translation(const TilingWindow& w, int u1, int u2) {
    LatticeMap m;
    for (Cell c : window_cells(w)) m.images.push_back({c.j + u1, c.i + u2});
    return m;
}

bool map_equal(const LatticeMap& a, const LatticeMap& b) {
    return a.images.size() == b.images.size() &&
           std::equal(a.images.begin(), a.images.end(), b.images.begin());
}

bool contains(const std::vector<LatticeMap>& maps, const LatticeMap& m) {
    for (const auto& x : maps)
        if (map_equal(x, m)) return true;
    return false;
}

// Independent decomposition: fit a translation, else a swap-then-translation,
// from the corner cell and confirm the fit on every cell.
bool decomposes(const TilingWindow& w, const LatticeMap& m, bool* was_swap, int* a,
                int* b) {
    auto cells = window_cells(w);
    Cell f = cells.front(), fi = m.images.front();
    int t1 = fi.i - f.i, t2 = fi.j - f.j;
    bool direct = true;
    for (size_t k = 0; k < cells.size(); ++k)
        if (m.images[k].i != cells[k].i + t1 || m.images[k].j != cells[k].j + t2)
            direct = false;
    if (direct) {
        *was_swap = false;
        *a = t1;
        *b = t2;
        return t1 % 2 == 0 && t2 % 2 == 0;
    }
    int u1 = fi.i - f.j, u2 = fi.j - f.i;
    for (size_t k = 0; k < cells.size(); ++k)
        if (m.images[k].i != cells[k].j + u1 || m.images[k].j != cells[k].i + u2)
            return false;
    *was_swap = true;
    *a = u1;
    *b = u2;
    return u1 % 2 == 0 && u2 % 2 == 0;
}

}  // namespace

TEST_CASE("window cells enumerate the full square") {
    TilingWindow w{2};
    auto cells = window_cells(w);
    REQUIRE(cells.size() == 25);
    Cell first{-2, -2}, last{2, 2};
    CHECK(cells.front() == first);
    CHECK(cells.back() == last);
    CHECK(window_cells(TilingWindow{3}).size() == 49);
}

TEST_CASE("cell marks alternate with coordinate parity") {
    CHECK(mark_of(0) == Mark::P);
    CHECK(mark_of(2) == Mark::P);
    CHECK(mark_of(-4) == Mark::P);
    CHECK(mark_of(1) == Mark::A);
    CHECK(mark_of(-3) == Mark::A);
}

TEST_CASE("monotone automorphisms of the R=2 window are the even translations") {
    TilingWindow w{2};
    auto maps = enumerate_automorphisms(w, false, true);

    // Oracle: construct every even translation with both offsets within 2R.
    std::vector<LatticeMap> expected;
    for (int t1 = -4; t1 <= 4; t1 += 2)
        for (int t2 = -4; t2 <= 4; t2 += 2) expected.push_back(translation(w, t1, t2));

    REQUIRE(maps.size() == expected.size());
    for (const auto& m : expected) CHECK(contains(maps, m));

    CHECK(contains(maps, translation(w, 0, 0)));
    CHECK(contains(maps, translation(w, 2, 0)));
    CHECK_FALSE(contains(maps, translation(w, 1, 0)));

    auto v = classify_product_structure(w, maps);
    CHECK(v.mapCount == 25);
    CHECK(v.swapCount == 0);
    CHECK(v.decomposable);
    CHECK(v.group == "Z");
}

TEST_CASE("allowing the swap doubles the map count") {
    TilingWindow w{2};
    auto maps = enumerate_automorphisms(w, true, true);
    REQUIRE(maps.size() == 50);

    long long swaps = 0;
    for (const auto& m : maps) {
        bool was_swap = false;
        int a = 0, b = 0;
        CHECK(decomposes(w, m, &was_swap, &a, &b));
        if (was_swap) {
            ++swaps;
            // The swap squared is the diagonal translation by (a+b, a+b).
            CHECK((a + b) % 2 == 0);
        }
    }
    CHECK(swaps == 25);
    CHECK(contains(maps, swapped_translation(w, 2, -2)));

    auto v = classify_product_structure(w, maps);
    CHECK(v.mapCount == 50);
    CHECK(v.swapCount == 25);
    CHECK(v.group == "Z_x_Z2");
}

TEST_CASE("a swap composed with itself is a pure translation") {
    TilingWindow w{2};
    // sigma tau: (i,j) -> (j+2, i-2); applying it twice gives the identity.
    LatticeMap s = swapped_translation(w, 2, -2);
    auto cells = window_cells(w);
    for (size_t k = 0; k < cells.size(); ++k) {
        Cell mid = s.images[k];
        Cell twice{mid.j + 2, mid.i - 2};
        CHECK(twice == cells[k]);
    }
}

TEST_CASE("the R=3 window classifies the same way") {
    TilingWindow w{3};
    auto plain = classify_product_structure(w, enumerate_automorphisms(w, false, true));
    CHECK(plain.mapCount == 49);
    CHECK(plain.group == "Z");

    auto swapped = classify_product_structure(w, enumerate_automorphisms(w, true, true));
    CHECK(swapped.mapCount == 98);
    CHECK(swapped.swapCount == 49);
    CHECK(swapped.group == "Z_x_Z2");
}

TEST_CASE("dropping monotonicity admits reflections, which fail to decompose") {
    TilingWindow w{2};
    auto maps = enumerate_automorphisms(w, false, false);
    CHECK(maps.size() > 25);
    CHECK_THROWS_AS(classify_product_structure(w, maps), RigidityFailureError);
}

TEST_CASE("window radius bounds") {
    CHECK_THROWS_AS(enumerate_automorphisms(TilingWindow{0}, false, true),
                    PreconditionError);
    CHECK_THROWS_AS(enumerate_automorphisms(TilingWindow{5}, false, true), ResourceError);
}

TEST_CASE("the product rotation preserves its linear invariant") {
    auto rep = product_rotation_invariant(1, 2, kGolden, TorusPoint(0.0, 0.0), 100000);
    CHECK(rep.value == 0.0);
    CHECK(rep.drift <= 1e-12);

    auto rep2 = product_rotation_invariant(1, 2, kGolden, TorusPoint(0.1, 0.3), 100000);
    CHECK(rep2.value == doctest::Approx(0.9).epsilon(1e-12));
    CHECK(rep2.drift < 1e-9);

    CHECK_THROWS_AS(product_rotation_invariant(0, 0, kGolden, TorusPoint(0, 0), 10),
                    PreconditionError);
    CHECK_THROWS_AS(product_rotation_invariant(1, 2, kGolden, TorusPoint(0, 0), 0),
                    PreconditionError);
}

TEST_CASE("the dependent product orbit respects the subtorus distance bound") {
    auto rep = product_nonminimality_report(1, 2, kGolden, TorusPoint(0.0, 0.0),
                                            TorusPoint(0.0, 0.25), 1000000);
    CHECK(rep.deltaI == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(rep.bound == doctest::Approx(0.25 / std::sqrt(5.0)).epsilon(1e-14));
    CHECK(rep.minDistance >= rep.bound - 1e-12);
    CHECK(rep.minDistance < rep.bound + 1e-6);
    CHECK(rep.argmin > 0);
    CHECK(rep.steps == 1000000);
}

TEST_CASE("a target on the invariant subtorus is rejected") {
    CHECK_THROWS_AS(product_nonminimality_report(1, 2, kGolden, TorusPoint(0.0, 0.0),
                                                 TorusPoint(0.2, 0.4), 1000),
                    DegenerateTargetError);
}

TEST_CASE("independent rotations sink below every dependent bound") {
    double beta = std::exp(1.0) - 2.0;
    auto minima = independent_pair_minima(kGolden, beta, TorusPoint(0.0, 0.0),
                                          TorusPoint(0.0, 0.25), {10000, 100000, 1000000});
    REQUIRE(minima.size() == 3);
    CHECK(minima[1] < minima[0]);
    CHECK(minima[2] < minima[1]);
    CHECK(minima[2] < 1e-3);

    CHECK_THROWS_AS(independent_pair_minima(kGolden, beta, TorusPoint(0, 0),
                                            TorusPoint(0, 0.25), {}),
                    EmptyInputError);
}
