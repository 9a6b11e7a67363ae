#include "minlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "minlab/errors.hpp"
#include "minlab/util.hpp"

namespace minlab::rigidity {

std::vector<Cell> window_cells(const TilingWindow& w) {
    std::vector<Cell> cells;
    cells.reserve(static_cast<size_t>((2 * w.R + 1) * (2 * w.R + 1)));
    for (int i = -w.R; i <= w.R; ++i)
        for (int j = -w.R; j <= w.R; ++j) cells.push_back({i, j});
    return cells;
}

namespace {

bool type_compatible(Cell c, Cell img) {
    Mark ci = mark_of(c.i), cj = mark_of(c.j);
    Mark xi = mark_of(img.i), xj = mark_of(img.j);
    if (ci == cj) return xi == ci && xj == cj;  // pp -> pp, aa -> aa
    return xi != xj;                            // mixed -> mixed, either order
}

struct Search {
    int R;
    bool allowSwap;
    bool monotone;
    std::vector<Cell> cells;
    std::vector<Cell> images;
    std::set<std::pair<int, int>> used;
    std::vector<LatticeMap>* out;

    int cols() const { return 2 * R + 1; }
    int idx_of(int i, int j) const { return (i + R) * cols() + (j + R); }

    bool step_allowed(Cell from_img, Cell to_img, bool horizontal_step) const {
        int dx = to_img.i - from_img.i;
        int dy = to_img.j - from_img.j;
        if (std::abs(dx) + std::abs(dy) != 1) return false;
        if (monotone && dx + dy != 1) return false;  // unit step must increase
        if (!allowSwap) {
            if (horizontal_step && dy != 0) return false;
            if (!horizontal_step && dx != 0) return false;
        }
        return true;
    }

    void run(size_t at) {
        if (at == cells.size()) {
            out->push_back(LatticeMap{images});
            return;
        }
        Cell c = cells[at];
        std::vector<Cell> candidates;
        if (at == 0) {
            for (int x = c.i - 2 * R; x <= c.i + 2 * R; ++x)
                for (int y = c.j - 2 * R; y <= c.j + 2 * R; ++y)
                    candidates.push_back({x, y});
        } else {
            Cell prev = c.j > -R ? Cell{c.i, c.j - 1} : Cell{c.i - 1, c.j};
            Cell pimg = images[static_cast<size_t>(idx_of(prev.i, prev.j))];
            candidates = {{pimg.i + 1, pimg.j},
                          {pimg.i - 1, pimg.j},
                          {pimg.i, pimg.j + 1},
                          {pimg.i, pimg.j - 1}};
        }
        // The corner enumeration bounds the translation part; later cells are
        // tied to it by adjacency, so no per-cell range check is needed.
        for (Cell img : candidates) {
            if (!type_compatible(c, img)) continue;
            if (used.count({img.i, img.j})) continue;
            bool ok = true;
            if (c.j > -R &&
                !step_allowed(images[static_cast<size_t>(idx_of(c.i, c.j - 1))], img,
                              /*horizontal_step=*/false))
                ok = false;
            if (ok && c.i > -R &&
                !step_allowed(images[static_cast<size_t>(idx_of(c.i - 1, c.j))], img,
                              /*horizontal_step=*/true))
                ok = false;
            if (!ok) continue;
            images[at] = img;
            used.insert({img.i, img.j});
            run(at + 1);
            used.erase({img.i, img.j});
        }
    }
};

}  // namespace

std::vector<LatticeMap> enumerate_automorphisms(const TilingWindow& w, bool allowSwap,
                                                bool monotone) {
    if (w.R < 1) throw PreconditionError("enumerate_automorphisms: need R >= 1");
    if (w.R > 4)
        throw ResourceError(
            "enumerate_automorphisms: window radius capped at 4; the search is "
            "exhaustive");
    std::vector<LatticeMap> out;
    Search s;
    s.R = w.R;
    s.allowSwap = allowSwap;
    s.monotone = monotone;
    s.cells = window_cells(w);
    s.images.resize(s.cells.size());
    s.out = &out;
    s.run(0);
    return out;
}

ProductStructureVerdict classify_product_structure(const TilingWindow& w,
                                                   const std::vector<LatticeMap>& maps) {
    auto cells = window_cells(w);
    ProductStructureVerdict v;
    v.mapCount = static_cast<long long>(maps.size());
    for (const auto& m : maps) {
        if (m.images.size() != cells.size())
            throw PreconditionError("classify: map does not cover the window");
        Cell f = cells.front(), fi = m.images.front();
        int t1 = fi.i - f.i, t2 = fi.j - f.j;
        bool direct = t1 % 2 == 0 && t2 % 2 == 0;
        for (size_t k = 0; direct && k < cells.size(); ++k)
            direct = m.images[k].i == cells[k].i + t1 && m.images[k].j == cells[k].j + t2;
        if (direct) continue;
        int u1 = fi.i - f.j, u2 = fi.j - f.i;
        bool swapped = u1 % 2 == 0 && u2 % 2 == 0;
        for (size_t k = 0; swapped && k < cells.size(); ++k)
            swapped =
                m.images[k].i == cells[k].j + u1 && m.images[k].j == cells[k].i + u2;
        if (swapped) {
            v.swapCount += 1;
            continue;
        }
        throw RigidityFailureError(
            "classify_product_structure: found a lattice map that is neither an even "
            "translation nor a swapped even translation");
    }
    v.decomposable = true;
    v.group = v.swapCount > 0 ? "Z_x_Z2" : "Z";
    return v;
}

InvariantReport product_rotation_invariant(int k1, int k2, double alpha,
                                           skew::TorusPoint p0, long long N) {
    if (k1 == 0 && k2 == 0)
        throw PreconditionError("product_rotation_invariant: (k1, k2) must be nonzero");
    if (N < 1) throw PreconditionError("product_rotation_invariant: need N >= 1");
    auto invariant = [&](skew::TorusPoint p) { return mod1(k2 * p.x - k1 * p.y); };
    InvariantReport rep;
    rep.value = invariant(p0);
    rep.steps = N;
    skew::TorusPoint p = p0;
    double da = mod1(k1 * alpha), db = mod1(k2 * alpha);
    for (long long n = 0; n < N; ++n) {
        p = skew::TorusPoint(p.x + da, p.y + db);
        double drift = circle_dist(invariant(p), rep.value);
        if (drift > rep.drift) rep.drift = drift;
    }
    return rep;
}

NonminimalityReport product_nonminimality_report(int k1, int k2, double alpha,
                                                 skew::TorusPoint p0,
                                                 skew::TorusPoint target, long long N) {
    if (k1 == 0 && k2 == 0)
        throw PreconditionError("product_nonminimality_report: (k1, k2) must be nonzero");
    if (N < 1) throw PreconditionError("product_nonminimality_report: need N >= 1");
    auto invariant = [&](skew::TorusPoint p) { return mod1(k2 * p.x - k1 * p.y); };
    NonminimalityReport rep;
    rep.invariantStart = invariant(p0);
    rep.invariantTarget = invariant(target);
    rep.deltaI = circle_dist(rep.invariantStart, rep.invariantTarget);
    if (rep.deltaI <= 1e-12)
        throw DegenerateTargetError(
            "product_nonminimality_report: target shares the orbit invariant; it lies "
            "on the orbit-closure subtorus");
    rep.bound = rep.deltaI / std::sqrt(static_cast<double>(k1) * k1 +
                                       static_cast<double>(k2) * k2);
    rep.steps = N;
    skew::TorusPoint p = p0;
    rep.minDistance = skew::torus_distance(p, target);
    rep.argmin = 0;
    double da = mod1(k1 * alpha), db = mod1(k2 * alpha);
    for (long long n = 1; n < N; ++n) {
        p = skew::TorusPoint(p.x + da, p.y + db);
        double d = skew::torus_distance(p, target);
        if (d < rep.minDistance) {
            rep.minDistance = d;
            rep.argmin = n;
        }
    }
    return rep;
}

std::vector<double> independent_pair_minima(double alpha, double beta,
                                            skew::TorusPoint p0, skew::TorusPoint target,
                                            const std::vector<long long>& horizons) {
    if (horizons.empty())
        throw EmptyInputError("independent_pair_minima: need at least one horizon");
    std::vector<long long> sorted = horizons;
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> minima;
    skew::TorusPoint p = p0;
    double best = skew::torus_distance(p, target);
    long long n = 0;
    for (long long h : sorted) {
        for (; n < h; ++n) {
            p = skew::TorusPoint(p.x + alpha, p.y + beta);
            double d = skew::torus_distance(p, target);
            if (d < best) best = d;
        }
        minima.push_back(best);
    }
    return minima;
}

}  // namespace minlab::rigidity
