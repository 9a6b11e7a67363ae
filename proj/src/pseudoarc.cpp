#include "minlab/pseudoarc.hpp"

#include <algorithm>
#include <cmath>

#include "minlab/errors.hpp"

namespace minlab::pseudoarc {

namespace {

constexpr double kBandTol = 1e-12;

// Doubling-back walk from i to j on the integer grid with approach margin D:
// run within D of the far end, double back to within D of the near end, then
// finish. Short spans are filled monotonically one unit at a time.
void walk(int i, int j, int D, std::vector<int>& out) {
    int d = std::abs(j - i);
    int s = j > i ? 1 : -1;
    if (d < 2 * D) {
        if (out.empty()) out.push_back(i);
        for (int v = i + s; v != j + s; v += s) out.push_back(v);
        return;
    }
    int m1 = j - s * D;
    int m2 = d == 2 * D ? i + s * (D - 1) : i + s * D;
    walk(i, m1, D, out);
    walk(m1, m2, D, out);
    walk(m2, j, D, out);
}

double segment_eval(double x0, double x1, double y0, double y1, double x) {
    if (x1 == x0) return y0;
    return y0 + (x - x0) / (x1 - x0) * (y1 - y0);
}

struct Interval {
    double lo, hi;
};

// Maximal closed subintervals of [a,b] where f lands in [lo,hi], with
// isolated touches at exactly a or b dropped (c and d must be interior).
std::vector<Interval> band_intervals(const BondingMap& f, double lo, double hi,
                                     double a, double b) {
    std::vector<Interval> out;
    for (size_t k = 0; k + 1 < f.xs.size(); ++k) {
        double x0 = f.xs[k], x1 = f.xs[k + 1];
        double y0 = f.ys[k], y1 = f.ys[k + 1];
        if (x1 <= a || x0 >= b) continue;
        double cx0 = std::max(x0, a), cx1 = std::min(x1, b);
        double cy0 = segment_eval(x0, x1, y0, y1, cx0);
        double cy1 = segment_eval(x0, x1, y0, y1, cx1);
        if (cy1 == cy0) {
            if (lo <= cy0 && cy0 <= hi) out.push_back({cx0, cx1});
            continue;
        }
        double t0 = (lo - cy0) / (cy1 - cy0);
        double t1 = (hi - cy0) / (cy1 - cy0);
        if (t0 > t1) std::swap(t0, t1);
        t0 = std::max(t0, 0.0);
        t1 = std::min(t1, 1.0);
        if (t0 > t1) continue;
        out.push_back({cx0 + t0 * (cx1 - cx0), cx0 + t1 * (cx1 - cx0)});
    }
    if (out.empty()) return out;
    std::sort(out.begin(), out.end(),
              [](const Interval& u, const Interval& v) {
                  return u.lo < v.lo || (u.lo == v.lo && u.hi < v.hi);
              });
    std::vector<Interval> merged;
    merged.push_back(out.front());
    for (size_t k = 1; k < out.size(); ++k) {
        if (out[k].lo <= merged.back().hi)
            merged.back().hi = std::max(merged.back().hi, out[k].hi);
        else
            merged.push_back(out[k]);
    }
    std::vector<Interval> kept;
    for (const auto& iv : merged)
        if (!(iv.lo == iv.hi && (iv.lo == a || iv.lo == b))) kept.push_back(iv);
    return kept;
}

bool pair_ok(const BondingMap& f, size_t ia, size_t ib, double delta) {
    double a = f.xs[ia], b = f.xs[ib];
    double fa = f.ys[ia], fb = f.ys[ib];
    auto sb = band_intervals(f, fb - delta - kBandTol, fb + delta + kBandTol, a, b);
    if (sb.empty()) return false;
    auto sa = band_intervals(f, fa - delta - kBandTol, fa + delta + kBandTol, a, b);
    if (sa.empty()) return false;
    return sb.front().lo < sa.back().hi;
}

}  // namespace

BondingMap crooked_map(int level) {
    if (level < 1) throw PreconditionError("crooked_map: level must be >= 1");
    int N = 3 * level;
    std::vector<int> w;
    walk(0, N, 2, w);
    BondingMap g;
    size_t m = w.size() - 1;
    g.xs.reserve(w.size());
    g.ys.reserve(w.size());
    for (size_t k = 0; k < w.size(); ++k) {
        g.xs.push_back(static_cast<double>(k) / static_cast<double>(m));
        g.ys.push_back(static_cast<double>(w[k]) / static_cast<double>(N));
    }
    return g;
}

BondingMap identity_map() { return BondingMap{{0.0, 1.0}, {0.0, 1.0}}; }

BondingMap extend_map(const BondingMap& g) {
    BondingMap e;
    e.xs.push_back(-1.0);
    e.ys.push_back(-1.0);
    for (size_t k = 0; k < g.xs.size(); ++k) {
        e.xs.push_back(g.xs[k]);
        e.ys.push_back(g.ys[k]);
    }
    e.xs.push_back(2.0);
    e.ys.push_back(2.0);
    return e;
}

double bonding_eval(const BondingMap& g, double x) {
    if (g.xs.size() < 2) throw PreconditionError("bonding map needs two breakpoints");
    if (x < g.xs.front() || x > g.xs.back())
        throw DomainError("bonding_eval: x outside the map's domain");
    auto it = std::upper_bound(g.xs.begin(), g.xs.end(), x);
    size_t k = static_cast<size_t>(it - g.xs.begin());
    if (k == 0) k = 1;
    if (k >= g.xs.size()) k = g.xs.size() - 1;
    if (x == g.xs[k - 1]) return g.ys[k - 1];
    if (x == g.xs[k]) return g.ys[k];
    return segment_eval(g.xs[k - 1], g.xs[k], g.ys[k - 1], g.ys[k], x);
}

BondingMap compose(const BondingMap& f, const BondingMap& g) {
    std::vector<double> xs;
    for (size_t k = 0; k + 1 < g.xs.size(); ++k) {
        double x0 = g.xs[k], x1 = g.xs[k + 1];
        double y0 = g.ys[k], y1 = g.ys[k + 1];
        xs.push_back(x0);
        if (y1 == y0) continue;
        double lo = std::min(y0, y1), hi = std::max(y0, y1);
        for (double bp : f.xs)
            if (lo < bp && bp < hi)
                xs.push_back(x0 + (bp - y0) / (y1 - y0) * (x1 - x0));
    }
    xs.push_back(g.xs.back());
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    BondingMap out;
    out.xs = xs;
    out.ys.reserve(xs.size());
    for (double x : xs) out.ys.push_back(bonding_eval(f, bonding_eval(g, x)));
    return out;
}

bool is_delta_crooked(const BondingMap& f, double delta) {
    if (!(delta > 0.0 && delta <= 1.0))
        throw PreconditionError("is_delta_crooked: need 0 < delta <= 1");
    // Restrict to the unit-interval core (extended maps are identity outside).
    BondingMap core;
    for (size_t k = 0; k < f.xs.size(); ++k)
        if (f.xs[k] >= 0.0 && f.xs[k] <= 1.0) {
            core.xs.push_back(f.xs[k]);
            core.ys.push_back(f.ys[k]);
        }
    double ymin = 1.0, ymax = 0.0;
    for (double y : core.ys) {
        ymin = std::min(ymin, y);
        ymax = std::max(ymax, y);
    }
    if (ymin > kBandTol || ymax < 1.0 - kBandTol)
        throw PreconditionError("is_delta_crooked: map is not onto [0,1]");
    size_t m = core.xs.size();
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j)
            if (!pair_ok(core, i, j, delta)) return false;
    return true;
}

std::vector<double> preimages(const BondingMap& g, double y) {
    std::vector<double> out;
    for (size_t k = 0; k + 1 < g.xs.size(); ++k) {
        double x0 = g.xs[k], x1 = g.xs[k + 1];
        double y0 = g.ys[k], y1 = g.ys[k + 1];
        if (y1 == y0) {
            if (y == y0) out.push_back(x0);
            continue;
        }
        double lo = std::min(y0, y1), hi = std::max(y0, y1);
        if (y < lo || y > hi) continue;
        out.push_back(x0 + (y - y0) / (y1 - y0) * (x1 - x0));
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end(),
                          [](double a, double b) { return std::fabs(a - b) <= 1e-12; }),
              out.end());
    return out;
}

Tower tower_extend(const BondingMap& g, const Tower& t, int branch) {
    if (t.coords.empty()) throw PreconditionError("tower_extend: empty tower");
    auto pre = preimages(g, t.coords.back());
    if (branch < 0 || static_cast<size_t>(branch) >= pre.size())
        throw BranchError("tower_extend: branch index out of range");
    Tower out = t;
    out.coords.push_back(pre[static_cast<size_t>(branch)]);
    return out;
}

bool tower_check(const BondingMap& g, const Tower& t) {
    for (size_t k = 0; k + 1 < t.coords.size(); ++k)
        if (std::fabs(t.coords[k] - bonding_eval(g, t.coords[k + 1])) > 1e-9)
            return false;
    return true;
}

double tower_metric(const Tower& a, const Tower& b,
                    const std::vector<double>& weights) {
    if (a.coords.size() != b.coords.size())
        throw DepthError("tower_metric: towers have different depths");
    if (a.coords.empty()) return 0.0;
    double sum = 0.0, norm = 0.0;
    for (size_t k = 0; k < a.coords.size(); ++k) {
        double v = k < weights.size() ? weights[k] : std::pow(2.0, -static_cast<double>(k));
        sum += v * std::fabs(a.coords[k] - b.coords[k]);
        norm += v;
    }
    return 2.0 * sum / norm;
}

}  // namespace minlab::pseudoarc
