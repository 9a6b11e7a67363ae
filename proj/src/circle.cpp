#include "minlab/circle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "minlab/errors.hpp"

namespace minlab::circle {

RotationSystem::RotationSystem(double alpha) : alpha_(alpha) {
    // Continued-fraction expansion of the fractional part. A blown-up partial
    // quotient means the expansion has effectively terminated: the current
    // convergent matches alpha to machine precision. Only then do we call the
    // number rational; checking |alpha - p/q| < 1e-12 against every convergent
    // would misclassify well-approximable irrationals (the golden mean has a
    // convergent 514229/832040 within 7e-13).
    const double kHugeQuotient = 1e8;
    const long long kMaxDen = 1000000;
    double frac = alpha - std::floor(alpha);
    long long p_prev = 1, q_prev = 0;
    long long p_cur = 0, q_cur = 1;
    double x = frac;
    bool truncated = false;
    while (q_cur <= kMaxDen) {
        if (x < 1e-15) {
            truncated = true;
            break;
        }
        double inv = 1.0 / x;
        if (inv > kHugeQuotient) {
            truncated = true;
            break;
        }
        long long a = static_cast<long long>(std::floor(inv));
        x = inv - static_cast<double>(a);
        long long p_next = a * p_cur + p_prev;
        long long q_next = a * q_cur + q_prev;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    if (truncated && q_cur <= kMaxDen &&
        std::fabs(frac - static_cast<double>(p_cur) / static_cast<double>(q_cur)) < 1e-12) {
        rational_ = true;
        p_ = p_cur;
        q_ = q_cur;
    }
}

std::vector<CirclePoint> orbit(const RotationSystem& sys, CirclePoint x0, long long n) {
    if (n < 1) throw EmptyInputError("orbit: need n >= 1");
    std::vector<CirclePoint> out;
    out.reserve(static_cast<size_t>(n));
    CirclePoint p = x0;
    for (long long i = 0; i < n; ++i) {
        out.push_back(p);
        p = sys.apply(p);
    }
    return out;
}

double eps_density(const std::vector<CirclePoint>& pts) {
    if (pts.empty()) throw EmptyInputError("eps_density: empty point set");
    std::vector<double> a;
    a.reserve(pts.size());
    for (auto p : pts) a.push_back(p.angle());
    std::sort(a.begin(), a.end());
    double largest = a.front() + 1.0 - a.back();  // wrap-around gap
    for (size_t i = 1; i < a.size(); ++i) largest = std::max(largest, a[i] - a[i - 1]);
    return largest;
}

DenjoyPoint DenjoyPoint::gap(int seed, int k, double s) {
    if (s < 0.0 || s > 1.0) throw PreconditionError("gap point: s must lie in [0,1]");
    DenjoyPoint p;
    p.is_gap_ = true;
    p.seed_ = seed;
    p.k_ = k;
    p.s_ = s;
    return p;
}

double DenjoySystem::gap_length(int /*seed*/, int k) const {
    return scale_ * std::pow(2.0, -std::abs(k));
}

CirclePoint DenjoySystem::gap_anchor(int seed, int k) const {
    return CirclePoint(seeds_[static_cast<size_t>(seed)].angle() + k * alpha_);
}

bool DenjoySystem::on_blown_orbit(CirclePoint x, int* seed, int* k) const {
    for (const auto& e : table_) {
        CirclePoint anchor(seeds_[0].angle() + e.offset);
        if (circle_dist(anchor.angle(), x.angle()) <= kAngleTol) {
            if (seed) *seed = e.seed;
            if (k) *k = e.k;
            return true;
        }
    }
    return false;
}

static void validate_point(const DenjoySystem& sys, const DenjoyPoint& p) {
    if (!p.is_gap()) return;
    if (p.seed() < 0 || p.seed() >= static_cast<int>(sys.seeds().size()))
        throw PreconditionError("denjoy point: seed index outside schedule");
    if (std::abs(p.k()) > sys.depth())
        throw PreconditionError("denjoy point: orbit index outside stored depth");
}

DenjoySystem denjoy_build(double alpha, const std::vector<CirclePoint>& seeds,
                          const GapSchedule& schedule) {
    RotationSystem rot(alpha);
    if (rot.is_rational())
        throw RotationNumberError("denjoy_build: rotation number is rational");
    if (seeds.empty()) throw SeedError("denjoy_build: need at least one seed");
    if (schedule.depth < 1) throw ScheduleError("denjoy_build: depth must be >= 1");
    if (schedule.scale < 0.0)
        throw ScheduleError("denjoy_build: gap scale must be positive");

    int K = schedule.depth;
    // Sum of 2^{-|k|} over |k| <= K.
    double kernel_sum = 3.0 - std::pow(2.0, 1 - K);
    double scale = schedule.scale;
    if (scale == 0.0) scale = 0.5 / (kernel_sum * static_cast<double>(seeds.size()));

    double total = scale * kernel_sum * static_cast<double>(seeds.size());
    if (total >= 1.0) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "denjoy_build: gap schedule sums to %.6g >= 1", total);
        throw ScheduleError(buf);
    }
    double tail = scale * std::pow(2.0, 1 - K) * static_cast<double>(seeds.size());
    if (tail >= 1e-9 * total)
        throw ScheduleError("denjoy_build: truncation tail exceeds 1e-9 of total mass");

    // Distinct orbits, checked out to 2K so no two stored anchors can collide.
    for (size_t i = 0; i < seeds.size(); ++i)
        for (size_t j = i + 1; j < seeds.size(); ++j)
            for (int k = -2 * K; k <= 2 * K; ++k)
                if (circle_dist(mod1(seeds[j].angle() + k * alpha), seeds[i].angle()) <=
                    kAngleTol)
                    throw SeedError("denjoy_build: seeds lie on a common orbit");

    DenjoySystem sys;
    sys.alpha_ = alpha;
    sys.seeds_ = seeds;
    sys.depth_ = K;
    sys.scale_ = scale;
    sys.total_gap_ = total;
    sys.tail_bound_ = tail;

    sys.table_.reserve(seeds.size() * static_cast<size_t>(2 * K + 1));
    for (size_t j = 0; j < seeds.size(); ++j)
        for (int k = -K; k <= K; ++k) {
            DenjoySystem::GapEntry e;
            e.offset = mod1(seeds[j].angle() + k * alpha - seeds[0].angle());
            e.seed = static_cast<int>(j);
            e.k = k;
            e.length = scale * std::pow(2.0, -std::abs(k));
            e.mass_before = 0.0;
            sys.table_.push_back(e);
        }
    std::sort(sys.table_.begin(), sys.table_.end(),
              [](const auto& a, const auto& b) { return a.offset < b.offset; });
    double mass = 0.0;
    for (auto& e : sys.table_) {
        e.mass_before = mass;
        mass += e.length;
    }
    for (size_t i = 1; i < sys.table_.size(); ++i)
        if (sys.table_[i].offset - sys.table_[i - 1].offset <= kAngleTol)
            throw SeedError("denjoy_build: two gap anchors coincide");
    return sys;
}

static TruncationError truncation(const DenjoySystem& sys, int k) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "denjoy_map: orbit index %d leaves the stored depth %d "
                  "(dropped gap mass <= %.3g)",
                  k, sys.depth(), sys.tail_bound());
    return TruncationError(buf, sys.tail_bound());
}

DenjoyPoint denjoy_map(const DenjoySystem& sys, const DenjoyPoint& p) {
    validate_point(sys, p);
    if (p.is_gap()) {
        if (p.k() + 1 > sys.depth()) throw truncation(sys, p.k() + 1);
        return DenjoyPoint::gap(p.seed(), p.k() + 1, p.s());
    }
    return DenjoyPoint::cantor(rotate(p.base(), sys.alpha()), p.side());
}

DenjoyPoint denjoy_map_inverse(const DenjoySystem& sys, const DenjoyPoint& p) {
    validate_point(sys, p);
    if (p.is_gap()) {
        if (p.k() - 1 < -sys.depth()) throw truncation(sys, p.k() - 1);
        return DenjoyPoint::gap(p.seed(), p.k() - 1, p.s());
    }
    return DenjoyPoint::cantor(rotate(p.base(), -sys.alpha()), p.side());
}

// Total length of gaps whose anchor offset is strictly below `pos`.
static double gap_mass_before(const DenjoySystem& sys, double pos) {
    const auto& t = sys.gap_table();
    auto it = std::lower_bound(t.begin(), t.end(), pos,
                               [](const auto& e, double v) { return e.offset < v; });
    if (it == t.begin()) return 0.0;
    --it;
    return it->mass_before + it->length;
}

CirclePoint denjoy_embed(const DenjoySystem& sys, const DenjoyPoint& p) {
    validate_point(sys, p);
    double shrink = 1.0 - sys.total_gap();
    if (p.is_gap()) {
        const auto& t = sys.gap_table();
        auto it = std::find_if(t.begin(), t.end(), [&](const auto& e) {
            return e.seed == p.seed() && e.k == p.k();
        });
        return CirclePoint(shrink * it->offset + it->mass_before + p.s() * it->length);
    }
    double pos = mod1(p.base().angle() - sys.seeds()[0].angle());
    int seed = 0, k = 0;
    if (sys.on_blown_orbit(p.base(), &seed, &k)) {
        double s = p.side() == Side::Left ? 0.0 : 1.0;
        return denjoy_embed(sys, DenjoyPoint::gap(seed, k, s));
    }
    return CirclePoint(shrink * pos + gap_mass_before(sys, pos));
}

CirclePoint denjoy_semiconjugacy(const DenjoySystem& sys, const DenjoyPoint& p) {
    validate_point(sys, p);
    if (p.is_gap()) return sys.gap_anchor(p.seed(), p.k());
    return p.base();
}

std::vector<DenjoyPoint> orbit(const DenjoySystem& sys, const DenjoyPoint& p0, long long n) {
    if (n < 1) throw EmptyInputError("orbit: need n >= 1");
    std::vector<DenjoyPoint> out;
    out.reserve(static_cast<size_t>(n));
    DenjoyPoint p = p0;
    for (long long i = 0; i < n; ++i) {
        out.push_back(p);
        if (i + 1 < n) p = denjoy_map(sys, p);
    }
    return out;
}

}  // namespace minlab::circle
