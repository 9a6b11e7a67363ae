#include "minlab/suspension.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

#include "minlab/errors.hpp"

namespace minlab::susp {

using circle::DenjoyPoint;

CantorSystem CantorSystem::odometer(int word_depth) {
    if (word_depth < 2 || word_depth > 31)
        throw DepthError("odometer: word depth must lie in [2, 31]");
    CantorSystem sys;
    sys.kind_ = Kind::Odometer;
    sys.word_depth_ = word_depth;
    return sys;
}

CantorSystem CantorSystem::denjoy(circle::DenjoySystem sys) {
    CantorSystem out;
    out.kind_ = Kind::DenjoyCantor;
    out.denjoy_ = std::move(sys);
    return out;
}

BasePoint CantorSystem::start() const {
    if (kind_ == Kind::Odometer) return OdometerWord{0, word_depth_};
    return DenjoyPoint::cantor(circle::CirclePoint(0.0));
}

void CantorSystem::validate(const BasePoint& p) const {
    if (kind_ == Kind::Odometer) {
        const auto* w = std::get_if<OdometerWord>(&p);
        if (!w) throw PreconditionError("base point kind does not match the system");
        if (w->depth != word_depth_)
            throw PreconditionError("odometer word has the wrong depth");
        if (w->bits >> word_depth_)
            throw PreconditionError("odometer word has bits beyond its depth");
        return;
    }
    const auto* d = std::get_if<DenjoyPoint>(&p);
    if (!d) throw PreconditionError("base point kind does not match the system");
    if (d->is_gap() && d->s() > 0.0 && d->s() < 1.0)
        throw PreconditionError("suspension base point must avoid gap interiors");
}

BasePoint CantorSystem::advance(const BasePoint& p, long long k) const {
    if (kind_ == Kind::Odometer) {
        const auto& w = std::get<OdometerWord>(p);
        std::uint32_t size = 1u << word_depth_;
        long long r = k % static_cast<long long>(size);
        if (r < 0) r += size;
        return OdometerWord{(w.bits + static_cast<std::uint32_t>(r)) & (size - 1),
                            w.depth};
    }
    const auto& d = std::get<DenjoyPoint>(p);
    if (d.is_gap()) {
        long long target = d.k() + k;
        if (std::llabs(target) > denjoy_.depth()) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "advance: gap index %lld leaves depth %d (tail <= %.3g)",
                          target, denjoy_.depth(), denjoy_.tail_bound());
            throw TruncationError(buf, denjoy_.tail_bound());
        }
        return DenjoyPoint::gap(d.seed(), static_cast<int>(target), d.s());
    }
    return DenjoyPoint::cantor(
        circle::CirclePoint(d.base().angle() + static_cast<double>(k) * denjoy_.alpha()),
        d.side());
}

double CantorSystem::distance(const BasePoint& a, const BasePoint& b) const {
    if (kind_ == Kind::Odometer) {
        const auto& u = std::get<OdometerWord>(a);
        const auto& v = std::get<OdometerWord>(b);
        std::uint32_t diff = u.bits ^ v.bits;
        if (diff == 0) return 0.0;
        return std::pow(2.0, -std::countr_zero(diff));
    }
    const auto& u = std::get<DenjoyPoint>(a);
    const auto& v = std::get<DenjoyPoint>(b);
    return circle::distance(circle::denjoy_embed(denjoy_, u),
                            circle::denjoy_embed(denjoy_, v));
}

SuspensionSystem suspend(CantorSystem h) { return SuspensionSystem(std::move(h)); }

SuspensionPoint flow(const SuspensionSystem& sys, SuspensionPoint p, double t) {
    const CantorSystem& h = sys.base();
    h.validate(p.base);
    if (p.s < 0.0 || p.s >= 1.0)
        throw PreconditionError("flow: roof coordinate must lie in [0,1)");
    if (h.kind() == CantorSystem::Kind::Odometer) {
        double headroom = std::pow(2.0, h.word_depth() - 2);
        if (std::fabs(t) > headroom) {
            char buf[128];
            std::snprintf(buf, sizeof buf,
                          "flow: |t| = %.6g exceeds carry headroom 2^(L-2) = %.6g; "
                          "rebuild with a larger word depth",
                          std::fabs(t), headroom);
            throw DepthError(buf);
        }
    }
    double lifted = p.s + t;
    double k = std::floor(lifted);
    double s = lifted - k;
    long long steps = static_cast<long long>(k);
    if (s >= 1.0) {
        s -= 1.0;
        steps += 1;
    }
    return SuspensionPoint{h.advance(p.base, steps), s};
}

double suspension_metric(const SuspensionSystem& sys, const SuspensionPoint& a,
                         const SuspensionPoint& b) {
    const CantorSystem& h = sys.base();
    h.validate(a.base);
    h.validate(b.base);
    double best = h.distance(a.base, b.base) + std::fabs(a.s - b.s);
    for (int k = -2; k <= 2; ++k) {
        if (k != 0) {
            // (x, s) ~ (h^k(x), s - k); compare the shifted copy with b.
            try {
                double cand =
                    h.distance(h.advance(a.base, k), b.base) + std::fabs(a.s - k - b.s);
                if (cand < best) best = cand;
            } catch (const TruncationError&) {
            }
        }
        try {
            double cand =
                h.distance(a.base, h.advance(b.base, k)) + std::fabs(b.s - k - a.s);
            if (cand < best) best = cand;
        } catch (const TruncationError&) {
        }
    }
    return best;
}

TimeTMap::TimeTMap(SuspensionSystem sys, double t) : sys_(std::move(sys)), t_(t) {
    if (!(t > 0.0)) throw PreconditionError("time_t_map: need t > 0");
}

TimeTMap time_t_map(const SuspensionSystem& sys, double t) { return TimeTMap(sys, t); }

DensityReport certify_minimal_time(const SuspensionSystem& sys, double t, double eps,
                                   long long N) {
    if (!(eps > 0.0)) throw PreconditionError("certify_minimal_time: need eps > 0");
    if (N < 1) throw PreconditionError("certify_minimal_time: need N >= 1");
    const CantorSystem& h = sys.base();

    long long s_cells = std::llround(1.0 / eps);
    if (s_cells < 1) s_cells = 1;
    long long base_cells = h.kind() == CantorSystem::Kind::Odometer
                               ? (1ll << h.word_depth())
                               : s_cells;
    long long total = base_cells * s_cells;
    if (total > (1ll << 26))
        throw ResourceError("certify_minimal_time: cell grid too large");

    std::vector<char> visited(static_cast<size_t>(total), 0);
    TimeTMap F(sys, t);
    SuspensionPoint p{h.start(), 0.0};
    for (long long step = 0; step < N; ++step) {
        long long bi;
        if (h.kind() == CantorSystem::Kind::Odometer) {
            bi = std::get<OdometerWord>(p.base).bits;
        } else {
            double angle =
                circle::denjoy_semiconjugacy(h.denjoy_system(),
                                             std::get<DenjoyPoint>(p.base))
                    .angle();
            bi = std::min<long long>(static_cast<long long>(angle * base_cells),
                                     base_cells - 1);
        }
        long long si = std::min<long long>(static_cast<long long>(p.s * s_cells),
                                           s_cells - 1);
        visited[static_cast<size_t>(bi * s_cells + si)] = 1;
        p = F.apply(p);
    }

    auto cell_center = [&](long long cell) {
        long long bi = cell / s_cells, si = cell % s_cells;
        BasePoint base;
        if (h.kind() == CantorSystem::Kind::Odometer)
            base = OdometerWord{static_cast<std::uint32_t>(bi), h.word_depth()};
        else
            base = DenjoyPoint::cantor(
                circle::CirclePoint((bi + 0.5) / static_cast<double>(base_cells)));
        return SuspensionPoint{base, (si + 0.5) / static_cast<double>(s_cells)};
    };

    DensityReport rep;
    rep.t = t;
    rep.eps = eps;
    rep.N = N;
    rep.cellsTotal = total;
    std::vector<long long> missed, seen;
    for (long long c = 0; c < total; ++c)
        (visited[static_cast<size_t>(c)] ? seen : missed).push_back(c);
    rep.cellsMissed = static_cast<long long>(missed.size());
    if (missed.empty()) {
        rep.coveringRadius = eps / 2.0;
        rep.verdict = "eps-dense";
        return rep;
    }
    double worst = 0.0;
    for (long long mc : missed) {
        SuspensionPoint m = cell_center(mc);
        double nearest = std::numeric_limits<double>::infinity();
        for (long long vc : seen) {
            double d = suspension_metric(sys, m, cell_center(vc));
            if (d < nearest) nearest = d;
        }
        if (nearest > worst) worst = nearest;
    }
    rep.coveringRadius = worst + eps / 2.0;
    char buf[64];
    std::snprintf(buf, sizeof buf, "not eps-dense at %lld", N);
    rep.verdict = buf;
    return rep;
}

}  // namespace minlab::susp
