#include "minlab/probes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "minlab/errors.hpp"
#include "minlab/report.hpp"
#include "minlab/rigidity.hpp"

namespace minlab::probes {

namespace {

using nlohmann::ordered_json;
namespace fs = std::filesystem;

struct Context {
    const config::ExperimentConfig& cfg;
    fs::path dir;
    std::optional<circle::DenjoySystem> denjoy;
    std::optional<susp::SuspensionSystem> susp_sys;
    std::optional<skew::SkewSystem> skew_sys;
    std::optional<blowup::StageSpace> stage;

    bool is_suspension() const {
        return cfg.kind == "odometer-suspension" || cfg.kind == "denjoy-suspension";
    }
    bool is_skew() const { return cfg.kind == "skew" || cfg.kind == "klein"; }
};

std::vector<circle::CirclePoint> seed_points(const config::ExperimentConfig& cfg) {
    std::vector<circle::CirclePoint> s;
    for (double v : cfg.seeds) s.emplace_back(v);
    return s;
}

const circle::DenjoySystem& denjoy_system(Context& c) {
    if (!c.denjoy)
        c.denjoy = circle::denjoy_build(c.cfg.alpha, seed_points(c.cfg),
                                        {c.cfg.gap_scale, c.cfg.gap_depth});
    return *c.denjoy;
}

const susp::SuspensionSystem& suspension_system(Context& c) {
    if (!c.susp_sys) {
        if (c.cfg.kind == "odometer-suspension")
            c.susp_sys = susp::suspend(susp::CantorSystem::odometer(c.cfg.word_depth));
        else
            c.susp_sys = susp::suspend(susp::CantorSystem::denjoy(denjoy_system(c)));
    }
    return *c.susp_sys;
}

const skew::SkewSystem& skew_system(Context& c) {
    if (!c.skew_sys)
        c.skew_sys = skew::SkewSystem{c.cfg.alpha, skew::RoofFunction(c.cfg.roof)};
    return *c.skew_sys;
}

const blowup::StageSpace& stage_space(Context& c) {
    if (!c.stage) {
        blowup::BaseSystem base =
            c.is_skew()
                ? blowup::BaseSystem::skew_product(skew_system(c),
                                                   skew::TorusPoint(0.0, 0.0))
                : blowup::BaseSystem::suspension_time_t(
                      suspension_system(c), c.cfg.t,
                      susp::SuspensionPoint{suspension_system(c).base().start(), 0.0});
        blowup::StageOptions opts;
        opts.weight_base = c.cfg.weight_base;
        opts.tower_level = c.cfg.tower_level;
        opts.tower_depth = c.cfg.tower_depth;
        c.stage = blowup::build_stage(std::move(base), {c.cfg.mode, c.cfg.n}, c.cfg.fiber,
                                      opts);
    }
    return *c.stage;
}

std::string art(Context& c, ProbeOutcome& out, const std::string& name) {
    out.artifacts.push_back(name);
    return (c.dir / name).string();
}

void write_json(Context& c, ProbeOutcome& out, const std::string& name,
                const ordered_json& doc) {
    report::write_text_file(art(c, out, name), doc.dump(2) + "\n");
}

std::string factor_angle(const circle::DenjoySystem& sys, const circle::DenjoyPoint& p) {
    return report::num(circle::denjoy_semiconjugacy(sys, p).angle());
}

// orbit: export the forward orbit in the system's natural coordinates.
void probe_orbit(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    long long n = cfg.orbit_n;
    if (n < 1) throw PreconditionError("orbit: need at least one step");
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<double, double>> plot;

    if (cfg.kind == "rotation") {
        circle::RotationSystem sys(cfg.alpha);
        auto pts = circle::orbit(sys, circle::CirclePoint(cfg.seeds[0]), n);
        header = {"step", "angle"};
        for (long long i = 0; i < n; ++i) {
            rows.push_back({std::to_string(i), report::num(pts[i].angle())});
            plot.push_back({double(i), pts[i].angle()});
        }
    } else if (cfg.kind == "denjoy") {
        const auto& sys = denjoy_system(c);
        auto start = circle::DenjoyPoint::cantor(circle::CirclePoint(cfg.seeds[0]));
        auto pts = circle::orbit(sys, start, n);
        header = {"step", "angle"};
        for (long long i = 0; i < n; ++i) {
            double a = circle::denjoy_embed(sys, pts[i]).angle();
            rows.push_back({std::to_string(i), report::num(a)});
            plot.push_back({double(i), a});
        }
    } else if (c.is_suspension()) {
        const auto& sys = suspension_system(c);
        susp::SuspensionPoint p{sys.base().start(), 0.0};
        header = {"step", "cell", "s"};
        for (long long i = 0; i < n; ++i) {
            std::string cell =
                sys.base().kind() == susp::CantorSystem::Kind::Odometer
                    ? std::to_string(std::get<susp::OdometerWord>(p.base).bits)
                    : factor_angle(denjoy_system(c),
                                   std::get<circle::DenjoyPoint>(p.base));
            rows.push_back({std::to_string(i), cell, report::num(p.s)});
            plot.push_back({double(i), p.s});
            if (i + 1 < n) p = susp::flow(sys, p, cfg.t);
        }
    } else if (cfg.kind == "skew") {
        const auto& F = skew_system(c);
        skew::TorusPoint p(cfg.seeds[0], 0.0);
        header = {"step", "x", "y"};
        for (long long i = 0; i < n; ++i) {
            rows.push_back({std::to_string(i), report::num(p.x), report::num(p.y)});
            plot.push_back({p.x, p.y});
            p = skew::skew_apply(F, p);
        }
    } else {
        const auto& F = skew_system(c);
        skew::KleinPoint q = skew::klein_project(skew::TorusPoint(cfg.seeds[0], 0.0));
        header = {"step", "x", "y"};
        for (long long i = 0; i < n; ++i) {
            rows.push_back(
                {std::to_string(i), report::num(q.rep.x), report::num(q.rep.y)});
            plot.push_back({q.rep.x, q.rep.y});
            q = skew::klein_induced(F, q);
        }
    }

    if (cfg.fmt_csv) report::write_csv(art(c, out, "orbit.csv"), header, rows);
    if (cfg.fmt_svg)
        report::write_svg_plot(art(c, out, "orbit.svg"), "orbit (" + cfg.kind + ")",
                               plot);
    out.pass = true;
    out.message = std::to_string(n) + " steps exported";
}

std::vector<long long> geometric_checkpoints(long long N) {
    std::vector<long long> ns;
    for (long long k = 1; k < N; k *= 2) ns.push_back(k);
    ns.push_back(N);
    return ns;
}

// Grid visit scan shared by the torus and Klein density paths.
struct GridScan {
    long long cellsTotal = 0;
    long long cellsMissed = 0;
    double coveringRadius = 0.0;
};

template <typename Step, typename Dist>
GridScan grid_density(double extent_x, double eps, long long N, Step step, Dist dist) {
    long long sx = std::llround(extent_x / eps);
    long long sy = std::llround(1.0 / eps);
    if (sx < 1 || sy < 1) throw PreconditionError("density: eps too coarse for the domain");
    long long total = sx * sy;
    if (total > (1LL << 26))
        throw ResourceError("density: grid of " + std::to_string(total) +
                            " cells exceeds the 2^26 budget");
    double wx = extent_x / double(sx), wy = 1.0 / double(sy);
    std::vector<char> hit(static_cast<size_t>(total), 0);
    long long visited = 0;
    for (long long i = 0; i < N; ++i) {
        auto [x, y] = step(i);
        long long ix = std::min<long long>(sx - 1, static_cast<long long>(x / wx));
        long long iy = std::min<long long>(sy - 1, static_cast<long long>(y / wy));
        size_t idx = static_cast<size_t>(ix * sy + iy);
        if (!hit[idx]) {
            hit[idx] = 1;
            ++visited;
        }
    }
    GridScan g;
    g.cellsTotal = total;
    g.cellsMissed = total - visited;
    double half = 0.5 * std::sqrt(wx * wx + wy * wy);
    if (g.cellsMissed == 0) {
        g.coveringRadius = half;
        return g;
    }
    auto center = [&](long long idx) {
        return std::pair<double, double>{(double(idx / sy) + 0.5) * wx,
                                         (double(idx % sy) + 0.5) * wy};
    };
    // Keep the refinement bounded: subsample the visited set deterministically.
    long long stride = std::max<long long>(1, visited / 50000);
    std::vector<std::pair<double, double>> anchors;
    long long seen = 0;
    for (long long idx = 0; idx < total; ++idx)
        if (hit[static_cast<size_t>(idx)] && (seen++ % stride == 0))
            anchors.push_back(center(idx));
    double worst = 0.0;
    for (long long idx = 0; idx < total; ++idx) {
        if (hit[static_cast<size_t>(idx)]) continue;
        auto [mx, my] = center(idx);
        double best = 2.0;
        for (auto [ax, ay] : anchors) best = std::min(best, dist(mx, my, ax, ay));
        worst = std::max(worst, best);
    }
    g.coveringRadius = worst + half;
    return g;
}

void probe_density(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    double eps = cfg.density_eps;
    long long N = cfg.density_n;
    if (!(eps > 0.0 && eps < 1.0))
        throw PreconditionError("density: eps must lie in (0,1)");
    if (N < 1) throw PreconditionError("density: need at least one step");

    if (cfg.kind == "rotation" || cfg.kind == "denjoy") {
        std::vector<double> angles;
        angles.reserve(static_cast<size_t>(N));
        if (cfg.kind == "rotation") {
            circle::RotationSystem sys(cfg.alpha);
            for (auto p : circle::orbit(sys, circle::CirclePoint(cfg.seeds[0]), N))
                angles.push_back(p.angle());
        } else {
            const auto& sys = denjoy_system(c);
            auto start = circle::DenjoyPoint::cantor(circle::CirclePoint(cfg.seeds[0]));
            for (const auto& p : circle::orbit(sys, start, N))
                angles.push_back(circle::denjoy_embed(sys, p).angle());
        }
        std::vector<std::vector<std::string>> rows;
        std::vector<std::pair<double, double>> plot;
        double radius = 1.0;
        for (long long n : geometric_checkpoints(N)) {
            std::vector<circle::CirclePoint> prefix;
            prefix.reserve(static_cast<size_t>(n));
            for (long long i = 0; i < n; ++i) prefix.emplace_back(angles[size_t(i)]);
            radius = circle::eps_density(prefix);
            rows.push_back({std::to_string(n), report::num(radius)});
            plot.push_back({double(n), radius});
        }
        bool pass = radius < eps;
        if (cfg.fmt_csv)
            report::write_csv(art(c, out, "density.csv"), {"n", "coveringRadius"}, rows);
        if (cfg.fmt_svg)
            report::write_svg_plot(art(c, out, "density.svg"),
                                   "largest gap vs orbit length", plot, true);
        if (cfg.fmt_json) {
            ordered_json doc;
            doc["kind"] = cfg.kind;
            doc["eps"] = eps;
            doc["N"] = N;
            doc["coveringRadius"] = radius;
            doc["verdict"] =
                pass ? "eps-dense" : "not eps-dense at " + std::to_string(N);
            write_json(c, out, "density.json", doc);
        }
        out.pass = pass;
        char buf[128];
        std::snprintf(buf, sizeof buf, "largest gap %.3g against eps %.3g", radius, eps);
        out.message = buf;
        return;
    }

    if (c.is_suspension()) {
        auto rep = susp::certify_minimal_time(suspension_system(c), cfg.t, eps, N);
        if (cfg.fmt_json) {
            ordered_json doc;
            doc["t"] = rep.t;
            doc["eps"] = rep.eps;
            doc["N"] = rep.N;
            doc["coveringRadius"] = rep.coveringRadius;
            doc["verdict"] = rep.verdict;
            doc["cellsMissed"] = rep.cellsMissed;
            write_json(c, out, "density.json", doc);
        }
        out.pass = rep.cellsMissed == 0;
        out.message = rep.verdict + " (" + std::to_string(rep.cellsMissed) + " of " +
                      std::to_string(rep.cellsTotal) + " cells missed)";
        return;
    }

    GridScan g;
    if (cfg.kind == "skew") {
        const auto& F = skew_system(c);
        skew::TorusPoint p(cfg.seeds[0], 0.0);
        g = grid_density(
            1.0, eps, N,
            [&](long long) {
                auto cur = std::pair<double, double>{p.x, p.y};
                p = skew::skew_apply(F, p);
                return cur;
            },
            [](double ax, double ay, double bx, double by) {
                return skew::torus_distance({ax, ay}, {bx, by});
            });
    } else {
        const auto& F = skew_system(c);
        skew::KleinPoint q = skew::klein_project(skew::TorusPoint(cfg.seeds[0], 0.0));
        g = grid_density(
            0.5, eps, N,
            [&](long long) {
                auto cur = std::pair<double, double>{q.rep.x, q.rep.y};
                q = skew::klein_induced(F, q);
                return cur;
            },
            [](double ax, double ay, double bx, double by) {
                return skew::klein_distance({skew::TorusPoint{ax, ay}},
                                            {skew::TorusPoint{bx, by}});
            });
    }
    bool pass = g.cellsMissed == 0;
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["eps"] = eps;
        doc["N"] = N;
        doc["coveringRadius"] = g.coveringRadius;
        doc["verdict"] = pass ? "eps-dense" : "not eps-dense at " + std::to_string(N);
        doc["cellsMissed"] = g.cellsMissed;
        doc["cellsTotal"] = g.cellsTotal;
        write_json(c, out, "density.json", doc);
    }
    out.pass = pass;
    out.message = std::to_string(g.cellsMissed) + " of " + std::to_string(g.cellsTotal) +
                  " cells missed";
}

void probe_fibers(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    const auto& X = stage_space(c);
    auto idx = blowup::index_list(X.index_set());
    int k = cfg.fibers_k;
    if (k < 0) throw PreconditionError("fibers: k must be nonnegative");

    std::vector<std::vector<std::string>> rows;
    std::vector<std::pair<double, double>> plot;
    bool formula_ok = true;
    for (int i : idx) {
        double w = X.weight(i);
        double d = blowup::fiber_diameter(X, i);
        double after = blowup::index_in_set(X.index_set(), i + k)
                           ? blowup::fiber_diameter(X, i + k)
                           : 0.0;
        if (d != 2.0 * std::pow(cfg.weight_base, std::abs(i))) formula_ok = false;
        rows.push_back({std::to_string(i), report::num(w), report::num(d),
                        report::num(after)});
        plot.push_back({double(i), d});
    }

    // Walk an actual fiber point and confirm the image diameters follow the
    // formula step by step, collapsing to 0 once the index leaves the set.
    bool walk_ok = true;
    blowup::StagePoint p =
        X.fiber_kind() == blowup::FiberKind::IntervalU
            ? blowup::StagePoint::fiber(idx.front(), 1.0)
            : blowup::StagePoint::fiber(
                  idx.front(),
                  pseudoarc::Tower{std::vector<double>(
                      static_cast<size_t>(cfg.tower_depth), 0.0)});
    for (int step = 1; step <= k; ++step) {
        p = blowup::stage_map(X, p);
        int expect = idx.front() + step;
        bool inside = blowup::index_in_set(X.index_set(), expect);
        if (p.is_fiber() != inside) walk_ok = false;
        if (p.is_fiber()) {
            if (p.index() != expect) walk_ok = false;
            double d = blowup::fiber_diameter(X, p.index());
            if (d != 2.0 * std::pow(cfg.weight_base, std::abs(expect))) walk_ok = false;
        }
    }

    if (cfg.fmt_csv)
        report::write_csv(art(c, out, "fibers.csv"),
                          {"index", "weight", "diameter", "diameterAfterK"}, rows);
    if (cfg.fmt_svg)
        report::write_svg_plot(art(c, out, "fibers.svg"), "fiber diameter by index",
                               plot, true);
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["fibers"] = idx.size();
        doc["k"] = k;
        doc["formulaExact"] = formula_ok;
        doc["imageWalkExact"] = walk_ok;
        write_json(c, out, "fibers.json", doc);
    }
    out.pass = formula_ok && walk_ok;
    out.message = std::to_string(idx.size()) + " fibers, image walk to k=" +
                  std::to_string(k) + (out.pass ? " matches" : " deviates");
}

void probe_witness(Context& c, ProbeOutcome& out) {
    const auto& X = stage_space(c);
    auto w = blowup::noninvertibility_witness(X);
    bool pass = w.imageDistance == 0.0 && w.separation > 0.0;
    if (c.cfg.fmt_json) {
        ordered_json doc;
        doc["mode"] = "backward";
        doc["n"] = c.cfg.n;
        doc["separation"] = w.separation;
        doc["imageDistance"] = w.imageDistance;
        doc["pass"] = pass;
        write_json(c, out, "witness.json", doc);
    }
    out.pass = pass;
    char buf[128];
    std::snprintf(buf, sizeof buf, "separation %.6g, image distance %.6g", w.separation,
                  w.imageDistance);
    out.message = buf;
}

void probe_almost11(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    const auto& X = stage_space(c);
    std::vector<double> thresholds;
    for (int n = 1; n <= 10; ++n) thresholds.push_back(1.0 / n);
    auto rep = blowup::almost_one_to_one_report(X, cfg.almost11_samples, thresholds,
                                                cfg.seed);
    std::vector<long long> closed;
    for (int n = 1; n <= 10; ++n) {
        long long cnt = 0;
        for (int i : blowup::index_list(X.index_set()))
            if (2.0 * std::pow(cfg.weight_base, std::abs(i)) < 1.0 / n) ++cnt;
        closed.push_back(cnt);
    }
    bool histogram_ok = rep.fibersBelow == closed;
    bool pass = histogram_ok && rep.singletonFraction == 1.0;
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["samples"] = rep.samples;
        doc["singletonHits"] = rep.singletonHits;
        doc["singletonFraction"] = rep.singletonFraction;
        doc["thresholds"] = rep.thresholds;
        doc["fibersBelow"] = rep.fibersBelow;
        doc["closedForm"] = closed;
        doc["histogramMatch"] = histogram_ok;
        write_json(c, out, "almost11.json", doc);
    }
    if (cfg.fmt_csv) {
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < thresholds.size(); ++i)
            rows.push_back({std::to_string(i + 1), report::num(thresholds[i]),
                            std::to_string(rep.fibersBelow[i]),
                            std::to_string(closed[i])});
        report::write_csv(art(c, out, "almost11.csv"),
                          {"n", "threshold", "fibersBelow", "closedForm"}, rows);
    }
    out.pass = pass;
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "singleton fraction %.4g over %lld samples, histogram %s",
                  rep.singletonFraction, rep.samples,
                  histogram_ok ? "matches" : "deviates");
    out.message = buf;
}

void probe_slope(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    const auto& F = skew_system(c);
    double x = cfg.slope_x, u = cfg.slope_u;
    double theta = u * 1.5707963267948966;
    double beta = std::tan(theta);
    double expected = beta + skew::roof_derivative(F.roof, x);

    const std::vector<double> radii = {1e-2, 1e-3, 1e-4};
    std::vector<double> secants, errors;
    for (double rho : radii) {
        skew::TorusPoint p0(x, 0.0);
        skew::TorusPoint p1(x + rho * std::cos(theta), rho * std::sin(theta));
        auto q0 = skew::skew_apply(F, p0);
        auto q1 = skew::skew_apply(F, p1);
        double dx = signed_mod1(q1.x - q0.x);
        double dy = signed_mod1(q1.y - q0.y);
        secants.push_back(dy / dx);
        errors.push_back(std::abs(secants.back() - expected));
    }
    bool monotone = errors[0] > errors[1] && errors[1] > errors[2];
    bool pass = monotone && errors.back() < 1e-4;

    if (cfg.fmt_csv) {
        std::vector<std::vector<std::string>> rows;
        for (size_t i = 0; i < radii.size(); ++i)
            rows.push_back({report::num(radii[i]), report::num(secants[i]),
                            report::num(errors[i])});
        report::write_csv(art(c, out, "slope.csv"), {"radius", "secant", "error"}, rows);
    }
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["x"] = x;
        doc["u"] = u;
        doc["beta"] = beta;
        doc["expected"] = expected;
        doc["radii"] = radii;
        doc["secants"] = secants;
        doc["errors"] = errors;
        doc["pass"] = pass;
        write_json(c, out, "slope.json", doc);
    }
    out.pass = pass;
    char buf[128];
    std::snprintf(buf, sizeof buf, "secant error %.3g at radius 1e-4, %s",
                  errors.back(), monotone ? "monotone" : "non-monotone");
    out.message = buf;
}

void probe_equivariance(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    const auto& F = skew_system(c);
    SplitMix64 rng(cfg.seed);
    double worst = 0.0;
    long long N = cfg.equivariance_samples;
    if (N < 1) throw PreconditionError("equivariance: need at least one sample");
    for (long long i = 0; i < N; ++i) {
        skew::TorusPoint p(rng.uniform(), rng.uniform());
        auto lhs = skew::klein_project(skew::skew_apply(F, p));
        auto rhs = skew::klein_induced(F, skew::klein_project(p));
        worst = std::max(worst, skew::klein_distance(lhs, rhs));
    }
    bool pass = worst <= 1e-12;
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["samples"] = N;
        doc["maxResidual"] = worst;
        doc["pass"] = pass;
        write_json(c, out, "equivariance.json", doc);
    }
    out.pass = pass;
    char buf[128];
    std::snprintf(buf, sizeof buf, "max quotient residual %.3g over %lld samples", worst,
                  N);
    out.message = buf;
}

void probe_tiling(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    rigidity::TilingWindow w{cfg.tiling_radius};
    auto maps = rigidity::enumerate_automorphisms(w, cfg.tiling_swap, true);
    auto verdict = rigidity::classify_product_structure(w, maps);
    bool pass = verdict.decomposable && verdict.mapCount > 0;
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["R"] = cfg.tiling_radius;
        doc["allowSwap"] = cfg.tiling_swap;
        doc["mapCount"] = verdict.mapCount;
        doc["swapCount"] = verdict.swapCount;
        doc["decomposable"] = verdict.decomposable;
        doc["group"] = verdict.group;
        write_json(c, out, "tiling.json", doc);
    }
    out.pass = pass;
    out.message = std::to_string(verdict.mapCount) + " maps, group " + verdict.group;
}

void probe_product(Context& c, ProbeOutcome& out) {
    const auto& cfg = c.cfg;
    skew::TorusPoint p0(cfg.product_x0, cfg.product_y0);
    skew::TorusPoint target(cfg.product_target_x, cfg.product_target_y);
    auto inv = rigidity::product_rotation_invariant(cfg.product_k1, cfg.product_k2,
                                                    cfg.product_alpha, p0,
                                                    cfg.product_n);
    auto rep = rigidity::product_nonminimality_report(cfg.product_k1, cfg.product_k2,
                                                      cfg.product_alpha, p0, target,
                                                      cfg.product_n);
    bool pass = inv.drift < 1e-9 && rep.minDistance >= rep.bound - 1e-6;
    if (cfg.fmt_json) {
        ordered_json doc;
        doc["k1"] = cfg.product_k1;
        doc["k2"] = cfg.product_k2;
        doc["alpha"] = cfg.product_alpha;
        doc["invariant"] = inv.value;
        doc["drift"] = inv.drift;
        doc["steps"] = inv.steps;
        doc["deltaI"] = rep.deltaI;
        doc["bound"] = rep.bound;
        doc["minDistance"] = rep.minDistance;
        doc["argmin"] = rep.argmin;
        doc["pass"] = pass;
        write_json(c, out, "product.json", doc);
    }
    out.pass = pass;
    char buf[160];
    std::snprintf(buf, sizeof buf, "drift %.3g, min distance %.6g against bound %.6g",
                  inv.drift, rep.minDistance, rep.bound);
    out.message = buf;
}

void dispatch(Context& c, const std::string& name, ProbeOutcome& out) {
    if (name == "orbit") probe_orbit(c, out);
    else if (name == "density") probe_density(c, out);
    else if (name == "fibers") probe_fibers(c, out);
    else if (name == "witness") probe_witness(c, out);
    else if (name == "almost11") probe_almost11(c, out);
    else if (name == "slope") probe_slope(c, out);
    else if (name == "equivariance") probe_equivariance(c, out);
    else if (name == "tiling") probe_tiling(c, out);
    else if (name == "product") probe_product(c, out);
    else throw PreconditionError("unknown probe: " + name);
}

}  // namespace

ReportBundle run_experiment(const config::ExperimentConfig& cfg) {
    ReportBundle bundle;
    bundle.outDir = cfg.out_dir;
    Context c{cfg, fs::path(cfg.out_dir), {}, {}, {}, {}};
    std::error_code ec;
    fs::create_directories(c.dir, ec);
    if (ec) throw Error("cannot create output directory " + cfg.out_dir + ": " +
                        ec.message());

    for (const auto& name : cfg.probes) {
        ProbeOutcome out;
        out.name = name;
        bool aborted = false;
        try {
            dispatch(c, name, out);
        } catch (const ResourceError& e) {
            out.pass = false;
            out.message = e.what();
            aborted = true;
        } catch (const Error& e) {
            out.pass = false;
            out.message = e.what();
        }
        bundle.pass = bundle.pass && out.pass;
        bundle.probes.push_back(std::move(out));
        if (aborted) {
            bundle.incomplete = true;
            break;
        }
    }

    ordered_json doc;
    doc["tool"] = "minlab";
    doc["version"] = "0.1.0";
    ordered_json summary;
    summary["pass"] = bundle.pass;
    summary["probesRun"] = bundle.probes.size();
    long long failed = 0;
    for (const auto& p : bundle.probes)
        if (!p.pass) ++failed;
    summary["probesFailed"] = failed;
    summary["incomplete"] = bundle.incomplete;
    doc["summary"] = summary;
    ordered_json plist = ordered_json::array();
    for (const auto& p : bundle.probes) {
        ordered_json e;
        e["name"] = p.name;
        e["pass"] = p.pass;
        e["message"] = p.message;
        e["artifacts"] = p.artifacts;
        plist.push_back(e);
    }
    doc["probes"] = plist;
    doc["config"] = cfg.echo;
    report::write_text_file((c.dir / "report.json").string(), doc.dump(2) + "\n");
    return bundle;
}

}  // namespace minlab::probes
