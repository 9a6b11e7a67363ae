#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "minlab/blowup.hpp"
#include "minlab/circle.hpp"
#include "minlab/config.hpp"
#include "minlab/errors.hpp"
#include "minlab/probes.hpp"
#include "minlab/pseudoarc.hpp"
#include "minlab/rigidity.hpp"
#include "minlab/skew.hpp"
#include "minlab/suspension.hpp"

namespace py = pybind11;
using namespace minlab;

namespace {

std::vector<circle::CirclePoint> to_points(const std::vector<double>& angles) {
    std::vector<circle::CirclePoint> pts;
    pts.reserve(angles.size());
    for (double a : angles) pts.emplace_back(a);
    return pts;
}

blowup::Mode parse_mode(const std::string& mode) {
    if (mode == "two-sided") return blowup::Mode::TwoSided;
    if (mode == "backward") return blowup::Mode::BackwardOnly;
    throw PreconditionError("mode must be 'two-sided' or 'backward'");
}

blowup::FiberKind parse_fiber(const std::string& fiber) {
    if (fiber == "interval") return blowup::FiberKind::IntervalU;
    if (fiber == "tower") return blowup::FiberKind::TowerT;
    throw PreconditionError("fiber must be 'interval' or 'tower'");
}

blowup::StageSpace make_stage(const std::string& kind, double t, int word_depth,
                              double alpha,
                              const std::vector<std::pair<int, double>>& roof,
                              const std::string& mode, int n, const std::string& fiber,
                              double weight_base) {
    blowup::BaseSystem base = [&] {
        if (kind == "odometer-suspension") {
            auto sys = susp::suspend(susp::CantorSystem::odometer(word_depth));
            susp::SuspensionPoint seed{sys.base().start(), 0.0};
            return blowup::BaseSystem::suspension_time_t(sys, t, seed);
        }
        if (kind == "denjoy-suspension") {
            auto sys = susp::suspend(susp::CantorSystem::denjoy(
                circle::denjoy_build(alpha, {circle::CirclePoint(0.0)})));
            susp::SuspensionPoint seed{sys.base().start(), 0.0};
            return blowup::BaseSystem::suspension_time_t(sys, t, seed);
        }
        if (kind == "skew")
            return blowup::BaseSystem::skew_product(
                skew::SkewSystem{alpha, skew::RoofFunction(roof)},
                skew::TorusPoint(0.0, 0.0));
        throw PreconditionError(
            "kind must be 'odometer-suspension', 'denjoy-suspension' or 'skew'");
    }();
    blowup::StageOptions opts;
    opts.weight_base = weight_base;
    return blowup::build_stage(std::move(base), {parse_mode(mode), n},
                               parse_fiber(fiber), opts);
}

py::dict bundle_to_dict(const probes::ReportBundle& b) {
    py::dict d;
    d["outDir"] = b.outDir;
    d["pass"] = b.pass;
    d["incomplete"] = b.incomplete;
    py::list ps;
    for (const auto& p : b.probes) {
        py::dict e;
        e["name"] = p.name;
        e["pass"] = p.pass;
        e["message"] = p.message;
        e["artifacts"] = p.artifacts;
        ps.append(e);
    }
    d["probes"] = ps;
    return d;
}

}  // namespace

PYBIND11_MODULE(_minlab, m) {
    m.doc() = "Minimal dynamical systems: Denjoy circles, Cantor suspensions, torus "
              "skew products, blow-up stage spaces, and their numeric probes.";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "MinlabError");
    py::register_exception<ConfigError>(m, "MinlabConfigError");

    py::class_<circle::RotationSystem>(m, "RotationSystem")
        .def(py::init<double>(), py::arg("alpha"))
        .def_property_readonly("alpha", &circle::RotationSystem::alpha)
        .def_property_readonly("is_rational", &circle::RotationSystem::is_rational)
        .def_property_readonly("numerator", &circle::RotationSystem::numerator)
        .def_property_readonly("denominator", &circle::RotationSystem::denominator);

    m.def(
        "orbit",
        [](const circle::RotationSystem& sys, double x0, long long n) {
            std::vector<double> out;
            for (auto p : circle::orbit(sys, circle::CirclePoint(x0), n))
                out.push_back(p.angle());
            return out;
        },
        py::arg("system"), py::arg("x0"), py::arg("n"));

    m.def(
        "eps_density",
        [](const std::vector<double>& angles) {
            return circle::eps_density(to_points(angles));
        },
        py::arg("angles"));

    py::class_<circle::DenjoyPoint>(m, "DenjoyPoint")
        .def_static(
            "cantor",
            [](double angle) {
                return circle::DenjoyPoint::cantor(circle::CirclePoint(angle));
            },
            py::arg("angle"))
        .def_static("gap", &circle::DenjoyPoint::gap, py::arg("seed"), py::arg("k"),
                    py::arg("s"))
        .def_property_readonly("is_gap", &circle::DenjoyPoint::is_gap)
        .def_property_readonly("seed", &circle::DenjoyPoint::seed)
        .def_property_readonly("k", &circle::DenjoyPoint::k)
        .def_property_readonly("s", &circle::DenjoyPoint::s)
        .def_property_readonly(
            "angle", [](const circle::DenjoyPoint& p) { return p.base().angle(); });

    py::class_<circle::DenjoySystem>(m, "DenjoySystem")
        .def_property_readonly("alpha", &circle::DenjoySystem::alpha)
        .def_property_readonly("depth", &circle::DenjoySystem::depth)
        .def_property_readonly("scale", &circle::DenjoySystem::scale)
        .def_property_readonly("total_gap", &circle::DenjoySystem::total_gap)
        .def_property_readonly("tail_bound", &circle::DenjoySystem::tail_bound);

    m.def(
        "denjoy_build",
        [](double alpha, const std::vector<double>& seeds, double scale, int depth) {
            return circle::denjoy_build(alpha, to_points(seeds), {scale, depth});
        },
        py::arg("alpha"), py::arg("seeds") = std::vector<double>{0.0},
        py::arg("scale") = 0.0, py::arg("depth") = 64);

    m.def("denjoy_map", &circle::denjoy_map, py::arg("system"), py::arg("p"));
    m.def("denjoy_map_inverse", &circle::denjoy_map_inverse, py::arg("system"),
          py::arg("p"));
    m.def(
        "denjoy_embed",
        [](const circle::DenjoySystem& sys, const circle::DenjoyPoint& p) {
            return circle::denjoy_embed(sys, p).angle();
        },
        py::arg("system"), py::arg("p"));
    m.def(
        "denjoy_semiconjugacy",
        [](const circle::DenjoySystem& sys, const circle::DenjoyPoint& p) {
            return circle::denjoy_semiconjugacy(sys, p).angle();
        },
        py::arg("system"), py::arg("p"));

    py::class_<pseudoarc::BondingMap>(m, "BondingMap")
        .def_readonly("xs", &pseudoarc::BondingMap::xs)
        .def_readonly("ys", &pseudoarc::BondingMap::ys);

    m.def("crooked_map", &pseudoarc::crooked_map, py::arg("level"));
    m.def("identity_map", &pseudoarc::identity_map);
    m.def("compose", &pseudoarc::compose, py::arg("f"), py::arg("g"));
    m.def("bonding_eval", &pseudoarc::bonding_eval, py::arg("g"), py::arg("x"));
    m.def("is_delta_crooked", &pseudoarc::is_delta_crooked, py::arg("g"),
          py::arg("delta"));

    py::class_<susp::SuspensionSystem>(m, "SuspensionSystem");
    m.def(
        "odometer_suspension",
        [](int word_depth) {
            return susp::suspend(susp::CantorSystem::odometer(word_depth));
        },
        py::arg("word_depth"));
    m.def(
        "denjoy_suspension",
        [](const circle::DenjoySystem& sys) {
            return susp::suspend(susp::CantorSystem::denjoy(sys));
        },
        py::arg("system"));

    py::class_<susp::DensityReport>(m, "DensityReport")
        .def_readonly("t", &susp::DensityReport::t)
        .def_readonly("eps", &susp::DensityReport::eps)
        .def_readonly("N", &susp::DensityReport::N)
        .def_readonly("coveringRadius", &susp::DensityReport::coveringRadius)
        .def_readonly("verdict", &susp::DensityReport::verdict)
        .def_readonly("cellsMissed", &susp::DensityReport::cellsMissed)
        .def_readonly("cellsTotal", &susp::DensityReport::cellsTotal);

    m.def("certify_minimal_time", &susp::certify_minimal_time, py::arg("system"),
          py::arg("t"), py::arg("eps"), py::arg("N"));

    py::class_<blowup::StageSpace>(m, "StageSpace")
        .def("weight", &blowup::StageSpace::weight, py::arg("i"))
        .def(
            "fiber_diameter",
            [](const blowup::StageSpace& X, int i) {
                return blowup::fiber_diameter(X, i);
            },
            py::arg("i"))
        .def_property_readonly("indices", [](const blowup::StageSpace& X) {
            return blowup::index_list(X.index_set());
        });

    m.def("stage_space", &make_stage, py::arg("kind"), py::arg("t") = 0.6180339887498949,
          py::arg("word_depth") = 8, py::arg("alpha") = 0.6180339887498949,
          py::arg("roof") = std::vector<std::pair<int, double>>{},
          py::arg("mode") = "backward", py::arg("n") = 4, py::arg("fiber") = "interval",
          py::arg("weight_base") = 0.5);

    m.def(
        "noninvertibility_witness",
        [](const blowup::StageSpace& X) {
            auto w = blowup::noninvertibility_witness(X);
            py::dict d;
            d["separation"] = w.separation;
            d["imageDistance"] = w.imageDistance;
            return d;
        },
        py::arg("stage"));

    m.def(
        "almost_one_to_one",
        [](const blowup::StageSpace& X, long long samples,
           const std::vector<double>& thresholds, std::uint64_t seed) {
            auto r = blowup::almost_one_to_one_report(X, samples, thresholds, seed);
            py::dict d;
            d["samples"] = r.samples;
            d["singletonHits"] = r.singletonHits;
            d["singletonFraction"] = r.singletonFraction;
            d["thresholds"] = r.thresholds;
            d["fibersBelow"] = r.fibersBelow;
            return d;
        },
        py::arg("stage"), py::arg("samples"), py::arg("thresholds"),
        py::arg("seed") = 0x5eed);

    m.def(
        "slope_transport",
        [](double alpha, const std::vector<std::pair<int, double>>& roof, double x,
           double u) {
            skew::SkewSystem F{alpha, skew::RoofFunction(roof)};
            return skew::slope_transport(F, x, skew::Direction(u)).u();
        },
        py::arg("alpha"), py::arg("roof"), py::arg("x"), py::arg("u"));

    m.def(
        "roof_derivative",
        [](const std::vector<std::pair<int, double>>& roof, double x) {
            return skew::roof_derivative(skew::RoofFunction(roof), x);
        },
        py::arg("roof"), py::arg("x"));

    m.def(
        "klein_equivariance_residual",
        [](double alpha, const std::vector<std::pair<int, double>>& roof,
           long long samples, std::uint64_t seed) {
            skew::SkewSystem F{alpha, skew::RoofFunction(roof)};
            SplitMix64 rng(seed);
            double worst = 0.0;
            for (long long i = 0; i < samples; ++i) {
                skew::TorusPoint p(rng.uniform(), rng.uniform());
                auto lhs = skew::klein_project(skew::skew_apply(F, p));
                auto rhs = skew::klein_induced(F, skew::klein_project(p));
                worst = std::max(worst, skew::klein_distance(lhs, rhs));
            }
            return worst;
        },
        py::arg("alpha"), py::arg("roof"), py::arg("samples") = 1000,
        py::arg("seed") = 0x5eed);

    m.def(
        "tiling_verdict",
        [](int R, bool allow_swap) {
            rigidity::TilingWindow w{R};
            auto maps = rigidity::enumerate_automorphisms(w, allow_swap, true);
            auto v = rigidity::classify_product_structure(w, maps);
            py::dict d;
            d["mapCount"] = v.mapCount;
            d["swapCount"] = v.swapCount;
            d["decomposable"] = v.decomposable;
            d["group"] = v.group;
            return d;
        },
        py::arg("R") = 2, py::arg("allow_swap") = false);

    m.def(
        "product_invariant",
        [](int k1, int k2, double alpha, double x0, double y0, long long N) {
            auto r = rigidity::product_rotation_invariant(k1, k2, alpha, {x0, y0}, N);
            py::dict d;
            d["value"] = r.value;
            d["drift"] = r.drift;
            d["steps"] = r.steps;
            return d;
        },
        py::arg("k1"), py::arg("k2"), py::arg("alpha"), py::arg("x0") = 0.0,
        py::arg("y0") = 0.0, py::arg("N") = 1000000);

    m.def(
        "product_nonminimality",
        [](int k1, int k2, double alpha, double x0, double y0, double tx, double ty,
           long long N) {
            auto r = rigidity::product_nonminimality_report(k1, k2, alpha, {x0, y0},
                                                            {tx, ty}, N);
            py::dict d;
            d["deltaI"] = r.deltaI;
            d["bound"] = r.bound;
            d["minDistance"] = r.minDistance;
            d["argmin"] = r.argmin;
            d["steps"] = r.steps;
            return d;
        },
        py::arg("k1"), py::arg("k2"), py::arg("alpha"), py::arg("x0"), py::arg("y0"),
        py::arg("tx"), py::arg("ty"), py::arg("N") = 1000000);

    m.def(
        "independent_pair_minima",
        [](double alpha, double beta, double tx, double ty,
           const std::vector<long long>& horizons) {
            return rigidity::independent_pair_minima(alpha, beta, {0.0, 0.0}, {tx, ty},
                                                     horizons);
        },
        py::arg("alpha"), py::arg("beta"), py::arg("tx"), py::arg("ty"),
        py::arg("horizons"));

    py::class_<config::ExperimentConfig>(m, "ExperimentConfig")
        .def_readonly("kind", &config::ExperimentConfig::kind)
        .def_readonly("probes", &config::ExperimentConfig::probes)
        .def_readonly("seed", &config::ExperimentConfig::seed)
        .def_readwrite("out_dir", &config::ExperimentConfig::out_dir);

    m.def("parse_config", &config::parse_config, py::arg("text"));
    m.def("load_config_file", &config::load_config_file, py::arg("path"));
    m.def(
        "run_experiment",
        [](const config::ExperimentConfig& cfg) {
            return bundle_to_dict(probes::run_experiment(cfg));
        },
        py::arg("config"));
}
