#include "minlab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "minlab/errors.hpp"

namespace minlab::config {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

struct Entry {
    std::string value;
    int line;
};

struct Section {
    std::string name;
    int line;
    std::vector<std::pair<std::string, Entry>> kv;
};

struct Sections {
    std::vector<Section> data;

    const std::vector<std::pair<std::string, Entry>>* find(const std::string& name) const {
        for (const auto& s : data)
            if (s.name == name) return &s.kv;
        return nullptr;
    }
};

Sections tokenize(const std::string& text) {
    Sections out;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    std::string current;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("unterminated section header", lineno);
            current = trim(line.substr(1, line.size() - 2));
            for (const auto& s : out.data)
                if (s.name == current)
                    throw ConfigError("duplicate section [" + current + "]", lineno);
            out.data.push_back({current, lineno, {}});
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected key = value", lineno);
        if (current.empty())
            throw ConfigError("key outside any [section]", lineno);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", lineno);
        auto& kv = out.data.back().kv;
        for (const auto& [k, e] : kv)
            if (k == key) throw ConfigError("duplicate key '" + key + "'", lineno);
        kv.push_back({key, Entry{value, lineno}});
    }
    return out;
}

double parse_double(const Entry& e, const std::string& key) {
    try {
        size_t pos = 0;
        double v = std::stod(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("key '" + key + "': expected a number, got '" + e.value + "'",
                          e.line);
    }
}

long long parse_int(const Entry& e, const std::string& key) {
    try {
        size_t pos = 0;
        long long v = std::stoll(e.value, &pos);
        if (pos != e.value.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw ConfigError("key '" + key + "': expected an integer, got '" + e.value + "'",
                          e.line);
    }
}

bool parse_bool(const Entry& e, const std::string& key) {
    if (e.value == "true" || e.value == "on" || e.value == "yes") return true;
    if (e.value == "false" || e.value == "off" || e.value == "no") return false;
    throw ConfigError("key '" + key + "': expected true/false, got '" + e.value + "'",
                      e.line);
}

// Applies `fn` to each key of the section and rejects keys no handler claimed.
template <typename Fn>
void consume(const std::vector<std::pair<std::string, Entry>>& kv,
             const std::set<std::string>& known, Fn fn) {
    for (const auto& [key, entry] : kv) {
        if (!known.count(key))
            throw ConfigError("unknown key '" + key + "'", entry.line);
        fn(key, entry);
    }
}

const std::set<std::string> kKindsWithAlpha = {"rotation", "denjoy", "denjoy-suspension",
                                               "skew", "klein"};
const std::set<std::string> kSuspensionKinds = {"odometer-suspension", "denjoy-suspension"};
const std::set<std::string> kSkewKinds = {"skew", "klein"};

}  // namespace

const std::vector<std::pair<std::string, std::string>>& probe_catalog() {
    static const std::vector<std::pair<std::string, std::string>> catalog = {
        {"orbit", "export the forward orbit of the configured system"},
        {"density", "largest uncovered gap / cell-visit density at horizon N"},
        {"fibers", "fiber diameter table of the blow-up stage space"},
        {"witness", "two points with one image in backward-only mode"},
        {"almost11", "singleton-fiber sampling and diameter histogram"},
        {"slope", "secant slopes of radial images against the derivative shift"},
        {"equivariance", "quotient map commutes with the skew product"},
        {"tiling", "exhaustive lattice-symmetry enumeration and group verdict"},
        {"product", "invariant drift and distance bound for dependent rotations"},
    };
    return catalog;
}

ExperimentConfig parse_config(const std::string& text) {
    ExperimentConfig cfg;
    cfg.echo = text;
    Sections sec = tokenize(text);

    for (const auto& s : sec.data)
        if (s.name != "system" && s.name != "blowup" && s.name != "probes" && s.name != "output")
            throw ConfigError("unknown section [" + s.name + "]", s.line);

    const auto* system = sec.find("system");
    if (!system) throw ConfigError("missing [system] section", 0);
    bool have_alpha = false;
    consume(*system,
            {"kind", "alpha", "seeds", "scale", "depth", "word_depth", "t", "roof"},
            [&](const std::string& key, const Entry& e) {
                if (key == "kind") cfg.kind = e.value;
                else if (key == "alpha") { cfg.alpha = parse_double(e, key); have_alpha = true; }
                else if (key == "seeds") {
                    cfg.seeds.clear();
                    for (const auto& part : split(e.value, ','))
                        cfg.seeds.push_back(parse_double(Entry{part, e.line}, key));
                } else if (key == "scale") cfg.gap_scale = parse_double(e, key);
                else if (key == "depth") cfg.gap_depth = static_cast<int>(parse_int(e, key));
                else if (key == "word_depth") cfg.word_depth = static_cast<int>(parse_int(e, key));
                else if (key == "t") cfg.t = parse_double(e, key);
                else if (key == "roof") {
                    for (const auto& part : split(e.value, ',')) {
                        size_t colon = part.find(':');
                        if (colon == std::string::npos)
                            throw ConfigError("roof harmonics use freq:amplitude", e.line);
                        cfg.roof.push_back(
                            {static_cast<int>(parse_int(Entry{trim(part.substr(0, colon)), e.line}, key)),
                             parse_double(Entry{trim(part.substr(colon + 1)), e.line}, key)});
                    }
                }
            });
    if (cfg.kind.empty()) throw ConfigError("[system] requires kind", 0);
    static const std::set<std::string> kKinds = {"rotation", "denjoy", "odometer-suspension",
                                                 "denjoy-suspension", "skew", "klein"};
    if (!kKinds.count(cfg.kind))
        throw ConfigError("unknown system kind '" + cfg.kind + "'", 0);
    if (kKindsWithAlpha.count(cfg.kind) && !have_alpha)
        throw ConfigError("system kind '" + cfg.kind + "' requires alpha", 0);
    if (cfg.t == 0.0) cfg.t = 0.6180339887498949;
    if (kSkewKinds.count(cfg.kind)) {
        for (auto [m, a] : cfg.roof)
            if (m < 1) throw ConfigError("roof frequencies must be positive integers", 0);
    } else if (!cfg.roof.empty()) {
        throw ConfigError("roof harmonics only apply to skew/klein systems", 0);
    }

    if (const auto* bl = sec.find("blowup")) {
        cfg.has_blowup = true;
        consume(*bl, {"mode", "n", "fiber", "weight_base", "tower_level", "tower_depth"},
                [&](const std::string& key, const Entry& e) {
                    if (key == "mode") {
                        if (e.value == "two-sided") cfg.mode = blowup::Mode::TwoSided;
                        else if (e.value == "backward") cfg.mode = blowup::Mode::BackwardOnly;
                        else throw ConfigError("mode must be two-sided or backward", e.line);
                    } else if (key == "n") cfg.n = static_cast<int>(parse_int(e, key));
                    else if (key == "fiber") {
                        if (e.value == "interval") cfg.fiber = blowup::FiberKind::IntervalU;
                        else if (e.value == "tower") cfg.fiber = blowup::FiberKind::TowerT;
                        else throw ConfigError("fiber must be interval or tower", e.line);
                    } else if (key == "weight_base") cfg.weight_base = parse_double(e, key);
                    else if (key == "tower_level") cfg.tower_level = static_cast<int>(parse_int(e, key));
                    else if (key == "tower_depth") cfg.tower_depth = static_cast<int>(parse_int(e, key));
                });
        if (cfg.n < 1) throw ConfigError("[blowup] n must be >= 1", 0);
    }

    const auto* probes = sec.find("probes");
    if (!probes) throw ConfigError("missing [probes] section", 0);
    consume(*probes,
            {"run", "orbit.n", "density.n", "density.eps", "fibers.k", "almost11.samples",
             "slope.x", "slope.u", "equivariance.samples", "tiling.radius", "tiling.swap",
             "product.k1", "product.k2", "product.n", "product.alpha", "product.x0",
             "product.y0", "product.target_x", "product.target_y"},
            [&](const std::string& key, const Entry& e) {
                if (key == "run") {
                    for (const auto& name : split(e.value, ',')) {
                        bool known = false;
                        for (const auto& [p, desc] : probe_catalog())
                            if (p == name) known = true;
                        if (!known) throw ConfigError("unknown probe '" + name + "'", e.line);
                        cfg.probes.push_back(name);
                    }
                } else if (key == "orbit.n") cfg.orbit_n = parse_int(e, key);
                else if (key == "density.n") cfg.density_n = parse_int(e, key);
                else if (key == "density.eps") cfg.density_eps = parse_double(e, key);
                else if (key == "fibers.k") cfg.fibers_k = static_cast<int>(parse_int(e, key));
                else if (key == "almost11.samples") cfg.almost11_samples = parse_int(e, key);
                else if (key == "slope.x") cfg.slope_x = parse_double(e, key);
                else if (key == "slope.u") cfg.slope_u = parse_double(e, key);
                else if (key == "equivariance.samples") cfg.equivariance_samples = parse_int(e, key);
                else if (key == "tiling.radius") cfg.tiling_radius = static_cast<int>(parse_int(e, key));
                else if (key == "tiling.swap") cfg.tiling_swap = parse_bool(e, key);
                else if (key == "product.k1") cfg.product_k1 = static_cast<int>(parse_int(e, key));
                else if (key == "product.k2") cfg.product_k2 = static_cast<int>(parse_int(e, key));
                else if (key == "product.n") cfg.product_n = parse_int(e, key);
                else if (key == "product.alpha") cfg.product_alpha = parse_double(e, key);
                else if (key == "product.x0") cfg.product_x0 = parse_double(e, key);
                else if (key == "product.y0") cfg.product_y0 = parse_double(e, key);
                else if (key == "product.target_x") cfg.product_target_x = parse_double(e, key);
                else if (key == "product.target_y") cfg.product_target_y = parse_double(e, key);
            });
    if (cfg.probes.empty()) throw ConfigError("[probes] requires a run list", 0);

    const auto* output = sec.find("output");
    if (!output) throw ConfigError("missing [output] section", 0);
    bool have_seed = false;
    consume(*output, {"directory", "formats", "seed"},
            [&](const std::string& key, const Entry& e) {
                if (key == "directory") cfg.out_dir = e.value;
                else if (key == "formats") {
                    cfg.fmt_csv = cfg.fmt_json = cfg.fmt_svg = false;
                    for (const auto& f : split(e.value, ',')) {
                        if (f == "csv") cfg.fmt_csv = true;
                        else if (f == "json") cfg.fmt_json = true;
                        else if (f == "svg") cfg.fmt_svg = true;
                        else throw ConfigError("unknown format '" + f + "'", e.line);
                    }
                } else if (key == "seed") {
                    cfg.seed = static_cast<std::uint64_t>(parse_int(e, key));
                    have_seed = true;
                }
            });
    if (!have_seed)
        throw ConfigError("[output] requires an explicit seed for sampling", 0);

    // Cross-section prerequisites, checked before any probe runs.
    auto requires_blowup = [&](const std::string& probe) {
        if (!cfg.has_blowup)
            throw ConfigError("probe '" + probe + "' requires a [blowup] section", 0);
        if (!kSuspensionKinds.count(cfg.kind) && !kSkewKinds.count(cfg.kind))
            throw ConfigError("probe '" + probe +
                                  "' requires a suspension or skew system to blow up",
                              0);
    };
    for (const auto& probe : cfg.probes) {
        if (probe == "fibers" || probe == "almost11" || probe == "witness")
            requires_blowup(probe);
        if (probe == "witness" && cfg.mode != blowup::Mode::BackwardOnly)
            throw ConfigError(
                "probe 'witness' requires backward mode; the two-sided stage map is "
                "invertible",
                0);
        if ((probe == "slope" || probe == "equivariance") && !kSkewKinds.count(cfg.kind))
            throw ConfigError("probe '" + probe + "' requires a skew or klein system", 0);
        if (probe == "slope" && !(cfg.slope_u > -1.0 && cfg.slope_u < 1.0))
            throw ConfigError(
                "probe 'slope' needs a non-vertical direction: slope.u in (-1,1)", 0);
        if (probe == "equivariance") {
            for (auto [m, a] : cfg.roof)
                if (m % 2 == 0)
                    throw ConfigError(
                        "probe 'equivariance' rejected: equivariance requires odd "
                        "harmonics",
                        0);
        }
    }
    if (cfg.kind == "klein") {
        for (auto [m, a] : cfg.roof)
            if (m % 2 == 0)
                throw ConfigError(
                    "klein system rejected: equivariance requires odd harmonics", 0);
    }
    return cfg;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path, 0);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace minlab::config
