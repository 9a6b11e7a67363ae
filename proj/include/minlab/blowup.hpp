#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "minlab/pseudoarc.hpp"
#include "minlab/skew.hpp"
#include "minlab/suspension.hpp"

namespace minlab::blowup {

/** Indices of the blown orbit points. TwoSided(n) = {-n,...,n} keeps the
 *  stage map invertible; BackwardOnly(n) = {-n,...,-1} makes the innermost
 *  fiber collapse forward, the noninvertible step. */
enum class Mode { TwoSided, BackwardOnly };

struct BlownIndexSet {
    Mode mode = Mode::TwoSided;
    int n = 1;
};

bool index_in_set(const BlownIndexSet& s, int i);
std::vector<int> index_list(const BlownIndexSet& s);

enum class FiberKind { IntervalU, TowerT };

using BasePointVar = std::variant<susp::SuspensionPoint, skew::TorusPoint>;

/**
 * The system being blown up: a time-t suspension map or a torus skew
 * product, together with the seed z whose orbit carries the fibers.
 */
class BaseSystem {
  public:
    enum class Kind { SuspensionTimeT, Skew };

    static BaseSystem suspension_time_t(susp::SuspensionSystem sys, double t,
                                        susp::SuspensionPoint seed);
    static BaseSystem skew_product(skew::SkewSystem F, skew::TorusPoint seed);

    Kind kind() const { return kind_; }
    const BasePointVar& seed() const { return seed_; }
    double time_step() const { return t_; }
    const susp::SuspensionSystem& suspension() const { return susp_; }
    const skew::SkewSystem& skew_system() const { return skew_; }

    BasePointVar apply(const BasePointVar& p) const;
    BasePointVar apply_inverse(const BasePointVar& p) const;
    double distance(const BasePointVar& a, const BasePointVar& b) const;

  private:
    BaseSystem() : susp_(susp::CantorSystem::odometer(2)) {}
    Kind kind_ = Kind::Skew;
    susp::SuspensionSystem susp_;
    double t_ = 0.0;
    skew::SkewSystem skew_;
    BasePointVar seed_;
};

using FiberCoord = std::variant<double, pseudoarc::Tower>;

/** Point of the stage space: a regular base point off the blown orbit, or a
 *  point of fiber i addressed by its coordinate. */
class StagePoint {
  public:
    static StagePoint regular(BasePointVar q);
    static StagePoint fiber(int index, double u);
    static StagePoint fiber(int index, pseudoarc::Tower t);

    bool is_fiber() const { return is_fiber_; }
    const BasePointVar& base() const { return base_; }
    int index() const { return index_; }
    const FiberCoord& coord() const { return coord_; }
    double interval_u() const { return std::get<double>(coord_); }
    const pseudoarc::Tower& tower() const { return std::get<pseudoarc::Tower>(coord_); }

  private:
    bool is_fiber_ = false;
    BasePointVar base_;
    int index_ = 0;
    FiberCoord coord_ = 0.0;
};

struct StageOptions {
    double weight_base = 0.5;   // fiber i gets weight weight_base^{|i|}
    double chart_radius = 0.05;
    int tower_level = 2;        // crookedness level of the tower bonding map
    int tower_depth = 3;        // coordinates per tower fiber point
};

/**
 * Finite-stage blow-up space: base system, blown index set, fiber kind,
 * null weight sequence, cached orbit points z_i and chart data.
 */
class StageSpace {
  public:
    const BaseSystem& base() const { return base_; }
    const BlownIndexSet& index_set() const { return indices_; }
    FiberKind fiber_kind() const { return kind_; }
    const StageOptions& options() const { return opts_; }
    double weight(int i) const;
    // z_i = F^i(z), cached for |i| <= n+1.
    const BasePointVar& orbit_point(int i) const;
    const pseudoarc::BondingMap& bonding() const { return bonding_; }

  private:
    friend StageSpace build_stage(BaseSystem, BlownIndexSet, FiberKind, StageOptions);
    StageSpace(BaseSystem base, BlownIndexSet indices, FiberKind kind, StageOptions opts)
        : base_(std::move(base)), indices_(indices), kind_(kind), opts_(opts) {}
    BaseSystem base_;
    BlownIndexSet indices_;
    FiberKind kind_ = FiberKind::IntervalU;
    StageOptions opts_;
    std::vector<BasePointVar> orbit_;  // index i stored at i + n + 1
    pseudoarc::BondingMap bonding_;
};

StageSpace build_stage(BaseSystem base, BlownIndexSet indices, FiberKind kind,
                       StageOptions opts = {});

// The extension map H: regular points move by F, fiber points shift index
// (interval coordinates transported by the derivative action for skew bases,
// kept identically for suspension bases), and a fiber whose shifted index
// leaves the set collapses to the regular orbit point.
StagePoint stage_map(const StageSpace& X, const StagePoint& p);

BasePointVar stage_project(const StageSpace& X, const StagePoint& p);

// Bonding map between consecutive stages: collapse the outermost fibers to
// their orbit points, keep everything else.
StagePoint stage_refine(const StageSpace& X, const StagePoint& p);

// Normalized first chart coordinate of the displacement from z_i to q:
// flow-time component over chart norm for suspension bases, arc coordinate
// of the displacement slope for skew bases, tapered continuously to 0
// between one and two chart radii.
double direction_coordinate(const StageSpace& X, int i, const BasePointVar& q);

double stage_metric(const StageSpace& X, const StagePoint& a, const StagePoint& b);

double fiber_diameter(const StageSpace& X, int i);

struct NoninvertibilityWitness {
    StagePoint a;
    StagePoint b;
    double separation = 0.0;
    double imageDistance = 0.0;
};

NoninvertibilityWitness noninvertibility_witness(const StageSpace& X);

struct AlmostOneToOneReport {
    long long samples = 0;
    long long singletonHits = 0;
    double singletonFraction = 0.0;
    std::vector<double> thresholds;
    std::vector<long long> fibersBelow;  // count of fibers with diameter < threshold
};

AlmostOneToOneReport almost_one_to_one_report(const StageSpace& X, long long sampleCount,
                                              const std::vector<double>& thresholds,
                                              std::uint64_t seed = 0x5eed);

}  // namespace minlab::blowup
