#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include "minlab/circle.hpp"

namespace minlab::susp {

/** Binary adding-machine state: the L low bits, least significant bit first.
 *  Adding 1 with carry is integer increment modulo 2^L. */
struct OdometerWord {
    std::uint32_t bits = 0;
    int depth = 0;
};

using BasePoint = std::variant<OdometerWord, circle::DenjoyPoint>;

/**
 * Cantor minimal system: a finite-depth binary odometer, or the Cantor part
 * of a Denjoy blow-up. Both expose the same interface: a canonical start
 * point, k-step advance, and the base metric (2^{-first disagreement} for
 * words, embedded circle distance for Denjoy points).
 */
class CantorSystem {
  public:
    enum class Kind { Odometer, DenjoyCantor };

    static CantorSystem odometer(int word_depth);
    static CantorSystem denjoy(circle::DenjoySystem sys);

    Kind kind() const { return kind_; }
    int word_depth() const { return word_depth_; }
    const circle::DenjoySystem& denjoy_system() const { return denjoy_; }

    BasePoint start() const;
    void validate(const BasePoint& p) const;
    BasePoint advance(const BasePoint& p, long long k) const;
    double distance(const BasePoint& a, const BasePoint& b) const;

  private:
    CantorSystem() = default;
    Kind kind_ = Kind::Odometer;
    int word_depth_ = 0;
    circle::DenjoySystem denjoy_;
};

/** Point of the mapping torus: base point plus roof coordinate s in [0,1),
 *  with (x, 1) ~ (h(x), 0) applied eagerly. */
struct SuspensionPoint {
    BasePoint base;
    double s = 0.0;
};

/** Unit-roof suspension of a Cantor minimal system. */
class SuspensionSystem {
  public:
    explicit SuspensionSystem(CantorSystem h) : h_(std::move(h)) {}
    const CantorSystem& base() const { return h_; }

  private:
    CantorSystem h_;
};

SuspensionSystem suspend(CantorSystem h);

// phi_t(x, s) = (x, s+t) reduced by the identification. Odometer bases
// enforce the carry headroom |t| <= 2^{L-2}.
SuspensionPoint flow(const SuspensionSystem& sys, SuspensionPoint p, double t);

// Distance on the mapping torus: cheapest way to align the two points using
// a few wraps, d_base after k wraps plus the leftover time offset, minimized
// symmetrically over k. Wraps beyond |k| = 2 cost more than the diameter.
double suspension_metric(const SuspensionSystem& sys, const SuspensionPoint& a,
                         const SuspensionPoint& b);

/** Handle for the time-t map F_t = phi(t, .). */
class TimeTMap {
  public:
    TimeTMap(SuspensionSystem sys, double t);
    double t() const { return t_; }
    const SuspensionSystem& system() const { return sys_; }
    SuspensionPoint apply(const SuspensionPoint& p) const { return flow(sys_, p, t_); }

  private:
    SuspensionSystem sys_;
    double t_;
};

TimeTMap time_t_map(const SuspensionSystem& sys, double t);

/** Empirical density certificate for the time-t map: cell-visit bookkeeping
 *  on a cylinder-by-interval grid at resolution eps over N steps. Never
 *  claims minimality, only eps-density at the horizon. */
struct DensityReport {
    double t = 0.0;
    double eps = 0.0;
    long long N = 0;
    double coveringRadius = 0.0;
    std::string verdict;
    long long cellsMissed = 0;
    long long cellsTotal = 0;
};

DensityReport certify_minimal_time(const SuspensionSystem& sys, double t, double eps,
                                   long long N);

}  // namespace minlab::susp
