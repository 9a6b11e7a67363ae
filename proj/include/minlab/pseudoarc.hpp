#pragma once

#include <vector>

namespace minlab::pseudoarc {

/**
 * Continuous piecewise-linear interval map given by its breakpoint graph.
 * Core maps live on [0,1] with g(0)=0, g(1)=1; the extended variant lives on
 * [-1,2] and equals the identity outside (0,1).
 */
struct BondingMap {
    std::vector<double> xs;  // strictly increasing, spans the domain
    std::vector<double> ys;
};

// Piecewise-linear map that is (1/level)-crooked, built by the doubling-back
// walk on the integer grid {0,...,3*level} with approach margin 2; the spare
// grid unit keeps every crookedness comparison strict under rounding.
BondingMap crooked_map(int level);

// Identity on [0,1] (the level-0 degenerate bonding map).
BondingMap identity_map();

// Extension of a core map to [-1,2] by the identity outside (0,1).
BondingMap extend_map(const BondingMap& g);

double bonding_eval(const BondingMap& g, double x);

BondingMap compose(const BondingMap& f, const BondingMap& g);  // f after g

/**
 * Crookedness test: for every a < b there are c < d in (a,b) whose values
 * nearly swap with the endpoint values, |f(c)-f(b)| <= delta and
 * |f(d)-f(a)| <= delta. Decided exactly over breakpoint pairs; the value
 * bands carry a 1e-12 slack so exact-threshold geometry cannot flip on
 * the last ulp.
 */
bool is_delta_crooked(const BondingMap& f, double delta);

/** Finite approximation to an inverse-limit point: coordinates with
 *  x_k = g(x_{k+1}). */
struct Tower {
    std::vector<double> coords;
};

// All preimages of y under g, left to right, each segment crossing counted
// once (shared breakpoint hits deduplicated).
std::vector<double> preimages(const BondingMap& g, double y);

Tower tower_extend(const BondingMap& g, const Tower& t, int branch);

bool tower_check(const BondingMap& g, const Tower& t);

// Weighted l1 distance on equal-depth towers, weights 2^{-k} by default,
// normalized so the diameter of the tower space is exactly 2.
double tower_metric(const Tower& a, const Tower& b,
                    const std::vector<double>& weights = {});

}  // namespace minlab::pseudoarc
