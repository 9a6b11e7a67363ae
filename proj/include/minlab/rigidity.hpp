#pragma once

#include <string>
#include <vector>

#include "minlab/skew.hpp"

namespace minlab::rigidity {

/** Cell type of the composant tiling: parity of each lattice coordinate,
 *  even -> p (pseudo-arc row/column), odd -> a (arc row/column). */
enum class Mark { P, A };

inline Mark mark_of(int coord) { return coord % 2 == 0 ? Mark::P : Mark::A; }

struct Cell {
    int i = 0;
    int j = 0;
    bool operator==(const Cell& o) const { return i == o.i && j == o.j; }
};

/** Finite window {-R,...,R}^2 of the tiled lattice, edge adjacency. */
struct TilingWindow {
    int R = 2;
};

std::vector<Cell> window_cells(const TilingWindow& w);

/** Injective adjacency- and type-preserving map of the window into Z^2,
 *  stored as images in window_cells order. */
struct LatticeMap {
    std::vector<Cell> images;
};

// Exhaustive backtracking enumeration of the window's lattice symmetries.
// The monotone flag demands both unit steps map to coordinate-increasing
// unit steps (the fixed-point-property consequence: the map cannot reverse
// the order of the pseudo-arc rows); allowSwap admits maps sending the
// horizontal step to a vertical one. Translations are bounded by 2R per
// coordinate.
std::vector<LatticeMap> enumerate_automorphisms(const TilingWindow& w, bool allowSwap,
                                                bool monotone);

struct ProductStructureVerdict {
    long long mapCount = 0;
    long long swapCount = 0;
    bool decomposable = true;
    std::string group;  // "Z" or "Z_x_Z2"
};

// Checks that every map is an even translation (i,j) -> (i+2a, j+2b),
// possibly composed with the coordinate swap, and names the generated group.
ProductStructureVerdict classify_product_structure(const TilingWindow& w,
                                                   const std::vector<LatticeMap>& maps);

/** Invariance data for I(x,y) = (k2 x - k1 y) mod 1 along the product
 *  rotation (x,y) -> (x + k1 a, y + k2 a). */
struct InvariantReport {
    double value = 0.0;
    double drift = 0.0;
    long long steps = 0;
};

InvariantReport product_rotation_invariant(int k1, int k2, double alpha,
                                           skew::TorusPoint p0, long long N = 1000000);

struct NonminimalityReport {
    double invariantStart = 0.0;
    double invariantTarget = 0.0;
    double deltaI = 0.0;
    double bound = 0.0;     // deltaI / sqrt(k1^2 + k2^2)
    double minDistance = 0.0;
    long long argmin = 0;
    long long steps = 0;
};

// Orbit scan of the rationally dependent product rotation against a target
// off the invariant subtorus: the recorded minimum must respect the
// analytic point-to-subtorus bound.
NonminimalityReport product_nonminimality_report(int k1, int k2, double alpha,
                                                 skew::TorusPoint p0,
                                                 skew::TorusPoint target, long long N);

// Contrast scan: a product of rotations by rationally independent numbers,
// minimum orbit distance to the target recorded at each horizon. The minima
// keep shrinking; there is no positive bound.
std::vector<double> independent_pair_minima(double alpha, double beta,
                                            skew::TorusPoint p0, skew::TorusPoint target,
                                            const std::vector<long long>& horizons);

}  // namespace minlab::rigidity
