#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "stf/tfd.hpp"

namespace stf {

// Centered block of the ambiguity plane from which measurements are drawn:
// large enough to collect auto-terms, small enough to avoid cross-terms.
struct Mask {
    int grid_n = 0;
    int side = 0;
    int row_lo = 0;  // inclusive storage bounds, side cells per axis
    int col_lo = 0;

    bool contains(int row, int col) const {
        return row >= row_lo && row < row_lo + side && col >= col_lo && col < col_lo + side;
    }
    // Row-major list of (row, col) storage indices.
    std::vector<std::pair<int, int>> cells() const;
};

// Builds the centered side x side block; for even grids the block centers on
// the origin cell (N/2, N/2). Even sides are anchored one cell low.
Mask build_mask(int n, int side);

struct MeasEntry {
    int row = 0;  // storage indices into the N x N ambiguity grid
    int col = 0;
    cplx value;
};

struct MeasurementSet {
    std::vector<MeasEntry> entries;
    int grid_n = 0;
    std::uint64_t seed = 0;
    double fraction = 1.0;
};

// round(fraction * side^2) distinct uniformly random mask cells with their
// plane values; a pure function of (seed, N, side, fraction).
MeasurementSet select_measurements(const AmbiguityMatrix& a, const Mask& mask, double fraction,
                                   std::uint64_t seed);

// Every cell of the plane, row-major (the fraction = 1, full-plane limit).
MeasurementSet full_measurements(const AmbiguityMatrix& a);

struct SolverConfig {
    double lambda_rel = 0.05;  // lambda as a fraction of max|adjoint(v)|
    double step = 1.0;         // safe at 1: the forward map is a row-subsampled unitary
    int max_iters = 2000;
    double rel_tol = 1e-6;
    bool debias = true;        // least-squares refit on the recovered support
};

struct SolverReport {
    int iterations = 0;
    double final_objective = 0.0;
    std::vector<double> objective_trace;  // non-increasing, starts at the initial iterate
    bool converged = false;
};

// Unitary forward 2D transform (TF plane -> ambiguity plane, matrix-free)
// sampled at the given (row, col) list, and its exact adjoint (zero-fill
// followed by the unitary inverse). <forward(s), v> == <s, adjoint(v)>.
std::vector<cplx> forward_op(const CGrid& sigma, const std::vector<std::pair<int, int>>& idx);
std::vector<cplx> forward_op(const TFMatrix& sigma, const std::vector<std::pair<int, int>>& idx);
CGrid adjoint_op(const std::vector<cplx>& v, const std::vector<std::pair<int, int>>& idx, int n);

// Magnitude shrinkage toward zero, preserving phase.
cplx soft_threshold(cplx z, double t);

// Iterative soft thresholding for
//   min_sigma lambda ||sigma||_1 + 1/2 ||A^M - F sigma||^2
// with lambda = lambda_rel * max|adjoint(v)|. Starts from adjoint(v) unless
// an initial plane is supplied. The recorded objective trace is
// non-increasing; a violated step is retried with half the step size.
std::pair<TFMatrix, SolverReport> ista_solve(const MeasurementSet& meas, const SolverConfig& cfg,
                                             const CGrid* initial = nullptr,
                                             std::vector<double> freq_axis = {});

}  // namespace stf
