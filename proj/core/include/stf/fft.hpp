#pragma once

#include <span>

#include "stf/grid.hpp"

namespace stf {

// Unnormalized DFT conventions throughout:
//   Forward:  X[k] = sum_n x[n] e^{-j2pi kn/N}
//   Backward: x[n] = sum_k X[k] e^{+j2pi kn/N}   (no 1/N)
enum class FftDir { Forward, Backward };

// In-place transform of the whole span.
void fft(std::span<cplx> data, FftDir dir);

// Transform every row / every column of a grid in place.
void fft_rows(CGrid& g, FftDir dir);
void fft_cols(CGrid& g, FftDir dir);

// Rotate a centered-storage sequence so the origin bin (index n/2) moves to
// index 0, and back. For even n the two rotations coincide.
void shift_origin_to_front(std::span<cplx> v);
void shift_origin_to_center(std::span<cplx> v);

// Same rotations applied to the row order / column order of a grid.
void shift_rows_to_front(CGrid& g);
void shift_rows_to_center(CGrid& g);
void shift_cols_to_front(CGrid& g);
void shift_cols_to_center(CGrid& g);

}  // namespace stf
