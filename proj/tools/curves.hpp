#pragma once

#include "curve_table.hpp"

// Emits the data table behind one of the five standard figures of the
// Zipf-Pareto efficiency analysis:
//   1  two-state efficiency eta(p; a) for a = 0.1..0.9
//   2  closed-form efficiency eta(a) on (0, 1/2), divergent at both ends
//   3  (Gini, eta) parametrized by the tail index beta in (1, 50]
//   4  (eta, Shannon) over the same beta range
//   5  (eta, exponential- and power-gauge varentropy) with the divergence
//      at beta = 1 marked explicitly
// `grid` controls the number of interior grid points (>= 10).
CurveTable emit_curves(int figure, int grid);
