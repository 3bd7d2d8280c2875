// Staircase background diagrams, torus-knot grids, the closed-form tau of
// those knots, and the crossing-change count that unknots them.

#pragma once

#include "gridtau/complex.hpp"
#include "gridtau/grid.hpp"

namespace gridtau {

struct TorusParams {
    int p = 1, q = 1;  // coprime, positive
};

bool coprime(int a, int b);
void require_torus_params(const TorusParams& t);

// Index-n background with one special O in the bottom-right square and the
// normal O's climbing to the top-left along the antidiagonal.
GridDiagram staircase_background(int n);

// The index-(p+q) grid of the (p,q) torus knot over staircase_background.
GridDiagram torus_grid(const TorusParams& t);

// (p-1)(q-1)/2, asserted equal to the Alexander grading of the special
// generator of the torus grid.
Grading closed_form_tau(const TorusParams& t);

// Crossing changes needed to unknot, by the above-diagonal recursion
// c(p,q) = c(p-q,q) + q(q-1)/2; asserted equal to (p-1)(q-1)/2.
long long unknotting_count(const TorusParams& t);

}  // namespace gridtau
