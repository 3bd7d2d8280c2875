// The grid chain complex over F2[U_1..U_k]: rectangle counting, the boundary
// map, finite Maslov-graded slices, homology ranks, the Alexander filtration
// and the tau invariant.
//
// Each Maslov grading d has a finite basis: a term U^m x sits in grading
// M(x) - 2|m|, so |m| = (M(x) - d)/2 is pinned and only generators with
// M(x) >= d contribute.  Everything downstream (boundary matrices, homology,
// tau) works slice by slice on those finite bases.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "gridtau/gf2.hpp"
#include "gridtau/grid.hpp"

namespace gridtau {

// Exponent vector over U_1..U_k (index 0 = U_1).
using Monomial = std::vector<int>;

int total_degree(const Monomial& m);

struct Rectangle {
    int c1, r1;   // bottom-left corner (x-coordinate of the source generator)
    int c2, r2;   // top-right corner
    int width, height;
    std::vector<int> o_mult;  // per normal index 1..k (0-based storage)
    int x_count = 0;
    bool contains_special = false;
};

// Rectangles joining x to y: empty interior, no special O-marking.  Empty
// unless y = x composed with a transposition of two columns; at most two.
std::vector<Rectangle> rectangles(const GridDiagram& d, const Perm& x, const Perm& y);

// All empty special-O-free rectangles out of x, with the transposed target.
struct OutRectangle {
    Perm target;
    Rectangle rect;
};
std::vector<OutRectangle> rectangles_out(const GridDiagram& d, const Perm& x);

// A finite F2[U]-linear combination of generators; terms cancel in pairs.
using Term = std::pair<Perm, Monomial>;

class ModuleElement {
public:
    void toggle(const Perm& g, const Monomial& m);
    void add(const ModuleElement& o);
    bool is_zero() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::set<Term>& terms() const { return terms_; }

    ModuleElement times_u(int index0, int power = 1) const;  // multiply by U_i

    bool operator==(const ModuleElement& o) const { return terms_ == o.terms_; }

private:
    std::set<Term> terms_;
};

ModuleElement boundary(const GridDiagram& d, const Perm& x);
ModuleElement boundary(const GridDiagram& d, const ModuleElement& e);  // U-equivariant

// --- slices -------------------------------------------------------------------

struct SliceBasis {
    int grading = 0;  // Maslov grading (integer; terms have even doubled M)
    std::vector<Term> basis;
    std::map<Term, int> index;

    int size() const { return static_cast<int>(basis.size()); }
    int find(const Term& t) const;  // -1 if absent
};

// Guard: slice construction enumerates all n! generators.
inline constexpr int kMaxSliceIndex = 9;

SliceBasis slice_basis(const GridDiagram& d, int maslov_grading);

// Matrix of the boundary map from slice d to slice d-1.  Throws if any
// boundary term fails to land in the target slice (a grading bug).
Gf2Matrix boundary_matrix(const GridDiagram& d, const SliceBasis& from, const SliceBasis& to);

std::map<int, int> homology_ranks(const GridDiagram& d, int d_min, int d_max);

// True iff U_i sends every homology class in the window to a boundary.
bool u_action_trivial(const GridDiagram& d, int index, int d_min, int d_max);

// --- tau ------------------------------------------------------------------------

struct TauResult {
    Grading tau;
    Term witness;  // slice-0 basis element at which the cycle closes
};

// Smallest filtration level whose cycles hit the generator of the homology of
// the full complex.  Requires a tight knot diagram.
TauResult tau_detailed(const GridDiagram& d);
Grading tau(const GridDiagram& d);

// Filtration level of a term: A(x) - |m|.
Grading filtration_level(const GridDiagram& d, const Term& t);

}  // namespace gridtau
