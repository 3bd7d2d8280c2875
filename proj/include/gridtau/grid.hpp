// Toroidal grid diagrams with O-markings (some flagged special) and optional
// X-markings, plus the combinatorial gradings defined on their generators.
//
// Conventions, used consistently everywhere:
//   * the fundamental domain is [0,n) x [0,n), rows increase upward;
//   * generators sit at integer lattice points, markings at square centers;
//   * all coordinates are stored doubled so that centers stay integral;
//   * gradings are stored doubled (Grading::doubled) to avoid rationals;
//   * rows/columns are 0-based internally, 1-based in file formats.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gridtau {

// A half-integer grading stored as twice its value.
struct Grading {
    int doubled = 0;

    static Grading whole(int v) { return Grading{2 * v}; }
    static Grading halves(int d) { return Grading{d}; }

    bool is_integer() const { return doubled % 2 == 0; }
    int as_integer() const {
        if (!is_integer()) throw std::logic_error("grading is not an integer");
        return doubled / 2;
    }
    std::string str() const;

    friend Grading operator+(Grading a, Grading b) { return Grading{a.doubled + b.doubled}; }
    friend Grading operator-(Grading a, Grading b) { return Grading{a.doubled - b.doubled}; }
    friend bool operator==(Grading a, Grading b) { return a.doubled == b.doubled; }
    friend bool operator!=(Grading a, Grading b) { return a.doubled != b.doubled; }
    friend bool operator<(Grading a, Grading b) { return a.doubled < b.doubled; }
    friend bool operator<=(Grading a, Grading b) { return a.doubled <= b.doubled; }
    friend bool operator>(Grading a, Grading b) { return a.doubled > b.doubled; }
    friend bool operator>=(Grading a, Grading b) { return a.doubled >= b.doubled; }
};

// A generator: one lattice point per column, column c at row sigma[c].
using Perm = std::vector<int>;

uint64_t encode_perm(const Perm& p);  // 4 bits per entry, n <= 16

struct GridError : std::runtime_error {
    explicit GridError(const std::string& m) : std::runtime_error(m) {}
};

struct GridDiagram {
    int n = 0;
    std::vector<int> o_row;      // column -> row of the O in that column
    std::vector<int> x_row;      // column -> row of the X; empty if none
    std::vector<char> special;   // per column: O is special
    std::vector<int> number;     // per column: 1..k for normal O's, 0 for special

    bool has_x() const { return !x_row.empty(); }
    int k() const;                        // number of normal O-markings
    int o_col(int row) const;             // inverse of o_row
    int x_col(int row) const;             // inverse of x_row
    int column_of_normal(int index) const;  // column carrying O_index

    // Left-to-right default numbering of the normal markings.
    void renumber_default();

    bool same_markings(const GridDiagram& o) const;  // ignores numbering
    bool operator==(const GridDiagram& o) const;

    GridDiagram translated(int dc, int dr) const;
    GridDiagram transposed() const;   // reflect across the diagonal
    GridDiagram rotated180() const;
    GridDiagram rotated90ccw() const;
    GridDiagram rotated90cw() const;
    GridDiagram flipped_h() const;    // columns reversed
    GridDiagram flipped_v() const;    // rows reversed
    GridDiagram forget_x() const;

    // Translation placing the special O-marking of `col` in the bottom-right
    // square; the planar form used for link drawings and crossing counts.
    GridDiagram canonical_cut() const;
};

std::vector<std::string> validate(const GridDiagram& d);
void require_valid(const GridDiagram& d);

// --- bilinear form and gradings -------------------------------------------

struct HalfPoint {
    int x2, y2;  // doubled coordinates
};

// Doubled value of J(P,Q) = sum over pairs of 1/2 [ (p1-q1)(p2-q2) > 0 ],
// extended bilinearly over integer-weighted formal sums.
int j_form_doubled(const std::vector<std::pair<int, HalfPoint>>& p,
                   const std::vector<std::pair<int, HalfPoint>>& q);

Grading maslov(const GridDiagram& d, const Perm& g);
Grading alexander(const GridDiagram& d, const Perm& g);

// Generator whose points are the top-left corners of the O-squares.
Perm special_generator(const GridDiagram& d);

// --- link structure --------------------------------------------------------

struct ComponentRecord {
    std::vector<int> columns;  // visiting order of the columns' marking pairs
    int special_count = 0;
    int length() const { return static_cast<int>(columns.size()); }
};

std::vector<ComponentRecord> components(const GridDiagram& d);
bool is_tight(const GridDiagram& d);
bool is_knot(const GridDiagram& d);  // one component

struct CrossingCount {
    int total = 0;
    int above_diagonal = 0;
};

// Transverse crossings of the rectilinear link projection drawn on the
// canonical cut (vertical segments cross over horizontal ones).
CrossingCount count_crossings(const GridDiagram& d);

// --- file format ------------------------------------------------------------

GridDiagram parse_grid(const std::string& text);
GridDiagram load_grid(const std::string& path);
std::string emit_grid(const GridDiagram& d);

// --- permutation iteration ---------------------------------------------------

// Calls f(perm) for every permutation of {0..n-1} in lexicographic order.
template <typename F>
void for_each_perm(int n, F&& f) {
    Perm p(n);
    for (int i = 0; i < n; ++i) p[i] = i;
    while (true) {
        f(const_cast<const Perm&>(p));
        int i = n - 2;
        while (i >= 0 && p[i] >= p[i + 1]) --i;
        if (i < 0) break;
        int j = n - 1;
        while (p[j] <= p[i]) --j;
        std::swap(p[i], p[j]);
        for (int a = i + 1, b = n - 1; a < b; ++a, --b) std::swap(p[a], p[b]);
    }
}

uint64_t factorial(int n);

inline int mod(int a, int n) {
    int r = a % n;
    return r < 0 ? r + n : r;
}

}  // namespace gridtau
