// The grid move calculus: renumbering, commutation, (de)stabilisation,
// birth, saddle, split and death, together with the declared Alexander
// grading shifts and the mini-language used by move files and the CLI.
//
// External coordinates are 1-based; everything in this header is 0-based.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gridtau/grid.hpp"

namespace gridtau {

struct MoveError : GridError {
    explicit MoveError(const std::string& m) : GridError(m) {}
};

enum class MoveKind {
    Renumber,  // LG-1
    Commute,   // LG-2
    Destab,    // LG-3 (index drops)
    Stab,      // LG-3 (index grows)
    Birth,     // LG-4
    Saddle,    // LG-5
    Split,     // LG-6
    Death,     // LG-7
};

// Which corner of the 2x2 block carries the O-marking in a (de)stabilisation;
// this also selects the destabilisation point used by the chain maps.
enum class BlockFlavor { TopRight, BottomLeft };

struct MoveInstance {
    MoveKind kind;
    std::vector<int> sigma;  // Renumber: image of 1..k (0-based values, sigma[i-1]+1 = new number)
    bool horizontal = false; // Commute: true = rows, false = columns
    int a = 0, b = 0;        // generic coordinates: annulus index / block anchor / column
    BlockFlavor flavor = BlockFlavor::TopRight;

    std::string str() const;
};

MoveInstance parse_move(const std::string& text);

// LG index 1..7 of a move kind (Stab and Destab are both LG-3).
int lg_index(MoveKind k);
Grading alexander_shift_declared(int lg);

// Applies the move after checking its preconditions; throws MoveError with
// the failing condition otherwise.
GridDiagram apply_move(const GridDiagram& d, const MoveInstance& mv);

// Commutation legality: adjacent annuli whose projected marking pairs do not
// interleave on the shared circle (shared positions count as failures).
bool commute_allowed(const GridDiagram& d, bool horizontal, int index, std::string* why = nullptr);

// Renumber so that the normal O in `column` becomes O_k; returns the move.
MoveInstance renumber_to_top(const GridDiagram& d, int column);

// The composite of Lemma-style flag advancement: returns the diagram with the
// special O-marking of the given component moved one marking forward along
// the orientation, together with the elementary renumber/commute/(de)stab
// moves realizing it.  Only defined for tight diagrams.
struct RotateResult {
    GridDiagram result;
    std::vector<MoveInstance> moves;
};
RotateResult rotate_special(const GridDiagram& d, int component_column);

}  // namespace gridtau
