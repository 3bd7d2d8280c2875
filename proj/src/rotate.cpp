#include "gridtau/moves.hpp"

namespace gridtau {

RotateResult rotate_special(const GridDiagram& d, int component_column) {
    (void)d;
    (void)component_column;
    throw MoveError("rotate_special: not yet implemented");
}

}  // namespace gridtau
