// Chain maps associated to the grid moves: identity, renumbering, the
// pentagon map of a commutation, the four destabilisation/stabilisation
// maps counting spiral domains around the destabilisation point, the
// hexagon map of a special destabilisation, and the projection map.
//
// Every constructor returns a full descriptor (image of every source
// generator plus the variable rule); verify_chain_map replays f d = d f
// exactly and reports the observed grading shifts.

#pragma once

#include <map>
#include <optional>

#include "gridtau/complex.hpp"
#include "gridtau/grid.hpp"
#include "gridtau/moves.hpp"

namespace gridtau {

struct VariableRule {
    enum Type { Identity, Renumber, SetZero, Substitute } type = Identity;
    std::vector<int> sigma;  // Renumber: 0-based images
    int subst_target = 0;    // Substitute: 1-based j in U_{k+1} -> U_j
    int source_k = 0, target_k = 0;

    // Applies the rule to an input monomial; nullopt when the term dies.
    std::optional<Monomial> apply(const Monomial& m) const;
};

struct ChainMapDescriptor {
    GridDiagram source, target;
    std::map<Perm, ModuleElement> images;
    VariableRule rule;
    int declared_maslov_shift = 0;
    std::optional<Grading> declared_alexander_shift;
    std::string label;

    const ModuleElement& image_of(const Perm& g) const;
};

struct ChainMapReport {
    bool is_chain_map = false;
    std::optional<int> maslov_shift_observed;      // max over image terms; empty if f = 0
    std::optional<Grading> alexander_shift_observed;
};

ChainMapReport verify_chain_map(const ChainMapDescriptor& cm);

// --- constructors -------------------------------------------------------------

ChainMapDescriptor identity_map(const GridDiagram& d);
ChainMapDescriptor renumber_map(const GridDiagram& d, const MoveInstance& mv);
// LG-5: source and target share their generators and O-markings.
ChainMapDescriptor saddle_map(const GridDiagram& d, const MoveInstance& mv);

// Commutation (S3-move or LG-2); mv must be a Commute instance.
ChainMapDescriptor pentagon_map(const GridDiagram& d, const MoveInstance& mv);

enum class StabVariant { D11, D22, S11, S22 };

// Destabilisation maps d11/d22 go from `big` to the destabbed diagram; the
// stabilisation maps s11/s22 go the other way.  mv is the Destab instance on
// `big` (for s-maps: the destab that undoes the stabilisation).
ChainMapDescriptor destab_map(const GridDiagram& big, const MoveInstance& mv, StabVariant v);

// LG-4: the stabilisation map into the birthed diagram.
ChainMapDescriptor birth_map(const GridDiagram& d, const MoveInstance& mv, StabVariant v);

// Special destabilisation (S3-5 / LG-7); mv is the Death instance.
ChainMapDescriptor hexagon_map(const GridDiagram& d, const MoveInstance& mv);

// S3-6 / LG-6; mv is the Split instance.
ChainMapDescriptor projection_map(const GridDiagram& d, const MoveInstance& mv);

// --- homology-level checks -----------------------------------------------------

// Rank of the map induced on homology in source grading d, together with the
// homology dimensions on both sides.
struct InducedRank {
    int rank = 0;
    int source_dim = 0;
    int target_dim = 0;
};
InducedRank induced_homology_rank(const ChainMapDescriptor& cm, int source_grading);

}  // namespace gridtau
