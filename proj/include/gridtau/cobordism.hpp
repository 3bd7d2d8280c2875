// Cobordism move-scripts in standard form: all births, then the non-split
// saddles, then the splits, then the deaths, with renumberings, commutations
// and (de)stabilisations freely interleaved.  Validation replays the script,
// the ledger tracks the declared Alexander shifts, and the tau check compares
// the invariant across the ends.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gridtau/grid.hpp"
#include "gridtau/moves.hpp"

namespace gridtau {

struct CobordismScript {
    GridDiagram start;
    int births = 0, saddles = 0, deaths = 0;  // declared b, s, d
    std::vector<MoveInstance> steps;
    std::map<int, std::string> checkpoints;  // step index -> canonical grid text

    int genus_doubled() const { return saddles - births - deaths; }
};

CobordismScript parse_script(const std::string& json_text, const std::string& base_dir = "");
CobordismScript load_script(const std::string& path);
std::string emit_script(const CobordismScript& s);

struct ScriptReport {
    bool valid = false;
    std::string error;
    int error_step = -1;  // 0-based step index of the failure
    int genus = 0;
    bool end_is_tight_knot = false;
    GridDiagram end;
};

ScriptReport validate_script(const CobordismScript& s);

// Sum of the declared per-move Alexander shifts; throws on count mismatch.
Grading net_alexander_shift(const CobordismScript& s);

struct TauInequalityReport {
    Grading tau_start, tau_end;
    int genus = 0;
    bool holds = false;
};

TauInequalityReport tau_inequality_check(const CobordismScript& s);

}  // namespace gridtau
