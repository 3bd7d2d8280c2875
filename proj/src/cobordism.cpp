#include "gridtau/cobordism.hpp"

#include "gridtau/complex.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace gridtau {

using nlohmann::json;

CobordismScript parse_script(const std::string& json_text, const std::string& base_dir) {
    json j = json::parse(json_text);
    CobordismScript s;
    std::string start = j.at("start").get<std::string>();
    if (start.find('\n') != std::string::npos || start.rfind("grid ", 0) == 0) {
        s.start = parse_grid(start);
    } else {
        std::string path = base_dir.empty() ? start : base_dir + "/" + start;
        s.start = load_grid(path);
    }
    const json& counts = j.at("counts");
    s.births = counts.at("b").get<int>();
    s.saddles = counts.at("s").get<int>();
    s.deaths = counts.at("d").get<int>();
    for (const auto& step : j.at("steps")) s.steps.push_back(parse_move(step.get<std::string>()));
    if (j.contains("checkpoints"))
        for (const auto& [key, value] : j.at("checkpoints").items())
            s.checkpoints[std::stoi(key)] = value.get<std::string>();
    return s;
}

CobordismScript load_script(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GridError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    auto slash = path.find_last_of('/');
    return parse_script(ss.str(), slash == std::string::npos ? "" : path.substr(0, slash));
}

std::string emit_script(const CobordismScript& s) {
    json j;
    j["start"] = emit_grid(s.start);
    j["counts"] = {{"b", s.births}, {"s", s.saddles}, {"d", s.deaths}};
    json steps = json::array();
    for (const MoveInstance& mv : s.steps) steps.push_back(mv.str());
    j["steps"] = steps;
    if (!s.checkpoints.empty()) {
        json cp;
        for (const auto& [idx, text] : s.checkpoints) cp[std::to_string(idx)] = text;
        j["checkpoints"] = cp;
    }
    return j.dump(2) + "\n";
}

ScriptReport validate_script(const CobordismScript& s) {
    ScriptReport rep;
    auto fail = [&](int step, const std::string& m) {
        rep.valid = false;
        rep.error = m;
        rep.error_step = step;
        return rep;
    };
    if (validate(s.start).size() || !s.start.has_x()) return fail(-1, "start diagram is invalid");
    if (!is_knot(s.start) || !is_tight(s.start)) return fail(-1, "start diagram is not a tight knot");

    if (s.genus_doubled() < 0 || s.genus_doubled() % 2 != 0)
        return fail(-1, "s - b - d must be even and non-negative");
    rep.genus = s.genus_doubled() / 2;

    // type ordering and counts
    int seen_phase = 4;  // births
    int n4 = 0, n5 = 0, n6 = 0, n7 = 0;
    for (size_t i = 0; i < s.steps.size(); ++i) {
        int lg = lg_index(s.steps[i].kind);
        if (lg <= 3) continue;
        if (lg < seen_phase) return fail(static_cast<int>(i), "move types out of order");
        seen_phase = lg;
        if (lg == 4) ++n4;
        if (lg == 5) ++n5;
        if (lg == 6) ++n6;
        if (lg == 7) ++n7;
    }
    if (n4 != s.births) return fail(-1, "birth count mismatch");
    if (n5 != s.saddles - s.deaths) return fail(-1, "saddle count mismatch");
    if (n6 != s.deaths) return fail(-1, "split count mismatch");
    if (n7 != s.deaths) return fail(-1, "death count mismatch");

    GridDiagram cur = s.start;
    for (size_t i = 0; i < s.steps.size(); ++i) {
        size_t before_components = components(cur).size();
        try {
            cur = apply_move(cur, s.steps[i]);
        } catch (const GridError& e) {
            return fail(static_cast<int>(i), e.what());
        }
        if (s.steps[i].kind == MoveKind::Split) {
            if (components(cur).size() != before_components + 1)
                return fail(static_cast<int>(i), "split move did not split a component");
        }
        auto cp = s.checkpoints.find(static_cast<int>(i));
        if (cp != s.checkpoints.end() && emit_grid(cur) != cp->second)
            return fail(static_cast<int>(i), "checkpoint mismatch");
    }
    rep.end = cur;
    rep.end_is_tight_knot = is_knot(cur) && is_tight(cur);
    if (!rep.end_is_tight_knot) return fail(-1, "end diagram is not a tight knot");
    rep.valid = true;
    return rep;
}

Grading net_alexander_shift(const CobordismScript& s) {
    int n4 = 0, n5 = 0, n6 = 0, n7 = 0;
    Grading total = Grading::whole(0);
    for (const MoveInstance& mv : s.steps) {
        int lg = lg_index(mv.kind);
        total = total + alexander_shift_declared(lg);
        if (lg == 4) ++n4;
        if (lg == 5) ++n5;
        if (lg == 6) ++n6;
        if (lg == 7) ++n7;
    }
    if (n4 != s.births || n5 != s.saddles - s.deaths || n6 != s.deaths || n7 != s.deaths)
        throw GridError("script counts are inconsistent with its steps");
    if (total.doubled != s.genus_doubled())
        throw GridError("net Alexander shift does not equal the genus");
    return total;
}

TauInequalityReport tau_inequality_check(const CobordismScript& s) {
    ScriptReport rep = validate_script(s);
    if (!rep.valid)
        throw GridError("invalid script at step " + std::to_string(rep.error_step) + ": " + rep.error);
    TauInequalityReport out;
    out.genus = rep.genus;
    out.tau_start = tau(s.start);
    out.tau_end = tau(rep.end);
    int diff = out.tau_start.doubled - out.tau_end.doubled;
    if (diff < 0) diff = -diff;
    out.holds = diff <= 2 * out.genus;
    return out;
}

}  // namespace gridtau
