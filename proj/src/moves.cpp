#include "gridtau/moves.hpp"

#include <algorithm>
#include <sstream>

namespace gridtau {

int lg_index(MoveKind k) {
    switch (k) {
        case MoveKind::Renumber: return 1;
        case MoveKind::Commute: return 2;
        case MoveKind::Destab:
        case MoveKind::Stab: return 3;
        case MoveKind::Birth: return 4;
        case MoveKind::Saddle: return 5;
        case MoveKind::Split: return 6;
        case MoveKind::Death: return 7;
    }
    throw MoveError("unknown move kind");
}

Grading alexander_shift_declared(int lg) {
    switch (lg) {
        case 1:
        case 2:
        case 3: return Grading::whole(0);
        case 4: return Grading::halves(-1);
        case 5: return Grading::halves(1);
        case 6: return Grading::halves(-1);
        case 7: return Grading::halves(1);
    }
    throw MoveError("no declared shift for move type " + std::to_string(lg));
}

std::string MoveInstance::str() const {
    std::ostringstream o;
    switch (kind) {
        case MoveKind::Renumber: {
            o << "renumber ";
            for (size_t i = 0; i < sigma.size(); ++i) o << (i ? "," : "") << sigma[i] + 1;
            break;
        }
        case MoveKind::Commute:
            o << "commute " << (horizontal ? 'h' : 'v') << ' ' << a + 1;
            break;
        case MoveKind::Destab: o << "destab " << a + 1 << ',' << b + 1; break;
        case MoveKind::Stab:
            o << "stab " << a + 1 << ',' << b + 1 << ' '
              << (flavor == BlockFlavor::TopRight ? "ne" : "sw");
            break;
        case MoveKind::Birth: o << "birth " << a + 1 << ',' << b + 1; break;
        case MoveKind::Saddle: o << "saddle " << a + 1 << ',' << b + 1; break;
        case MoveKind::Split: o << "split " << a + 1 << ',' << b + 1; break;
        case MoveKind::Death: o << "death " << a + 1; break;
    }
    return o.str();
}

MoveInstance parse_move(const std::string& text) {
    std::istringstream in(text);
    std::string word;
    if (!(in >> word)) throw MoveError("empty move");
    MoveInstance mv{};
    auto read_pair = [&](const char* what) {
        std::string rest;
        if (!(in >> rest)) throw MoveError(std::string("expected coordinates after '") + what + "'");
        auto comma = rest.find(',');
        if (comma == std::string::npos) throw MoveError("expected c,r coordinates");
        mv.a = std::stoi(rest.substr(0, comma)) - 1;
        mv.b = std::stoi(rest.substr(comma + 1)) - 1;
    };
    if (word == "renumber") {
        mv.kind = MoveKind::Renumber;
        std::string rest;
        if (!(in >> rest)) throw MoveError("expected a permutation after 'renumber'");
        std::istringstream rs(rest);
        std::string tok;
        while (std::getline(rs, tok, ',')) mv.sigma.push_back(std::stoi(tok) - 1);
    } else if (word == "commute") {
        mv.kind = MoveKind::Commute;
        std::string dir;
        if (!(in >> dir) || (dir != "h" && dir != "v")) throw MoveError("expected 'h' or 'v'");
        mv.horizontal = (dir == "h");
        int idx;
        if (!(in >> idx)) throw MoveError("expected an annulus index");
        mv.a = idx - 1;
    } else if (word == "destab") {
        mv.kind = MoveKind::Destab;
        read_pair("destab");
    } else if (word == "stab") {
        mv.kind = MoveKind::Stab;
        read_pair("stab");
        std::string fl;
        if (in >> fl) {
            if (fl == "ne")
                mv.flavor = BlockFlavor::TopRight;
            else if (fl == "sw")
                mv.flavor = BlockFlavor::BottomLeft;
            else
                throw MoveError("unknown stab flavor '" + fl + "'");
        }
    } else if (word == "birth") {
        mv.kind = MoveKind::Birth;
        read_pair("birth");
    } else if (word == "saddle") {
        mv.kind = MoveKind::Saddle;
        read_pair("saddle");
    } else if (word == "split") {
        mv.kind = MoveKind::Split;
        read_pair("split");
    } else if (word == "death") {
        mv.kind = MoveKind::Death;
        int c;
        if (!(in >> c)) throw MoveError("expected a column");
        mv.a = c - 1;
    } else {
        throw MoveError("unknown move '" + word + "'");
    }
    return mv;
}

// --- commutation -----------------------------------------------------------

// Marking positions of one annulus projected to the shared circle; a
// same-square pair projects to a single point.
static std::vector<int> annulus_points(const GridDiagram& d, bool horizontal, int index) {
    std::vector<int> pts;
    if (horizontal) {
        pts.push_back(d.o_col(index));
        if (d.has_x()) pts.push_back(d.x_col(index));
    } else {
        pts.push_back(d.o_row[index]);
        if (d.has_x()) pts.push_back(d.x_row[index]);
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

bool commute_allowed(const GridDiagram& d, bool horizontal, int index, std::string* why) {
    int n = d.n;
    auto fail = [&](const std::string& m) {
        if (why) *why = m;
        return false;
    };
    if (index < 0 || index >= n) return fail("annulus index out of range");
    std::vector<int> a = annulus_points(d, horizontal, index);
    std::vector<int> b = annulus_points(d, horizontal, mod(index + 1, n));
    for (int p : a)
        for (int q : b)
            if (p == q) return fail("markings share a row or column (tangent zero-spheres)");
    if (a.size() < 2 || b.size() < 2) return true;
    // linked iff exactly one point of b lies in the cyclic arc (a0, a1)
    int inside = 0;
    for (int q : b) {
        int rel = mod(q - a[0], n);
        if (rel > 0 && rel < mod(a[1] - a[0], n)) ++inside;
    }
    if (inside == 1) return fail("zero-spheres are linked");
    return true;
}

// --- index shifting helpers --------------------------------------------------

static int drop_index(int v, int removed) { return v - (v > removed ? 1 : 0); }
static int grow_index(int v, int inserted) { return v + (v >= inserted ? 1 : 0); }

// --- apply ---------------------------------------------------------------------

static GridDiagram apply_renumber(const GridDiagram& d, const MoveInstance& mv) {
    int k = d.k();
    if (static_cast<int>(mv.sigma.size()) != k) throw MoveError("renumbering has wrong length");
    std::vector<char> seen(k, 0);
    for (int v : mv.sigma) {
        if (v < 0 || v >= k || seen[v]) throw MoveError("renumbering is not a permutation of 1..k");
        seen[v] = 1;
    }
    GridDiagram out = d;
    for (int c = 0; c < d.n; ++c)
        if (!d.special[c]) out.number[c] = mv.sigma[d.number[c] - 1] + 1;
    return out;
}

static GridDiagram apply_commute(const GridDiagram& d, const MoveInstance& mv) {
    std::string why;
    if (!commute_allowed(d, mv.horizontal, mv.a, &why)) throw MoveError("commutation: " + why);
    int n = d.n;
    GridDiagram out = d;
    if (mv.horizontal) {
        int r0 = mv.a, r1 = mod(mv.a + 1, n);
        std::swap(out.o_row[d.o_col(r0)], out.o_row[d.o_col(r1)]);
        if (d.has_x()) std::swap(out.x_row[d.x_col(r0)], out.x_row[d.x_col(r1)]);
    } else {
        int c0 = mv.a, c1 = mod(mv.a + 1, n);
        std::swap(out.o_row[c0], out.o_row[c1]);
        std::swap(out.special[c0], out.special[c1]);
        std::swap(out.number[c0], out.number[c1]);
        if (d.has_x()) std::swap(out.x_row[c0], out.x_row[c1]);
    }
    return out;
}

// Corner squares of the 2x2 block anchored at (a, b).
struct Block {
    int bl_c, bl_r, br_c, br_r, tl_c, tl_r, tr_c, tr_r;
};
static Block block_at(const GridDiagram& d, int a, int b) {
    int n = d.n;
    if (a < 0 || a >= n || b < 0 || b >= n) throw MoveError("block anchor out of range");
    return {a, b, mod(a + 1, n), b, a, mod(b + 1, n), mod(a + 1, n), mod(b + 1, n)};
}

static GridDiagram apply_destab(const GridDiagram& d, const MoveInstance& mv) {
    if (d.n < 2) throw MoveError("destabilisation needs index at least 2");
    Block B = block_at(d, mv.a, mv.b);
    bool tr_ok = d.o_row[B.tr_c] == B.tr_r && !d.special[B.tr_c];
    bool bl_ok = d.o_row[B.bl_c] == B.bl_r && !d.special[B.bl_c];
    int co, ro;
    if (tr_ok && d.number[B.tr_c] == d.k()) {
        co = B.tr_c;
        ro = B.tr_r;
    } else if (bl_ok && d.number[B.bl_c] == d.k()) {
        co = B.bl_c;
        ro = B.bl_r;
    } else if (tr_ok || bl_ok) {
        throw MoveError("destabilisation: the O-marking is not the highest numbered (renumber first)");
    } else {
        throw MoveError("destabilisation: no normal O at a usable corner of the block");
    }
    int newx_c = -1, newx_r = -1;
    if (d.has_x()) {
        if (d.x_row[B.tl_c] != B.tl_r || d.x_row[B.br_c] != B.br_r)
            throw MoveError("destabilisation: block is missing its two X-markings");
        if (co == B.tr_c) {
            newx_c = B.bl_c;
            newx_r = B.bl_r;
        } else {
            newx_c = B.tr_c;
            newx_r = B.tr_r;
        }
    }
    GridDiagram out;
    out.n = d.n - 1;
    out.o_row.assign(out.n, -1);
    out.special.assign(out.n, 0);
    out.number.assign(out.n, 0);
    if (d.has_x()) out.x_row.assign(out.n, -1);
    for (int c = 0; c < d.n; ++c) {
        if (c == co) continue;
        int nc = drop_index(c, co);
        out.o_row[nc] = drop_index(d.o_row[c], ro);
        out.special[nc] = d.special[c];
        out.number[nc] = d.number[c];
    }
    if (d.has_x()) {
        for (int c = 0; c < d.n; ++c) {
            if (c == co || d.x_row[c] == ro) continue;  // gone with the retracted annuli
            out.x_row[drop_index(c, co)] = drop_index(d.x_row[c], ro);
        }
        out.x_row[drop_index(newx_c, co)] = drop_index(newx_r, ro);
    }
    require_valid(out);
    return out;
}

static GridDiagram apply_stab(const GridDiagram& d, const MoveInstance& mv) {
    int a = mv.a, b = mv.b;
    if (a < 0 || a >= d.n || b < 0 || b >= d.n) throw MoveError("stabilisation anchor out of range");
    if (d.has_x() && d.x_row[a] != b)
        throw MoveError("stabilisation: no X-marking at the anchored square");
    // Index of the inserted column/row in the stabilised diagram.
    bool ne = (mv.flavor == BlockFlavor::TopRight);
    int ic = ne ? a + 1 : a;
    int ir = ne ? b + 1 : b;
    GridDiagram out;
    out.n = d.n + 1;
    out.o_row.assign(out.n, -1);
    out.special.assign(out.n, 0);
    out.number.assign(out.n, 0);
    if (d.has_x()) out.x_row.assign(out.n, -1);
    for (int c = 0; c < d.n; ++c) {
        int nc = grow_index(c, ic);
        out.o_row[nc] = grow_index(d.o_row[c], ir);
        out.special[nc] = d.special[c];
        out.number[nc] = d.number[c];
    }
    out.o_row[ic] = ir;
    out.number[ic] = d.k() + 1;
    if (d.has_x()) {
        for (int c = 0; c < d.n; ++c) {
            if (c == a) continue;  // the anchored X is split in two
            out.x_row[grow_index(c, ic)] = grow_index(d.x_row[c], ir);
        }
        // The block sits at anchor (a, b) in new coordinates for either
        // flavor; the split X's land at its TL and BR squares.
        out.x_row[a] = mod(b + 1, out.n);
        out.x_row[mod(a + 1, out.n)] = b;
    }
    require_valid(out);
    return out;
}

static GridDiagram apply_birth(const GridDiagram& d, const MoveInstance& mv) {
    if (!d.has_x()) throw MoveError("birth applies to link-grid diagrams");
    int a = mv.a, b = mv.b;
    if (a < 0 || a > d.n || b < 0 || b > d.n) throw MoveError("birth position out of range");
    GridDiagram out;
    out.n = d.n + 1;
    out.o_row.assign(out.n, -1);
    out.x_row.assign(out.n, -1);
    out.special.assign(out.n, 0);
    out.number.assign(out.n, 0);
    for (int c = 0; c < d.n; ++c) {
        int nc = grow_index(c, a);
        out.o_row[nc] = grow_index(d.o_row[c], b);
        out.x_row[nc] = grow_index(d.x_row[c], b);
        out.special[nc] = d.special[c];
        out.number[nc] = d.number[c];
    }
    out.o_row[a] = b;
    out.x_row[a] = b;
    out.number[a] = d.k() + 1;
    require_valid(out);
    return out;
}

static GridDiagram apply_saddle(const GridDiagram& d, const MoveInstance& mv) {
    if (!d.has_x()) throw MoveError("saddle applies to link-grid diagrams");
    Block B = block_at(d, mv.a, mv.b);
    GridDiagram out = d;
    bool forward = d.x_row[B.tl_c] == B.tl_r && d.x_row[B.br_c] == B.br_r;
    bool mirrored = d.x_row[B.bl_c] == B.bl_r && d.x_row[B.tr_c] == B.tr_r;
    if (forward) {
        out.x_row[B.bl_c] = B.bl_r;
        out.x_row[B.tr_c] = B.tr_r;
    } else if (mirrored) {
        out.x_row[B.tl_c] = B.tl_r;
        out.x_row[B.br_c] = B.br_r;
    } else {
        throw MoveError("saddle: block does not hold two diagonal X-markings");
    }
    require_valid(out);
    return out;
}

static GridDiagram apply_split(const GridDiagram& d, const MoveInstance& mv) {
    Block B = block_at(d, mv.a, mv.b);
    if (!(d.o_row[B.tl_c] == B.tl_r && d.special[B.tl_c]))
        throw MoveError("split: no special O at the top-left of the block");
    if (!(d.o_row[B.br_c] == B.br_r && !d.special[B.br_c]))
        throw MoveError("split: no normal O at the bottom-right of the block");
    if (d.number[B.br_c] != d.k())
        throw MoveError("split: the O-marking is not the highest numbered (renumber first)");
    GridDiagram out = d;
    // Both markings stay in their columns: TL drops to BL, BR rises to TR.
    out.o_row[B.tl_c] = B.bl_r;
    out.o_row[B.br_c] = B.tr_r;
    out.special[B.br_c] = 1;
    out.number[B.br_c] = 0;
    require_valid(out);
    return out;
}

static GridDiagram apply_death(const GridDiagram& d, const MoveInstance& mv) {
    if (d.n < 2) throw MoveError("death needs index at least 2");
    int c = mv.a;
    if (c < 0 || c >= d.n) throw MoveError("death column out of range");
    if (!d.special[c]) throw MoveError("death: column does not carry a special O");
    int r = d.o_row[c];
    int cc = mod(c + 1, d.n), rr = mod(r + 1, d.n);
    if (!(d.o_row[cc] == rr && d.special[cc]))
        throw MoveError("death: no special O in the top-right adjacent square");
    if (d.has_x() && d.x_row[cc] != rr)
        throw MoveError("death: the top-right adjacent square carries no X-marking");
    GridDiagram out;
    out.n = d.n - 1;
    out.o_row.assign(out.n, -1);
    out.special.assign(out.n, 0);
    out.number.assign(out.n, 0);
    if (d.has_x()) out.x_row.assign(out.n, -1);
    for (int col = 0; col < d.n; ++col) {
        if (col == cc) continue;
        int nc = drop_index(col, cc);
        out.o_row[nc] = drop_index(d.o_row[col], rr);
        if (d.has_x()) out.x_row[nc] = drop_index(d.x_row[col], rr);
        out.special[nc] = d.special[col];
        out.number[nc] = d.number[col];
    }
    require_valid(out);
    return out;
}

GridDiagram apply_move(const GridDiagram& d, const MoveInstance& mv) {
    require_valid(d);
    switch (mv.kind) {
        case MoveKind::Renumber: return apply_renumber(d, mv);
        case MoveKind::Commute: return apply_commute(d, mv);
        case MoveKind::Destab: return apply_destab(d, mv);
        case MoveKind::Stab: return apply_stab(d, mv);
        case MoveKind::Birth: return apply_birth(d, mv);
        case MoveKind::Saddle: return apply_saddle(d, mv);
        case MoveKind::Split: return apply_split(d, mv);
        case MoveKind::Death: return apply_death(d, mv);
    }
    throw MoveError("unknown move kind");
}

MoveInstance renumber_to_top(const GridDiagram& d, int column) {
    if (column < 0 || column >= d.n || d.special[column])
        throw MoveError("renumber_to_top needs a normal O-marking");
    int k = d.k(), from = d.number[column];
    MoveInstance mv{};
    mv.kind = MoveKind::Renumber;
    mv.sigma.resize(k);
    for (int i = 0; i < k; ++i) mv.sigma[i] = i;
    std::swap(mv.sigma[from - 1], mv.sigma[k - 1]);
    return mv;
}

}  // namespace gridtau
