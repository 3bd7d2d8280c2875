#include "gridtau/chainmaps.hpp"

#include <algorithm>
#include <cassert>
#include <functional>

namespace gridtau {

std::optional<Monomial> VariableRule::apply(const Monomial& m) const {
    Monomial in = m;
    in.resize(source_k, 0);
    switch (type) {
        case Identity: {
            Monomial out = in;
            out.resize(target_k, 0);
            return out;
        }
        case Renumber: {
            Monomial out(target_k, 0);
            for (int i = 0; i < source_k; ++i) out[sigma[i]] += in[i];
            return out;
        }
        case SetZero: {
            if (in[source_k - 1] > 0) return std::nullopt;
            Monomial out(in.begin(), in.end() - 1);
            out.resize(target_k, 0);
            return out;
        }
        case Substitute: {
            Monomial out(in.begin(), in.end() - 1);
            out.resize(target_k, 0);
            out[subst_target - 1] += in[source_k - 1];
            return out;
        }
    }
    return std::nullopt;
}

const ModuleElement& ChainMapDescriptor::image_of(const Perm& g) const {
    static const ModuleElement zero;
    auto it = images.find(g);
    return it == images.end() ? zero : it->second;
}

// --- verification -----------------------------------------------------------

ChainMapReport verify_chain_map(const ChainMapDescriptor& cm) {
    ChainMapReport rep;
    rep.is_chain_map = true;
    bool src_a = cm.source.has_x(), tgt_a = cm.target.has_x();
    for_each_perm(cm.source.n, [&](const Perm& x) {
        // f(dx)
        ModuleElement lhs;
        ModuleElement bx = boundary(cm.source, x);
        for (const Term& t : bx.terms()) {
            auto ruled = cm.rule.apply(t.second);
            if (!ruled) continue;
            for (const Term& img : cm.image_of(t.first).terms()) {
                Monomial m = img.second;
                m.resize(cm.target.k(), 0);
                for (int i = 0; i < cm.target.k(); ++i) m[i] += (*ruled)[i];
                lhs.toggle(img.first, m);
            }
        }
        // d f(x)
        ModuleElement rhs = boundary(cm.target, cm.image_of(x));
        if (!(lhs == rhs)) rep.is_chain_map = false;

        Grading mx = maslov(cm.source, x);
        for (const Term& img : cm.image_of(x).terms()) {
            int deg = total_degree(img.second);
            Grading shift = maslov(cm.target, img.first) - Grading::whole(2 * deg) - mx;
            int s = shift.as_integer();
            if (!rep.maslov_shift_observed || s > *rep.maslov_shift_observed)
                rep.maslov_shift_observed = s;
            if (src_a && tgt_a) {
                Grading ashift =
                    alexander(cm.target, img.first) - Grading::whole(deg) - alexander(cm.source, x);
                if (!rep.alexander_shift_observed || ashift > *rep.alexander_shift_observed)
                    rep.alexander_shift_observed = ashift;
            }
        }
    });
    return rep;
}

// --- simple maps ----------------------------------------------------------------

static VariableRule identity_rule(int src_k, int tgt_k) {
    VariableRule r;
    r.type = VariableRule::Identity;
    r.source_k = src_k;
    r.target_k = tgt_k;
    return r;
}

ChainMapDescriptor identity_map(const GridDiagram& d) {
    ChainMapDescriptor cm;
    cm.source = cm.target = d;
    cm.rule = identity_rule(d.k(), d.k());
    cm.label = "identity";
    for_each_perm(d.n, [&](const Perm& g) {
        ModuleElement e;
        e.toggle(g, Monomial(d.k(), 0));
        cm.images[g] = e;
    });
    return cm;
}

ChainMapDescriptor renumber_map(const GridDiagram& d, const MoveInstance& mv) {
    ChainMapDescriptor cm = identity_map(d);
    cm.target = apply_move(d, mv);
    cm.rule.type = VariableRule::Renumber;
    cm.rule.sigma = mv.sigma;
    cm.label = "renumber";
    return cm;
}

ChainMapDescriptor saddle_map(const GridDiagram& d, const MoveInstance& mv) {
    ChainMapDescriptor cm = identity_map(d);
    cm.target = apply_move(d, mv);
    cm.label = "saddle";
    cm.declared_alexander_shift = alexander_shift_declared(5);
    return cm;
}

// --- pentagon map -----------------------------------------------------------------

namespace {

// h lies in the cyclic interval [a, a+len)
bool in_span(int h, int a, int len, int n) { return mod(h - a, n) < len; }

struct CommutationGeometry {
    int c;          // the left column of the commuted pair
    int arc_lo = 0; // rows [arc_lo, arc_hi) carry the curved circle on the left side
    int arc_hi = 0;
};

// Rows of the markings in one column.
std::vector<int> column_marking_rows(const GridDiagram& d, int c) {
    std::vector<int> rows{d.o_row[c]};
    if (d.has_x() && d.x_row[c] != d.o_row[c]) rows.push_back(d.x_row[c]);
    return rows;
}

// Crossing convention for the pentagon count, fixed by the chain-map tests.
constexpr bool kPentagonUpperCrossing = true;

CommutationGeometry commutation_geometry(const GridDiagram& d, int c) {
    CommutationGeometry geo;
    geo.c = c;
    int n = d.n;
    std::vector<int> left = column_marking_rows(d, c);
    std::vector<int> right = column_marking_rows(d, mod(c + 1, n));
    auto arc_clear = [&](int lo, int len) {
        for (int r : right)
            if (in_span(r, lo, len, n)) return false;
        return true;
    };
    if (left.size() == 1) {
        geo.arc_lo = left[0];
        geo.arc_hi = mod(left[0] + 1, n);
        if (!arc_clear(geo.arc_lo, 1)) throw MoveError("commutation: pentagon geometry impossible");
        return geo;
    }
    int a = left[0], b = left[1];
    int len_ab = mod(b - a, n) + 1;
    if (arc_clear(a, len_ab)) {
        geo.arc_lo = a;
        geo.arc_hi = mod(b + 1, n);
    } else {
        int len_ba = mod(a - b, n) + 1;
        if (!arc_clear(b, len_ba)) throw MoveError("commutation: zero-spheres are linked");
        geo.arc_lo = b;
        geo.arc_hi = mod(a + 1, n);
    }
    return geo;
}

// Pentagon terms out of x for a vertical commutation of columns c, c+1.
//
// Every pentagon carries its fifth corner at one designated crossing of the
// two interchanged vertical circles; the curved side may pass through the
// other crossing on its way.  At each covered row the curved boundary sits
// just left of column c or just right of column c+1 according to that row's
// side of the curved circle, which decides whether the markings of the two
// interchanged columns are swept.
void pentagon_terms(const GridDiagram& d, const CommutationGeometry& geo, const Perm& x,
                    bool use_upper_crossing, ModuleElement& out) {
    int n = d.n;
    int c = geo.c, cr = mod(c + 1, n);
    auto side_is_left = [&](int row) {
        return in_span(row, geo.arc_lo, mod(geo.arc_hi - geo.arc_lo, n), n);
    };
    int designated = use_upper_crossing ? geo.arc_hi : geo.arc_lo;

    for (int j = 0; j < n; ++j) {
        if (j == cr) continue;
        Perm z = x;
        std::swap(z[j], z[cr]);
        for (int pcase = 0; pcase < 2; ++pcase) {
            bool right_case = (pcase == 0);  // the curved side bounds the span on the east
            int r1 = right_case ? x[j] : x[cr];
            int r2 = right_case ? x[cr] : x[j];
            int height = mod(r2 - r1, n);
            int col_from = right_case ? j : cr;
            int col_to = right_case ? cr : j;
            int width = mod(col_to - col_from, n);
            // interior generator points
            bool ok = true;
            for (int s = 1; s < width && ok; ++s) {
                int m = mod(col_from + s, n);
                int rel = mod(x[m] - r1, n);
                if (rel > 0 && rel < height) ok = false;
            }
            if (!ok) continue;
            // the designated crossing must lie strictly inside the vertical span
            int grel = mod(designated - r1, n);
            if (grel < 1 || grel > height) continue;
            // marking coverage
            Monomial u(d.k(), 0);
            bool special_hit = false;
            auto cover = [&](int col) {
                if (d.special[col])
                    special_hit = true;
                else
                    u[d.number[col] - 1] += 1;
            };
            for (int m = 0; m < n && !special_hit; ++m) {
                int h = d.o_row[m];
                if (!in_span(h, r1, height, n)) continue;
                // below the crossing the composite side follows the straight
                // circle in the L case and the curved one in the R case
                bool below_cross = mod(h - r1, n) < grel;
                if (m == c) {
                    bool covered = right_case ? (!below_cross || !side_is_left(h))
                                              : (!below_cross && side_is_left(h));
                    if (covered) cover(m);
                } else if (m == cr) {
                    bool covered = right_case ? (below_cross && !side_is_left(h))
                                              : (below_cross || side_is_left(h));
                    if (covered) cover(m);
                } else {
                    int rel = mod(m - col_from, n);
                    if (rel < width && (rel >= 1 || right_case)) cover(m);
                }
            }
            if (special_hit) continue;
            out.toggle(z, u);
        }
    }
}

}  // namespace

ChainMapDescriptor pentagon_map(const GridDiagram& d, const MoveInstance& mv) {
    if (mv.kind != MoveKind::Commute) throw MoveError("pentagon map needs a commutation");
    ChainMapDescriptor cm;
    cm.source = d;
    cm.target = apply_move(d, mv);
    cm.rule = identity_rule(d.k(), d.k());
    cm.label = "pentagon";
    cm.declared_alexander_shift = alexander_shift_declared(2);
    if (!mv.horizontal) {
        CommutationGeometry geo = commutation_geometry(d, mv.a);
        for_each_perm(d.n, [&](const Perm& x) {
            ModuleElement e;
            pentagon_terms(d, geo, x, kPentagonUpperCrossing, e);
            cm.images[x] = e;
        });
    } else {
        GridDiagram dt = d.transposed();
        MoveInstance tv = mv;
        tv.horizontal = false;
        CommutationGeometry geo = commutation_geometry(dt, tv.a);
        for_each_perm(d.n, [&](const Perm& x) {
            Perm xt(d.n);
            for (int i = 0; i < d.n; ++i) xt[x[i]] = i;
            ModuleElement et;
            pentagon_terms(dt, geo, xt, kPentagonUpperCrossing, et);
            ModuleElement e;
            for (const Term& t : et.terms()) {
                Perm z(d.n);
                for (int i = 0; i < d.n; ++i) z[t.first[i]] = i;
                e.toggle(z, t.second);
            }
            cm.images[x] = e;
        });
    }
    return cm;
}

// --- spiral domains -----------------------------------------------------------

namespace {

struct Pt {
    int c, r;
    bool operator==(const Pt& o) const { return c == o.c && r == o.r; }
    bool operator<(const Pt& o) const { return c != o.c ? c < o.c : r < o.r; }
};

struct SpiralShape {
    std::vector<Pt> from;       // corner points of the source generator
    std::vector<Pt> to;         // corner points of the target generator
    Monomial u;                 // exponents over the diagram's normal numbering
    std::vector<Pt> forbidden;  // no other source point may sit here
};

struct SpiralEnv {
    const GridDiagram& d;
    int free_col;  // column whose O-marking carries no U factor
    std::vector<SpiralShape>& out;
    int cap;
};

// A spiral of complexity t winds clockwise around p with strictly nested
// arms: east extents X1 > X3 > ..., west extents X2 < X4 < ..., south rows
// Y1 < Y3 < ... and north rows ... < Y4 < Y2, all approaching p.  Odd arms
// span [p.c, X_t) x [Y_t, Y_{t-1}), even arms [X_t, p.c) x [Y_{t-1}, Y_t)
// (Y_0 = p.r), every arm glued to the previous one along the column line
// through p.  The corner sets close up as
//     target:  p and the outer corners (X_t, Y_t),
//     source:  (X_1, p.r), the staircase (X_t, Y_{t-1}), and (p.c, Y_t).
struct SpiralState {
    int arms = 0;
    int x_same = 0, x_opp = 0;  // X_{t-1} and X_{t-2} (opp = same side as next arm)
    int y_same = 0, y_opp = 0;  // Y_{t-1} and Y_{t-2}
    std::vector<Pt> cx, cz;
    Monomial u;
    std::vector<Pt> forbidden;
};

bool contains(const std::vector<Pt>& pts, Pt q) {
    return std::find(pts.begin(), pts.end(), q) != pts.end();
}

// Marking coverage of the rectangle cols [c0, c0+w) x rows [r0, r0+h);
// false if a special O-marking is swept.
bool cover_rect(const SpiralEnv& env, int c0, int r0, int w, int h, Monomial& u) {
    int n = env.d.n;
    for (int s = 0; s < w; ++s) {
        int c = mod(c0 + s, n);
        if (in_span(env.d.o_row[c], r0, h, n)) {
            if (env.d.special[c]) return false;
            if (c != env.free_col) u[env.d.number[c] - 1] += 1;
        }
    }
    return true;
}

void rect_interior(int n, int c0, int r0, int w, int h, std::vector<Pt>& out) {
    for (int s = 1; s < w; ++s)
        for (int t = 1; t < h; ++t) out.push_back({mod(c0 + s, n), mod(r0 + t, n)});
}

void emit_shape(const SpiralEnv& env, const SpiralState& st) {
    SpiralShape sh;
    sh.from = st.cx;
    sh.to = st.cz;
    for (const Pt& q : st.forbidden)
        if (!contains(sh.from, q) && !contains(sh.to, q)) sh.forbidden.push_back(q);
    sh.u = st.u;
    env.out.push_back(std::move(sh));
}

void grow_spiral(const SpiralEnv& env, const SpiralState& st, Pt p) {
    emit_shape(env, st);
    if (st.arms >= env.cap) return;
    int n = env.d.n;
    int t = st.arms + 1;
    bool odd = (t % 2 == 1);
    // strict nesting: the new extents lie strictly between p and the
    // previous extents on their side
    int xspan = odd ? mod(st.x_opp - p.c, n) : mod(p.c - st.x_opp, n);
    int yspan = odd ? mod(p.r - st.y_opp, n) : mod(st.y_opp - p.r, n);
    for (int xs = 1; xs < xspan; ++xs) {
        int xt = odd ? mod(p.c + xs, n) : mod(p.c - xs, n);
        for (int ys = 1; ys < yspan; ++ys) {
            int yt = odd ? mod(p.r - ys, n) : mod(p.r + ys, n);
            // arm rectangle
            int c0 = odd ? p.c : xt;
            int w = odd ? mod(xt - p.c, n) : mod(p.c - xt, n);
            int r0 = odd ? yt : st.y_same;
            int h = odd ? mod(st.y_same - yt, n) : mod(yt - st.y_same, n);
            SpiralState next = st;
            next.arms = t;
            if (!cover_rect(env, c0, r0, w, h, next.u)) continue;
            std::vector<Pt> interior;
            rect_interior(n, c0, r0, w, h, interior);

            Pt stair{xt, st.y_same};   // new source corner on the staircase
            Pt inner{p.c, yt};         // new source corner on the column line
            Pt outer{xt, yt};          // new target corner
            Pt absorbed{p.c, st.y_same};

            // uniqueness of rows and columns among each side's corners
            bool ok = true;
            for (const Pt& q : st.cx) {
                if (q == absorbed) continue;
                if (q.c == stair.c || q.r == stair.r || q.c == inner.c || q.r == inner.r) ok = false;
            }
            for (const Pt& q : st.cz)
                if (q.c == outer.c || q.r == outer.r) ok = false;
            if (!ok) continue;
            // no surviving corner may sit strictly inside the new arm
            auto strictly_inside = [&](Pt q) {
                int relc = mod(q.c - c0, n), relr = mod(q.r - r0, n);
                return relc > 0 && relc < w && relr > 0 && relr < h;
            };
            for (const Pt& q : st.cx)
                if (q != absorbed && strictly_inside(q)) ok = false;
            for (const Pt& q : st.cz)
                if (strictly_inside(q)) ok = false;
            if (!ok || strictly_inside(Pt{p.c, p.r})) continue;

            next.cx.erase(std::find(next.cx.begin(), next.cx.end(), absorbed));
            next.cx.push_back(stair);
            next.cx.push_back(inner);
            next.cz.push_back(outer);
            for (const Pt& q : interior) next.forbidden.push_back(q);
            next.x_opp = st.x_same;
            next.x_same = xt;
            next.y_opp = st.y_same;
            next.y_same = yt;
            grow_spiral(env, next, p);
        }
    }
}

// All spiral shapes around p: the innermost corner of the first arm is at p
// (a target corner) and the winding is clockwise.
std::vector<SpiralShape> spiral_shapes_base(const GridDiagram& d, Pt p, int free_col, int cap) {
    std::vector<SpiralShape> out;
    SpiralEnv env{d, free_col, out, cap};
    int n = d.n;
    for (int w = 1; w < n; ++w)
        for (int h = 1; h < n; ++h) {
            int x1 = mod(p.c + w, n);
            int y1 = mod(p.r - h, n);
            SpiralState st;
            st.arms = 1;
            st.u.assign(d.k(), 0);
            if (!cover_rect(env, p.c, y1, w, h, st.u)) continue;
            rect_interior(n, p.c, y1, w, h, st.forbidden);
            if (contains(st.forbidden, p)) continue;
            st.cx = {{p.c, y1}, {x1, p.r}};
            st.cz = {{p.c, p.r}, {x1, y1}};
            st.x_same = x1;
            st.x_opp = x1;
            st.y_same = y1;
            st.y_opp = y1;
            grow_spiral(env, st, p);
        }
    return out;
}

enum class PtMap { Id, Rot180, Rot90Ccw, Rot90Cw };

Pt map_pt(PtMap m, Pt q, int n) {
    switch (m) {
        case PtMap::Id: return q;
        case PtMap::Rot180: return {mod(n - q.c, n), mod(n - q.r, n)};
        case PtMap::Rot90Ccw: return {mod(n - q.r, n), q.c};
        case PtMap::Rot90Cw: return {q.r, mod(n - q.c, n)};
    }
    return q;
}

Pt unmap_pt(PtMap m, Pt q, int n) {
    switch (m) {
        case PtMap::Id: return q;
        case PtMap::Rot180: return map_pt(PtMap::Rot180, q, n);
        case PtMap::Rot90Ccw: return map_pt(PtMap::Rot90Cw, q, n);
        case PtMap::Rot90Cw: return map_pt(PtMap::Rot90Ccw, q, n);
    }
    return q;
}

GridDiagram map_diagram(PtMap m, const GridDiagram& d) {
    switch (m) {
        case PtMap::Id: return d;
        case PtMap::Rot180: return d.rotated180();
        case PtMap::Rot90Ccw: return d.rotated90ccw();
        case PtMap::Rot90Cw: return d.rotated90cw();
    }
    return d;
}

// Squares transform with an index shift relative to lattice points.
Pt map_sq(PtMap m, Pt q, int n) {
    switch (m) {
        case PtMap::Id: return q;
        case PtMap::Rot180: return {n - 1 - q.c, n - 1 - q.r};
        case PtMap::Rot90Ccw: return {n - 1 - q.r, q.c};
        case PtMap::Rot90Cw: return {q.r, n - 1 - q.c};
    }
    return q;
}

// Spiral shapes of the four families around the destabilisation point.  A
// 180-degree rotation carries the first destabilisation flavor to the
// second; quarter rotations reverse the arrow and give the stabilisation
// families, matching the corner carried at p.
std::vector<SpiralShape> spiral_shapes(const GridDiagram& d, Pt p, int free_col, StabVariant v,
                                       int cap) {
    PtMap m = PtMap::Id;
    bool swap_roles = false;
    switch (v) {
        case StabVariant::D11: m = PtMap::Id; break;
        case StabVariant::D22: m = PtMap::Rot180; break;
        case StabVariant::S11:
            m = PtMap::Rot90Cw;
            swap_roles = true;
            break;
        case StabVariant::S22:
            m = PtMap::Rot90Ccw;
            swap_roles = true;
            break;
    }
    GridDiagram dm = map_diagram(m, d);
    Pt free_sq = map_sq(m, Pt{free_col, d.o_row[free_col]}, d.n);
    std::vector<SpiralShape> raw = spiral_shapes_base(dm, map_pt(m, p, d.n), free_sq.c, cap);
    std::vector<SpiralShape> out;
    out.reserve(raw.size());
    for (SpiralShape& sh : raw) {
        SpiralShape back;
        for (Pt q : sh.from) back.from.push_back(unmap_pt(m, q, d.n));
        for (Pt q : sh.to) back.to.push_back(unmap_pt(m, q, d.n));
        for (Pt q : sh.forbidden) back.forbidden.push_back(unmap_pt(m, q, d.n));
        back.u = std::move(sh.u);
        if (swap_roles) std::swap(back.from, back.to);
        out.push_back(std::move(back));
    }
    return out;
}

// Applies a shape to a source generator; nullopt if it does not fit.
std::optional<Perm> apply_shape(const SpiralShape& sh, const Perm& x) {
    for (const Pt& q : sh.from)
        if (x[q.c] != q.r) return std::nullopt;
    for (const Pt& q : sh.forbidden)
        if (x[q.c] == q.r) return std::nullopt;
    Perm z = x;
    for (const Pt& q : sh.to) z[q.c] = q.r;
    return z;
}

}  // namespace

// --- destabilisation bookkeeping ---------------------------------------------

namespace {

struct DestabFrame {
    GridDiagram big, small;
    int co = 0, ro = 0;  // deleted column and row (annulus indices in big)
    Pt p11, p22;         // destabilisation points
    int subst_u = 0;     // 0: U_{k+1} -> 0, else U_{k+1} -> U_j
    int subst_u22 = 0;
};

// Transfer a big-diagram generator containing the point at `drop_circle` to
// the destabbed diagram, where the deleted annuli are co and ro.
Perm transfer_down(const Perm& z, int n, int co, int ro, int drop_col_circle, int drop_row_circle) {
    auto col_map = [&](int c) {
        if (drop_col_circle == co) return c - (c > co ? 1 : 0);
        // dropping the circle co+1 (which may wrap to 0)
        if (co == n - 1) return mod(c, n - 1);
        return c - (c > co + 1 ? 1 : 0);
    };
    auto row_map = [&](int r) {
        if (drop_row_circle == ro) return r - (r > ro ? 1 : 0);
        if (ro == n - 1) return mod(r, n - 1);
        return r - (r > ro + 1 ? 1 : 0);
    };
    Perm out(n - 1, -1);
    for (int c = 0; c < n; ++c) {
        if (c == drop_col_circle) continue;
        out[col_map(c)] = row_map(z[c]);
    }
    return out;
}

// Inverse of transfer_down: embed a small-diagram generator and add the point.
Perm transfer_up(const Perm& y, int n, int co, int ro, int add_col_circle, int add_row_circle) {
    auto col_unmap = [&](int c) {
        if (add_col_circle == co) return c + (c >= co ? 1 : 0);
        if (co == n - 1) return c == 0 ? n - 1 : c;
        return c + (c >= co + 1 ? 1 : 0);
    };
    auto row_unmap = [&](int r) {
        if (add_row_circle == ro) return r + (r >= ro ? 1 : 0);
        if (ro == n - 1) return r == 0 ? n - 1 : r;
        return r + (r >= ro + 1 ? 1 : 0);
    };
    Perm out(n, -1);
    for (int c = 0; c < n - 1; ++c) out[col_unmap(c)] = row_unmap(y[c]);
    out[add_col_circle] = add_row_circle;
    return out;
}

void frame_substitutions(DestabFrame& f) {
    f.p11 = {f.co, f.ro};
    f.p22 = {mod(f.co + 1, f.big.n), mod(f.ro + 1, f.big.n)};
    int n2 = f.small.n;
    int merged_row = mod(f.ro, n2);
    int below = mod(merged_row - 1, n2);
    int above = merged_row;
    auto subst_for = [&](int row) {
        int c = f.small.o_col(row);
        return f.small.special[c] ? 0 : f.small.number[c];
    };
    f.subst_u = subst_for(below);
    f.subst_u22 = subst_for(above);
}

DestabFrame make_frame(const GridDiagram& big, const MoveInstance& mv) {
    DestabFrame f;
    f.big = big;
    f.small = apply_move(big, mv);  // validates all preconditions
    int n = big.n;
    // locate the destabilised O from the block
    int tr_c = mod(mv.a + 1, n), tr_r = mod(mv.b + 1, n);
    if (big.o_row[tr_c] == tr_r && !big.special[tr_c] && big.number[tr_c] == big.k()) {
        f.co = tr_c;
        f.ro = tr_r;
    } else {
        f.co = mv.a;
        f.ro = mv.b;
    }
    frame_substitutions(f);
    return f;
}

VariableRule destab_rule(const DestabFrame& f, bool use22) {
    VariableRule r;
    int j = use22 ? f.subst_u22 : f.subst_u;
    r.type = j == 0 ? VariableRule::SetZero : VariableRule::Substitute;
    r.subst_target = j;
    r.source_k = f.big.k();
    r.target_k = f.small.k();
    return r;
}

constexpr int kSpiralArmCap = 48;

}  // namespace

namespace {

ChainMapDescriptor map_from_frame(const DestabFrame& f, StabVariant v) {
    bool any_special = false;
    for (char s : f.big.special) any_special |= (s != 0);
    if (!any_special)
        throw MoveError("destabilisation maps need a special O-marking to bound the spirals");
    bool is_destab = (v == StabVariant::D11 || v == StabVariant::D22);
    bool eleven = (v == StabVariant::D11 || v == StabVariant::S11);
    Pt p = eleven ? f.p11 : f.p22;
    int n = f.big.n;
    // circles dropped by the transfer: the 11-maps drop the near circles
    int drop_c = eleven ? f.co : mod(f.co + 1, n);
    int drop_r = eleven ? f.ro : mod(f.ro + 1, n);

    auto shapes = spiral_shapes(f.big, p, f.co, v, kSpiralArmCap);

    ChainMapDescriptor cm;
    if (is_destab) {
        cm.source = f.big;
        cm.target = f.small;
        cm.rule = destab_rule(f, v == StabVariant::D22);
        cm.label = eleven ? "destab d11" : "destab d22";
        for_each_perm(n, [&](const Perm& x) {
            ModuleElement e;
            for (const auto& sh : shapes) {
                auto z = apply_shape(sh, x);
                if (!z) continue;
                e.toggle(transfer_down(*z, n, f.co, f.ro, drop_c, drop_r), sh.u);
            }
            cm.images[x] = e;
        });
    } else {
        cm.source = f.small;
        cm.target = f.big;
        cm.rule = identity_rule(f.small.k(), f.big.k());
        cm.label = eleven ? "stab s11" : "stab s22";
        for_each_perm(f.small.n, [&](const Perm& y) {
            Perm w = transfer_up(y, n, f.co, f.ro, drop_c, drop_r);
            ModuleElement e;
            for (const auto& sh : shapes) {
                auto z = apply_shape(sh, w);
                if (!z) continue;
                e.toggle(*z, sh.u);
            }
            cm.images[y] = e;
        });
    }
    return cm;
}

}  // namespace

ChainMapDescriptor destab_map(const GridDiagram& big, const MoveInstance& mv, StabVariant v) {
    DestabFrame f = make_frame(big, mv);
    ChainMapDescriptor cm = map_from_frame(f, v);
    cm.declared_alexander_shift = alexander_shift_declared(3);
    return cm;
}

ChainMapDescriptor birth_map(const GridDiagram& d, const MoveInstance& mv, StabVariant v) {
    if (mv.kind != MoveKind::Birth) throw MoveError("birth map needs a birth move");
    if (v != StabVariant::S11 && v != StabVariant::S22)
        throw MoveError("a birth uses a stabilisation map");
    DestabFrame f;
    f.big = apply_move(d, mv);
    f.small = d;
    f.co = mv.a;
    f.ro = mv.b;
    frame_substitutions(f);
    ChainMapDescriptor cm = map_from_frame(f, v);
    cm.label = "birth";
    cm.declared_alexander_shift = alexander_shift_declared(4);
    return cm;
}

// --- hexagon map ------------------------------------------------------------------

ChainMapDescriptor hexagon_map(const GridDiagram& d, const MoveInstance& mv) {
    if (mv.kind != MoveKind::Death) throw MoveError("hexagon map needs a death move");
    GridDiagram small = apply_move(d, mv);
    int n = d.n;
    int c1 = mv.a;
    int r1 = d.o_row[c1];
    int co = mod(c1 + 1, n), ro = mod(r1 + 1, n);  // the deleted special O

    ChainMapDescriptor cm;
    cm.source = d;
    cm.target = small;
    cm.rule = identity_rule(d.k(), small.k());
    cm.label = "hexagon";
    cm.declared_maslov_shift = 1;
    cm.declared_alexander_shift = alexander_shift_declared(7);

    for_each_perm(n, [&](const Perm& x) {
        ModuleElement e;
        if (x[co] == ro) {
            e.toggle(transfer_down(x, n, co, ro, co, ro), Monomial(small.k(), 0));
            cm.images[x] = e;
            return;
        }
        // L-shaped hexagons: a rectangle [W,X) x [Ys,Yn) around p minus its
        // closed corner below-left of p.
        for (int dw = 1; dw < n; ++dw)
            for (int dx = 1; dx < n; ++dx) {
                int W = mod(co - dw, n), X = mod(co + dx, n);
                for (int ds = 1; ds < n; ++ds)
                    for (int dn = 1; dn < n; ++dn) {
                        int Ys = mod(ro - ds, n), Yn = mod(ro + dn, n);
                        if (mod(X - W, n) != dw + dx || mod(Yn - Ys, n) != ds + dn) continue;
                        // corner points
                        if (x[co] != Ys || x[W] != ro || x[X] != Yn) continue;
                        // no other x-coordinate in the interior; points in the
                        // closed removed corner (including its inner edges)
                        // are outside or on the boundary of H
                        bool ok = true;
                        int width = dw + dx, height = ds + dn;
                        for (int m = 0; m < n && ok; ++m) {
                            if (m == co || m == W || m == X) continue;
                            int relc = mod(m - W, n);
                            if (relc == 0 || relc >= width) continue;
                            int relr = mod(x[m] - Ys, n);
                            if (relr == 0 || relr >= height) continue;
                            if (!(relc <= dw && relr <= ds)) ok = false;
                        }
                        if (!ok) continue;
                        // marking coverage and the special-O conditions
                        Monomial u(small.k(), 0);
                        bool bad = false;
                        for (int m = 0; m < n && !bad; ++m) {
                            int relc = mod(m - W, n);
                            if (relc >= width) continue;
                            int h = d.o_row[m];
                            int relr = mod(h - Ys, n);
                            if (relr >= height) continue;
                            bool in_removed = relc < dw && relr < ds;
                            if (in_removed) continue;
                            if (m == co && h == ro) continue;  // the deleted special O
                            if (d.special[m]) {
                                bad = true;
                            } else {
                                u[d.number[m] - 1] += 1;
                            }
                        }
                        if (bad) continue;
                        Perm z = x;
                        z[co] = ro;
                        z[W] = Yn;
                        z[X] = Ys;
                        e.toggle(transfer_down(z, n, co, ro, co, ro), u);
                    }
            }
        cm.images[x] = e;
    });
    return cm;
}

// --- projection map ------------------------------------------------------------

ChainMapDescriptor projection_map(const GridDiagram& d, const MoveInstance& mv) {
    if (mv.kind != MoveKind::Split) throw MoveError("projection map needs a split move");
    GridDiagram target = apply_move(d, mv);
    int n = d.n;
    Pt center{mod(mv.a + 1, n), mod(mv.b + 1, n)};
    ChainMapDescriptor cm;
    cm.source = d;
    cm.target = target;
    cm.label = "projection";
    cm.declared_maslov_shift = -1;
    cm.declared_alexander_shift = alexander_shift_declared(6);
    VariableRule r;
    r.type = VariableRule::SetZero;
    r.source_k = d.k();
    r.target_k = target.k();
    cm.rule = r;
    for_each_perm(n, [&](const Perm& x) {
        ModuleElement e;
        if (x[center.c] == center.r) e.toggle(x, Monomial(target.k(), 0));
        cm.images[x] = e;
    });
    return cm;
}

// --- induced map on homology -----------------------------------------------------

InducedRank induced_homology_rank(const ChainMapDescriptor& cm, int source_grading) {
    int shift = cm.declared_maslov_shift;
    SliceBasis s_here = slice_basis(cm.source, source_grading);
    SliceBasis s_below = slice_basis(cm.source, source_grading - 1);
    SliceBasis s_above = slice_basis(cm.source, source_grading + 1);
    SliceBasis t_here = slice_basis(cm.target, source_grading + shift);
    SliceBasis t_below = slice_basis(cm.target, source_grading + shift - 1);
    SliceBasis t_above = slice_basis(cm.target, source_grading + shift + 1);

    auto cycles = kernel_basis(boundary_matrix(cm.source, s_here, s_below));
    Gf2Matrix src_d_above = boundary_matrix(cm.source, s_above, s_here);
    Gf2Matrix tgt_d_above = boundary_matrix(cm.target, t_above, t_here);

    Gf2Eliminator tgt_bnd(t_here.size());
    int tgt_b_rank = 0;
    for (int c = 0; c < tgt_d_above.cols(); ++c) tgt_b_rank += tgt_bnd.absorb(tgt_d_above.column(c));
    int tgt_z_dim = t_here.size() - rank(boundary_matrix(cm.target, t_here, t_below));

    Gf2Eliminator src_bnd(s_here.size());
    int src_b_rank = 0;
    for (int c = 0; c < src_d_above.cols(); ++c) src_b_rank += src_bnd.absorb(src_d_above.column(c));

    InducedRank out;
    out.source_dim = static_cast<int>(cycles.size()) - src_b_rank;
    out.target_dim = tgt_z_dim - tgt_b_rank;

    // rank of f on cycles, modulo target boundaries
    Gf2Eliminator quotient(t_here.size());
    for (int c = 0; c < tgt_d_above.cols(); ++c) quotient.absorb(tgt_d_above.column(c));
    for (const BitVec& z : cycles) {
        BitVec fz(t_here.size());
        for (int j : z.support()) {
            const Term& t = s_here.basis[j];
            auto ruled = cm.rule.apply(t.second);
            if (!ruled) continue;
            for (const Term& img : cm.image_of(t.first).terms()) {
                Monomial m = img.second;
                m.resize(cm.target.k(), 0);
                for (int i = 0; i < cm.target.k(); ++i) m[i] += (*ruled)[i];
                int row = t_here.find({img.first, m});
                if (row < 0) throw GridError("chain map image escapes the expected slice");
                fz.flip(row);
            }
        }
        if (quotient.absorb(fz)) ++out.rank;
    }
    return out;
}

}  // namespace gridtau
