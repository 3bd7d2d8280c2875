#include "gridtau/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace gridtau {

int total_degree(const Monomial& m) { return std::accumulate(m.begin(), m.end(), 0); }

// Candidate rectangle with bottom-left at (c1, r1) and top-right at (c2, r2),
// spanning the torus intervals [c1, c2) x [r1, r2).
static bool fill_rectangle(const GridDiagram& d, const Perm& x, int c1, int r1, int c2, int r2,
                           Rectangle& out) {
    int n = d.n;
    int width = mod(c2 - c1, n);
    int height = mod(r2 - r1, n);
    // Interior: columns strictly between c1 and c2 must not carry an
    // x-coordinate at a row strictly inside [r1, r2).
    for (int s = 1; s < width; ++s) {
        int c = mod(c1 + s, n);
        int rel = mod(x[c] - r1, n);
        if (rel > 0 && rel < height) return false;
    }
    out.c1 = c1;
    out.r1 = r1;
    out.c2 = c2;
    out.r2 = r2;
    out.width = width;
    out.height = height;
    out.o_mult.assign(d.k(), 0);
    out.x_count = 0;
    out.contains_special = false;
    for (int s = 0; s < width; ++s) {
        int c = mod(c1 + s, n);
        int orel = mod(d.o_row[c] - r1, n);
        if (orel < height) {
            if (d.special[c])
                out.contains_special = true;
            else
                out.o_mult[d.number[c] - 1] += 1;
        }
        if (d.has_x()) {
            int xrel = mod(d.x_row[c] - r1, n);
            if (xrel < height) out.x_count += 1;
        }
    }
    return true;
}

std::vector<Rectangle> rectangles(const GridDiagram& d, const Perm& x, const Perm& y) {
    std::vector<Rectangle> out;
    int n = d.n;
    std::vector<int> diff;
    for (int c = 0; c < n; ++c)
        if (x[c] != y[c]) diff.push_back(c);
    if (diff.size() != 2) return out;
    int i = diff[0], j = diff[1];
    if (x[i] != y[j] || x[j] != y[i]) return out;
    Rectangle r;
    // x occupies the bottom-left and top-right corners.
    if (fill_rectangle(d, x, i, x[i], j, x[j], r) && !r.contains_special) out.push_back(r);
    if (fill_rectangle(d, x, j, x[j], i, x[i], r) && !r.contains_special) out.push_back(r);
    return out;
}

std::vector<OutRectangle> rectangles_out(const GridDiagram& d, const Perm& x) {
    std::vector<OutRectangle> out;
    int n = d.n;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            Perm y = x;
            std::swap(y[i], y[j]);
            for (const Rectangle& r : rectangles(d, x, y)) out.push_back({y, r});
        }
    return out;
}

void ModuleElement::toggle(const Perm& g, const Monomial& m) {
    Term t{g, m};
    auto it = terms_.find(t);
    if (it == terms_.end())
        terms_.insert(std::move(t));
    else
        terms_.erase(it);
}

void ModuleElement::add(const ModuleElement& o) {
    for (const Term& t : o.terms_) toggle(t.first, t.second);
}

ModuleElement ModuleElement::times_u(int index0, int power) const {
    ModuleElement out;
    for (const Term& t : terms_) {
        Monomial m = t.second;
        if (static_cast<int>(m.size()) <= index0) m.resize(index0 + 1, 0);
        m[index0] += power;
        out.toggle(t.first, m);
    }
    return out;
}

static Monomial mono_of_rect(const GridDiagram& d, const Rectangle& r) {
    Monomial m(d.k(), 0);
    for (int i = 0; i < d.k(); ++i) m[i] = r.o_mult[i];
    return m;
}

ModuleElement boundary(const GridDiagram& d, const Perm& x) {
    ModuleElement e;
    for (const OutRectangle& orr : rectangles_out(d, x)) e.toggle(orr.target, mono_of_rect(d, orr.rect));
    return e;
}

ModuleElement boundary(const GridDiagram& d, const ModuleElement& elem) {
    ModuleElement out;
    int k = d.k();
    for (const Term& t : elem.terms()) {
        ModuleElement b = boundary(d, t.first);
        for (const Term& bt : b.terms()) {
            Monomial m = bt.second;
            m.resize(std::max(m.size(), t.second.size()), 0);
            for (size_t i = 0; i < t.second.size(); ++i) m[i] += t.second[i];
            m.resize(k, 0);
            out.toggle(bt.first, m);
        }
    }
    return out;
}

int SliceBasis::find(const Term& t) const {
    auto it = index.find(t);
    return it == index.end() ? -1 : it->second;
}

// Enumerate monomials in k variables of total degree t.
static void for_each_monomial(int k, int t, Monomial& cur, int pos,
                              const std::function<void(const Monomial&)>& f) {
    if (pos == k - 1) {
        cur[pos] = t;
        f(cur);
        return;
    }
    for (int e = 0; e <= t; ++e) {
        cur[pos] = e;
        for_each_monomial(k, t - e, cur, pos + 1, f);
    }
}

SliceBasis slice_basis(const GridDiagram& d, int maslov_grading) {
    require_valid(d);
    if (d.n > kMaxSliceIndex) throw GridError("grid index too large for slice enumeration");
    SliceBasis s;
    s.grading = maslov_grading;
    int k = d.k();
    for_each_perm(d.n, [&](const Perm& g) {
        Grading m = maslov(d, g);
        int m_int = m.as_integer();
        int gap = m_int - maslov_grading;
        if (gap < 0 || gap % 2 != 0) return;
        int t = gap / 2;
        if (k == 0) {
            if (t == 0) s.basis.push_back({g, Monomial{}});
            return;
        }
        Monomial cur(k, 0);
        for_each_monomial(k, t, cur, 0, [&](const Monomial& mo) { s.basis.push_back({g, mo}); });
    });
    std::sort(s.basis.begin(), s.basis.end());
    for (int i = 0; i < s.size(); ++i) s.index[s.basis[i]] = i;
    return s;
}

Gf2Matrix boundary_matrix(const GridDiagram& d, const SliceBasis& from, const SliceBasis& to) {
    if (to.grading != from.grading - 1) throw GridError("boundary matrix needs adjacent slices");
    Gf2Matrix m(to.size(), from.size());
    int k = d.k();
    for (int j = 0; j < from.size(); ++j) {
        const Term& t = from.basis[j];
        for (const OutRectangle& orr : rectangles_out(d, t.first)) {
            Monomial mo = t.second;
            mo.resize(k, 0);
            for (int i = 0; i < k; ++i) mo[i] += orr.rect.o_mult[i];
            int row = to.find({orr.target, mo});
            if (row < 0) throw GridError("boundary term escapes the target slice");
            // mod-2 accumulation
            if (m.get(row, j))
                m.column(j).flip(row);
            else
                m.set(row, j);
        }
    }
    return m;
}

std::map<int, int> homology_ranks(const GridDiagram& d, int d_min, int d_max) {
    if (d_min > d_max) throw GridError("empty homology window");
    std::map<int, SliceBasis> slices;
    for (int g = d_min - 1; g <= d_max + 1; ++g) slices[g] = slice_basis(d, g);
    std::map<int, int> ranks;
    for (int g = d_min; g <= d_max; ++g) {
        const SliceBasis& here = slices[g];
        int cycles = here.size() - rank(boundary_matrix(d, here, slices[g - 1]));
        int boundaries = rank(boundary_matrix(d, slices[g + 1], here));
        ranks[g] = cycles - boundaries;
    }
    return ranks;
}

bool u_action_trivial(const GridDiagram& d, int index, int d_min, int d_max) {
    if (index < 1 || index > d.k()) throw GridError("no such U variable");
    for (int g = d_min; g <= d_max; ++g) {
        SliceBasis here = slice_basis(d, g);
        SliceBasis below = slice_basis(d, g - 1);
        SliceBasis two_below = slice_basis(d, g - 2);
        auto kernel = kernel_basis(boundary_matrix(d, here, below));
        Gf2Matrix into_two_below = boundary_matrix(d, below, two_below);
        Gf2Eliminator image(two_below.size());
        for (int c = 0; c < into_two_below.cols(); ++c) image.absorb(into_two_below.column(c));
        for (const BitVec& z : kernel) {
            BitVec uz(two_below.size());
            for (int j : z.support()) {
                Term t = here.basis[j];
                t.second.resize(d.k(), 0);
                t.second[index - 1] += 1;
                int row = two_below.find(t);
                if (row < 0) throw GridError("U-image escapes its slice");
                uz.flip(row);
            }
            if (!image.contains(uz)) return false;
        }
    }
    return true;
}

Grading filtration_level(const GridDiagram& d, const Term& t) {
    return alexander(d, t.first) - Grading::whole(total_degree(t.second));
}

TauResult tau_detailed(const GridDiagram& d) {
    require_valid(d);
    if (!d.has_x()) throw GridError("tau needs X-markings");
    if (!is_knot(d)) throw GridError("tau needs a knot (one link component)");
    if (!is_tight(d)) throw GridError("tau needs a tight diagram");
    if (d.k() != d.n - 1) throw GridError("tau needs exactly one special O-marking");

    SliceBasis s0 = slice_basis(d, 0);
    SliceBasis s_minus = slice_basis(d, -1);
    SliceBasis s_plus = slice_basis(d, 1);
    Gf2Matrix d0 = boundary_matrix(d, s0, s_minus);
    Gf2Matrix d1 = boundary_matrix(d, s_plus, s0);

    int z_dim = s0.size() - rank(d0);
    int b_dim = rank(d1);
    if (z_dim - b_dim != 1) throw GridError("homology rank at grading 0 is not 1");

    Gf2Eliminator boundaries(s0.size());
    for (int c = 0; c < d1.cols(); ++c) boundaries.absorb(d1.column(c));

    // Process slice-0 columns by increasing filtration level; a column whose
    // reduction closes a cycle outside the boundary span realizes tau.
    std::vector<int> order(s0.size());
    for (int i = 0; i < s0.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return filtration_level(d, s0.basis[a]) < filtration_level(d, s0.basis[b]);
    });

    std::vector<BitVec> red, combo;
    std::vector<int> pivot;
    for (int j : order) {
        BitVec v = d0.column(j);
        BitVec t(s0.size());
        t.set(j);
        for (size_t i = 0; i < red.size(); ++i)
            if (v.get(pivot[i])) {
                v.xor_with(red[i]);
                t.xor_with(combo[i]);
            }
        int p = v.lowest_set();
        if (p >= 0) {
            red.push_back(std::move(v));
            combo.push_back(std::move(t));
            pivot.push_back(p);
            continue;
        }
        if (!boundaries.contains(t)) return {filtration_level(d, s0.basis[j]), s0.basis[j]};
    }
    throw GridError("no filtration level carries the homology generator");
}

Grading tau(const GridDiagram& d) { return tau_detailed(d).tau; }

}  // namespace gridtau
