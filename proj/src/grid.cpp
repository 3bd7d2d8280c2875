#include "gridtau/grid.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace gridtau {

std::string Grading::str() const {
    if (doubled % 2 == 0) return std::to_string(doubled / 2);
    return std::to_string(doubled) + "/2";
}

uint64_t encode_perm(const Perm& p) {
    if (p.size() > 16) throw GridError("permutation too long to encode");
    uint64_t v = 0;
    for (size_t i = 0; i < p.size(); ++i) v |= uint64_t(p[i] & 0xf) << (4 * i);
    return v;
}

uint64_t factorial(int n) {
    uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

int GridDiagram::k() const {
    int s = 0;
    for (char c : special) s += (c != 0);
    return n - s;
}

static int inverse_at(const std::vector<int>& perm, int value) {
    for (size_t c = 0; c < perm.size(); ++c)
        if (perm[c] == value) return static_cast<int>(c);
    throw GridError("row has no marking");
}

int GridDiagram::o_col(int row) const { return inverse_at(o_row, row); }
int GridDiagram::x_col(int row) const { return inverse_at(x_row, row); }

int GridDiagram::column_of_normal(int index) const {
    for (int c = 0; c < n; ++c)
        if (!special[c] && number[c] == index) return c;
    throw GridError("no normal O-marking numbered " + std::to_string(index));
}

void GridDiagram::renumber_default() {
    int next = 1;
    for (int c = 0; c < n; ++c) number[c] = special[c] ? 0 : next++;
}

bool GridDiagram::same_markings(const GridDiagram& o) const {
    return n == o.n && o_row == o.o_row && x_row == o.x_row && special == o.special;
}

bool GridDiagram::operator==(const GridDiagram& o) const {
    return same_markings(o) && number == o.number;
}

GridDiagram GridDiagram::translated(int dc, int dr) const {
    GridDiagram t = *this;
    for (int c = 0; c < n; ++c) {
        int nc = mod(c + dc, n);
        t.o_row[nc] = mod(o_row[c] + dr, n);
        t.special[nc] = special[c];
        t.number[nc] = number[c];
        if (has_x()) t.x_row[nc] = mod(x_row[c] + dr, n);
    }
    return t;
}

GridDiagram GridDiagram::transposed() const {
    GridDiagram t = *this;
    for (int c = 0; c < n; ++c) {
        t.o_row[o_row[c]] = c;
        t.special[o_row[c]] = special[c];
        t.number[o_row[c]] = number[c];
        if (has_x()) t.x_row[x_row[c]] = c;
    }
    return t;
}

GridDiagram GridDiagram::flipped_h() const {
    GridDiagram t = *this;
    for (int c = 0; c < n; ++c) {
        int nc = n - 1 - c;
        t.o_row[nc] = o_row[c];
        t.special[nc] = special[c];
        t.number[nc] = number[c];
        if (has_x()) t.x_row[nc] = x_row[c];
    }
    return t;
}

GridDiagram GridDiagram::flipped_v() const {
    GridDiagram t = *this;
    for (int c = 0; c < n; ++c) {
        t.o_row[c] = n - 1 - o_row[c];
        if (has_x()) t.x_row[c] = n - 1 - x_row[c];
    }
    return t;
}

GridDiagram GridDiagram::rotated180() const { return flipped_h().flipped_v(); }

GridDiagram GridDiagram::rotated90ccw() const {
    GridDiagram t = *this;
    for (int c = 0; c < n; ++c) {
        int nc = n - 1 - o_row[c];
        t.o_row[nc] = c;
        t.special[nc] = special[c];
        t.number[nc] = number[c];
        if (has_x()) t.x_row[n - 1 - x_row[c]] = c;
    }
    return t;
}

GridDiagram GridDiagram::rotated90cw() const {
    GridDiagram t = *this;
    for (int c = 0; c < n; ++c) {
        int nc = o_row[c];
        t.o_row[nc] = n - 1 - c;
        t.special[nc] = special[c];
        t.number[nc] = number[c];
        if (has_x()) t.x_row[x_row[c]] = n - 1 - c;
    }
    return t;
}

GridDiagram GridDiagram::forget_x() const {
    GridDiagram t = *this;
    t.x_row.clear();
    return t;
}

GridDiagram GridDiagram::canonical_cut() const {
    int sc = -1;
    for (int c = 0; c < n; ++c)
        if (special[c]) { sc = c; break; }
    if (sc < 0) return *this;
    return translated(n - 1 - sc, -o_row[sc]);
}

std::vector<std::string> validate(const GridDiagram& d) {
    std::vector<std::string> bad;
    auto check_perm = [&](const std::vector<int>& p, const char* name) {
        if (static_cast<int>(p.size()) != d.n) {
            bad.push_back(std::string(name) + " has wrong length");
            return;
        }
        std::vector<char> seen(d.n, 0);
        for (int v : p) {
            if (v < 0 || v >= d.n) {
                bad.push_back(std::string(name) + " entry out of range");
                return;
            }
            if (seen[v]) {
                bad.push_back(std::string(name) + " not a permutation");
                return;
            }
            seen[v] = 1;
        }
    };
    if (d.n <= 0) {
        bad.push_back("grid index must be positive");
        return bad;
    }
    check_perm(d.o_row, "o_row");
    if (d.has_x()) check_perm(d.x_row, "x_row");
    if (static_cast<int>(d.special.size()) != d.n) bad.push_back("special flags have wrong length");
    if (static_cast<int>(d.number.size()) != d.n) bad.push_back("numbering has wrong length");
    if (!bad.empty()) return bad;

    std::vector<char> used(d.n + 1, 0);
    int k = d.k();
    for (int c = 0; c < d.n; ++c) {
        if (d.special[c]) {
            if (d.number[c] != 0) bad.push_back("special O carries a number");
            continue;
        }
        int i = d.number[c];
        if (i < 1 || i > k) {
            bad.push_back("unnumbered normal O");
        } else if (used[i]) {
            bad.push_back("duplicate normal O number");
        } else {
            used[i] = 1;
        }
    }
    return bad;
}

void require_valid(const GridDiagram& d) {
    auto bad = validate(d);
    if (!bad.empty()) throw GridError("invalid grid diagram: " + bad.front());
}

// --- gradings ----------------------------------------------------------------

int j_form_doubled(const std::vector<std::pair<int, HalfPoint>>& p,
                   const std::vector<std::pair<int, HalfPoint>>& q) {
    long long acc = 0;
    for (const auto& [a, u] : p)
        for (const auto& [b, v] : q) {
            long long dx = u.x2 - v.x2, dy = u.y2 - v.y2;
            if (dx * dy > 0) acc += static_cast<long long>(a) * b;
        }
    return static_cast<int>(acc);
}

static std::vector<std::pair<int, HalfPoint>> gen_points(const Perm& g) {
    std::vector<std::pair<int, HalfPoint>> p;
    p.reserve(g.size());
    for (size_t c = 0; c < g.size(); ++c) p.push_back({1, {2 * static_cast<int>(c), 2 * g[c]}});
    return p;
}

static std::vector<std::pair<int, HalfPoint>> marking_points(const std::vector<int>& row) {
    std::vector<std::pair<int, HalfPoint>> p;
    p.reserve(row.size());
    for (size_t c = 0; c < row.size(); ++c)
        p.push_back({1, {2 * static_cast<int>(c) + 1, 2 * row[c] + 1}});
    return p;
}

Grading maslov(const GridDiagram& d, const Perm& g) {
    auto x = gen_points(g);
    auto o = marking_points(d.o_row);
    int m2 = j_form_doubled(x, x) - 2 * j_form_doubled(x, o) + j_form_doubled(o, o) + 2;
    return Grading{m2};
}

Grading alexander(const GridDiagram& d, const Perm& g) {
    if (!d.has_x()) throw GridError("alexander grading needs X-markings");
    auto xpts = gen_points(g);
    auto o = marking_points(d.o_row);
    auto xx = marking_points(d.x_row);
    // doubled value of J(x,X) - J(x,O) - J(X,X)/2 + J(O,O)/2 - (n-1)/2
    int a4 = 2 * j_form_doubled(xpts, xx) - 2 * j_form_doubled(xpts, o) -
             j_form_doubled(xx, xx) + j_form_doubled(o, o) - 2 * (d.n - 1);
    if (a4 % 2 != 0) throw GridError("alexander grading is not a half-integer");
    return Grading{a4 / 2};
}

Perm special_generator(const GridDiagram& d) {
    Perm g(d.n);
    for (int c = 0; c < d.n; ++c) g[c] = mod(d.o_row[c] + 1, d.n);
    return g;
}

// --- link structure ----------------------------------------------------------

std::vector<ComponentRecord> components(const GridDiagram& d) {
    if (!d.has_x()) throw GridError("components need X-markings");
    require_valid(d);
    std::vector<char> seen(d.n, 0);
    std::vector<ComponentRecord> out;
    for (int c0 = 0; c0 < d.n; ++c0) {
        if (seen[c0]) continue;
        ComponentRecord rec;
        int c = c0;
        // From the O in column c walk up the column to its X, then along that
        // row to the next O.
        do {
            seen[c] = 1;
            rec.columns.push_back(c);
            rec.special_count += (d.special[c] != 0);
            c = d.o_col(d.x_row[c]);
        } while (c != c0);
        out.push_back(std::move(rec));
    }
    return out;
}

bool is_tight(const GridDiagram& d) {
    for (const auto& rec : components(d))
        if (rec.special_count != 1) return false;
    return true;
}

bool is_knot(const GridDiagram& d) { return components(d).size() == 1; }

CrossingCount count_crossings(const GridDiagram& d) {
    if (!d.has_x()) throw GridError("crossings need X-markings");
    GridDiagram p = d.canonical_cut();
    CrossingCount out;
    // Vertical segment of column c runs between its O and X; horizontal
    // segment of row r between its X and O.  Segments are drawn straight in
    // the cut picture.
    for (int c = 0; c < p.n; ++c) {
        int vlo = std::min(p.o_row[c], p.x_row[c]);
        int vhi = std::max(p.o_row[c], p.x_row[c]);
        for (int r = vlo + 1; r < vhi; ++r) {
            int hx = p.x_col(r), ho = p.o_col(r);
            int hlo = std::min(hx, ho), hhi = std::max(hx, ho);
            if (hlo < c && c < hhi) {
                ++out.total;
                // The staircase of O-markings runs along c + r = n; "above"
                // means the far side of that line.
                if (c + r > p.n) ++out.above_diagonal;
            }
        }
    }
    return out;
}

// --- file format ---------------------------------------------------------------

GridDiagram parse_grid(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    GridDiagram d;
    bool saw_grid = false, saw_o = false, saw_number = false;
    int lineno = 0;
    auto fail = [&](const std::string& m) {
        throw GridError("line " + std::to_string(lineno) + ": " + m);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        if (key == "grid") {
            if (!(ls >> d.n) || d.n <= 0) fail("bad grid index");
            saw_grid = true;
            d.special.assign(d.n, 0);
            d.number.assign(d.n, 0);
        } else if (key == "O" || key == "X") {
            if (!saw_grid) fail("marking line before 'grid'");
            std::vector<int> rows;
            int r;
            while (ls >> r) {
                if (r < 1 || r > d.n) fail("row out of range");
                rows.push_back(r - 1);
            }
            if (static_cast<int>(rows.size()) != d.n) fail("wrong number of rows");
            (key == "O" ? d.o_row : d.x_row) = rows;
            if (key == "O") saw_o = true;
        } else if (key == "special") {
            if (!saw_grid) fail("'special' before 'grid'");
            int c;
            while (ls >> c) {
                if (c < 1 || c > d.n) fail("column out of range");
                d.special[c - 1] = 1;
            }
        } else if (key == "number") {
            if (!saw_grid) fail("'number' before 'grid'");
            saw_number = true;
            std::string tok;
            while (ls >> tok) {
                auto colon = tok.find(':');
                if (colon == std::string::npos) fail("expected col:index");
                int c = std::stoi(tok.substr(0, colon));
                int i = std::stoi(tok.substr(colon + 1));
                if (c < 1 || c > d.n) fail("column out of range");
                d.number[c - 1] = i;
            }
        } else {
            fail("unknown directive '" + key + "'");
        }
    }
    if (!saw_grid) throw GridError("missing 'grid' line");
    if (!saw_o) throw GridError("missing 'O' line");
    if (!saw_number) d.renumber_default();
    auto bad = validate(d);
    if (!bad.empty()) throw GridError("invalid grid file: " + bad.front());
    return d;
}

GridDiagram load_grid(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw GridError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_grid(ss.str());
}

std::string emit_grid(const GridDiagram& d) {
    std::ostringstream out;
    out << "grid " << d.n << "\n";
    auto row_line = [&](const char* key, const std::vector<int>& rows) {
        out << key;
        for (int r : rows) out << ' ' << r + 1;
        out << "\n";
    };
    row_line("O", d.o_row);
    if (d.has_x()) row_line("X", d.x_row);
    bool any_special = false;
    for (char s : d.special) any_special |= (s != 0);
    if (any_special) {
        out << "special";
        for (int c = 0; c < d.n; ++c)
            if (d.special[c]) out << ' ' << c + 1;
        out << "\n";
    }
    GridDiagram def = d;
    def.renumber_default();
    if (def.number != d.number) {
        out << "number";
        for (int c = 0; c < d.n; ++c)
            if (!d.special[c]) out << ' ' << c + 1 << ':' << d.number[c];
        out << "\n";
    }
    return out.str();
}

}  // namespace gridtau
