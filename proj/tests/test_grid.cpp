#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridtau/grid.hpp"
#include "gridtau/torus.hpp"

using namespace gridtau;

static GridDiagram make(int n, std::vector<int> o, std::vector<int> x, std::vector<int> specials) {
    GridDiagram d;
    d.n = n;
    d.o_row = std::move(o);
    d.x_row = std::move(x);
    d.special.assign(n, 0);
    for (int c : specials) d.special[c] = 1;
    d.number.assign(n, 0);
    d.renumber_default();
    return d;
}

static GridDiagram unknot2() { return make(2, {0, 1}, {1, 0}, {1}); }

TEST_CASE("validate accepts and rejects") {
    CHECK(validate(unknot2()).empty());

    GridDiagram bad = unknot2();
    bad.o_row = {0, 0};
    CHECK_FALSE(validate(bad).empty());

    GridDiagram unnumbered = unknot2();
    unnumbered.number[0] = 0;  // column 0 is normal here
    auto v = validate(unnumbered);
    REQUIRE(v.size() == 1);
    CHECK(v[0] == "unnumbered normal O");
}

TEST_CASE("j form basics") {
    auto pt = [](int x, int y) { return std::vector<std::pair<int, HalfPoint>>{{1, {2 * x, 2 * y}}}; };
    CHECK(j_form_doubled(pt(0, 0), pt(1, 1)) == 1);  // value 1/2
    CHECK(j_form_doubled(pt(0, 0), pt(1, 0)) == 0);
    // J(x - O, x - O) for the single-square grid: doubled -2
    std::vector<std::pair<int, HalfPoint>> diff{{1, {0, 0}}, {-1, {1, 1}}};
    CHECK(j_form_doubled(diff, diff) == -2);
}

TEST_CASE("maslov on tiny grids") {
    GridDiagram one = make(1, {0}, {}, {0});
    CHECK(maslov(one, {0}) == Grading::whole(0));

    GridDiagram two = make(2, {0, 1}, {}, {1});
    CHECK(maslov(two, {0, 1}) == Grading::whole(-1));
    CHECK(maslov(two, {1, 0}) == Grading::whole(0));
}

TEST_CASE("special generator has maslov zero") {
    for (int n = 1; n <= 10; ++n) {
        GridDiagram d = staircase_background(n);
        CHECK(maslov(d, special_generator(d)) == Grading::whole(0));
    }
    // also on a non-staircase diagram
    GridDiagram d = make(4, {2, 0, 3, 1}, {}, {2});
    CHECK(maslov(d, special_generator(d)) == Grading::whole(0));
}

TEST_CASE("alexander on the 2x2 unknot") {
    GridDiagram d = unknot2();
    CHECK(alexander(d, {1, 0}) == Grading::whole(0));
    CHECK(alexander(d, {0, 1}) == Grading::whole(-1));
}

TEST_CASE("alexander of the special generator on torus grids") {
    GridDiagram d = torus_grid({5, 3});
    CHECK(alexander(d, special_generator(d)) == Grading::whole(4));
}

TEST_CASE("gradings are translation invariant") {
    for (int n = 2; n <= 5; ++n) {
        GridDiagram d = torus_grid({n - 1, 1}).translated(1, 2);  // nudge off canonical
        GridDiagram base = d;
        int count = 0;
        for_each_perm(n, [&](const Perm& g) {
            if (++count > 24) return;  // sample of generators
            Grading m = maslov(base, g), a = alexander(base, g);
            for (int dc = 0; dc < n; ++dc)
                for (int dr = 0; dr < n; ++dr) {
                    GridDiagram t = base.translated(dc, dr);
                    Perm tg(n);
                    for (int c = 0; c < n; ++c) tg[mod(c + dc, n)] = mod(g[c] + dr, n);
                    CHECK(maslov(t, tg) == m);
                    CHECK(alexander(t, tg) == a);
                }
        });
    }
}

TEST_CASE("components and tightness") {
    CHECK(components(unknot2()).size() == 1);

    GridDiagram split = make(2, {0, 1}, {0, 1}, {0, 1});
    auto comps = components(split);
    REQUIRE(comps.size() == 2);
    CHECK(comps[0].special_count == 1);
    CHECK(comps[1].special_count == 1);
    CHECK(is_tight(split));

    GridDiagram loose = make(2, {0, 1}, {1, 0}, {});
    CHECK_FALSE(is_tight(loose));

    CHECK(components(torus_grid({5, 3})).size() == 1);
    CHECK(components(torus_grid({2, 3})).size() == 1);
    CHECK(is_tight(torus_grid({2, 3})));
}

TEST_CASE("crossing counts of torus grids") {
    auto c53 = count_crossings(torus_grid({5, 3}));
    CHECK(c53.total == 10);
    CHECK(c53.above_diagonal == 3);
    // For p > q the grid realizes the minimal diagram with p(q-1) crossings;
    // the trefoil drawn as the (3,2) grid has three.
    CHECK(count_crossings(torus_grid({3, 2})).total == 3);
    CHECK(count_crossings(torus_grid({2, 3})).total == 3);
    CHECK(count_crossings(unknot2()).total == 0);
}

TEST_CASE("grid file round trip") {
    std::string text =
        "# comment\n"
        "grid 5\n"
        "O 2 3 4 5 1\n"
        "X 5 1 2 3 4\n"
        "special 5\n";
    GridDiagram d = parse_grid(text);
    CHECK(d.n == 5);
    CHECK(d.o_row[0] == 1);
    CHECK(d.special[4]);
    std::string canon = emit_grid(d);
    CHECK(emit_grid(parse_grid(canon)) == canon);

    GridDiagram renum = d;
    renum.number = {2, 1, 3, 4, 0};
    std::string canon2 = emit_grid(renum);
    CHECK(canon2.find("number 1:2 2:1 3:3 4:4") != std::string::npos);
    CHECK(emit_grid(parse_grid(canon2)) == canon2);
}

TEST_CASE("parse errors carry line numbers") {
    CHECK_THROWS_WITH_AS(parse_grid("grid 2\nO 1 1\n"), doctest::Contains("invalid grid file"),
                         GridError);
    CHECK_THROWS_WITH_AS(parse_grid("grid 2\nO 1 x\n"), doctest::Contains("line 2"), GridError);
}

TEST_CASE("staircase background shape") {
    GridDiagram d = staircase_background(8);
    CHECK(d.special[7]);
    CHECK(d.o_row[7] == 0);
    for (int c = 0; c < 8; ++c) CHECK(d.o_row[c] == 7 - c);
    // special generator also sits at the bottom-right corners of the O squares
    Perm g = special_generator(d);
    for (int c = 0; c < 8; ++c) {
        int cc = mod(c + 1, 8);
        CHECK(g[cc] == d.o_row[c]);
    }
}
