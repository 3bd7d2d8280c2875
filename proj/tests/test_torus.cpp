#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gridtau/torus.hpp"

using namespace gridtau;

TEST_CASE("torus grid shape") {
    GridDiagram d = torus_grid({5, 3});
    CHECK(d.n == 8);
    CHECK(is_tight(d));
    CHECK(is_knot(d));
    // X in the special row sits p squares right of the special O
    CHECK(d.x_row[mod(8 - 1 + 5, 8)] == 0);
    CHECK_THROWS_AS(torus_grid({2, 4}), GridError);
}

TEST_CASE("closed form tau") {
    CHECK(closed_form_tau({5, 3}) == Grading::whole(4));
    CHECK(closed_form_tau({2, 3}) == Grading::whole(1));
    CHECK(closed_form_tau({1, 7}) == Grading::whole(0));
}

TEST_CASE("closed form tau agrees with the special generator grading for p,q <= 12") {
    for (int p = 1; p <= 12; ++p)
        for (int q = 1; q <= 12; ++q)
            if (coprime(p, q)) {
                Grading t = closed_form_tau({p, q});
                CHECK(t == Grading::halves((p - 1) * (q - 1)));
            }
}

TEST_CASE("unknotting counts") {
    CHECK(unknotting_count({5, 3}) == 4);
    CHECK(unknotting_count({2, 3}) == 1);
    CHECK(unknotting_count({7, 2}) == 3);
    CHECK(unknotting_count({1, 9}) == 0);
    for (int p = 1; p <= 30; ++p)
        for (int q = 1; q <= 30; ++q)
            if (coprime(p, q))
                CHECK(unknotting_count({p, q}) == static_cast<long long>(p - 1) * (q - 1) / 2);
}

TEST_CASE("full tau agrees with the closed form for small torus knots") {
    for (int p = 1; p <= 6; ++p)
        for (int q = 1; q <= 6; ++q)
            if (p + q <= 7 && coprime(p, q)) CHECK(tau(torus_grid({p, q})) == closed_form_tau({p, q}));
}
