#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gridtau/gf2.hpp"

using namespace gridtau;

static Gf2Matrix from_rows(int rows, int cols, const std::vector<std::vector<int>>& entries) {
    Gf2Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (entries[r][c]) m.set(r, c);
    return m;
}

TEST_CASE("rank of small matrices") {
    CHECK(rank(from_rows(2, 2, {{1, 1}, {0, 1}})) == 2);
    CHECK(rank(Gf2Matrix(3, 4)) == 0);
    CHECK(rank(from_rows(2, 2, {{1, 1}, {1, 1}})) == 1);
}

TEST_CASE("kernel bases") {
    auto k1 = kernel_basis(from_rows(1, 2, {{1, 1}}));
    REQUIRE(k1.size() == 1);
    CHECK(k1[0].get(0));
    CHECK(k1[0].get(1));

    CHECK(kernel_basis(from_rows(3, 3, {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}})).empty());
    CHECK(kernel_basis(Gf2Matrix(2, 2)).size() == 2);
}

TEST_CASE("span membership") {
    BitVec e0(2), e1(2), both(2), v(2);
    e0.set(0);
    e1.set(1);
    both.set(0);
    both.set(1);
    CHECK(in_span(both, {e0, e1}));
    v.set(0);
    CHECK_FALSE(in_span(v, {both}));
    CHECK(in_span(BitVec(2), {both}));  // zero vector
}

TEST_CASE("randomized agreement with dense elimination oracle") {
    std::mt19937_64 rng(20240811);
    for (int trial = 0; trial < 12; ++trial) {
        int rows = 1 + static_cast<int>(rng() % 200);
        int cols = 1 + static_cast<int>(rng() % 200);
        Gf2Matrix m(rows, cols);
        std::vector<std::vector<int>> dense(rows, std::vector<int>(cols, 0));
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (rng() & 1) {
                    m.set(r, c);
                    dense[r][c] = 1;
                }
        // plain row-echelon oracle
        int oracle = 0;
        int lead = 0;
        for (int c = 0; c < cols && lead < rows; ++c) {
            int pr = -1;
            for (int r = lead; r < rows; ++r)
                if (dense[r][c]) {
                    pr = r;
                    break;
                }
            if (pr < 0) continue;
            std::swap(dense[pr], dense[lead]);
            for (int r = 0; r < rows; ++r)
                if (r != lead && dense[r][c])
                    for (int cc = 0; cc < cols; ++cc) dense[r][cc] ^= dense[lead][cc];
            ++lead;
            ++oracle;
        }
        int rk = rank(m);
        CHECK(rk == oracle);
        CHECK(rk == rank(m.transpose()));
        auto kb = kernel_basis(m);
        CHECK(static_cast<int>(kb.size()) == cols - rk);
        for (const BitVec& z : kb) CHECK(m.apply(z).is_zero());
    }
}
