#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "sqf/circle.hpp"

#include <random>

using namespace sqf;

namespace {
VSlice slice(std::initializer_list<std::pair<VIdx, i64>> kv) {
    VSlice v;
    for (auto [k, x] : kv) v.b[k] = x;
    return v;
}
} // namespace

TEST_CASE("FFT count equals nested loops on small boxes") {
    std::array<i64, 9> w;
    w.fill(2);
    CHECK(lattice_count(w, 1, VSlice{}) == lattice_count_nested(w, 1, VSlice{}));
    w.fill(0);
    CHECK(lattice_count(w, 1, VSlice{}) == 1);
    w.fill(1);
    CHECK(lattice_count(w, 1, VSlice{}) == lattice_count_nested(w, 1, VSlice{}));

    const std::pair<u64, VSlice> classes[] = {{1, VSlice{}},
                                              {3, slice({{v11, 1}})},
                                              {3, slice({{v12, 1}, {v34, 1}, {v22, 1}, {v33, -2}})},
                                              {5, slice({{v14, 1}, {v11, 1}, {v44, -2}})},
                                              {15, slice({{v11, 1}})}};
    std::mt19937_64 rng(51);
    for (int t = 0; t < 25; ++t)
        for (auto& [m, B0] : classes) {
            for (auto& x : w) x = i64(rng() % (m == 1 ? 3 : 7));
            CHECK(lattice_count(w, m, B0) == lattice_count_nested(w, m, B0));
        }
}

TEST_CASE("FFT count on a lopsided box") {
    std::array<i64, 9> w{6, 1, 3, 2, 0, 4, 9, 1, 2};
    CHECK(lattice_count(w, 1, VSlice{}) == lattice_count_nested(w, 1, VSlice{}));
    CHECK(lattice_count(w, 3, slice({{v11, 1}})) == lattice_count_nested(w, 3, slice({{v11, 1}})));
}

TEST_CASE("lattice count argument checks") {
    std::array<i64, 9> w;
    w.fill(2);
    CHECK_THROWS_AS(lattice_count(w, 3, slice({{v14, 1}})), std::invalid_argument); // q = -2
    CHECK_THROWS_AS(lattice_count(w, 4, VSlice{}), std::invalid_argument);
    w[0] = -1;
    CHECK_THROWS_AS(lattice_count(w, 1, VSlice{}), std::invalid_argument);
    w.fill(100000);
    CHECK_THROWS_AS(lattice_count(w, 1, VSlice{}, 1 << 20), BudgetExceeded);
    CHECK_THROWS_AS(lattice_count_nested(w, 1, VSlice{}), BudgetExceeded);
}

TEST_CASE("integer widths of the standard box") {
    auto w = integer_widths(BoxSpec::standard(10));
    for (i64 x : w) CHECK(x >= 0);
    auto w2 = integer_widths(BoxSpec::standard(20));
    for (int k = 0; k < 9; ++k) CHECK(w2[k] >= w[k]);
}
