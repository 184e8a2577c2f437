#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <complex>
#include <random>

#include "gframe/errors.hpp"
#include "gframe/group.hpp"
#include "gframe/rng.hpp"

using namespace gframe;

namespace {

// Oracle: the symmetric group S_3 through explicit permutation composition.
// Permutations of {0,1,2} in lexicographic order; (g*h)(x) = g(h(x)).
const std::array<std::array<int, 3>, 6> kPerms = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

int perm_index(const std::array<int, 3>& p) {
    for (size_t i = 0; i < kPerms.size(); ++i)
        if (kPerms[i] == p) return static_cast<int>(i);
    return -1;
}

std::vector<std::vector<int>> s3_table() {
    std::vector<std::vector<int>> table(6, std::vector<int>(6));
    for (int g = 0; g < 6; ++g)
        for (int h = 0; h < 6; ++h) {
            std::array<int, 3> comp;
            for (int x = 0; x < 3; ++x) comp[x] = kPerms[g][kPerms[h][x]];
            table[g][h] = perm_index(comp);
        }
    return table;
}

std::vector<std::vector<int>> zn_table(int n) {
    std::vector<std::vector<int>> table(n, std::vector<int>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) table[a][b] = (a + b) % n;
    return table;
}

}  // namespace

TEST_CASE("trivial group from a 1x1 table") {
    const FiniteGroup g = build_group_from_table({{0}});
    CHECK(g.order == 1);
    CHECK(g.identity == 0);
    CHECK(g.inv(0) == 0);
}

TEST_CASE("Z_3 from its addition table") {
    const FiniteGroup g = build_group_from_table(zn_table(3));
    CHECK(g.order == 3);
    CHECK(g.identity == 0);
    CHECK(g.inverses == std::vector<int>{0, 2, 1});
    CHECK(g.is_abelian());
}

TEST_CASE("S_3 from permutation composition") {
    const FiniteGroup g = build_group_from_table(s3_table());
    CHECK(g.order == 6);
    CHECK(g.identity == 0);
    CHECK_FALSE(g.is_abelian());
    for (int x = 0; x < 6; ++x) CHECK(g.mul(x, g.inv(x)) == 0);
}

TEST_CASE("invalid tables are rejected with witnesses") {
    CHECK_THROWS_AS(build_group_from_table({{1}}), NotAGroupError);
    CHECK_THROWS_AS(build_group_from_table({{0, 0}, {0, 0}}), NotAGroupError);
    // Latin square without associativity: a 5-element quasigroup.
    std::vector<std::vector<int>> loop = {
        {0, 1, 2, 3, 4}, {1, 0, 3, 4, 2}, {2, 4, 0, 1, 3}, {3, 2, 4, 0, 1}, {4, 3, 1, 2, 0}};
    try {
        build_group_from_table(loop);
        CHECK(false);
    } catch (const NotAGroupError& e) {
        CHECK(std::string(e.what()).find("associativity") != std::string::npos);
        const auto& w = e.witness();
        const FiniteGroup* null_group = nullptr;
        (void)null_group;
        // replay the witness on the raw table
        CHECK(loop[static_cast<size_t>(loop[static_cast<size_t>(w[0])][static_cast<size_t>(w[1])])]
                  [static_cast<size_t>(w[2])] !=
              loop[static_cast<size_t>(w[0])]
                  [static_cast<size_t>(loop[static_cast<size_t>(w[1])][static_cast<size_t>(w[2])])]);
    }
}

TEST_CASE("abelian groups from cyclic factors") {
    const AbelianGroup z2 = build_abelian({2});
    CHECK(z2.order() == 2);

    const AbelianGroup g = build_abelian({2, 4});
    CHECK(g.order() == 8);
    for (int a = 0; a < 8; ++a)
        for (int b = 0; b < 8; ++b) CHECK(g.add(a, b) == g.add(b, a));
    // mixed-radix flattening: (1,2) -> 1*4 + 2
    CHECK(g.encode({1, 2}) == 6);
    CHECK(g.decode(6) == std::vector<int>{1, 2});

    const AbelianGroup trivial = build_abelian({1});
    CHECK(trivial.order() == 1);

    CHECK_THROWS_AS(build_abelian({}), EmptyOrdersError);
    CHECK_THROWS_AS(build_abelian({0}), std::invalid_argument);
}

TEST_CASE("characters of Z_2 and Z_4") {
    const AbelianGroup z2 = build_abelian({2});
    const auto chars2 = characters(z2);
    REQUIRE(chars2.size() == 2);
    CHECK(chars2[0].value(0) == std::complex<double>(1.0, 0.0));
    CHECK(chars2[0].value(1) == std::complex<double>(1.0, 0.0));
    CHECK(chars2[1].value(0) == std::complex<double>(1.0, 0.0));
    CHECK(std::abs(chars2[1].value(1) - std::complex<double>(-1.0, 0.0)) < 1e-15);

    // xi_c(g) = i^{cg} on Z_4
    const AbelianGroup z4 = build_abelian({4});
    const auto chars4 = characters(z4);
    REQUIRE(chars4.size() == 4);
    const std::complex<double> i(0.0, 1.0);
    for (int c = 0; c < 4; ++c)
        for (int g = 0; g < 4; ++g)
            CHECK(std::abs(chars4[static_cast<size_t>(c)].value(g) -
                           std::pow(i, static_cast<double>(c * g % 4))) < 1e-12);
}

TEST_CASE("characters of Z_2 x Z_2 are real and multiplicative") {
    const AbelianGroup g = build_abelian({2, 2});
    const auto chars = characters(g);
    REQUIRE(chars.size() == 4);
    for (const Character& chi : chars) {
        for (int a = 0; a < 4; ++a) {
            CHECK(std::abs(chi.value(a).imag()) < 1e-15);
            CHECK(std::abs(std::abs(chi.value(a)) - 1.0) < 1e-15);
            for (int b = 0; b < 4; ++b)
                CHECK(std::abs(chi.value(g.add(a, b)) - chi.value(a) * chi.value(b)) < 1e-12);
        }
    }
}

TEST_CASE("character orthogonality") {
    // two-term sum on Z_2: <xi_0, xi_1> = (1/2)(1*1 + 1*(-1)) = 0
    const AbelianGroup z2 = build_abelian({2});
    std::complex<double> acc = 0.0;
    for (int g = 0; g < 2; ++g)
        acc += z2.character_value(0, g) * std::conj(z2.character_value(1, g));
    CHECK(std::abs(acc) < 1e-15);

    CHECK(check_character_orthogonality(z2).passed());

    const AbelianGroup z4 = build_abelian({4});
    const VerificationReport rep = check_character_orthogonality(z4);
    CHECK(rep.passed());
    CHECK(rep.residuals.at("max_deviation") <= 1e-12);

    // <xi, xi> = 1 for every character of a mixed group
    const AbelianGroup g = build_abelian({2, 3});
    for (int c = 0; c < g.order(); ++c) {
        std::complex<double> self = 0.0;
        for (int x = 0; x < g.order(); ++x)
            self += g.character_value(c, x) * std::conj(g.character_value(c, x));
        CHECK(std::abs(self / static_cast<double>(g.order()) - 1.0) < 1e-15);
    }
    CHECK(check_character_orthogonality(g).passed());
}

TEST_CASE("subgroup closure") {
    const AbelianGroup z4 = build_abelian({4});
    CHECK(subgroup_from_generators(z4.group, {}) == std::vector<int>{0});
    CHECK(subgroup_from_generators(z4.group, {2}) == std::vector<int>{0, 2});

    const FiniteGroup s3 = build_group_from_table(s3_table());
    const int three_cycle = perm_index({1, 2, 0});
    const auto sub = subgroup_from_generators(s3, {three_cycle});
    CHECK(sub.size() == 3);
    for (int a : sub)
        for (int b : sub)
            CHECK(std::find(sub.begin(), sub.end(), s3.mul(a, b)) != sub.end());
}

TEST_CASE("subgroup order divides group order (randomized)") {
    std::mt19937_64 rng(7);
    const FiniteGroup s3 = build_group_from_table(s3_table());
    const AbelianGroup z16 = build_abelian({16});
    const AbelianGroup z2z8 = build_abelian({2, 8});
    const std::vector<const FiniteGroup*> groups = {&s3, &z16.group, &z2z8.group};
    for (int trial = 0; trial < 24; ++trial) {
        const FiniteGroup& g = *groups[static_cast<size_t>(trial % groups.size())];
        std::vector<int> gens;
        const int count = static_cast<int>(rng() % 3);
        for (int i = 0; i < count; ++i) gens.push_back(static_cast<int>(rng() % g.order));
        const auto sub = subgroup_from_generators(g, gens);
        CHECK(g.order % static_cast<int>(sub.size()) == 0);
    }
}

TEST_CASE("group descriptions") {
    CHECK(describe(build_abelian({2, 4})) == "Z_2xZ_4");
    CHECK(describe(build_group_from_table(s3_table())) == "table-group(order=6)");
}
