#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "tensorcomm/combinatorics.hpp"

using namespace tensorcomm;

namespace {

// all maximum AP-free subsets by brute force, for cross-checking
std::vector<std::vector<int>> brute_ap_free_maxima(const AbelianGroup& g) {
    const int n = g.order();
    REQUIRE(n <= 16);
    std::vector<std::vector<int>> best;
    std::size_t best_size = 0;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) s.push_back(i);
        if (s.size() < best_size) continue;
        if (!ApFreeSet{g, s}.verify()) continue;
        if (s.size() > best_size) {
            best_size = s.size();
            best.clear();
        }
        best.push_back(s);
    }
    return best;
}

} // namespace

TEST_CASE("ap_free_exact matches brute force and is lexicographically least") {
    for (int n : {2, 3, 5, 7, 8, 11, 13}) {
        AbelianGroup g{{n}};
        ApFreeSet s = ap_free_exact(g);
        auto maxima = brute_ap_free_maxima(g);
        CHECK(s.elements.size() == maxima.front().size());
        CHECK(s.elements == *std::min_element(maxima.begin(), maxima.end()));
        CHECK(s.verify());
    }
    AbelianGroup f3sq = AbelianGroup::parse("Z3^2");
    ApFreeSet cap = ap_free_exact(f3sq);
    CHECK(cap.elements.size() == 4); // the affine cap in F_3^2
    AbelianGroup big{{101}};
    CHECK_THROWS_AS(ap_free_exact(big), TooLarge);
}

TEST_CASE("ap-free verification catches progressions") {
    AbelianGroup z7{{7}};
    CHECK(ApFreeSet{z7, {0, 1}}.verify());
    CHECK(!ApFreeSet{z7, {0, 1, 2}}.verify());
    CHECK(!ApFreeSet{z7, {1, 3, 5}}.verify());
    // wraparound progression: 5 + 3 = 2*4 mod 7
    CHECK(!ApFreeSet{z7, {3, 4, 5}}.verify());
}

TEST_CASE("behrend_set produces dense verified sets") {
    for (int n : {5, 11, 31, 101}) {
        ApFreeSet s = behrend_set(n);
        CHECK(s.verify());
        CHECK(!s.elements.empty());
        for (int e : s.elements) {
            CHECK(e >= 0);
            CHECK(e <= (n - 1) / 2);
        }
    }
    CHECK(behrend_set(101).elements.size() >= 16);
}

TEST_CASE("corner-free sets from AP-free sets") {
    ApFreeSet s = behrend_set(11);
    CornerFreeSet c = corner_free_from_ap_free(s);
    CHECK(c.n == 11);
    CHECK(c.pairs.size() == 11 * s.elements.size());
    CHECK(c.verify());

    AbelianGroup z8{{8}};
    CHECK_THROWS_AS(corner_free_from_ap_free(ApFreeSet{z8, {0, 1}}), EvenModulus);

    CornerFreeSet planted = c;
    // plant a corner: (0,0), (d,0), (0,d)
    planted.pairs.push_back({0, 0});
    planted.pairs.push_back({1, 0});
    planted.pairs.push_back({0, 1});
    std::sort(planted.pairs.begin(), planted.pairs.end());
    planted.pairs.erase(std::unique(planted.pairs.begin(), planted.pairs.end()),
                        planted.pairs.end());
    CHECK(!planted.verify());
}

TEST_CASE("corner-free sets induce independent sets of the Eval embedding") {
    CornerFreeSet c = corner_free_from_ap_free(behrend_set(7));
    IndependentSet s = eval_indep_from_corner_free(c);
    CHECK(s.triples.size() == c.pairs.size());

    CornerFreeSet bad;
    bad.n = 7;
    bad.pairs = {{0, 0}, {1, 0}, {0, 1}};
    CHECK_THROWS_AS(eval_indep_from_corner_free(bad), VerificationFailed);
}

TEST_CASE("mm_subrank_lower at small sizes") {
    for (int n = 1; n <= 8; ++n) {
        SubrankLowerResult r = mm_subrank_lower(n, 5);
        CHECK(!r.indep.triples.empty());
        CHECK(is_independent_set(all_green(matmul_tensor(n, n, n)), r.indep.triples));
        if (n >= 2) CHECK(r.indep.triples.size() >= static_cast<std::size_t>(n > 4 ? n : 2));
    }
}

TEST_CASE("triangle systems round trip with independent sets") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 10; ++trial) {
        int n = 3 + static_cast<int>(rng() % 4);
        SubrankLowerResult r = mm_subrank_lower(n, rng());
        TriangleSystem ts = rs_graph_from_indep(r.indep, n);
        CHECK(ts.triangles.size() == r.indep.triples.size());
        IndependentSet back = indep_from_rs_graph(ts);
        CHECK(back.triples == r.indep.triples);
        CHECK(enumerate_triangles(ts) == ts.triangles);
    }
}

TEST_CASE("triangle system error cases") {
    // two triangles sharing the edge (0,0)-(0,1)
    TriangleSystem shared;
    shared.n = 3;
    shared.triangles = {{0, 0, 0}, {0, 0, 1}};
    CHECK_THROWS_AS(enumerate_triangles(shared), SharedEdge);

    // edge-disjoint listed triangles whose union spans an extra triangle
    IndependentSet not_indep;
    int n = 2;
    not_indep.triples = {{0 * n + 0, 0 * n + 0, 0 * n + 0},
                         {0 * n + 1, 1 * n + 1, 1 * n + 0},
                         {1 * n + 0, 0 * n + 1, 1 * n + 1}};
    CHECK_THROWS_AS(rs_graph_from_indep(not_indep, n), Error);

    TriangleSystem missing;
    missing.n = 2;
    // edges of (0,0,0), (0,1,1), (1,0,1) create triangles not in the list
    missing.triangles = {{0, 0, 0}, {0, 1, 1}, {1, 0, 1}};
    CHECK_THROWS_AS(indep_from_rs_graph(missing), Error);
}

TEST_CASE("translation samplers emit automorphisms") {
    std::mt19937_64 rng(37);
    ColoredTensor mm = all_green(matmul_tensor(3, 3, 3));
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{3}}));
    AbelianGroup z5{{5}};
    ColoredTensor eq = eq_problem(z5);
    auto mm_s = mm_translation_sampler(3);
    auto ev_s = eval_translation_sampler(3);
    auto eq_s = eq_translation_sampler(z5);
    for (int trial = 0; trial < 10; ++trial) {
        CHECK(is_automorphism(mm, mm_s(rng)));
        CHECK(is_automorphism(ev, ev_s(rng)));
        CHECK(is_automorphism(eq, eq_s(rng)));
    }
}
