#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "tensorcomm/combinatorics.hpp"
#include "tensorcomm/constructions.hpp"
#include "tensorcomm/solvers.hpp"

using namespace tensorcomm;

namespace {

// oracle versions by direct definition-chasing, independent of the solver's
// indexing tricks

bool oracle_independent(const ColoredTensor& t, const std::vector<Triple>& s) {
    for (const Triple& x : s)
        if (!std::binary_search(t.green.begin(), t.green.end(), x)) return false;
    for (int axis = 0; axis < 3; ++axis) {
        std::set<int> seen;
        for (const Triple& x : s)
            if (!seen.insert(x[axis]).second) return false;
    }
    std::set<int> pa, pb, pc;
    for (const Triple& x : s) {
        pa.insert(x.a);
        pb.insert(x.b);
        pc.insert(x.c);
    }
    std::set<Triple> members(s.begin(), s.end());
    for (const Triple& x : t.promise.support)
        if (pa.count(x.a) && pb.count(x.b) && pc.count(x.c) && !members.count(x)) return false;
    return true;
}

int oracle_alpha(const ColoredTensor& t) {
    const std::size_t g = t.green.size();
    REQUIRE(g <= 16);
    int best = 0;
    for (std::uint32_t mask = 0; mask < (1u << g); ++mask) {
        std::vector<Triple> s;
        for (std::size_t i = 0; i < g; ++i)
            if (mask & (1u << i)) s.push_back(t.green[i]);
        if (static_cast<int>(s.size()) > best && oracle_independent(t, s))
            best = static_cast<int>(s.size());
    }
    return best;
}

// prefix classes are checked eagerly; sound because subsets of independent
// sets stay independent
bool oracle_colorable(const ColoredTensor& t, int k, std::size_t at, std::vector<int>& colors,
                      int used) {
    if (at == t.green.size()) return true;
    int max_color = std::min(k - 1, used); // new colors in first-use order only
    for (int color = 0; color <= max_color; ++color) {
        colors[at] = color;
        std::vector<Triple> cls;
        for (std::size_t i = 0; i <= at; ++i)
            if (colors[i] == color) cls.push_back(t.green[i]);
        if (oracle_independent(t, cls) &&
            oracle_colorable(t, k, at + 1, colors, std::max(used, color + 1)))
            return true;
    }
    return false;
}

int oracle_chi(const ColoredTensor& t) {
    if (t.green.empty()) return 0;
    for (int k = 1;; ++k) {
        std::vector<int> colors(t.green.size(), 0);
        if (oracle_colorable(t, k, 0, colors, 0)) return k;
    }
}

ColoredTensor random_instance(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> size_dist(2, 4);
    std::array<int, 3> sizes{size_dist(rng), size_dist(rng), size_dist(rng)};
    std::bernoulli_distribution keep(0.4);
    std::vector<Triple> support;
    for (int a = 0; a < sizes[0]; ++a)
        for (int b = 0; b < sizes[1]; ++b)
            for (int c = 0; c < sizes[2]; ++c)
                if (keep(rng)) support.push_back({a, b, c});
    if (support.empty()) support.push_back({0, 0, 0});
    std::vector<Triple> green;
    for (const Triple& x : support)
        if (rng() % 2) green.push_back(x);
    if (green.empty()) green.push_back(support[static_cast<std::size_t>(rng() % support.size())]);
    while (green.size() > 8) green.pop_back();
    return make_colored(sizes, support, green);
}

Tensor3 diagonal(int n) {
    std::vector<Triple> s;
    for (int i = 0; i < n; ++i) s.push_back({i, i, i});
    return make_tensor({n, n, n}, s);
}

Tensor3 all_ones(int n) {
    std::vector<Triple> s;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) s.push_back({a, b, c});
    return make_tensor({n, n, n}, s);
}

} // namespace

TEST_CASE("is_independent_set agrees with the definition") {
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{3}}));
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Triple> s;
        for (const Triple& g : ev.green)
            if (rng() % 3 == 0) s.push_back(g);
        CHECK(is_independent_set(ev, s) == oracle_independent(ev, s));
    }
    CHECK_THROWS_AS(is_independent_set(ev, {{0, 0, 1}}), NotGreen);
}

TEST_CASE("alpha_exact: known values") {
    CHECK(alpha_exact(all_green(matmul_tensor(2, 2, 2))).first == 2);
    CHECK(alpha_exact(all_green(diagonal(5))).first == 5);
    CHECK(alpha_exact(all_green(all_ones(3))).first == 1);
    auto [a, w] = alpha_exact(nof_embed(eval_problem(AbelianGroup{{2}})));
    CHECK(a == 2);
    CHECK(is_independent_set(nof_embed(eval_problem(AbelianGroup{{2}})), w.triples));
}

TEST_CASE("chi_exact: known values") {
    CHECK(chi_exact(all_green(diagonal(4))).first == 1);
    CHECK(chi_exact(all_green(all_ones(2))).first == 8);
    CHECK(chi_exact(all_green(matmul_tensor(2, 2, 2))).first == 4);
    CHECK(chi_exact(nof_embed(eval_problem(AbelianGroup{{2}}))).first == 2);
}

TEST_CASE("solvers match the naive oracle on random instances") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 40; ++trial) {
        ColoredTensor t = random_instance(rng);
        auto [a, wa] = alpha_exact(t);
        CHECK(a == oracle_alpha(t));
        CHECK(is_independent_set(t, wa.triples));
        CHECK(static_cast<int>(wa.triples.size()) == a);
        auto [k, c] = chi_exact(t);
        CHECK(k == oracle_chi(t));
        CHECK(verify_coloring(t, c));
        CHECK(c.num_colors == k);
    }
}

TEST_CASE("exact witnesses are deterministic") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        ColoredTensor t = random_instance(rng);
        CHECK(alpha_exact(t).second.triples == alpha_exact(t).second.triples);
        auto c1 = chi_exact(t).second;
        auto c2 = chi_exact(t).second;
        CHECK(c1.assignment == c2.assignment);
    }
}

TEST_CASE("greedy solvers return valid certificates bracketing the optimum") {
    std::mt19937_64 rng(29);
    for (int trial = 0; trial < 20; ++trial) {
        ColoredTensor t = random_instance(rng);
        IndependentSet g = greedy_alpha(t);
        CHECK(is_independent_set(t, g.triples));
        CHECK(g.triples.size() <= static_cast<std::size_t>(alpha_exact(t).first));
        Coloring c = greedy_chi(t);
        CHECK(verify_coloring(t, c));
        CHECK(c.num_colors >= chi_exact(t).first);
    }
}

TEST_CASE("verify_coloring rejects improper or incomplete colorings") {
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{2}}));
    Coloring c = chi_exact(ev).second;
    Coloring merged = c;
    for (auto& [g, color] : merged.assignment) color = 0; // one class = whole green, not independent
    merged.num_colors = 1;
    CHECK(!verify_coloring(ev, merged));
    Coloring partial = c;
    partial.assignment.pop_back();
    CHECK(!verify_coloring(ev, partial));
}

TEST_CASE("symmetry coloring of the equality problem over Z_5") {
    AbelianGroup z5{{5}};
    ColoredTensor eq = eq_problem(z5);
    IndependentSet s{{{0, 0, 0}, {1, 1, 3}}}; // images of the AP-free set {0, 1}
    REQUIRE(is_independent_set(eq, s.triples));
    Coloring c = coloring_from_symmetry(eq, s, eq_translation_sampler(z5), 42);
    CHECK(verify_coloring(eq, c));
    CHECK(c.num_colors <= 13); // ceil(3 * (5/2) * ln 5)
}

TEST_CASE("symmetry coloring of the all-green matmul tensor") {
    ColoredTensor mm = all_green(matmul_tensor(2, 2, 2));
    IndependentSet s = alpha_exact(mm).second;
    Coloring c = coloring_from_symmetry(mm, s, mm_translation_sampler(2), 7);
    CHECK(verify_coloring(mm, c));
    CHECK(c.num_colors <= 25); // ceil(3 * (8/2) * ln 8)
}

TEST_CASE("kappa triples reconstruct permutation problems") {
    for (const LatinSquare& sq : enumerate_latin(3)) {
        ColoredTensor t = nof_embed(latin_to_problem(sq));
        auto [k, c] = chi_exact(t);
        KappaTriple kappa = kappa_from_coloring(t, c);
        CHECK(reconstruct_from_kappa(kappa, t.promise) == t.green);
    }
    // axis reuse is rejected
    ColoredTensor bad = make_colored({2, 2, 2}, {{0, 0, 0}, {0, 1, 1}}, {{0, 0, 0}, {0, 1, 1}});
    Coloring c;
    c.assignment = {{{0, 0, 0}, 0}, {{0, 1, 1}, 1}};
    c.num_colors = 2;
    CHECK_THROWS_AS(kappa_from_coloring(bad, c), NotPermutationProblem);
}
