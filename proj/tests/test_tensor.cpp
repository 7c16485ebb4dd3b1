#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "tensorcomm/constructions.hpp"
#include "tensorcomm/json_io.hpp"
#include "tensorcomm/tensor.hpp"

using namespace tensorcomm;

namespace {

Tensor3 random_tensor(std::mt19937_64& rng, int max_axis = 4, double density = 0.3) {
    std::uniform_int_distribution<int> size_dist(1, max_axis);
    std::array<int, 3> sizes{size_dist(rng), size_dist(rng), size_dist(rng)};
    std::bernoulli_distribution keep(density);
    std::vector<Triple> support;
    for (int a = 0; a < sizes[0]; ++a)
        for (int b = 0; b < sizes[1]; ++b)
            for (int c = 0; c < sizes[2]; ++c)
                if (keep(rng)) support.push_back({a, b, c});
    return make_tensor(sizes, support);
}

Tensor3 diagonal(int n) {
    std::vector<Triple> s;
    for (int i = 0; i < n; ++i) s.push_back({i, i, i});
    return make_tensor({n, n, n}, s);
}

} // namespace

TEST_CASE("make_tensor validates and normalizes") {
    Tensor3 t = make_tensor({2, 2, 2}, {{1, 0, 0}, {0, 0, 0}, {1, 0, 0}});
    CHECK(t.support == std::vector<Triple>{{0, 0, 0}, {1, 0, 0}});
    CHECK(t.contains({1, 0, 0}));
    CHECK(!t.contains({1, 1, 1}));
    CHECK_THROWS_AS(make_tensor({2, 2, 2}, {{2, 0, 0}}), OutOfBounds);
    CHECK_THROWS_AS(make_tensor({0, 1, 1}, {}), OutOfBounds);
}

TEST_CASE("kron support is the product set with row-major indices") {
    Tensor3 d2 = diagonal(2);
    Tensor3 mm = matmul_tensor(2, 2, 2);
    Tensor3 p = kron(d2, mm);
    CHECK(p.axis_size(0) == 8);
    CHECK(p.support.size() == d2.support.size() * mm.support.size());
    // (1,1,1) x (i*2+j, j*2+k, k*2+i) lands at offset 8+...
    CHECK(p.contains({1 * 4 + 0, 1 * 4 + 0, 1 * 4 + 0}));
    CHECK(p.contains({1 * 4 + 3, 1 * 4 + 3, 1 * 4 + 3}));
    CHECK(!p.contains({0 * 4 + 1, 1 * 4 + 0, 0 * 4 + 0}));
}

TEST_CASE("kron is associative on random tensors") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        Tensor3 a = random_tensor(rng), b = random_tensor(rng), c = random_tensor(rng);
        CHECK(kron(kron(a, b), c) == kron(a, kron(b, c)));
    }
}

TEST_CASE("kron rejects oversized axes") {
    Tensor3 big = make_tensor({1 << 11, 1, 1}, {});
    CHECK_THROWS_AS(kron(big, big), Overflow);
}

TEST_CASE("restrict_tensor zeroes out and optionally reindexes") {
    Tensor3 mm = matmul_tensor(2, 2, 2);
    Tensor3 r = restrict_tensor(mm, {{{0, 1}, {0, 3}, {0, 2}}});
    for (const Triple& t : r.support) {
        CHECK((t.a == 0 || t.a == 1));
        CHECK((t.b == 0 || t.b == 3));
    }
    CHECK(r.axes == mm.axes);
    Tensor3 ri = restrict_tensor(mm, {{{0, 1}, {0, 3}, {0, 2}}}, true);
    CHECK(ri.axis_size(0) == 2);
    CHECK(ri.support.size() == r.support.size());
    CHECK_THROWS_AS(restrict_tensor(mm, {{{4}, {0}, {0}}}), OutOfBounds);

    // restriction composes like intersection
    Tensor3 once = restrict_tensor(mm, {{{0, 1, 2}, {0, 1, 2, 3}, {0, 1}}});
    Tensor3 twice = restrict_tensor(once, {{{0, 1}, {0, 3}, {0, 1}}});
    Tensor3 direct = restrict_tensor(mm, {{{0, 1}, {0, 3}, {0, 1}}});
    CHECK(twice == direct);
}

TEST_CASE("is_identity_permutation") {
    CHECK(is_identity_permutation(diagonal(3)));
    CHECK(!is_identity_permutation(matmul_tensor(2, 2, 2)));
    // permuted diagonal
    Tensor3 p = make_tensor({3, 3, 3}, {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}});
    CHECK(is_identity_permutation(p));
    // repeated axis index on one axis
    Tensor3 bad = make_tensor({3, 3, 3}, {{0, 0, 0}, {0, 1, 1}});
    CHECK(!is_identity_permutation(bad));
    CHECK(is_identity_permutation(make_tensor({2, 2, 2}, {}))); // vacuously
}

TEST_CASE("block structure: outer and inner views") {
    ColoredTensor mm = all_green(matmul_tensor(2, 2, 2));
    BlockStructure b;
    b.base = mm;
    b.partitions = {{{{0, 1}, {2, 3}}, {{0, 1, 2, 3}}, {{0, 2}, {1, 3}}}};
    b.validate();
    Tensor3 out = outer_structure(b);
    CHECK(out.axes == std::array<Axis, 3>{Axis{2}, Axis{1}, Axis{2}});
    CHECK(out.support == std::vector<Triple>{{0, 0, 0}, {1, 0, 1}});
    auto blocks = inner_blocks(b);
    std::size_t total = 0;
    for (const auto& blk : blocks) total += blk.tensor.promise.support.size();
    CHECK(total == mm.promise.support.size());
    for (const auto& blk : blocks) CHECK(out.contains(blk.block));
}

TEST_CASE("block structure validation rejects non-partitions") {
    BlockStructure b;
    b.base = all_green(matmul_tensor(2, 2, 2));
    b.partitions = {{{{0, 1}, {1, 2, 3}}, {{0, 1, 2, 3}}, {{0, 1, 2, 3}}}};
    CHECK_THROWS_AS(b.validate(), OutOfBounds);
}

TEST_CASE("automorphisms: translations of the matmul support") {
    ColoredTensor mm = all_green(matmul_tensor(3, 3, 3));
    const int n = 3;
    Automorphism shift;
    for (auto& perm : shift.perms) perm.resize(9);
    int a = 1, b = 2, c = 1;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) {
            shift.perms[0][u * n + v] = ((u + a) % n) * n + (v + b) % n;
            shift.perms[1][u * n + v] = ((u + b) % n) * n + (v + c) % n;
            shift.perms[2][u * n + v] = ((u + c) % n) * n + (v + a) % n;
        }
    CHECK(is_automorphism(mm, shift));
    CHECK(apply_automorphism(mm, shift) == mm);
    Automorphism id = identity_automorphism(mm.promise);
    CHECK(is_automorphism(mm, id));
    CHECK(compose(shift, id).perms == shift.perms);

    Automorphism bad = id;
    std::swap(bad.perms[0][0], bad.perms[0][1]);
    CHECK(!is_automorphism(mm, bad));
}

TEST_CASE("canonical json round trip and hashing") {
    ColoredTensor ev = nof_embed(eval_problem(AbelianGroup{{3}}));
    ColoredTensor back = colored_from_json(to_json(ev));
    CHECK(back == ev);
    CHECK(tensor_hash(ev) == tensor_hash(back));
    CHECK(tensor_hash(ev) != tensor_hash(ev.promise));
    CHECK(tensor_hash(ev).size() == 64);
    // byte determinism
    CHECK(canonical_bytes(to_json(ev)) == canonical_bytes(to_json(back)));
    Tensor3 t = tensor_from_json(to_json(ev.promise));
    CHECK(t == ev.promise);
}
