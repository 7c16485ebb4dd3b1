#include "tensorcomm/laser.hpp"

#include <algorithm>
#include <map>

#include "tensorcomm/combinatorics.hpp"

namespace tensorcomm {

BlockStructure laser_blocks(const NofProblem& p, int axis) {
    if (!p.is_permutation()) throw NotPermutationProblem("laser_blocks needs a permutation problem");
    if (axis < 1 || axis > 3) throw OutOfBounds("axis must be 1, 2 or 3");
    const int n = p.alphabet_size;
    BlockStructure b;
    b.base = nof_embed(p);
    auto by_first = [n]() {
        std::vector<std::vector<int>> classes(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t)
            for (int i = 0; i < n; ++i) classes[static_cast<std::size_t>(t)].push_back(t * n + i);
        return classes;
    };
    auto by_second = [n]() {
        std::vector<std::vector<int>> classes(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t)
            for (int i = 0; i < n; ++i) classes[static_cast<std::size_t>(t)].push_back(i * n + t);
        return classes;
    };
    auto trivial = [n]() {
        std::vector<int> all(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
        for (int i = 0; i < n * n; ++i) all[static_cast<std::size_t>(i)] = i;
        return std::vector<std::vector<int>>{all};
    };
    // pair encodings: x = (x,y), y = (y,z), z = (z,x); grouping two of the
    // three axes by their shared player coordinate leaves a diagonal outer
    // structure on those axes
    switch (axis) {
    case 1:
        b.partitions = {by_first(), trivial(), by_second()};
        break;
    case 2:
        b.partitions = {by_second(), by_first(), trivial()};
        break;
    default:
        b.partitions = {trivial(), by_second(), by_first()};
        break;
    }
    b.validate();
    return b;
}

BlockStructure kron_blocks(const BlockStructure& s, const BlockStructure& t) {
    BlockStructure r;
    r.base = kron(s.base, t.base);
    for (int axis = 0; axis < 3; ++axis) {
        const auto& ps = s.partitions[static_cast<std::size_t>(axis)];
        const auto& pt = t.partitions[static_cast<std::size_t>(axis)];
        const int tsize = t.base.promise.axis_size(axis);
        auto& out = r.partitions[static_cast<std::size_t>(axis)];
        for (const auto& cs : ps)
            for (const auto& ct : pt) {
                std::vector<int> cls;
                cls.reserve(cs.size() * ct.size());
                for (int a : cs)
                    for (int b : ct) cls.push_back(a * tsize + b);
                std::sort(cls.begin(), cls.end());
                out.push_back(std::move(cls));
            }
    }
    r.validate();
    return r;
}

Coloring outer_coloring(int n, OuterMode mode, std::uint64_t seed) {
    if (n < 1) throw OutOfBounds("n must be >= 1");
    ColoredTensor mm = all_green(matmul_tensor(n, n, n));
    if (n == 1) {
        Coloring c;
        c.assignment = {{{0, 0, 0}, 0}};
        c.num_colors = 1;
        return c;
    }
    if (mode == OuterMode::exact) {
        if (n > 4) throw TooLarge("exact outer coloring supported only for N <= 4");
        return chi_exact(mm).second;
    }
    SubrankLowerResult sub = mm_subrank_lower(n, seed);
    return coloring_from_symmetry(mm, sub.indep, mm_translation_sampler(n), seed);
}

LaserPlan make_laser_plan(const NofProblem& i, const NofProblem& j, const NofProblem& k,
                          Coloring outer) {
    LaserPlan plan{{i, j, k}, std::move(outer)};
    const int n = i.alphabet_size;
    for (const NofProblem& p : plan.problems) {
        if (p.alphabet_size != n) throw SizeMismatch("laser factors need a common alphabet");
        if (!p.is_permutation()) throw NotPermutationProblem("laser factor is not a permutation problem");
    }
    ColoredTensor mm = all_green(matmul_tensor(n, n, n));
    if (!verify_coloring(mm, plan.outer)) throw ImproperColoring("outer coloring is not proper");
    return plan;
}

ColoredTensor laser_product_tensor(const LaserPlan& plan) {
    ColoredTensor prod = kron(nof_embed(plan.problems[0]), nof_embed(plan.problems[1]));
    return kron(prod, nof_embed(plan.problems[2]));
}

Coloring laser_product_coloring(const LaserPlan& plan) {
    const int n = plan.problems[0].alphabet_size;
    const int v = n * n;
    ColoredTensor prod = laser_product_tensor(plan);
    std::map<Triple, int> outer_color;
    for (const auto& [t, color] : plan.outer.assignment) outer_color[t] = color;
    Coloring c;
    for (const Triple& g : prod.green) {
        // factor indices: leading factor scaled by v^2 after two krons
        int x1 = g.a / (v * v), x2 = (g.a / v) % v;
        int y3 = g.b % v;
        int i1 = x1 / n; // factor 1 blocked by the first pair coordinate on axis 1
        int j2 = x2 % n; // factor 2 blocked by the second pair coordinate on axis 1
        int k3 = y3 % n; // factor 3 blocked by the second pair coordinate on axis 2
        Triple block{i1 * n + j2, j2 * n + k3, k3 * n + i1};
        auto it = outer_color.find(block);
        if (it == outer_color.end())
            throw VerificationFailed("product green term outside the outer support");
        c.assignment.push_back({g, it->second});
    }
    // compact to the colors actually used, preserving order
    std::map<int, int> remap;
    for (const auto& [t, color] : c.assignment) remap.emplace(color, 0);
    int next = 0;
    for (auto& [old_color, fresh] : remap) fresh = next++;
    for (auto& [t, color] : c.assignment) color = remap.at(color);
    c.num_colors = next;
    std::sort(c.assignment.begin(), c.assignment.end());
    if (!verify_coloring(prod, c)) throw VerificationFailed("laser product coloring is not proper");
    return c;
}

} // namespace tensorcomm
