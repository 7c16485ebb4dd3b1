#include "tensorcomm/tensor.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <unordered_set>

namespace tensorcomm {

void Axis::validate() const {
    if (size < 1) throw OutOfBounds("axis size must be >= 1");
    if (!labels.empty()) {
        if (static_cast<int>(labels.size()) != size)
            throw SizeMismatch("label count does not match axis size");
        std::set<std::string> distinct(labels.begin(), labels.end());
        if (static_cast<int>(distinct.size()) != size)
            throw SizeMismatch("axis labels must be distinct");
    }
}

bool Tensor3::contains(const Triple& t) const {
    return std::binary_search(support.begin(), support.end(), t);
}

bool is_sorted_unique(const std::vector<Triple>& v) {
    return std::adjacent_find(v.begin(), v.end(),
                              [](const Triple& x, const Triple& y) { return !(x < y); }) == v.end();
}

std::vector<Triple> sorted_unique(std::vector<Triple> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool is_subset(const std::vector<Triple>& sub, const std::vector<Triple>& super) {
    return std::includes(super.begin(), super.end(), sub.begin(), sub.end());
}

Tensor3 make_tensor(std::array<int, 3> axis_sizes, const std::vector<Triple>& support) {
    Tensor3 t;
    for (int i = 0; i < 3; ++i) {
        t.axes[static_cast<std::size_t>(i)].size = axis_sizes[static_cast<std::size_t>(i)];
        t.axes[static_cast<std::size_t>(i)].validate();
    }
    for (const Triple& x : support) {
        if (x.a < 0 || x.a >= axis_sizes[0] || x.b < 0 || x.b >= axis_sizes[1] || x.c < 0 ||
            x.c >= axis_sizes[2])
            throw OutOfBounds("support triple out of axis bounds");
    }
    t.support = sorted_unique(support);
    return t;
}

ColoredTensor make_colored(std::array<int, 3> axis_sizes, const std::vector<Triple>& support,
                           const std::vector<Triple>& green) {
    ColoredTensor ct;
    ct.promise = make_tensor(axis_sizes, support);
    ct.green = sorted_unique(green);
    if (!is_subset(ct.green, ct.promise.support))
        throw NotGreen("green set is not contained in the promise support");
    return ct;
}

ColoredTensor all_green(const Tensor3& t) { return ColoredTensor{t, t.support}; }

Tensor3 kron(const Tensor3& s, const Tensor3& t, int axis_limit) {
    std::array<int, 3> sizes{};
    for (int i = 0; i < 3; ++i) {
        long long prod = 1LL * s.axis_size(i) * t.axis_size(i);
        if (prod > axis_limit) throw Overflow("kron axis size exceeds limit");
        sizes[static_cast<std::size_t>(i)] = static_cast<int>(prod);
    }
    Tensor3 r;
    for (int i = 0; i < 3; ++i) r.axes[static_cast<std::size_t>(i)].size = sizes[static_cast<std::size_t>(i)];
    r.support.reserve(s.support.size() * t.support.size());
    // row-major index composition: (a1, a2) -> a1*|A2| + a2
    for (const Triple& x : s.support)
        for (const Triple& y : t.support)
            r.support.push_back({x.a * t.axis_size(0) + y.a, x.b * t.axis_size(1) + y.b,
                                 x.c * t.axis_size(2) + y.c});
    std::sort(r.support.begin(), r.support.end());
    return r;
}

ColoredTensor kron(const ColoredTensor& s, const ColoredTensor& t, int axis_limit) {
    ColoredTensor r;
    r.promise = kron(s.promise, t.promise, axis_limit);
    r.green.reserve(s.green.size() * t.green.size());
    for (const Triple& x : s.green)
        for (const Triple& y : t.green)
            r.green.push_back({x.a * t.promise.axis_size(0) + y.a,
                               x.b * t.promise.axis_size(1) + y.b,
                               x.c * t.promise.axis_size(2) + y.c});
    std::sort(r.green.begin(), r.green.end());
    return r;
}

namespace {

std::vector<int> subset_positions(const std::vector<int>& subset, int axis_size) {
    std::vector<int> pos(static_cast<std::size_t>(axis_size), -1);
    std::vector<int> sorted = subset;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    if (sorted.size() != subset.size()) throw OutOfBounds("subset contains duplicates");
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (sorted[i] < 0 || sorted[i] >= axis_size) throw OutOfBounds("subset index out of bounds");
        pos[static_cast<std::size_t>(sorted[i])] = static_cast<int>(i);
    }
    return pos;
}

} // namespace

Tensor3 restrict_tensor(const Tensor3& t, const std::array<std::vector<int>, 3>& subsets,
                        bool reindex) {
    std::array<std::vector<int>, 3> pos;
    for (int i = 0; i < 3; ++i)
        pos[static_cast<std::size_t>(i)] =
            subset_positions(subsets[static_cast<std::size_t>(i)], t.axis_size(i));
    Tensor3 r;
    if (reindex) {
        for (int i = 0; i < 3; ++i)
            r.axes[static_cast<std::size_t>(i)].size =
                std::max<int>(1, static_cast<int>(subsets[static_cast<std::size_t>(i)].size()));
    } else {
        r.axes = t.axes;
    }
    for (const Triple& x : t.support) {
        int pa = pos[0][static_cast<std::size_t>(x.a)];
        int pb = pos[1][static_cast<std::size_t>(x.b)];
        int pc = pos[2][static_cast<std::size_t>(x.c)];
        if (pa < 0 || pb < 0 || pc < 0) continue;
        r.support.push_back(reindex ? Triple{pa, pb, pc} : x);
    }
    std::sort(r.support.begin(), r.support.end());
    return r;
}

bool is_identity_permutation(const Tensor3& t) {
    for (int axis = 0; axis < 3; ++axis) {
        std::unordered_set<int> seen;
        for (const Triple& x : t.support)
            if (!seen.insert(x[axis]).second) return false;
    }
    return true;
}

void BlockStructure::validate() const {
    for (int axis = 0; axis < 3; ++axis) {
        std::vector<bool> covered(static_cast<std::size_t>(base.promise.axis_size(axis)), false);
        for (const auto& part : partitions[static_cast<std::size_t>(axis)]) {
            for (int idx : part) {
                if (idx < 0 || idx >= base.promise.axis_size(axis))
                    throw OutOfBounds("partition index out of bounds");
                if (covered[static_cast<std::size_t>(idx)])
                    throw OutOfBounds("partition parts are not disjoint");
                covered[static_cast<std::size_t>(idx)] = true;
            }
        }
        if (std::find(covered.begin(), covered.end(), false) != covered.end())
            throw OutOfBounds("partition does not cover the axis");
    }
}

namespace {

// block index per axis element, per axis
std::array<std::vector<int>, 3> block_of_index(const BlockStructure& b) {
    std::array<std::vector<int>, 3> blk;
    for (int axis = 0; axis < 3; ++axis) {
        blk[static_cast<std::size_t>(axis)].assign(
            static_cast<std::size_t>(b.base.promise.axis_size(axis)), -1);
        const auto& parts = b.partitions[static_cast<std::size_t>(axis)];
        for (std::size_t p = 0; p < parts.size(); ++p)
            for (int idx : parts[p])
                blk[static_cast<std::size_t>(axis)][static_cast<std::size_t>(idx)] =
                    static_cast<int>(p);
    }
    return blk;
}

} // namespace

Tensor3 outer_structure(const BlockStructure& b) {
    b.validate();
    auto blk = block_of_index(b);
    std::vector<Triple> out;
    for (const Triple& x : b.base.promise.support)
        out.push_back({blk[0][static_cast<std::size_t>(x.a)], blk[1][static_cast<std::size_t>(x.b)],
                       blk[2][static_cast<std::size_t>(x.c)]});
    return make_tensor({static_cast<int>(b.partitions[0].size()),
                        static_cast<int>(b.partitions[1].size()),
                        static_cast<int>(b.partitions[2].size())},
                       out);
}

std::vector<InnerBlock> inner_blocks(const BlockStructure& b) {
    b.validate();
    auto blk = block_of_index(b);
    // position of each axis index within its (sorted) part
    std::array<std::vector<int>, 3> pos;
    std::array<std::vector<std::vector<int>>, 3> sorted_parts = b.partitions;
    for (int axis = 0; axis < 3; ++axis) {
        pos[static_cast<std::size_t>(axis)].assign(
            static_cast<std::size_t>(b.base.promise.axis_size(axis)), -1);
        for (auto& part : sorted_parts[static_cast<std::size_t>(axis)]) {
            std::sort(part.begin(), part.end());
            for (std::size_t i = 0; i < part.size(); ++i)
                pos[static_cast<std::size_t>(axis)][static_cast<std::size_t>(part[i])] =
                    static_cast<int>(i);
        }
    }
    std::map<Triple, std::pair<std::vector<Triple>, std::vector<Triple>>> blocks;
    auto locate = [&](const Triple& x) {
        return Triple{blk[0][static_cast<std::size_t>(x.a)], blk[1][static_cast<std::size_t>(x.b)],
                      blk[2][static_cast<std::size_t>(x.c)]};
    };
    auto reindexed = [&](const Triple& x) {
        return Triple{pos[0][static_cast<std::size_t>(x.a)], pos[1][static_cast<std::size_t>(x.b)],
                      pos[2][static_cast<std::size_t>(x.c)]};
    };
    for (const Triple& x : b.base.promise.support) blocks[locate(x)].first.push_back(reindexed(x));
    for (const Triple& x : b.base.green) blocks[locate(x)].second.push_back(reindexed(x));
    std::vector<InnerBlock> result;
    for (auto& [key, sg] : blocks) {
        std::array<int, 3> sizes{};
        for (int axis = 0; axis < 3; ++axis)
            sizes[static_cast<std::size_t>(axis)] = std::max<int>(
                1, static_cast<int>(sorted_parts[static_cast<std::size_t>(axis)]
                                        [static_cast<std::size_t>(key[axis])]
                                            .size()));
        result.push_back({key, make_colored(sizes, sg.first, sg.second)});
    }
    return result;
}

Automorphism identity_automorphism(const Tensor3& t) {
    Automorphism a;
    for (int i = 0; i < 3; ++i) {
        a.perms[static_cast<std::size_t>(i)].resize(static_cast<std::size_t>(t.axis_size(i)));
        std::iota(a.perms[static_cast<std::size_t>(i)].begin(),
                  a.perms[static_cast<std::size_t>(i)].end(), 0);
    }
    return a;
}

namespace {

void check_perm(const std::vector<int>& perm, int size) {
    if (static_cast<int>(perm.size()) != size) throw SizeMismatch("permutation size mismatch");
    std::vector<bool> seen(static_cast<std::size_t>(size), false);
    for (int v : perm) {
        if (v < 0 || v >= size || seen[static_cast<std::size_t>(v)])
            throw SizeMismatch("not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
}

} // namespace

ColoredTensor apply_automorphism(const ColoredTensor& t, const Automorphism& a) {
    for (int i = 0; i < 3; ++i)
        check_perm(a.perms[static_cast<std::size_t>(i)], t.promise.axis_size(i));
    auto map_triples = [&](const std::vector<Triple>& v) {
        std::vector<Triple> r;
        r.reserve(v.size());
        for (const Triple& x : v)
            r.push_back({a.perms[0][static_cast<std::size_t>(x.a)],
                         a.perms[1][static_cast<std::size_t>(x.b)],
                         a.perms[2][static_cast<std::size_t>(x.c)]});
        std::sort(r.begin(), r.end());
        return r;
    };
    ColoredTensor r;
    r.promise.axes = t.promise.axes;
    r.promise.support = map_triples(t.promise.support);
    r.green = map_triples(t.green);
    return r;
}

bool is_automorphism(const ColoredTensor& t, const Automorphism& a) {
    ColoredTensor image = apply_automorphism(t, a);
    return image.promise.support == t.promise.support && image.green == t.green;
}

Automorphism compose(const Automorphism& first, const Automorphism& then) {
    Automorphism r;
    for (int i = 0; i < 3; ++i) {
        const auto& f = first.perms[static_cast<std::size_t>(i)];
        const auto& g = then.perms[static_cast<std::size_t>(i)];
        if (f.size() != g.size()) throw SizeMismatch("automorphism sizes differ");
        r.perms[static_cast<std::size_t>(i)].resize(f.size());
        for (std::size_t j = 0; j < f.size(); ++j)
            r.perms[static_cast<std::size_t>(i)][j] = g[static_cast<std::size_t>(f[j])];
    }
    return r;
}

std::uint64_t encode_triple(const Tensor3& t, const Triple& x) {
    return (static_cast<std::uint64_t>(x.a) * static_cast<std::uint64_t>(t.axis_size(1)) +
            static_cast<std::uint64_t>(x.b)) *
               static_cast<std::uint64_t>(t.axis_size(2)) +
           static_cast<std::uint64_t>(x.c);
}

} // namespace tensorcomm
