#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "tensorcomm/errors.hpp"

namespace tensorcomm {

/// One entry of a sparse 0/1 order-3 tensor, 0-based per axis.
struct Triple {
    int a = 0, b = 0, c = 0;
    auto operator<=>(const Triple&) const = default;
    int operator[](int axis) const { return axis == 0 ? a : axis == 1 ? b : c; }
};

struct Axis {
    int size = 1;
    std::vector<std::string> labels; // optional decoration, length == size when present

    void validate() const;
    bool operator==(const Axis&) const = default;
};

/// Sparse 0/1 order-3 tensor: three axes plus a lexicographically sorted,
/// duplicate-free support set. Immutable by convention after construction.
struct Tensor3 {
    std::array<Axis, 3> axes;
    std::vector<Triple> support;

    int axis_size(int i) const { return axes[static_cast<std::size_t>(i)].size; }
    bool contains(const Triple& t) const;
    bool operator==(const Tensor3&) const = default;
};

/// A promise tensor with a distinguished green subset of its support
/// (the accepting inputs of the promise problem).
struct ColoredTensor {
    Tensor3 promise;
    std::vector<Triple> green; // sorted lex, subset of promise.support

    bool operator==(const ColoredTensor&) const = default;
};

/// Axis partitions of a colored tensor inducing outer/inner block structure.
struct BlockStructure {
    ColoredTensor base;
    std::array<std::vector<std::vector<int>>, 3> partitions;

    void validate() const;
};

struct Automorphism {
    std::array<std::vector<int>, 3> perms;
};

struct InnerBlock {
    Triple block; // block indices in the outer tensor
    ColoredTensor tensor; // re-indexed to the block's subsets
};

Tensor3 make_tensor(std::array<int, 3> axis_sizes, const std::vector<Triple>& support);
ColoredTensor make_colored(std::array<int, 3> axis_sizes, const std::vector<Triple>& support,
                           const std::vector<Triple>& green);

/// All-green view of a plain tensor.
ColoredTensor all_green(const Tensor3& t);

inline constexpr int kDefaultKronAxisLimit = 1 << 20;

Tensor3 kron(const Tensor3& s, const Tensor3& t, int axis_limit = kDefaultKronAxisLimit);
ColoredTensor kron(const ColoredTensor& s, const ColoredTensor& t,
                   int axis_limit = kDefaultKronAxisLimit);

/// Zeroing out: keeps support inside A' x B' x C'. Axes are unchanged unless
/// reindex is set, in which case indices are renumbered within each subset
/// (sorted order).
Tensor3 restrict_tensor(const Tensor3& t, const std::array<std::vector<int>, 3>& subsets,
                        bool reindex = false);

bool is_identity_permutation(const Tensor3& t);

Tensor3 outer_structure(const BlockStructure& b);
std::vector<InnerBlock> inner_blocks(const BlockStructure& b);

ColoredTensor apply_automorphism(const ColoredTensor& t, const Automorphism& a);
bool is_automorphism(const ColoredTensor& t, const Automorphism& a);
Automorphism compose(const Automorphism& first, const Automorphism& then);
Automorphism identity_automorphism(const Tensor3& t);

/// Encodes a triple as a single integer for hashing; axes must fit in the
/// product (guaranteed below the kron axis limit).
std::uint64_t encode_triple(const Tensor3& t, const Triple& x);

bool is_sorted_unique(const std::vector<Triple>& v);
std::vector<Triple> sorted_unique(std::vector<Triple> v);
bool is_subset(const std::vector<Triple>& sub, const std::vector<Triple>& super);

} // namespace tensorcomm
