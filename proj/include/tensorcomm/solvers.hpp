#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

struct IndependentSet {
    std::vector<Triple> triples; // sorted lex
};

struct Coloring {
    // one entry per green triple, sorted lex by triple; colors in [0, num_colors)
    std::vector<std::pair<Triple, int>> assignment;
    int num_colors = 0;

    int color_of(const Triple& t) const;
};

/// Per-axis color maps recovered from a coloring of a permutation problem.
struct KappaTriple {
    std::array<std::map<int, int>, 3> kappa;
};

inline constexpr int kDefaultAlphaLimit = 4096;
inline constexpr int kDefaultChiLimit = 512;

/// True iff s is a permutation of an identity tensor and the promise support
/// meets the coordinate cube of s exactly in s. Throws NotGreen if s is not a
/// subset of the green terms.
bool is_independent_set(const ColoredTensor& t, const std::vector<Triple>& s);

/// Complete branch-and-bound over green terms (descending conflict degree).
std::pair<int, IndependentSet> alpha_exact(const ColoredTensor& t, int limit = kDefaultAlphaLimit);

/// Exact chromatic number; witness is the lexicographically least optimal
/// coloring under first-use color normalization.
std::pair<int, Coloring> chi_exact(const ColoredTensor& t, int limit = kDefaultChiLimit);

IndependentSet greedy_alpha(const ColoredTensor& t);
Coloring greedy_chi(const ColoredTensor& t);

bool verify_coloring(const ColoredTensor& t, const Coloring& c);

using AutomorphismSampler = std::function<Automorphism(std::mt19937_64&)>;

struct SymmetryColoringOptions {
    double constant = 3.0; // K = ceil(constant * (|I|/|S|) * ln(max(|I|,2)))
    int max_batches = 64;
};

/// Las Vegas covering-by-orbits coloring: samples batches of automorphisms
/// until the translates of s cover the green terms, then colors each term by
/// the least covering translate. Requires a sampler uniform over a subgroup
/// of Aut(T) acting transitively on green.
Coloring coloring_from_symmetry(const ColoredTensor& t, const IndependentSet& s,
                                const AutomorphismSampler& sampler, std::uint64_t seed,
                                const SymmetryColoringOptions& opts = {});

std::vector<Triple> reconstruct_from_kappa(const KappaTriple& k, const Tensor3& promise);

/// kappa_i(index) := color of the unique green triple using that index.
/// Requires the green set to be a permutation of an identity tensor.
KappaTriple kappa_from_coloring(const ColoredTensor& t, const Coloring& c);

} // namespace tensorcomm
