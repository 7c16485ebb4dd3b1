#pragma once

#include <cstdint>
#include <set>
#include <utility>
#include <vector>

#include "tensorcomm/constructions.hpp"
#include "tensorcomm/solvers.hpp"
#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

/// Subset of an abelian group with no nontrivial 3-term arithmetic
/// progression x + y = 2z, x != y.
struct ApFreeSet {
    AbelianGroup group;
    std::vector<int> elements; // sorted

    bool verify() const;
};

/// Subset of (Z_N)^2 with no corner (x,y), (x+d,y), (x,y+d), d != 0.
struct CornerFreeSet {
    int n = 1;
    std::vector<std::pair<int, int>> pairs; // sorted

    bool verify() const;
};

/// Tripartite graph on [N] x {0,1,2} carrying a list of edge-disjoint
/// triangles.
struct TriangleSystem {
    int n = 1;
    std::vector<Triple> triangles; // (a,b,c) = vertices (a,0),(b,1),(c,2)
};

inline constexpr int kApFreeExactLimit = 64;

/// Maximum AP-free set by complete search; lexicographically least witness.
ApFreeSet ap_free_exact(const AbelianGroup& g, int limit = kApFreeExactLimit);

/// Digit-sphere construction over {0..floor((N-1)/2)}, parameters scanned,
/// densest verified set returned (AP-free mod N since the lower half cannot
/// wrap around).
ApFreeSet behrend_set(int n);

/// pairs = {(x,y) : x + 2y in S}; requires odd modulus.
CornerFreeSet corner_free_from_ap_free(const ApFreeSet& s);

/// Independent set of nof_embed(eval_problem(Z_N)) induced by a corner-free
/// set: the embedded images of (x, y, -x-y) for (x,y) in the set.
IndependentSet eval_indep_from_corner_free(const CornerFreeSet& c);

struct SubrankLowerResult {
    IndependentSet indep; // verified independent in all-green <N,N,N>
    int coloring_size = 0; // colors used by the Eval coloring stage
    int ap_free_size = 0;
};

/// Corner-free pipeline: AP-free set -> corner-free set -> Eval coloring by
/// symmetry -> largest color class, reinterpreted as an all-green
/// independent set of <N,N,N>. Falls back to chi_exact of Eval for tiny N
/// and to N-1 (re-encoded) for even N.
SubrankLowerResult mm_subrank_lower(int n, std::uint64_t seed = 0);

/// Translation subgroups of Aut for the symmetry-based coloring: all shifts
/// (i,j,k) -> (i+a, j+b, k+c) of <N,N,N>, the x+y+z = 0 preserving shifts of
/// the embedded Eval problem, and the diagonal shifts of EQ over a group.
AutomorphismSampler mm_translation_sampler(int n);
AutomorphismSampler eval_translation_sampler(int n);
AutomorphismSampler eq_translation_sampler(const AbelianGroup& g);

TriangleSystem rs_graph_from_indep(const IndependentSet& s, int n);
IndependentSet indep_from_rs_graph(const TriangleSystem& t);

/// All triangles of the tripartite graph spanned by the system's edges.
std::vector<Triple> enumerate_triangles(const TriangleSystem& t);

} // namespace tensorcomm
