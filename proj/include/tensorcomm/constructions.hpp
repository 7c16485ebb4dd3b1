#pragma once

#include <string>
#include <vector>

#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

/// Finite abelian group as a product of cyclic groups; elements are encoded
/// mixed-radix into [0, |G|).
struct AbelianGroup {
    std::vector<int> invariant_factors; // each >= 2

    int order() const;
    int add(int x, int y) const;
    int neg(int x) const;
    int sub(int x, int y) const { return add(x, neg(y)); }

    /// "Z2^4", "Z101", "Z3xZ9"
    static AbelianGroup parse(const std::string& spec);
};

/// NOF problem over alphabet [N]: the accepting triples (x, y, z).
struct NofProblem {
    int alphabet_size = 1;
    std::vector<Triple> accepting; // sorted lex

    /// Latin-square relation: every (x,y), (y,z) and (x,z) extends uniquely.
    bool is_permutation() const;
};

struct LatinSquare {
    int n = 1;
    std::vector<std::vector<int>> entries;

    void validate() const;
};

/// <n,m,p> matrix multiplication tensor. Axes (nm, mp, pn); x-index of (i,j)
/// is i*m+j, y-index of (j,k) is j*p+k, z-index of (k,i) is k*n+i.
Tensor3 matmul_tensor(int n, int m, int p);

/// Structure tensor of G: support {(g, h, -g-h)}.
Tensor3 group_structure_tensor(const AbelianGroup& g);

/// NOF problem as a promise problem over <N,N,N>: green terms are
/// ((x,y),(y,z),(z,x)) for accepting (x,y,z).
ColoredTensor nof_embed(const NofProblem& p);

NofProblem eval_problem(const AbelianGroup& g);

/// Promise x+y+z=0, accept iff x=y: green {(x, x, -2x)} inside T_G.
ColoredTensor eq_problem(const AbelianGroup& g);

NofProblem latin_to_problem(const LatinSquare& l);
LatinSquare problem_to_latin(const NofProblem& p);

inline constexpr int kDefaultLatinOrderCap = 5;
std::vector<LatinSquare> enumerate_latin(int n, int order_cap = kDefaultLatinOrderCap);

struct HypergraphResult {
    Tensor3 adjacency; // over I x I x I, vertices = accepting triples sorted lex
    Automorphism witness; // per-axis bijections mapping adjacency onto <N,N,N>
};

/// The classic communication hypergraph of a permutation problem; the witness
/// relabels it onto the matrix multiplication tensor and the diagonal onto
/// the embedded green set.
HypergraphResult communication_hypergraph(const NofProblem& p);

struct IntermediateEmbedding {
    Tensor3 renamed_t3; // structure tensor of (Z/nZ)^2 after variable renaming
    // For each mmP support triple: its (a,b,c,d) parameters, b=c=j.
    std::vector<std::pair<Triple, std::array<int, 4>>> injection;
};

/// Renamed structure tensor of (Z/nZ)^2 containing <n,n,n> as a subset.
IntermediateEmbedding intermediate_embedding(int n);

} // namespace tensorcomm
