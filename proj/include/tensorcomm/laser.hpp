#pragma once

#include <array>
#include <cstdint>

#include "tensorcomm/constructions.hpp"
#include "tensorcomm/solvers.hpp"
#include "tensorcomm/tensor.hpp"

namespace tensorcomm {

/// Three permutation problems over the same alphabet [N], one per outer
/// shape (<N,1,1>, <1,N,1>, <1,1,N>), plus a proper coloring of the
/// all-green <N,N,N> used as the outer coloring of their product.
struct LaserPlan {
    std::array<NofProblem, 3> problems;
    Coloring outer;
};

enum class OuterMode { exact, symmetry };

/// Block structure of nof_embed(p) whose outer structure is <N,1,1>,
/// <1,N,1>, or <1,1,N> for axis 1, 2, 3; every nonzero inner block carries
/// an independent green class. Axes 2 and 3 rotate the player roles.
BlockStructure laser_blocks(const NofProblem& p, int axis);

/// Block structure of the Kronecker product with the product partitions;
/// outer_structure of the result is the Kronecker product of the factors'
/// outer structures.
BlockStructure kron_blocks(const BlockStructure& s, const BlockStructure& t);

/// Proper coloring of the all-green <N,N,N>: exact mode runs chi_exact
/// (N <= 4), symmetry mode colors by translates of the mm_subrank_lower
/// independent set under (i,j,k) -> (i+a, j+b, k+c).
Coloring outer_coloring(int n, OuterMode mode, std::uint64_t seed = 0);

LaserPlan make_laser_plan(const NofProblem& i, const NofProblem& j, const NofProblem& k,
                          Coloring outer);

/// Composite coloring of nof_embed(I) (x) nof_embed(J) (x) nof_embed(K):
/// each product green term is colored by the outer color of its block
/// triple; verified proper before returning.
Coloring laser_product_coloring(const LaserPlan& plan);

/// The product colored tensor the plan's coloring applies to.
ColoredTensor laser_product_tensor(const LaserPlan& plan);

} // namespace tensorcomm
