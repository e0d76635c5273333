#pragma once

#include <map>
#include <optional>
#include <vector>

#include "uff/product_state.hpp"
#include "uff/rng.hpp"

namespace uff {

// Unentangled orthonormal basis: a full basis of the tensor-product space
// consisting of product states only.
struct Uob {
    std::vector<int> signature;
    std::vector<ProductState> states;
};

// Recursive blueprint of a UOB. Each split node fixes one qubit position:
// the left subtree descends through the node's point a, the right subtree
// through its orthogonal partner. Leaves reference an orthonormal basis of
// the non-qubit tail space (the trivial basis when the tail is C).
//
// Nodes live in an arena; `root` indexes it. A tree is full when every
// root-to-leaf path fixes each of the n qubit positions exactly once.
struct SplitTree {
    struct Node {
        bool leaf = true;
        int tail_basis_id = 0;  // leaf payload
        int qubit_index = 0;    // split payload, 1-based
        CanonicalQubit point{}; // split payload, flipped = false
        int left = -1;
        int right = -1;
    };

    int n_qubits = 0;
    // Engaged iff the expansion appends a tail factor of that dimension.
    std::optional<int> tail_dim;
    std::vector<Node> nodes;
    int root = -1;
    std::map<int, std::vector<std::vector<Complex>>> tail_bases;

    int add_leaf(int tail_basis_id);
    int add_split(int qubit_index, const CanonicalQubit& point, int left, int right);
};

struct UobValidationReport {
    std::size_t expected_count = 0;
    std::size_t actual_count = 0;
    bool count_ok = false;
    std::vector<double> norm_residuals; // per vector |norm - 1|
    double max_norm_residual = 0.0;
    double max_off_diagonal = 0.0;      // max |<z_i|z_j>|, i < j
    bool orthogonal = false;            // every pair passes is_orthogonal
    double tolerance = 0.0;
    bool pass = false;
};

// Count, norms and pairwise orthogonality. Completeness is the count plus
// orthonormality: that many orthonormal vectors in a space of the same
// dimension form a basis. Failures are report entries, not exceptions.
UobValidationReport validate_uob(const Uob& candidate, double tol = 1e-9);

// The recursive family that always splits on the first remaining qubit
// index, with an independently sampled interior point per node.
SplitTree generate_generic(int n_qubits, Rng& rng);

// Like generate_generic but every node picks a uniformly random unused
// qubit index and every leaf gets an independent random orthonormal basis
// of the tail space. Sibling subtrees may split different qubits, which
// reaches bases outside the generic family for n >= 3. The tail factor
// has dimension prod(tail_dims); pass an empty list for a pure qubit tree.
SplitTree generate_split(int n_qubits, const std::vector<int>& tail_dims, Rng& rng);

// Random orthonormal basis per factor, tensored over all index
// combinations (first factor slowest). Dim-2 factors use an interior
// point pair {a, sigma a} so the canonical coordinates of partner vectors
// share the same base bits.
Uob generate_product_basis(const std::vector<int>& dims, Rng& rng);

// Tensor the given per-factor bases over all index combinations.
Uob product_uob_from_bases(const std::vector<std::vector<FactorState>>& factor_bases);

// The computational basis of the given signature.
Uob computational_basis(const std::vector<int>& dims);

// Depth-first expansion, left before right, tail basis in index order.
// Throws MalformedTree when a path misses a qubit index.
Uob expand_tree(const SplitTree& t);

} // namespace uff
