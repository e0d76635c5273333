#include "uff/uob.hpp"

#include <cmath>
#include <string>

#include "uff/sampling.hpp"

namespace uff {

int SplitTree::add_leaf(int tail_basis_id) {
    Node n;
    n.leaf = true;
    n.tail_basis_id = tail_basis_id;
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
}

int SplitTree::add_split(int qubit_index, const CanonicalQubit& point, int left, int right) {
    Node n;
    n.leaf = false;
    n.qubit_index = qubit_index;
    n.point = point;
    n.left = left;
    n.right = right;
    nodes.push_back(n);
    return static_cast<int>(nodes.size()) - 1;
}

UobValidationReport validate_uob(const Uob& candidate, double tol) {
    UobValidationReport report;
    report.tolerance = tol;

    std::size_t expected = 1;
    for (int d : candidate.signature) expected *= static_cast<std::size_t>(d);
    report.expected_count = expected;
    report.actual_count = candidate.states.size();
    report.count_ok = report.expected_count == report.actual_count;

    bool signatures_ok = true;
    for (const ProductState& s : candidate.states) {
        if (s.signature() != candidate.signature) signatures_ok = false;
    }
    if (!signatures_ok) {
        report.pass = false;
        return report;
    }

    report.norm_residuals.reserve(candidate.states.size());
    for (const ProductState& s : candidate.states) {
        double n2 = 1.0;
        for (const FactorState& f : s.factors) {
            double fn = 0.0;
            for (const Complex& a : f.amplitudes) fn += std::norm(a);
            n2 *= fn;
        }
        const double residual = std::abs(std::sqrt(n2) - 1.0);
        report.norm_residuals.push_back(residual);
        report.max_norm_residual = std::max(report.max_norm_residual, residual);
    }

    report.orthogonal = true;
    for (std::size_t i = 0; i < candidate.states.size(); ++i) {
        for (std::size_t j = i + 1; j < candidate.states.size(); ++j) {
            const double off = std::abs(inner_product(candidate.states[i], candidate.states[j]));
            report.max_off_diagonal = std::max(report.max_off_diagonal, off);
            if (!is_orthogonal(candidate.states[i], candidate.states[j], tol)) {
                report.orthogonal = false;
            }
        }
    }

    report.pass = report.count_ok && report.orthogonal && report.max_norm_residual <= tol;
    return report;
}

namespace {

// DFS pre-order construction: node point first, then the whole left
// subtree, then the right. Keeps rng consumption deterministic.
int build_tree(SplitTree& tree, std::vector<int>& remaining, Rng& rng, bool random_order,
               int& next_basis_id) {
    if (remaining.empty()) {
        if (tree.tail_dim) {
            const int id = next_basis_id++;
            tree.tail_bases[id] = random_orthonormal_basis(rng, *tree.tail_dim);
            return tree.add_leaf(id);
        }
        return tree.add_leaf(0);
    }
    const std::size_t pick = (random_order && remaining.size() > 1)
                                 ? static_cast<std::size_t>(rng.below(remaining.size()))
                                 : 0;
    const int qubit = remaining[pick];
    const CanonicalQubit point = random_interior_point(rng);

    std::vector<int> rest;
    rest.reserve(remaining.size() - 1);
    for (std::size_t i = 0; i < remaining.size(); ++i) {
        if (i != pick) rest.push_back(remaining[i]);
    }
    const int left = build_tree(tree, rest, rng, random_order, next_basis_id);
    const int right = build_tree(tree, rest, rng, random_order, next_basis_id);
    return tree.add_split(qubit, point, left, right);
}

SplitTree generate_tree(int n_qubits, const std::vector<int>& tail_dims, Rng& rng,
                        bool random_order) {
    if (n_qubits < 1) throw InputError("tree generators require at least one qubit");
    SplitTree tree;
    tree.n_qubits = n_qubits;
    if (!tail_dims.empty()) {
        int d = 1;
        for (int t : tail_dims) {
            if (t < 1) throw InputError("tail dimensions must be positive");
            d *= t;
        }
        tree.tail_dim = d;
    }
    std::vector<int> remaining;
    remaining.reserve(static_cast<std::size_t>(n_qubits));
    for (int i = 1; i <= n_qubits; ++i) remaining.push_back(i);
    int next_basis_id = 0;
    tree.root = build_tree(tree, remaining, rng, random_order, next_basis_id);
    return tree;
}

} // namespace

SplitTree generate_generic(int n_qubits, Rng& rng) {
    return generate_tree(n_qubits, {}, rng, /*random_order=*/false);
}

SplitTree generate_split(int n_qubits, const std::vector<int>& tail_dims, Rng& rng) {
    return generate_tree(n_qubits, tail_dims, rng, /*random_order=*/true);
}

Uob product_uob_from_bases(const std::vector<std::vector<FactorState>>& factor_bases) {
    if (factor_bases.empty()) throw InputError("product basis needs at least one factor");
    Uob uob;
    std::size_t total = 1;
    for (const auto& basis : factor_bases) {
        if (basis.empty()) throw InputError("empty per-factor basis");
        const int dim = basis.front().dim;
        if (basis.size() != static_cast<std::size_t>(dim)) {
            throw InputError("per-factor basis must have exactly dim vectors");
        }
        for (const FactorState& f : basis) {
            if (f.dim != dim) throw ShapeMismatch("mixed dimensions in a per-factor basis");
        }
        uob.signature.push_back(dim);
        total *= static_cast<std::size_t>(dim);
    }
    uob.states.reserve(total);
    std::vector<std::size_t> index(factor_bases.size(), 0);
    for (std::size_t s = 0; s < total; ++s) {
        std::vector<FactorState> factors;
        factors.reserve(factor_bases.size());
        for (std::size_t j = 0; j < factor_bases.size(); ++j) {
            factors.push_back(factor_bases[j][index[j]]);
        }
        uob.states.push_back(ProductState(std::move(factors)));
        // odometer, last factor fastest
        for (std::size_t j = factor_bases.size(); j-- > 0;) {
            if (++index[j] < factor_bases[j].size()) break;
            index[j] = 0;
        }
    }
    return uob;
}

Uob generate_product_basis(const std::vector<int>& dims, Rng& rng) {
    std::vector<std::vector<FactorState>> bases;
    bases.reserve(dims.size());
    for (int d : dims) {
        if (d < 1) throw InputError("factor dimensions must be positive");
        std::vector<FactorState> basis;
        if (d == 2) {
            const CanonicalQubit a = random_interior_point(rng);
            basis.push_back(FactorState::from_canonical(a));
            basis.push_back(FactorState::from_canonical(a.flip()));
        } else {
            for (auto& column : random_orthonormal_basis(rng, d)) {
                basis.push_back(FactorState::from_amplitudes(std::move(column)));
            }
        }
        bases.push_back(std::move(basis));
    }
    return product_uob_from_bases(bases);
}

Uob computational_basis(const std::vector<int>& dims) {
    std::vector<std::vector<FactorState>> bases;
    bases.reserve(dims.size());
    for (int d : dims) {
        std::vector<FactorState> basis;
        for (int i = 0; i < d; ++i) basis.push_back(FactorState::basis_vector(d, i));
        bases.push_back(std::move(basis));
    }
    return product_uob_from_bases(bases);
}

namespace {

void expand_paths(const SplitTree& tree, int node_index,
                  std::vector<std::optional<CanonicalQubit>>& path, Uob& out) {
    if (node_index < 0 || node_index >= static_cast<int>(tree.nodes.size())) {
        throw MalformedTree("node index out of range");
    }
    const SplitTree::Node& node = tree.nodes[static_cast<std::size_t>(node_index)];
    if (node.leaf) {
        std::vector<FactorState> qubits;
        qubits.reserve(path.size());
        for (std::size_t i = 0; i < path.size(); ++i) {
            if (!path[i]) {
                throw MalformedTree("path reaches a leaf without fixing qubit " +
                                    std::to_string(i + 1));
            }
            qubits.push_back(FactorState::from_canonical(*path[i]));
        }
        if (!tree.tail_dim) {
            out.states.push_back(ProductState(qubits));
            return;
        }
        const auto it = tree.tail_bases.find(node.tail_basis_id);
        if (it == tree.tail_bases.end()) {
            throw MalformedTree("leaf references missing tail basis " +
                                std::to_string(node.tail_basis_id));
        }
        if (it->second.size() != static_cast<std::size_t>(*tree.tail_dim)) {
            throw MalformedTree("tail basis " + std::to_string(node.tail_basis_id) +
                                " does not span the tail space");
        }
        for (const auto& vec : it->second) {
            std::vector<FactorState> factors = qubits;
            factors.push_back(FactorState::from_amplitudes(vec));
            out.states.push_back(ProductState(std::move(factors)));
        }
        return;
    }
    if (node.qubit_index < 1 || node.qubit_index > tree.n_qubits) {
        throw MalformedTree("split on qubit " + std::to_string(node.qubit_index) +
                            " outside 1.." + std::to_string(tree.n_qubits));
    }
    auto& slot = path[static_cast<std::size_t>(node.qubit_index - 1)];
    if (slot) {
        throw MalformedTree("path fixes qubit " + std::to_string(node.qubit_index) + " twice");
    }
    slot = CanonicalQubit{node.point.base, false};
    expand_paths(tree, node.left, path, out);
    slot = CanonicalQubit{node.point.base, true};
    expand_paths(tree, node.right, path, out);
    slot.reset();
}

} // namespace

Uob expand_tree(const SplitTree& t) {
    Uob out;
    out.signature.assign(static_cast<std::size_t>(t.n_qubits), 2);
    if (t.tail_dim) out.signature.push_back(*t.tail_dim);
    std::vector<std::optional<CanonicalQubit>> path(static_cast<std::size_t>(t.n_qubits));
    expand_paths(t, t.root, path, out);
    return out;
}

} // namespace uff
