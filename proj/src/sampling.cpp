#include "uff/sampling.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

namespace uff {

CanonicalQubit random_interior_point(Rng& rng, double margin) {
    const double r = (1.0 - margin) * std::sqrt(rng.uniform());
    const double t = 2.0 * std::numbers::pi * rng.uniform();
    return {Complex(r * std::cos(t), r * std::sin(t)), false};
}

FactorState random_unit_factor(Rng& rng, int d) {
    std::vector<Complex> amps(static_cast<std::size_t>(d));
    double n2 = 0.0;
    for (Complex& a : amps) {
        a = rng.complex_gaussian();
        n2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(n2);
    for (Complex& a : amps) a *= inv;
    return FactorState::from_amplitudes(std::move(amps));
}

std::vector<std::vector<Complex>> random_orthonormal_basis(Rng& rng, int d) {
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    const Eigen::MatrixXcd q =
        Eigen::HouseholderQR<Eigen::MatrixXcd>(g).householderQ() *
        Eigen::MatrixXcd::Identity(d, d);
    std::vector<std::vector<Complex>> basis(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) {
        auto& col = basis[static_cast<std::size_t>(j)];
        col.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) col[static_cast<std::size_t>(i)] = q(i, j);
    }
    return basis;
}

ProductState random_canonical_state(Rng& rng, int n_qubits, double margin) {
    std::vector<FactorState> factors;
    factors.reserve(static_cast<std::size_t>(n_qubits));
    for (int i = 0; i < n_qubits; ++i) {
        factors.push_back(FactorState::from_canonical(random_interior_point(rng, margin)));
    }
    return ProductState(std::move(factors));
}

ProductState random_qubit_state(Rng& rng, int n_qubits, double margin) {
    std::vector<FactorState> factors;
    factors.reserve(static_cast<std::size_t>(n_qubits));
    for (int i = 0; i < n_qubits; ++i) {
        CanonicalQubit q = random_interior_point(rng, margin);
        q.flipped = rng.below(2) == 1;
        factors.push_back(FactorState::from_canonical(q));
    }
    return ProductState(std::move(factors));
}

} // namespace uff
