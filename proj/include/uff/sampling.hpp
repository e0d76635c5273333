#pragma once

#include <vector>

#include "uff/product_state.hpp"
#include "uff/rng.hpp"

namespace uff {

// Uniform point of the open unit disk, kept `margin` away from |z| = 1 so
// canonicalization never sits on the boundary of F.
CanonicalQubit random_interior_point(Rng& rng, double margin = 1e-6);

// Haar-like random unit vector in C^d (normalized complex Gaussian).
FactorState random_unit_factor(Rng& rng, int d);

// Random orthonormal basis of C^d: QR of a complex Gaussian matrix,
// columns returned in order.
std::vector<std::vector<Complex>> random_orthonormal_basis(Rng& rng, int d);

// All-qubit product state with unflipped random interior bases.
ProductState random_canonical_state(Rng& rng, int n_qubits, double margin = 1e-6);

// All-qubit product state with random bases and random flip pattern; the
// sampled flips land the state in a uniformly chosen sigma_J cell.
ProductState random_qubit_state(Rng& rng, int n_qubits, double margin = 1e-6);

} // namespace uff
