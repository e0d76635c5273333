#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "uff/errors.hpp"
#include "uff/projective.hpp"

namespace uff {

// Subset of positions {1, ..., n}, n <= 63. Position i is bit (i - 1).
struct SubsetMask {
    std::uint64_t bits = 0;

    SubsetMask() = default;
    explicit SubsetMask(std::uint64_t b) : bits(b) {}

    static SubsetMask empty() { return SubsetMask(0); }
    static SubsetMask full(int n) {
        return SubsetMask(n == 0 ? 0 : (~std::uint64_t{0} >> (64 - n)));
    }
    // 1-based positions.
    static SubsetMask of(std::initializer_list<int> positions) {
        SubsetMask m;
        for (int p : positions) m.bits |= std::uint64_t{1} << (p - 1);
        return m;
    }

    bool contains(int position) const { return (bits >> (position - 1)) & 1u; }
    SubsetMask with(int position) const {
        return SubsetMask(bits | (std::uint64_t{1} << (position - 1)));
    }
    int count() const { return __builtin_popcountll(bits); }
    bool is_subset_of(SubsetMask other) const { return (bits & ~other.bits) == 0; }
    // Sorted 1-based member positions.
    std::vector<int> positions() const;

    friend bool operator==(SubsetMask a, SubsetMask b) { return a.bits == b.bits; }
};

// Visit every subset L of J (including empty and J itself), ascending by
// the standard submask walk.
template <typename Fn>
void for_each_subset(SubsetMask J, Fn&& fn) {
    std::uint64_t sub = 0;
    while (true) {
        fn(SubsetMask(sub));
        if (sub == J.bits) break;
        sub = (sub - J.bits) & J.bits;
    }
}

// One tensor factor: a unit vector in C^dim. Factors of dimension 2 also
// carry their canonical qubit data (base in F, flipped flag); that pair is
// the authoritative projective coordinate used by the phi machinery, and
// sigma flips toggle the flag without touching the base bits.
struct FactorState {
    int dim = 0;
    std::vector<Complex> amplitudes;
    std::optional<CanonicalQubit> canonical;

    // Validates unit norm (1e-9); derives canonical data when dim == 2.
    static FactorState from_amplitudes(std::vector<Complex> amps);
    // Exact lift of a canonical qubit; base bits are preserved verbatim.
    static FactorState from_canonical(const CanonicalQubit& q);
    // Standard basis vector e_index (0-based) of C^dim.
    static FactorState basis_vector(int dim, int index);

    bool is_qubit() const { return dim == 2; }
};

Complex factor_inner(const FactorState& a, const FactorState& b);

// Ordered tensor product of factors. The empty product (total dimension 1)
// is permitted as the k = 0 qubit part of the operator-valued machinery;
// serialized states and basis members are always nonempty.
struct ProductState {
    std::vector<FactorState> factors;

    ProductState() = default;
    explicit ProductState(std::vector<FactorState> f) : factors(std::move(f)) {}

    std::vector<int> signature() const;
    std::int64_t total_dimension() const;
    int factor_count() const { return static_cast<int>(factors.size()); }
    bool all_qubits() const;
    // Set of flipped qubit positions (1-based). Requires all_qubits().
    SubsetMask flip_mask() const;
};

// Product over factors of the per-factor inner products.
// Throws ShapeMismatch when the dimension signatures differ.
Complex inner_product(const ProductState& a, const ProductState& b);

// Factorwise orthogonality criterion: true iff some factor has
// |<a_i|b_i>| <= tol. More robust than testing the full product.
bool is_orthogonal(const ProductState& a, const ProductState& b, double tol = 1e-9);

// Apply sigma at the positions of J (identity elsewhere). Every set bit
// must address a dim-2 factor (NonQubitPosition otherwise). The canonical
// flag is toggled; the base is untouched.
ProductState apply_sigma_mask(const ProductState& z, SubsetMask J);

// Base coordinates at the positions of the complement of J, ascending.
// The empty sequence encodes the formal value omega (J = full set).
// Retained coordinates are copied bit-exactly, no arithmetic. Requires an
// all-qubit state with unflipped flags at every retained position.
std::vector<Complex> tau_project(const ProductState& z, SubsetMask J);

// Kronecker expansion, first factor slowest. Total dimension capped at
// 2^20 (TooLarge beyond).
std::vector<Complex> expand_to_full_vector(const ProductState& z);

} // namespace uff
