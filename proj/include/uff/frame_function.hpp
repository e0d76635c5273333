#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "uff/product_state.hpp"
#include "uff/rng.hpp"
#include "uff/uob.hpp"

namespace uff {

struct Uob;

// Raw byte key of a coordinate tuple; equal keys mean bit-identical
// coordinates, which is what makes the seeded families well defined.
std::string coord_key(std::span<const Complex> coords);

enum class PhiKind { Constant, Polynomial, Prf, Table, Hook };

// p(t) = constant + real_sum * sum Re t_i + imag_sum * sum Im t_i
//      + abs2_sum * sum |t_i|^2
struct PolynomialParams {
    double constant = 0.0;
    double real_sum = 0.0;
    double imag_sum = 0.0;
    double abs2_sum = 0.0;
};

// The free data of the scalar classification: one real-valued function
// phi_J per proper subset J of {1..n}, plus the scalar c that plays the
// role of the full-set value at omega. The built-in families are pure
// functions of the coordinate bit patterns, so identical inputs always
// produce identical outputs.
class PhiFamily {
public:
    using Hook = std::function<double(SubsetMask, std::span<const Complex>)>;
    using Table = std::unordered_map<std::string, double>;

    struct Entry {
        PhiKind kind = PhiKind::Constant;
        double constant = 0.0;
        PolynomialParams poly{};
        std::uint64_t seed = 0;
        std::shared_ptr<Table> table;
        Hook hook;
    };

    // Seeded pseudo-random family: phi_J(t) uniform in [0, 1), a pure
    // function of (seed, J, bits of t). This is how "arbitrary phi" is
    // realized without storage.
    static PhiFamily prf(int n, std::uint64_t seed, double c = 1.0);
    // One constant per mask; `per_mask` is indexed by mask bits and the
    // full-mask slot is ignored (c carries it).
    static PhiFamily constants(int n, const std::vector<double>& per_mask, double c);
    // phi_J = 2^(|J| - n) with c = 1; the induced function is f = 2^-n.
    static PhiFamily uniform(int n);
    static PhiFamily polynomial(int n, const PolynomialParams& params, double c);
    static PhiFamily from_hook(int n, Hook hook, double c);
    // Lookup tables keyed by coordinate bits; evaluation outside the
    // tabulated set throws InputError. Index by mask bits; the full-mask
    // slot may be null.
    static PhiFamily tabulated(int n, std::vector<std::shared_ptr<Table>> tables, double c);

    int n() const { return n_; }
    double c() const { return c_; }

    // phi_J evaluated at a coordinate tuple of length n - |J|; J must be
    // a proper subset of the full mask.
    double eval_phi(SubsetMask J, std::span<const Complex> coords) const;

    const Entry& entry(SubsetMask J) const;
    Entry& entry_mut(SubsetMask J);

private:
    PhiFamily(int n, double c);

    int n_ = 0;
    double c_ = 0.0;
    std::vector<Entry> entries_; // indexed by mask bits; full-mask slot unused
};

// A frame function in classified form. Evaluation reads the canonical
// data of an all-qubit product state as (flip set J, base tuple z) and
// expands the alternating subset sum over L <= J, with c standing in for
// the full-set term.
class FrameFunction {
public:
    explicit FrameFunction(PhiFamily family) : family_(std::move(family)) {}

    const PhiFamily& family() const { return family_; }
    int n() const { return family_.n(); }
    double c() const { return family_.c(); }

    double evaluate(const ProductState& state) const;

    // Sum of evaluate over sigma_L(z) for all L <= J; z must be fully
    // canonical (no flips). Equals phi_J at the retained coordinates.
    double partial_sum(const ProductState& z, SubsetMask J) const;

private:
    PhiFamily family_;
};

// Subset zeta transform: beta(J) = sum over L <= J of alpha(L), in place
// over a table of 2^n values, O(n 2^n). Caps at n <= 24.
std::vector<double> mobius_accumulate(std::vector<double> alpha, int n);

// Inverse (subset Moebius transform): alpha(J) = sum over L <= J of
// (-1)^|J \ L| beta(L).
std::vector<double> mobius_invert(std::vector<double> beta, int n);

using ScalarOracle = std::function<double(const ProductState&)>;

// Rebuild the phi data of a black-box frame function from its values on
// the sampled canonical states: every subset partial sum is formed per
// sample and stored as a phi table entry; the full-set sum becomes c.
// Throws InconsistentOracle when two samples with bit-equal retained
// coordinates disagree by more than 1e-8 (the oracle is then not a frame
// function).
PhiFamily recover_phi(const ScalarOracle& oracle, int n,
                      const std::vector<ProductState>& z_samples);

struct SumReport {
    double sum = 0.0;
    double c = 0.0;
    double residual = 0.0;
    std::size_t count = 0;
};

// Sum of the frame function over a UOB against c. The basis is validated
// first (InvalidUob when it fails).
SumReport verify_sum(const FrameFunction& ff, const Uob& basis, double validation_tol = 1e-9);

struct NonnegReport {
    std::size_t trials = 0;
    bool sampled = false;
    double min_value = 0.0;
    std::optional<ProductState> argmin;
    double fraction_negative = 0.0;
    // True iff c == 1 and no sampled value was negative; vacuous when
    // nothing was sampled (check `sampled`).
    bool definition1_candidate = false;
};

// Random scan for negative values, reporting the minimum and whether the
// family qualifies as a normalized, nonnegative frame function.
NonnegReport scan_nonneg(const FrameFunction& ff, std::size_t trials, Rng& rng);

} // namespace uff
