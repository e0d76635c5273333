#pragma once

#include <functional>
#include <vector>

#include "uff/operator_frame.hpp"
#include "uff/product_state.hpp"
#include "uff/rng.hpp"

namespace uff {

// Informationally complete probe set for Hermitian forms on C^d: the d
// basis states, the d(d-1)/2 real superpositions (e_i + e_j)/sqrt(2) and
// the d(d-1)/2 phased ones (e_i + i e_j)/sqrt(2). d^2 states in total.
std::vector<FactorState> tomography_states(int d);

inline constexpr std::uint64_t kFormCheckSeed = 0x7C15F39B9E3779B9ull;

// Closed-form inversion of a quadratic-form oracle:
//   A_ii     = oracle(e_i)
//   Re A_ij  = oracle((e_i + e_j)/sqrt 2)   - (A_ii + A_jj)/2
//   Im A_ij  = (A_ii + A_jj)/2 - oracle((e_i + i e_j)/sqrt 2)
// The result is checked a posteriori on 100 seeded random states; a
// residual above 1e-6 means the oracle is no quadratic form (NotAForm).
HermitianOperator reconstruct_operator(const std::function<double(const FactorState&)>& oracle,
                                       int d, std::uint64_t check_seed = kFormCheckSeed);

// Overdetermined cross-check: fit the d^2 real parameters of A to
// num_probes >= d^2 random unit states by normal equations.
HermitianOperator reconstruct_operator_least_squares(
    const std::function<double(const FactorState&)>& oracle, int d, int num_probes, Rng& rng);

struct PhiReconstruction {
    OperatorPhiFamily family;
    // max post-hoc residual of the per-(J, sample) operator fits
    double max_form_residual = 0.0;
    // max |evaluate_general(family, .) - oracle(.)| over the sampled
    // qubit tuples, all flip patterns, and the tomography probe tails
    double max_roundtrip_residual = 0.0;
    std::vector<double> sample_residuals; // one entry per (sample, J) fit
};

// Rebuild the operator-valued phi data of a black-box frame function on
// qubit^k (x) C^d: for each sampled canonical tuple z and each subset J,
// the partial-sum oracle u -> sum over L <= J of f(sigma_L z, u) is a
// quadratic form; its operator is recovered and stored at the retained
// coordinates. Bit-equal retained coordinates must agree to 1e-8 in
// Frobenius norm (InconsistentOracle otherwise); NotAForm propagates.
PhiReconstruction reconstruct_phi_operators(const GeneralOracle& oracle, int k, int d,
                                            const std::vector<ProductState>& z_samples);

} // namespace uff
