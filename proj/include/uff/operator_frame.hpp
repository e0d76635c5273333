#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "uff/frame_function.hpp"
#include "uff/product_state.hpp"
#include "uff/rng.hpp"
#include "uff/uob.hpp"

namespace uff {

// Finite-dimensional self-adjoint operator. Construction rejects matrices
// whose entries differ from the conjugate transpose by more than the
// tolerance; at d = 1 this is just a real scalar in a box.
class HermitianOperator {
public:
    explicit HermitianOperator(Eigen::MatrixXcd entries, double tol = 1e-12);

    static HermitianOperator identity(int d);
    static HermitianOperator scaled_identity(int d, double scale);
    // (G + G*)/2 for a seeded complex Gaussian G; `positive` adds a
    // deterministic diagonal shift (max absolute row sum) that makes the
    // result positive semidefinite.
    static HermitianOperator random(int d, Rng& rng, bool positive = false);

    int dim() const { return static_cast<int>(entries_.rows()); }
    const Eigen::MatrixXcd& entries() const { return entries_; }
    double trace() const;
    double min_eigenvalue() const;
    double frobenius_distance(const HermitianOperator& other) const;

private:
    Eigen::MatrixXcd entries_;
};

// <u|A|u> as a real number; the imaginary residual must stay below 1e-12
// (NotHermitian otherwise) and is discarded.
double gleason_eval(const HermitianOperator& A, const FactorState& u);

enum class OperatorPhiKind { Constant, Prf, Table, Hook };

// Operator-valued phi data for qubit^k (x) C^d: one map from coordinate
// tuples to Hermitian operators per subset J of {1..k}, the full set
// included (its single operator at omega carries the constant
// c = tr phi_full). Tail dimension 2 is rejected: a dim-2 tail is a qubit
// and belongs in the scalar machinery.
class OperatorPhiFamily {
public:
    using Hook =
        std::function<HermitianOperator(SubsetMask, std::span<const Complex>)>;
    using Table = std::unordered_map<std::string, HermitianOperator>;

    struct Entry {
        OperatorPhiKind kind = OperatorPhiKind::Prf;
        std::shared_ptr<const HermitianOperator> constant;
        std::uint64_t seed = 0;
        bool positive = false;
        std::shared_ptr<Table> table;
        Hook hook;
    };

    static OperatorPhiFamily prf(int k, int d, std::uint64_t seed, bool positive = false);
    // per_mask indexed by mask bits, one operator per subset incl. full.
    static OperatorPhiFamily constant(int k, int d, std::vector<HermitianOperator> per_mask);
    static OperatorPhiFamily from_hook(int k, int d, Hook hook);
    static OperatorPhiFamily tabulated(int k, int d,
                                       std::vector<std::shared_ptr<Table>> tables);
    // Wrap a scalar family as 1x1 operators (c becomes the omega value).
    static OperatorPhiFamily from_scalar(const PhiFamily& scalar);

    int qubit_count() const { return k_; }
    int tail_dim() const { return d_; }

    HermitianOperator phi(SubsetMask J, std::span<const Complex> coords) const;
    // c = tr phi_full(omega).
    double trace_at_omega() const;

    const Entry& entry(SubsetMask J) const;
    Entry& entry_mut(SubsetMask J);

private:
    OperatorPhiFamily(int k, int d);

    int k_ = 0;
    int d_ = 0;
    std::vector<Entry> entries_; // indexed by mask bits, full mask included
};

// f(sigma_J(z) (x) u): alternating sum over L <= J of the quadratic forms
// <u|phi_L(tau_L z)|u>, signs by |J \ L|. At k = 0 this is a single
// Gleason evaluation.
double evaluate_general(const OperatorPhiFamily& family, const ProductState& z_part,
                        const FactorState& u);

// Sum of evaluate_general over a UOB of signature (2 x k, d) against
// tr phi_full(omega). States may omit the tail factor when d = 1 (the
// scalar convention); the basis is validated first.
SumReport verify_general(const OperatorPhiFamily& family, const Uob& basis,
                         double validation_tol = 1e-9);

using GeneralOracle =
    std::function<double(const ProductState& qubit_part, const FactorState& tail)>;

// Curry the qubit part: the returned callable is the frame function on
// the tail space alone. For any frame function it acts as a quadratic
// form in the tail state, ready for operator reconstruction.
std::function<double(const FactorState&)> restrict_to_tail(GeneralOracle oracle,
                                                           ProductState z_part);

} // namespace uff
