#include "uff/operator_frame.hpp"

#include <cmath>
#include <string>

namespace uff {

HermitianOperator::HermitianOperator(Eigen::MatrixXcd entries, double tol)
    : entries_(std::move(entries)) {
    if (entries_.rows() != entries_.cols() || entries_.rows() < 1) {
        throw ShapeMismatch("hermitian operator must be square and nonempty");
    }
    const double defect = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw NotHermitian("matrix differs from its conjugate transpose by " +
                           std::to_string(defect));
    }
}

HermitianOperator HermitianOperator::identity(int d) {
    return HermitianOperator(Eigen::MatrixXcd::Identity(d, d));
}

HermitianOperator HermitianOperator::scaled_identity(int d, double scale) {
    return HermitianOperator(Eigen::MatrixXcd::Identity(d, d) * scale);
}

HermitianOperator HermitianOperator::random(int d, Rng& rng, bool positive) {
    Eigen::MatrixXcd g(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            g(i, j) = rng.complex_gaussian();
        }
    }
    Eigen::MatrixXcd a = (g + g.adjoint()) / 2.0;
    if (positive) {
        // Gershgorin bound: shifting by the max absolute row sum clears
        // every eigenvalue above zero.
        const double shift = a.cwiseAbs().rowwise().sum().maxCoeff();
        a += shift * Eigen::MatrixXcd::Identity(d, d);
    }
    return HermitianOperator(std::move(a));
}

double HermitianOperator::trace() const {
    const Complex t = entries_.trace();
    if (std::abs(t.imag()) > 1e-12) {
        throw NotHermitian("trace has imaginary residual " + std::to_string(t.imag()));
    }
    return t.real();
}

double HermitianOperator::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_,
                                                           Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

double HermitianOperator::frobenius_distance(const HermitianOperator& other) const {
    if (dim() != other.dim()) throw ShapeMismatch("frobenius_distance: dimensions differ");
    return (entries_ - other.entries_).norm();
}

double gleason_eval(const HermitianOperator& A, const FactorState& u) {
    if (u.dim != A.dim()) {
        throw ShapeMismatch("gleason_eval: state dimension " + std::to_string(u.dim) +
                            " does not match operator dimension " + std::to_string(A.dim()));
    }
    double n2 = 0.0;
    for (const Complex& a : u.amplitudes) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) {
        throw NotUnitNorm("gleason_eval: state is not unit norm");
    }
    Complex acc{0.0, 0.0};
    const Eigen::MatrixXcd& m = A.entries();
    for (int i = 0; i < A.dim(); ++i) {
        Complex row{0.0, 0.0};
        for (int j = 0; j < A.dim(); ++j) {
            row += m(i, j) * u.amplitudes[static_cast<std::size_t>(j)];
        }
        acc += std::conj(u.amplitudes[static_cast<std::size_t>(i)]) * row;
    }
    if (std::abs(acc.imag()) > 1e-12) {
        throw NotHermitian("quadratic form has imaginary residual " +
                           std::to_string(acc.imag()));
    }
    return acc.real();
}

OperatorPhiFamily::OperatorPhiFamily(int k, int d) : k_(k), d_(d) {
    if (k < 0 || k > 16) throw TooLarge("operator phi family needs 0 <= k <= 16");
    if (d < 1 || d > 64) throw InputError("tail dimension must lie in 1..64");
    if (d == 2) {
        throw InputError("tail dimension 2 is a qubit; use the scalar machinery");
    }
    entries_.resize(std::size_t{1} << k);
}

OperatorPhiFamily OperatorPhiFamily::prf(int k, int d, std::uint64_t seed, bool positive) {
    OperatorPhiFamily fam(k, d);
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        Entry& e = fam.entries_[mask];
        e.kind = OperatorPhiKind::Prf;
        e.seed = derive_seed(seed, {mask});
        e.positive = positive;
    }
    return fam;
}

OperatorPhiFamily OperatorPhiFamily::constant(int k, int d,
                                              std::vector<HermitianOperator> per_mask) {
    OperatorPhiFamily fam(k, d);
    if (per_mask.size() != fam.entries_.size()) {
        throw InputError("constant operator family needs one operator per subset");
    }
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        if (per_mask[mask].dim() != d) {
            throw ShapeMismatch("constant operator family: operator dimension mismatch");
        }
        fam.entries_[mask].kind = OperatorPhiKind::Constant;
        fam.entries_[mask].constant =
            std::make_shared<const HermitianOperator>(std::move(per_mask[mask]));
    }
    return fam;
}

OperatorPhiFamily OperatorPhiFamily::from_hook(int k, int d, Hook hook) {
    OperatorPhiFamily fam(k, d);
    for (Entry& e : fam.entries_) {
        e.kind = OperatorPhiKind::Hook;
        e.hook = hook;
    }
    return fam;
}

OperatorPhiFamily OperatorPhiFamily::tabulated(int k, int d,
                                               std::vector<std::shared_ptr<Table>> tables) {
    OperatorPhiFamily fam(k, d);
    if (tables.size() != fam.entries_.size()) {
        throw InputError("tabulated operator family needs one table per subset");
    }
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        fam.entries_[mask].kind = OperatorPhiKind::Table;
        fam.entries_[mask].table = std::move(tables[mask]);
    }
    return fam;
}

OperatorPhiFamily OperatorPhiFamily::from_scalar(const PhiFamily& scalar) {
    OperatorPhiFamily fam(scalar.n(), 1);
    const SubsetMask full = SubsetMask::full(scalar.n());
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        Entry& e = fam.entries_[mask];
        e.kind = OperatorPhiKind::Hook;
        if (SubsetMask(mask) == full) {
            const double c = scalar.c();
            e.hook = [c](SubsetMask, std::span<const Complex>) {
                Eigen::MatrixXcd m(1, 1);
                m(0, 0) = c;
                return HermitianOperator(std::move(m));
            };
        } else {
            // capture by value: the family must stay self-contained
            e.hook = [scalar](SubsetMask J, std::span<const Complex> coords) {
                Eigen::MatrixXcd m(1, 1);
                m(0, 0) = scalar.eval_phi(J, coords);
                return HermitianOperator(std::move(m));
            };
        }
    }
    return fam;
}

const OperatorPhiFamily::Entry& OperatorPhiFamily::entry(SubsetMask J) const {
    return entries_.at(J.bits);
}

OperatorPhiFamily::Entry& OperatorPhiFamily::entry_mut(SubsetMask J) {
    return entries_.at(J.bits);
}

HermitianOperator OperatorPhiFamily::phi(SubsetMask J, std::span<const Complex> coords) const {
    if (J.bits >= entries_.size()) {
        throw InputError("phi: mask outside the subset lattice");
    }
    if (static_cast<int>(coords.size()) != k_ - J.count()) {
        throw ShapeMismatch("phi: coordinate tuple has the wrong length");
    }
    const Entry& e = entries_[J.bits];
    switch (e.kind) {
    case OperatorPhiKind::Constant:
        if (!e.constant) throw InputError("phi: missing constant operator");
        return *e.constant;
    case OperatorPhiKind::Prf: {
        std::uint64_t words[33]; // 1 + 2 * 16 coordinates max
        std::size_t count = 0;
        words[count++] = J.bits;
        for (const Complex& z : coords) {
            words[count++] = double_bits(z.real());
            words[count++] = double_bits(z.imag());
        }
        Rng stream(hash_words(e.seed, std::span<const std::uint64_t>(words, count)));
        return HermitianOperator::random(d_, stream, e.positive);
    }
    case OperatorPhiKind::Table: {
        if (!e.table) throw InputError("phi: missing table for this subset");
        const auto it = e.table->find(coord_key(coords));
        if (it == e.table->end()) {
            throw InputError("phi: coordinates outside the tabulated sample set");
        }
        return it->second;
    }
    case OperatorPhiKind::Hook:
        if (!e.hook) throw InputError("phi: missing hook for this subset");
        return e.hook(J, coords);
    }
    throw InputError("phi: unknown kind");
}

double OperatorPhiFamily::trace_at_omega() const {
    return phi(SubsetMask::full(k_), {}).trace();
}

double evaluate_general(const OperatorPhiFamily& family, const ProductState& z_part,
                        const FactorState& u) {
    const int k = family.qubit_count();
    if (z_part.factor_count() != k) {
        throw ShapeMismatch("evaluate_general: qubit part does not have k factors");
    }
    if (u.dim != family.tail_dim()) {
        throw ShapeMismatch("evaluate_general: tail state dimension mismatch");
    }
    SubsetMask J;
    std::vector<Complex> bases(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        const FactorState& f = z_part.factors[static_cast<std::size_t>(i)];
        if (f.dim != 2) throw NonQubitFactor("evaluate_general: qubit part has a non-qubit");
        bases[static_cast<std::size_t>(i)] = f.canonical->base;
        if (f.canonical->flipped) J = J.with(i + 1);
    }

    const int j_count = J.count();
    double acc = 0.0;
    std::vector<Complex> coords;
    coords.reserve(static_cast<std::size_t>(k));
    for_each_subset(J, [&](SubsetMask L) {
        coords.clear();
        for (int pos = 1; pos <= k; ++pos) {
            if (!L.contains(pos)) coords.push_back(bases[static_cast<std::size_t>(pos - 1)]);
        }
        const double term = gleason_eval(family.phi(L, coords), u);
        acc += ((j_count - L.count()) & 1) ? -term : term;
    });
    return acc;
}

namespace {

// Split a basis state into (k leading qubits, tail). A missing tail
// factor stands for the scalar 1 in C, allowed only when d = 1.
std::pair<ProductState, FactorState> split_state(const ProductState& state, int k, int d) {
    if (state.factor_count() < k) {
        throw ShapeMismatch("verify_general: state has fewer than k factors");
    }
    ProductState qubits;
    qubits.factors.assign(state.factors.begin(), state.factors.begin() + k);
    if (state.factor_count() == k) {
        if (d != 1) {
            throw ShapeMismatch("verify_general: tail factor missing but d > 1");
        }
        return {std::move(qubits), FactorState::basis_vector(1, 0)};
    }
    if (state.factor_count() != k + 1) {
        throw ShapeMismatch("verify_general: expected exactly one tail factor");
    }
    const FactorState& tail = state.factors.back();
    if (tail.dim != d) {
        throw ShapeMismatch("verify_general: tail dimension does not match the family");
    }
    return {std::move(qubits), tail};
}

} // namespace

SumReport verify_general(const OperatorPhiFamily& family, const Uob& basis,
                         double validation_tol) {
    const UobValidationReport validation = validate_uob(basis, validation_tol);
    if (!validation.pass) {
        throw InvalidUob("verify_general: candidate basis failed validation");
    }
    SumReport report;
    report.c = family.trace_at_omega();
    report.count = basis.states.size();
    for (const ProductState& s : basis.states) {
        auto [qubits, tail] = split_state(s, family.qubit_count(), family.tail_dim());
        report.sum += evaluate_general(family, qubits, tail);
    }
    report.residual = std::abs(report.sum - report.c);
    return report;
}

std::function<double(const FactorState&)> restrict_to_tail(GeneralOracle oracle,
                                                           ProductState z_part) {
    return [oracle = std::move(oracle), z_part = std::move(z_part)](const FactorState& u) {
        return oracle(z_part, u);
    };
}

} // namespace uff
