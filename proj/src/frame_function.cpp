#include "uff/frame_function.hpp"

#include <cmath>
#include <cstring>
#include <limits>

#include "uff/sampling.hpp"

namespace uff {

std::string coord_key(std::span<const Complex> coords) {
    std::string key(coords.size() * 2 * sizeof(double), '\0');
    std::size_t off = 0;
    for (const Complex& z : coords) {
        const double re = z.real();
        const double im = z.imag();
        std::memcpy(key.data() + off, &re, sizeof(double));
        std::memcpy(key.data() + off + sizeof(double), &im, sizeof(double));
        off += 2 * sizeof(double);
    }
    return key;
}

PhiFamily::PhiFamily(int n, double c) : n_(n), c_(c) {
    if (n < 1) throw InputError("phi family needs n >= 1");
    if (n > 16) throw TooLarge("phi family storage caps at n <= 16");
    entries_.resize(std::size_t{1} << n);
}

PhiFamily PhiFamily::prf(int n, std::uint64_t seed, double c) {
    PhiFamily fam(n, c);
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        Entry& e = fam.entries_[mask];
        e.kind = PhiKind::Prf;
        e.seed = derive_seed(seed, {mask});
    }
    return fam;
}

PhiFamily PhiFamily::constants(int n, const std::vector<double>& per_mask, double c) {
    PhiFamily fam(n, c);
    if (per_mask.size() < fam.entries_.size() - 1) {
        throw InputError("constants family needs a value for every proper subset");
    }
    for (std::uint64_t mask = 0; mask + 1 < fam.entries_.size(); ++mask) {
        fam.entries_[mask].kind = PhiKind::Constant;
        fam.entries_[mask].constant = per_mask[mask];
    }
    return fam;
}

PhiFamily PhiFamily::uniform(int n) {
    PhiFamily fam(n, 1.0);
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        fam.entries_[mask].kind = PhiKind::Constant;
        fam.entries_[mask].constant =
            std::ldexp(1.0, __builtin_popcountll(mask) - n);
    }
    return fam;
}

PhiFamily PhiFamily::polynomial(int n, const PolynomialParams& params, double c) {
    PhiFamily fam(n, c);
    for (Entry& e : fam.entries_) {
        e.kind = PhiKind::Polynomial;
        e.poly = params;
    }
    return fam;
}

PhiFamily PhiFamily::from_hook(int n, Hook hook, double c) {
    PhiFamily fam(n, c);
    for (Entry& e : fam.entries_) {
        e.kind = PhiKind::Hook;
        e.hook = hook;
    }
    return fam;
}

PhiFamily PhiFamily::tabulated(int n, std::vector<std::shared_ptr<Table>> tables, double c) {
    PhiFamily fam(n, c);
    if (tables.size() != fam.entries_.size()) {
        throw InputError("tabulated family needs one table slot per subset");
    }
    for (std::uint64_t mask = 0; mask < fam.entries_.size(); ++mask) {
        fam.entries_[mask].kind = PhiKind::Table;
        fam.entries_[mask].table = std::move(tables[mask]);
    }
    return fam;
}

const PhiFamily::Entry& PhiFamily::entry(SubsetMask J) const {
    return entries_.at(J.bits);
}

PhiFamily::Entry& PhiFamily::entry_mut(SubsetMask J) {
    return entries_.at(J.bits);
}

double PhiFamily::eval_phi(SubsetMask J, std::span<const Complex> coords) const {
    if (J.bits >= entries_.size()) {
        throw InputError("eval_phi: mask outside the subset lattice");
    }
    if (J == SubsetMask::full(n_)) {
        throw InputError("eval_phi: the full-set value is the scalar c");
    }
    if (static_cast<int>(coords.size()) != n_ - J.count()) {
        throw ShapeMismatch("eval_phi: coordinate tuple has the wrong length");
    }
    const Entry& e = entries_[J.bits];
    switch (e.kind) {
    case PhiKind::Constant:
        return e.constant;
    case PhiKind::Polynomial: {
        double v = e.poly.constant;
        for (const Complex& z : coords) {
            v += e.poly.real_sum * z.real();
            v += e.poly.imag_sum * z.imag();
            v += e.poly.abs2_sum * std::norm(z);
        }
        return v;
    }
    case PhiKind::Prf: {
        std::uint64_t words[33]; // 1 + 2 * 16 coordinates max
        std::size_t count = 0;
        words[count++] = J.bits;
        for (const Complex& z : coords) {
            words[count++] = double_bits(z.real());
            words[count++] = double_bits(z.imag());
        }
        return word_to_unit(hash_words(e.seed, std::span<const std::uint64_t>(words, count)));
    }
    case PhiKind::Table: {
        if (!e.table) throw InputError("eval_phi: missing table for this subset");
        const auto it = e.table->find(coord_key(coords));
        if (it == e.table->end()) {
            throw InputError("eval_phi: coordinates outside the tabulated sample set");
        }
        return it->second;
    }
    case PhiKind::Hook:
        if (!e.hook) throw InputError("eval_phi: missing hook for this subset");
        return e.hook(J, coords);
    }
    throw InputError("eval_phi: unknown phi kind");
}

namespace {

// Read off (flip set, base tuple) from the canonical data; no arithmetic
// touches the coordinates.
void read_canonical(const ProductState& state, int n, SubsetMask& J,
                    std::vector<Complex>& bases) {
    if (state.factor_count() != n) {
        throw ShapeMismatch("frame function arity does not match the state");
    }
    bases.resize(static_cast<std::size_t>(n));
    J = SubsetMask::empty();
    for (int i = 0; i < n; ++i) {
        const FactorState& f = state.factors[static_cast<std::size_t>(i)];
        if (f.dim != 2) {
            throw NonQubitFactor("frame functions act on all-qubit states");
        }
        bases[static_cast<std::size_t>(i)] = f.canonical->base;
        if (f.canonical->flipped) J = J.with(i + 1);
    }
}

} // namespace

double FrameFunction::evaluate(const ProductState& state) const {
    const int n = family_.n();
    SubsetMask J;
    std::vector<Complex> bases;
    read_canonical(state, n, J, bases);

    const SubsetMask full = SubsetMask::full(n);
    const int j_count = J.count();
    double acc = 0.0;
    std::vector<Complex> coords;
    coords.reserve(static_cast<std::size_t>(n));
    for_each_subset(J, [&](SubsetMask L) {
        double term;
        if (L == full) {
            term = family_.c();
        } else {
            coords.clear();
            for (int pos = 1; pos <= n; ++pos) {
                if (!L.contains(pos)) coords.push_back(bases[static_cast<std::size_t>(pos - 1)]);
            }
            term = family_.eval_phi(L, coords);
        }
        acc += ((j_count - L.count()) & 1) ? -term : term;
    });
    return acc;
}

double FrameFunction::partial_sum(const ProductState& z, SubsetMask J) const {
    if (!z.all_qubits()) throw NonQubitFactor("partial_sum needs an all-qubit state");
    if (z.flip_mask().bits != 0) {
        throw NotCanonical("partial_sum needs a fully canonical state");
    }
    double acc = 0.0;
    for_each_subset(J, [&](SubsetMask L) { acc += evaluate(apply_sigma_mask(z, L)); });
    return acc;
}

namespace {

void check_transform_size(const std::vector<double>& table, int n, const char* who) {
    if (n < 0 || n > 24) throw TooLarge(std::string(who) + ": size cap is n <= 24");
    if (table.size() != (std::size_t{1} << n)) {
        throw ShapeMismatch(std::string(who) + ": table must have 2^n entries");
    }
}

} // namespace

std::vector<double> mobius_accumulate(std::vector<double> alpha, int n) {
    check_transform_size(alpha, n, "mobius_accumulate");
    for (int bit = 0; bit < n; ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t mask = 0; mask < alpha.size(); ++mask) {
            if (mask & step) alpha[mask] += alpha[mask ^ step];
        }
    }
    return alpha;
}

std::vector<double> mobius_invert(std::vector<double> beta, int n) {
    check_transform_size(beta, n, "mobius_invert");
    for (int bit = 0; bit < n; ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t mask = 0; mask < beta.size(); ++mask) {
            if (mask & step) beta[mask] -= beta[mask ^ step];
        }
    }
    return beta;
}

PhiFamily recover_phi(const ScalarOracle& oracle, int n,
                      const std::vector<ProductState>& z_samples) {
    if (z_samples.empty()) throw InputError("recover_phi needs at least one sample");
    const std::size_t size = std::size_t{1} << n;
    std::vector<std::shared_ptr<PhiFamily::Table>> tables(size);
    for (auto& t : tables) t = std::make_shared<PhiFamily::Table>();

    bool have_c = false;
    double c = 0.0;
    for (const ProductState& z : z_samples) {
        if (z.factor_count() != n || !z.all_qubits()) {
            throw ShapeMismatch("recover_phi: sample does not have n qubit factors");
        }
        if (z.flip_mask().bits != 0) {
            throw NotCanonical("recover_phi: samples must be fully canonical");
        }
        std::vector<double> alpha(size);
        for (std::size_t mask = 0; mask < size; ++mask) {
            alpha[mask] = oracle(apply_sigma_mask(z, SubsetMask(mask)));
        }
        const std::vector<double> beta = mobius_accumulate(std::move(alpha), n);
        for (std::size_t mask = 0; mask < size; ++mask) {
            const std::string key = coord_key(tau_project(z, SubsetMask(mask)));
            auto [it, inserted] = tables[mask]->try_emplace(key, beta[mask]);
            if (!inserted && std::abs(it->second - beta[mask]) > 1e-8) {
                throw InconsistentOracle(
                    "recover_phi: equal retained coordinates produced phi values differing by " +
                    std::to_string(std::abs(it->second - beta[mask])));
            }
        }
        if (!have_c) {
            c = beta[size - 1];
            have_c = true;
        } else if (std::abs(c - beta[size - 1]) > 1e-8) {
            throw InconsistentOracle("recover_phi: full-set sums disagree across samples");
        }
    }
    return PhiFamily::tabulated(n, std::move(tables), c);
}

SumReport verify_sum(const FrameFunction& ff, const Uob& basis, double validation_tol) {
    const UobValidationReport validation = validate_uob(basis, validation_tol);
    if (!validation.pass) {
        throw InvalidUob("verify_sum: candidate basis failed validation (max off-diagonal " +
                         std::to_string(validation.max_off_diagonal) + ")");
    }
    SumReport report;
    report.c = ff.c();
    report.count = basis.states.size();
    for (const ProductState& s : basis.states) report.sum += ff.evaluate(s);
    report.residual = std::abs(report.sum - report.c);
    return report;
}

NonnegReport scan_nonneg(const FrameFunction& ff, std::size_t trials, Rng& rng) {
    NonnegReport report;
    report.trials = trials;
    report.sampled = trials > 0;
    report.min_value = std::numeric_limits<double>::infinity();
    std::size_t negatives = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        ProductState state = random_qubit_state(rng, ff.n());
        const double value = ff.evaluate(state);
        if (value < report.min_value) {
            report.min_value = value;
            report.argmin = state;
        }
        if (value < 0.0) ++negatives;
    }
    if (trials > 0) {
        report.fraction_negative = static_cast<double>(negatives) / static_cast<double>(trials);
    }
    report.definition1_candidate = ff.c() == 1.0 && negatives == 0;
    if (!report.sampled) report.min_value = 0.0;
    return report;
}

} // namespace uff
