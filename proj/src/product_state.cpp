#include "uff/product_state.hpp"

#include <cmath>
#include <string>

namespace uff {

std::vector<int> SubsetMask::positions() const {
    std::vector<int> out;
    for (int i = 0; i < 64; ++i) {
        if ((bits >> i) & 1u) out.push_back(i + 1);
    }
    return out;
}

FactorState FactorState::from_amplitudes(std::vector<Complex> amps) {
    FactorState f;
    f.dim = static_cast<int>(amps.size());
    if (f.dim == 0) throw InputError("factor state must have at least one amplitude");
    double n2 = 0.0;
    for (const Complex& a : amps) n2 += std::norm(a);
    if (std::abs(std::sqrt(n2) - 1.0) > 1e-9) {
        throw NotUnitNorm("factor state is not unit norm");
    }
    f.amplitudes = std::move(amps);
    if (f.dim == 2) {
        f.canonical = canonicalize(vector_to_point({f.amplitudes[0], f.amplitudes[1]}));
    }
    return f;
}

FactorState FactorState::from_canonical(const CanonicalQubit& q) {
    FactorState f;
    f.dim = 2;
    const QubitVector v = point_to_vector(q);
    f.amplitudes = {v.x, v.y};
    f.canonical = q;
    return f;
}

FactorState FactorState::basis_vector(int dim, int index) {
    FactorState f;
    f.dim = dim;
    f.amplitudes.assign(static_cast<std::size_t>(dim), Complex(0.0, 0.0));
    f.amplitudes.at(static_cast<std::size_t>(index)) = Complex(1.0, 0.0);
    if (dim == 2) {
        f.canonical = canonicalize(vector_to_point({f.amplitudes[0], f.amplitudes[1]}));
    }
    return f;
}

Complex factor_inner(const FactorState& a, const FactorState& b) {
    Complex acc{0.0, 0.0};
    for (int i = 0; i < a.dim; ++i) {
        acc += std::conj(a.amplitudes[static_cast<std::size_t>(i)]) *
               b.amplitudes[static_cast<std::size_t>(i)];
    }
    return acc;
}

std::vector<int> ProductState::signature() const {
    std::vector<int> sig;
    sig.reserve(factors.size());
    for (const FactorState& f : factors) sig.push_back(f.dim);
    return sig;
}

std::int64_t ProductState::total_dimension() const {
    std::int64_t d = 1;
    for (const FactorState& f : factors) d *= f.dim;
    return d;
}

bool ProductState::all_qubits() const {
    for (const FactorState& f : factors) {
        if (f.dim != 2) return false;
    }
    return true;
}

SubsetMask ProductState::flip_mask() const {
    SubsetMask m;
    for (int i = 0; i < factor_count(); ++i) {
        const FactorState& f = factors[static_cast<std::size_t>(i)];
        if (f.dim != 2) throw NonQubitFactor("flip_mask: factor " + std::to_string(i + 1) +
                                             " has dimension " + std::to_string(f.dim));
        if (f.canonical->flipped) m = m.with(i + 1);
    }
    return m;
}

namespace {

void require_same_signature(const ProductState& a, const ProductState& b, const char* who) {
    if (a.signature() != b.signature()) {
        throw ShapeMismatch(std::string(who) + ": factor dimension signatures differ");
    }
}

void require_mask_in_range(const ProductState& z, SubsetMask J, const char* who) {
    const int n = z.factor_count();
    if (n < 64 && (J.bits >> n) != 0) {
        throw ShapeMismatch(std::string(who) + ": mask addresses positions beyond factor count");
    }
}

} // namespace

Complex inner_product(const ProductState& a, const ProductState& b) {
    require_same_signature(a, b, "inner_product");
    Complex acc{1.0, 0.0};
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        acc *= factor_inner(a.factors[i], b.factors[i]);
    }
    return acc;
}

bool is_orthogonal(const ProductState& a, const ProductState& b, double tol) {
    require_same_signature(a, b, "is_orthogonal");
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
        if (std::abs(factor_inner(a.factors[i], b.factors[i])) <= tol) return true;
    }
    return false;
}

ProductState apply_sigma_mask(const ProductState& z, SubsetMask J) {
    require_mask_in_range(z, J, "apply_sigma_mask");
    ProductState out = z;
    for (int pos = 1; pos <= z.factor_count(); ++pos) {
        if (!J.contains(pos)) continue;
        FactorState& f = out.factors[static_cast<std::size_t>(pos - 1)];
        if (f.dim != 2) {
            throw NonQubitPosition("apply_sigma_mask: position " + std::to_string(pos) +
                                   " has dimension " + std::to_string(f.dim));
        }
        const QubitVector flipped = sigma_vector({f.amplitudes[0], f.amplitudes[1]});
        f.amplitudes[0] = flipped.x;
        f.amplitudes[1] = flipped.y;
        f.canonical = f.canonical->flip();
    }
    return out;
}

std::vector<Complex> tau_project(const ProductState& z, SubsetMask J) {
    require_mask_in_range(z, J, "tau_project");
    std::vector<Complex> coords;
    coords.reserve(static_cast<std::size_t>(z.factor_count() - J.count()));
    for (int pos = 1; pos <= z.factor_count(); ++pos) {
        if (J.contains(pos)) continue;
        const FactorState& f = z.factors[static_cast<std::size_t>(pos - 1)];
        if (f.dim != 2) {
            throw NonQubitFactor("tau_project: retained position " + std::to_string(pos) +
                                 " has dimension " + std::to_string(f.dim));
        }
        if (f.canonical->flipped) {
            throw NotCanonical("tau_project: retained position " + std::to_string(pos) +
                               " is flipped");
        }
        coords.push_back(f.canonical->base);
    }
    return coords;
}

std::vector<Complex> expand_to_full_vector(const ProductState& z) {
    const std::int64_t total = z.total_dimension();
    if (total > (std::int64_t{1} << 20)) {
        throw TooLarge("expand_to_full_vector: total dimension " + std::to_string(total) +
                       " exceeds 2^20");
    }
    std::vector<Complex> full{Complex(1.0, 0.0)};
    for (const FactorState& f : z.factors) {
        std::vector<Complex> next(full.size() * static_cast<std::size_t>(f.dim));
        std::size_t idx = 0;
        for (const Complex& head : full) {
            for (const Complex& amp : f.amplitudes) {
                next[idx++] = head * amp;
            }
        }
        full = std::move(next);
    }
    return full;
}

} // namespace uff
