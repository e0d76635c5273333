#include "uff/reconstruct.hpp"

#include <cmath>
#include <string>

#include "uff/sampling.hpp"

namespace uff {

std::vector<FactorState> tomography_states(int d) {
    if (d < 1) throw InputError("tomography_states: dimension must be positive");
    std::vector<FactorState> probes;
    probes.reserve(static_cast<std::size_t>(d) * static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) probes.push_back(FactorState::basis_vector(d, i));
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            std::vector<Complex> amps(static_cast<std::size_t>(d), Complex(0.0, 0.0));
            amps[static_cast<std::size_t>(i)] = inv_sqrt2;
            amps[static_cast<std::size_t>(j)] = inv_sqrt2;
            probes.push_back(FactorState::from_amplitudes(std::move(amps)));
        }
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            std::vector<Complex> amps(static_cast<std::size_t>(d), Complex(0.0, 0.0));
            amps[static_cast<std::size_t>(i)] = inv_sqrt2;
            amps[static_cast<std::size_t>(j)] = Complex(0.0, inv_sqrt2);
            probes.push_back(FactorState::from_amplitudes(std::move(amps)));
        }
    }
    return probes;
}

namespace {

HermitianOperator reconstruct_impl(const std::function<double(const FactorState&)>& oracle,
                                   int d, std::uint64_t check_seed, double* residual_out) {
    if (d < 1) throw InputError("reconstruct_operator: dimension must be positive");
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    std::vector<double> diag(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        diag[static_cast<std::size_t>(i)] = oracle(FactorState::basis_vector(d, i));
        a(i, i) = diag[static_cast<std::size_t>(i)];
    }
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            std::vector<Complex> plus(static_cast<std::size_t>(d), Complex(0.0, 0.0));
            plus[static_cast<std::size_t>(i)] = inv_sqrt2;
            plus[static_cast<std::size_t>(j)] = inv_sqrt2;
            std::vector<Complex> phased(static_cast<std::size_t>(d), Complex(0.0, 0.0));
            phased[static_cast<std::size_t>(i)] = inv_sqrt2;
            phased[static_cast<std::size_t>(j)] = Complex(0.0, inv_sqrt2);

            const double half_trace =
                (diag[static_cast<std::size_t>(i)] + diag[static_cast<std::size_t>(j)]) / 2.0;
            const double re =
                oracle(FactorState::from_amplitudes(std::move(plus))) - half_trace;
            const double im =
                half_trace - oracle(FactorState::from_amplitudes(std::move(phased)));
            a(i, j) = Complex(re, im);
            a(j, i) = Complex(re, -im);
        }
    }
    HermitianOperator result(std::move(a));

    // post-hoc form check on fresh states
    Rng check(check_seed);
    double max_residual = 0.0;
    for (int t = 0; t < 100; ++t) {
        const FactorState u = random_unit_factor(check, d);
        const double residual = std::abs(oracle(u) - gleason_eval(result, u));
        max_residual = std::max(max_residual, residual);
    }
    if (residual_out != nullptr) *residual_out = max_residual;
    if (max_residual > 1e-6) {
        throw NotAForm("oracle is not a quadratic form: residual " +
                       std::to_string(max_residual) + " on fresh states");
    }
    return result;
}

} // namespace

HermitianOperator reconstruct_operator(const std::function<double(const FactorState&)>& oracle,
                                       int d, std::uint64_t check_seed) {
    return reconstruct_impl(oracle, d, check_seed, nullptr);
}

HermitianOperator reconstruct_operator_least_squares(
    const std::function<double(const FactorState&)>& oracle, int d, int num_probes, Rng& rng) {
    const int params = d * d;
    if (num_probes < params) {
        throw InputError("least-squares reconstruction needs at least d^2 probes");
    }
    Eigen::MatrixXd design(num_probes, params);
    Eigen::VectorXd values(num_probes);
    std::vector<FactorState> probes;
    probes.reserve(static_cast<std::size_t>(num_probes));
    for (int m = 0; m < num_probes; ++m) {
        probes.push_back(random_unit_factor(rng, d));
    }
    for (int m = 0; m < num_probes; ++m) {
        const auto& u = probes[static_cast<std::size_t>(m)].amplitudes;
        int col = 0;
        for (int i = 0; i < d; ++i) {
            design(m, col++) = std::norm(u[static_cast<std::size_t>(i)]);
        }
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                const Complex cross =
                    std::conj(u[static_cast<std::size_t>(i)]) * u[static_cast<std::size_t>(j)];
                design(m, col++) = 2.0 * cross.real();
            }
        }
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) {
                const Complex cross =
                    std::conj(u[static_cast<std::size_t>(i)]) * u[static_cast<std::size_t>(j)];
                design(m, col++) = -2.0 * cross.imag();
            }
        }
        values(m) = oracle(probes[static_cast<std::size_t>(m)]);
    }
    const Eigen::VectorXd x =
        (design.transpose() * design).ldlt().solve(design.transpose() * values);

    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    int col = 0;
    for (int i = 0; i < d; ++i) a(i, i) = x(col++);
    std::vector<std::pair<int, int>> off;
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) off.emplace_back(i, j);
    }
    for (const auto& [i, j] : off) {
        a(i, j) += Complex(x(col), 0.0);
        a(j, i) += Complex(x(col), 0.0);
        ++col;
    }
    for (const auto& [i, j] : off) {
        a(i, j) += Complex(0.0, x(col));
        a(j, i) += Complex(0.0, -x(col));
        ++col;
    }
    return HermitianOperator(std::move(a));
}

PhiReconstruction reconstruct_phi_operators(const GeneralOracle& oracle, int k, int d,
                                            const std::vector<ProductState>& z_samples) {
    if (z_samples.empty()) {
        throw InputError("reconstruct_phi_operators needs at least one sample");
    }
    const std::size_t size = std::size_t{1} << k;
    std::vector<std::shared_ptr<OperatorPhiFamily::Table>> tables(size);
    for (auto& t : tables) t = std::make_shared<OperatorPhiFamily::Table>();

    PhiReconstruction out{OperatorPhiFamily::prf(k, d, 0), 0.0, 0.0, {}};
    for (const ProductState& z : z_samples) {
        if (z.factor_count() != k || !z.all_qubits()) {
            throw ShapeMismatch("reconstruct_phi_operators: sample needs k qubit factors");
        }
        if (k > 0 && z.flip_mask().bits != 0) {
            throw NotCanonical("reconstruct_phi_operators: samples must be fully canonical");
        }
        for (std::size_t mask = 0; mask < size; ++mask) {
            const SubsetMask J(mask);
            const auto form_oracle = [&](const FactorState& u) {
                double s = 0.0;
                for_each_subset(J, [&](SubsetMask L) {
                    s += oracle(apply_sigma_mask(z, L), u);
                });
                return s;
            };
            double residual = 0.0;
            const std::uint64_t check_seed = derive_seed(kFormCheckSeed, {mask});
            const HermitianOperator recovered =
                reconstruct_impl(form_oracle, d, check_seed, &residual);
            out.sample_residuals.push_back(residual);
            out.max_form_residual = std::max(out.max_form_residual, residual);

            const std::string key = coord_key(tau_project(z, J));
            auto [it, inserted] = tables[mask]->try_emplace(key, recovered);
            if (!inserted && it->second.frobenius_distance(recovered) > 1e-8) {
                throw InconsistentOracle(
                    "reconstruct_phi_operators: equal retained coordinates produced "
                    "operators differing in Frobenius norm");
            }
        }
    }
    out.family = OperatorPhiFamily::tabulated(k, d, std::move(tables));

    // round trip at the sampled tuples, all flip patterns, probe tails
    const std::vector<FactorState> probes = tomography_states(d);
    for (const ProductState& z : z_samples) {
        for (std::size_t mask = 0; mask < size; ++mask) {
            const ProductState flipped = apply_sigma_mask(z, SubsetMask(mask));
            for (const FactorState& u : probes) {
                const double diff =
                    std::abs(evaluate_general(out.family, flipped, u) - oracle(flipped, u));
                out.max_roundtrip_residual = std::max(out.max_roundtrip_residual, diff);
            }
        }
    }
    return out;
}

} // namespace uff
