#include <doctest.h>

#include <cmath>
#include <vector>

#include "uff/frame_function.hpp"
#include "uff/rng.hpp"
#include "uff/sampling.hpp"
#include "uff/uob.hpp"

using namespace uff;

namespace {

// quadratic-time reference for the subset transforms
std::vector<double> naive_accumulate(const std::vector<double>& alpha) {
    std::vector<double> beta(alpha.size(), 0.0);
    for (std::size_t J = 0; J < alpha.size(); ++J) {
        for (std::size_t L = 0; L < alpha.size(); ++L) {
            if ((L & J) == L) beta[J] += alpha[L];
        }
    }
    return beta;
}

std::vector<double> naive_invert(const std::vector<double>& beta) {
    std::vector<double> alpha(beta.size(), 0.0);
    for (std::size_t J = 0; J < beta.size(); ++J) {
        for (std::size_t L = 0; L < beta.size(); ++L) {
            if ((L & J) == L) {
                const int sign = (__builtin_popcountll(J) - __builtin_popcountll(L)) & 1;
                alpha[J] += sign ? -beta[L] : beta[L];
            }
        }
    }
    return alpha;
}

} // namespace

TEST_CASE("single qubit evaluation is forced by the orthogonal pair") {
    const FrameFunction ff(PhiFamily::constants(1, {0.3}, 1.0));
    Rng rng(3);
    const ProductState a = random_canonical_state(rng, 1);
    CHECK(ff.evaluate(a) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(ff.evaluate(apply_sigma_mask(a, SubsetMask::of({1}))) ==
          doctest::Approx(0.7).epsilon(1e-14));
}

TEST_CASE("two qubit constants expand by inclusion-exclusion") {
    // phi_{} = 0.1, phi_{1} = 0.2, phi_{2} = 0.3, c = 1 gives the cell
    // values 0.1, 0.1, 0.2, 0.6 which sum to 1
    const FrameFunction ff(PhiFamily::constants(2, {0.1, 0.2, 0.3}, 1.0));
    Rng rng(5);
    const ProductState z = random_canonical_state(rng, 2);

    const double f0 = ff.evaluate(z);
    const double f1 = ff.evaluate(apply_sigma_mask(z, SubsetMask::of({1})));
    const double f2 = ff.evaluate(apply_sigma_mask(z, SubsetMask::of({2})));
    const double f12 = ff.evaluate(apply_sigma_mask(z, SubsetMask::of({1, 2})));
    CHECK(f0 == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(f1 == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(f2 == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(f12 == doctest::Approx(0.6).epsilon(1e-12));
    CHECK(f0 + f1 + f2 + f12 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("seeded families are bit-deterministic") {
    const FrameFunction first(PhiFamily::prf(3, 99, 1.0));
    const FrameFunction second(PhiFamily::prf(3, 99, 1.0));
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const ProductState s = random_qubit_state(rng, 3);
        CHECK(first.evaluate(s) == second.evaluate(s));
    }
}

TEST_CASE("seeded family values actually spread over the unit interval") {
    const PhiFamily fam = PhiFamily::prf(3, 101, 1.0);
    Rng rng(101);
    double lo = 1.0;
    double hi = 0.0;
    for (int i = 0; i < 200; ++i) {
        const ProductState z = random_canonical_state(rng, 3);
        const SubsetMask J(rng.below(7)); // proper subsets only
        const double v = fam.eval_phi(J, tau_project(z, J));
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        CHECK(v >= 0.0);
        CHECK(v < 1.0);
    }
    CHECK(lo < 0.2);
    CHECK(hi > 0.8);
}

TEST_CASE("evaluation rejects non-qubit factors") {
    const FrameFunction ff(PhiFamily::prf(2, 1, 1.0));
    ProductState bad;
    bad.factors.push_back(FactorState::basis_vector(2, 0));
    bad.factors.push_back(FactorState::basis_vector(3, 0));
    CHECK_THROWS_AS((void)ff.evaluate(bad), NonQubitFactor);
}

TEST_CASE("partial sums recover phi") {
    const FrameFunction constants(PhiFamily::constants(2, {0.1, 0.2, 0.3}, 1.0));
    Rng rng(11);
    const ProductState z = random_canonical_state(rng, 2);

    CHECK(constants.partial_sum(z, SubsetMask::empty()) == constants.evaluate(z));
    CHECK(constants.partial_sum(z, SubsetMask::of({1})) ==
          doctest::Approx(0.2).epsilon(1e-12));
    CHECK(constants.partial_sum(z, SubsetMask::full(2)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    const FrameFunction prf(PhiFamily::prf(4, 17, -0.75));
    const ProductState w = random_canonical_state(rng, 4);
    CHECK(prf.partial_sum(w, SubsetMask::full(4)) == doctest::Approx(-0.75).epsilon(1e-12));
    CHECK_THROWS_AS((void)prf.partial_sum(apply_sigma_mask(w, SubsetMask::of({2})),
                                          SubsetMask::of({1})),
                    NotCanonical);
}

TEST_CASE("partial sums depend only on the retained coordinates") {
    const FrameFunction ff(PhiFamily::prf(4, 23, 1.0));
    Rng rng(13);
    const SubsetMask J = SubsetMask::of({2, 4});
    ProductState z = random_canonical_state(rng, 4);
    ProductState moved = z;
    // change the coordinates inside J, keep those outside bit-identical
    moved.factors[1] = FactorState::from_canonical(random_interior_point(rng));
    moved.factors[3] = FactorState::from_canonical(random_interior_point(rng));
    CHECK(std::abs(ff.partial_sum(z, J) - ff.partial_sum(moved, J)) <= 1e-10);
}

TEST_CASE("subset transforms") {
    const std::vector<double> zeros(16, 0.0);
    CHECK(mobius_accumulate(zeros, 4) == zeros);

    std::vector<double> indicator(16, 0.0);
    indicator[0] = 1.0;
    const std::vector<double> ones = mobius_accumulate(indicator, 4);
    for (double v : ones) CHECK(v == 1.0);
    CHECK(mobius_invert(ones, 4) == indicator);

    // the two qubit constants example in table form
    const std::vector<double> beta{0.1, 0.2, 0.3, 1.0};
    const std::vector<double> alpha = mobius_invert(beta, 2);
    CHECK(alpha[0] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(alpha[1] == doctest::Approx(0.1).epsilon(1e-14));
    CHECK(alpha[2] == doctest::Approx(0.2).epsilon(1e-14));
    CHECK(alpha[3] == doctest::Approx(0.6).epsilon(1e-14));

    CHECK_THROWS_AS((void)mobius_accumulate(std::vector<double>(2, 0.0), 25), TooLarge);
    CHECK_THROWS_AS((void)mobius_invert(std::vector<double>(3, 0.0), 2), ShapeMismatch);
}

TEST_CASE("fast transforms match the naive reference") {
    for (int n = 1; n <= 8; ++n) {
        Rng rng(derive_seed(29, {static_cast<std::uint64_t>(n)}));
        std::vector<double> alpha(std::size_t{1} << n);
        for (double& a : alpha) a = rng.uniform();
        const std::vector<double> beta = mobius_accumulate(alpha, n);
        const std::vector<double> beta_ref = naive_accumulate(alpha);
        const std::vector<double> back = mobius_invert(beta, n);
        const std::vector<double> back_ref = naive_invert(beta);
        for (std::size_t m = 0; m < alpha.size(); ++m) {
            CHECK(std::abs(beta[m] - beta_ref[m]) <= 1e-12);
            CHECK(std::abs(back[m] - alpha[m]) <= 1e-12);
            CHECK(std::abs(back[m] - back_ref[m]) <= 1e-12);
        }
    }
    // larger round trip
    Rng rng(31);
    std::vector<double> alpha(1 << 10);
    for (double& a : alpha) a = rng.uniform();
    const std::vector<double> round = mobius_invert(mobius_accumulate(alpha, 10), 10);
    for (std::size_t m = 0; m < alpha.size(); ++m) {
        CHECK(std::abs(round[m] - alpha[m]) <= 1e-10);
    }
}

TEST_CASE("recover_phi round trips a seeded family") {
    const FrameFunction source(PhiFamily::prf(3, 37, 0.4));
    Rng rng(37);
    std::vector<ProductState> samples;
    for (int i = 0; i < 20; ++i) samples.push_back(random_canonical_state(rng, 3));

    const PhiFamily recovered = recover_phi(
        [&](const ProductState& s) { return source.evaluate(s); }, 3, samples);
    CHECK(recovered.c() == doctest::Approx(0.4).epsilon(1e-12));

    const FrameFunction rebuilt(recovered);
    for (const ProductState& z : samples) {
        for (std::uint64_t mask = 0; mask < 8; ++mask) {
            const ProductState state = apply_sigma_mask(z, SubsetMask(mask));
            CHECK(std::abs(rebuilt.evaluate(state) - source.evaluate(state)) <= 1e-10);
        }
    }
}

TEST_CASE("recover_phi of the constant oracle gives the binomial stack") {
    const int n = 3;
    Rng rng(41);
    std::vector<ProductState> samples;
    for (int i = 0; i < 5; ++i) samples.push_back(random_canonical_state(rng, n));
    const PhiFamily recovered =
        recover_phi([&](const ProductState&) { return 1.0 / 8.0; }, n, samples);
    CHECK(recovered.c() == doctest::Approx(1.0).epsilon(1e-14));
    for (std::uint64_t mask = 0; mask + 1 < 8; ++mask) {
        const SubsetMask J(mask);
        const std::vector<Complex> coords = tau_project(samples[0], J);
        const double expected = std::ldexp(1.0, J.count() - n); // 2^(|J|-n)
        CHECK(recovered.eval_phi(J, coords) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("recover_phi rejects oracles that are not frame functions") {
    Rng rng(43);
    std::vector<ProductState> samples;
    for (int i = 0; i < 4; ++i) samples.push_back(random_canonical_state(rng, 1));
    // f(a) + f(sigma a) varies with a, violating the fixed-sum hypothesis
    const ScalarOracle oracle = [](const ProductState& s) {
        if (s.factors[0].canonical->flipped) {
            return std::norm(s.factors[0].canonical->base);
        }
        return 0.3;
    };
    CHECK_THROWS_AS((void)recover_phi(oracle, 1, samples), InconsistentOracle);
}

TEST_CASE("verify_sum") {
    const FrameFunction constants(PhiFamily::constants(2, {0.1, 0.2, 0.3}, 1.0));
    const SumReport computational = verify_sum(constants, computational_basis({2, 2}));
    CHECK(computational.residual <= 1e-12);

    const FrameFunction flat(PhiFamily::uniform(2));
    const SumReport uniform_report = verify_sum(flat, computational_basis({2, 2}));
    CHECK(uniform_report.sum == doctest::Approx(1.0).epsilon(1e-14));

    Uob broken = computational_basis({2, 2});
    broken.states.pop_back();
    CHECK_THROWS_AS((void)verify_sum(constants, broken), InvalidUob);

    // headline property at n = 5 on split trees
    const FrameFunction prf(PhiFamily::prf(5, 47, 1.0));
    double max_residual = 0.0;
    for (int t = 0; t < 100; ++t) {
        Rng rng(derive_seed(47, {static_cast<std::uint64_t>(t)}));
        const SumReport report = verify_sum(prf, expand_tree(generate_split(5, {}, rng)));
        max_residual = std::max(max_residual, report.residual);
    }
    CHECK(max_residual <= 1e-9);
}

TEST_CASE("sum invariance holds for every generator at scale") {
    for (int n = 1; n <= 6; ++n) {
        const double bound = std::ldexp(1e-12, n); // 2^n * 1e-12
        std::vector<Uob> uobs;
        uobs.reserve(300);
        const std::vector<int> twos(static_cast<std::size_t>(n), 2);
        for (int gen = 0; gen < 3; ++gen) {
            for (int t = 0; t < 100; ++t) {
                Rng rng(derive_seed(53, {static_cast<std::uint64_t>(n),
                                         static_cast<std::uint64_t>(gen),
                                         static_cast<std::uint64_t>(t)}));
                Uob uob;
                if (gen == 0) {
                    uob = generate_product_basis(twos, rng);
                } else if (gen == 1) {
                    uob = expand_tree(generate_generic(n, rng));
                } else {
                    uob = expand_tree(generate_split(n, {}, rng));
                }
                REQUIRE(validate_uob(uob, 1e-9).pass);
                uobs.push_back(std::move(uob));
            }
        }
        double max_residual = 0.0;
        for (int f = 0; f < 100; ++f) {
            const double c =
                2.0 * word_to_unit(hash_words(59, {static_cast<std::uint64_t>(n),
                                                   static_cast<std::uint64_t>(f)})) -
                1.0;
            const FrameFunction ff(PhiFamily::prf(
                n, derive_seed(59, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(f)}),
                c));
            for (const Uob& uob : uobs) {
                double sum = 0.0;
                for (const ProductState& s : uob.states) sum += ff.evaluate(s);
                max_residual = std::max(max_residual, std::abs(sum - c));
            }
        }
        CHECK(max_residual <= bound);
    }
}

TEST_CASE("evaluation agrees with a from-scratch reimplementation on smooth families") {
    // recompute (flip set, coordinates) from raw amplitudes and expand
    // the alternating sum over explicit mask enumeration; a polynomial
    // family keeps ulp-level coordinate differences harmless
    const int n = 3;
    const PolynomialParams params{0.3, 0.25, -0.5, 0.75};
    const double c = 1.1;
    const FrameFunction ff(PhiFamily::polynomial(n, params, c));

    const auto poly = [&](const std::vector<Complex>& coords) {
        double v = params.constant;
        for (const Complex& z : coords) {
            v += params.real_sum * z.real() + params.imag_sum * z.imag() +
                 params.abs2_sum * std::norm(z);
        }
        return v;
    };
    const auto naive_evaluate = [&](const ProductState& state) {
        std::uint64_t flips = 0;
        std::vector<Complex> bases;
        for (int i = 0; i < n; ++i) {
            const auto& amps = state.factors[static_cast<std::size_t>(i)].amplitudes;
            const CanonicalQubit q = canonicalize(vector_to_point({amps[0], amps[1]}));
            if (q.flipped) flips |= std::uint64_t{1} << i;
            bases.push_back(q.base);
        }
        double acc = 0.0;
        for (std::uint64_t L = 0; L < (std::uint64_t{1} << n); ++L) {
            if ((L & flips) != L) continue;
            std::vector<Complex> coords;
            for (int i = 0; i < n; ++i) {
                if (!((L >> i) & 1)) coords.push_back(bases[static_cast<std::size_t>(i)]);
            }
            const double term = L == (std::uint64_t{1} << n) - 1 ? c : poly(coords);
            const int sign =
                (__builtin_popcountll(flips) - __builtin_popcountll(L)) % 2 == 0 ? 1 : -1;
            acc += sign * term;
        }
        return acc;
    };

    Rng rng(103);
    for (int t = 0; t < 200; ++t) {
        const ProductState s = random_qubit_state(rng, n);
        // also strip the stored canonical pair to force recomputation
        ProductState raw;
        for (const FactorState& f : s.factors) {
            raw.factors.push_back(FactorState::from_amplitudes(f.amplitudes));
        }
        const double reference = naive_evaluate(s);
        CHECK(std::abs(ff.evaluate(s) - reference) <= 1e-9);
        CHECK(std::abs(ff.evaluate(raw) - reference) <= 1e-9);
    }
}

TEST_CASE("scan_nonneg flags and minima") {
    Rng rng1(61);
    const FrameFunction flat(PhiFamily::uniform(3));
    const NonnegReport clean = scan_nonneg(flat, 500, rng1);
    CHECK(clean.definition1_candidate);
    CHECK(clean.min_value == 0.125);
    CHECK(clean.fraction_negative == 0.0);

    Rng rng2(67);
    const FrameFunction violating(PhiFamily::constants(2, {0.9, 0.2, 0.2}, 1.0));
    const NonnegReport caught = scan_nonneg(violating, 500, rng2);
    CHECK_FALSE(caught.definition1_candidate);
    CHECK(caught.min_value == doctest::Approx(-0.7).epsilon(1e-12));
    CHECK(caught.fraction_negative > 0.0);
    REQUIRE(caught.argmin.has_value());
    CHECK(violating.evaluate(*caught.argmin) == caught.min_value);

    Rng rng3(71);
    const NonnegReport vacuous = scan_nonneg(violating, 0, rng3);
    CHECK_FALSE(vacuous.sampled);
    CHECK(vacuous.trials == 0);
}
