#include "uff/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>

#include "uff/frame_function.hpp"
#include "uff/operator_frame.hpp"
#include "uff/product_state.hpp"
#include "uff/projective.hpp"
#include "uff/reconstruct.hpp"
#include "uff/rng.hpp"
#include "uff/sampling.hpp"
#include "uff/uob.hpp"

namespace uff {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_seconds(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

// ---------------------------------------------------------------------
// 1. Every antipodal pair {p, sigma p} meets the fundamental domain in
//    exactly one point, over 1e5 seeded samples kept 1e-9 off |z| = 1.
CriterionResult criterion_partition(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 1;
    r.name = "fundamental-domain-partition";
    r.threshold = 1.0;

    Rng rng(derive_seed(seed, {1}));
    const std::size_t trials = 100000;
    std::size_t split_ok = 0;
    for (std::size_t i = 0; i < trials; ++i) {
        ProjectivePoint p;
        switch (i % 16) {
        case 0:
            p = ProjectivePoint::infinity();
            break;
        case 1:
            p = ProjectivePoint(0.0);
            break;
        default:
            while (true) {
                const Complex z(5.0 * rng.uniform() - 2.5, 5.0 * rng.uniform() - 2.5);
                if (std::abs(std::abs(z) - 1.0) < 1e-9) continue;
                p = ProjectivePoint(z);
                break;
            }
        }
        const bool inside = in_fundamental_domain(p);
        const bool partner_inside = in_fundamental_domain(sigma_point(p));
        if (inside != partner_inside) ++split_ok;
    }
    r.seconds = elapsed_seconds(start);
    r.metric = static_cast<double>(split_ok) / static_cast<double>(trials);
    r.pass = split_ok == trials && r.seconds < 1.0;
    r.detail = std::to_string(split_ok) + "/" + std::to_string(trials) +
               " antipodal pairs split by the fundamental domain";
    return r;
}

// ---------------------------------------------------------------------
// 2. Scalar sum invariance: seeded families times UOBs from all three
//    generators, n = 1..6; max |sum f - c| <= 1e-9.
CriterionResult criterion_scalar_sums(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 2;
    r.name = "scalar-uob-sum-invariance";
    r.threshold = 1e-9;

    double max_residual = 0.0;
    bool all_valid = true;
    std::size_t pairs = 0;
    for (int n = 1; n <= 6; ++n) {
        std::vector<Uob> uobs;
        uobs.reserve(150);
        const std::vector<int> twos(static_cast<std::size_t>(n), 2);
        for (int gen = 0; gen < 3; ++gen) {
            for (int t = 0; t < 50; ++t) {
                Rng rng(derive_seed(seed, {2, static_cast<std::uint64_t>(n),
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
                if (!validate_uob(uob, 1e-9).pass) all_valid = false;
                uobs.push_back(std::move(uob));
            }
        }
        for (int f = 0; f < 50; ++f) {
            const double c =
                4.0 * word_to_unit(hash_words(seed, {2, static_cast<std::uint64_t>(n), 77,
                                                     static_cast<std::uint64_t>(f)})) -
                2.0;
            const FrameFunction ff(PhiFamily::prf(
                n,
                derive_seed(seed, {2, static_cast<std::uint64_t>(n), 88,
                                   static_cast<std::uint64_t>(f)}),
                c));
            for (const Uob& uob : uobs) {
                double sum = 0.0;
                for (const ProductState& s : uob.states) sum += ff.evaluate(s);
                max_residual = std::max(max_residual, std::abs(sum - c));
                ++pairs;
            }
        }
    }
    r.seconds = elapsed_seconds(start);
    r.metric = max_residual;
    r.pass = all_valid && max_residual <= r.threshold && r.seconds < 120.0;
    r.detail = "max |sum - c| = " + sci(max_residual) + " over " + std::to_string(pairs) +
               " family/basis pairs" + (all_valid ? "" : "; a generated basis failed validation");
    return r;
}

// ---------------------------------------------------------------------
// 3. Phi recovery round trip at sampled coordinates plus the subset
//    transforms against a naive quadratic-time oracle.
CriterionResult criterion_recovery_roundtrip(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 3;
    r.name = "phi-recovery-and-subset-transform-round-trip";
    r.threshold = 1e-10;

    const int n = 4;
    double max_recovery = 0.0;
    for (int f = 0; f < 50; ++f) {
        Rng rng(derive_seed(seed, {3, static_cast<std::uint64_t>(f)}));
        const double c = 4.0 * rng.uniform() - 2.0;
        const FrameFunction ff(
            PhiFamily::prf(n, derive_seed(seed, {3, static_cast<std::uint64_t>(f), 1}), c));

        std::vector<ProductState> samples;
        samples.reserve(25);
        for (int s = 0; s < 25; ++s) samples.push_back(random_canonical_state(rng, n));
        const FrameFunction recovered(recover_phi(
            [&](const ProductState& s) { return ff.evaluate(s); }, n, samples));

        for (int t = 0; t < 100; ++t) {
            const SubsetMask J(rng.below(std::uint64_t{1} << n));
            const ProductState& z = samples[rng.below(samples.size())];
            const ProductState state = apply_sigma_mask(z, J);
            max_recovery = std::max(
                max_recovery, std::abs(recovered.evaluate(state) - ff.evaluate(state)));
        }
    }

    double max_transform = 0.0;
    for (int m = 1; m <= 8; ++m) {
        Rng rng(derive_seed(seed, {3, 200, static_cast<std::uint64_t>(m)}));
        const std::size_t size = std::size_t{1} << m;
        std::vector<double> alpha(size);
        for (double& a : alpha) a = rng.uniform();

        const std::vector<double> beta = mobius_accumulate(alpha, m);
        // naive O(4^n) oracle
        for (std::size_t J = 0; J < size; ++J) {
            double naive = 0.0;
            for (std::size_t L = 0; L < size; ++L) {
                if ((L & J) == L) naive += alpha[L];
            }
            max_transform = std::max(max_transform, std::abs(naive - beta[J]));
        }
        const std::vector<double> back = mobius_invert(beta, m);
        for (std::size_t J = 0; J < size; ++J) {
            max_transform = std::max(max_transform, std::abs(back[J] - alpha[J]));
            double naive = 0.0;
            for (std::size_t L = 0; L < size; ++L) {
                if ((L & J) == L) {
                    const int sign = (__builtin_popcountll(J) - __builtin_popcountll(L)) & 1;
                    naive += sign ? -beta[L] : beta[L];
                }
            }
            max_transform = std::max(max_transform, std::abs(naive - back[J]));
        }
    }

    r.seconds = elapsed_seconds(start);
    r.metric = max_recovery;
    r.pass = max_recovery <= 1e-10 && max_transform <= 1e-12 && r.seconds < 120.0;
    r.detail = "max recovery deviation " + sci(max_recovery) + "; max transform deviation " +
               sci(max_transform) + " (cap 1e-12)";
    return r;
}

// non-generic by construction: the two subtrees of the root fix the
// remaining qubits in opposite orders
SplitTree non_generic_tree(int n, Rng& rng) {
    SplitTree t;
    t.n_qubits = n;
    std::function<int(std::vector<int>)> chain = [&](std::vector<int> order) -> int {
        if (order.empty()) return t.add_leaf(0);
        const int qubit = order.front();
        order.erase(order.begin());
        const CanonicalQubit point = random_interior_point(rng);
        const int left = chain(order);
        const int right = chain(order);
        return t.add_split(qubit, point, left, right);
    };
    std::vector<int> ascending;
    std::vector<int> descending;
    for (int q = 2; q <= n; ++q) ascending.push_back(q);
    for (int q = n; q >= 2; --q) descending.push_back(q);
    const int left = chain(ascending);
    const int right = chain(descending);
    t.root = t.add_split(1, random_interior_point(rng), left, right);
    return t;
}

// ---------------------------------------------------------------------
// 4. Functions built from the subset formula alone sum to c on split
//    trees outside the generic family, n = 3 and 4.
CriterionResult criterion_non_generic(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 4;
    r.name = "non-generic-split-tree-coverage";
    r.threshold = 1e-10;

    double max_residual = 0.0;
    bool all_valid = true;
    for (int n = 3; n <= 4; ++n) {
        std::vector<Uob> uobs;
        uobs.reserve(50);
        for (int t = 0; t < 50; ++t) {
            Rng rng(derive_seed(seed, {4, static_cast<std::uint64_t>(n),
                                       static_cast<std::uint64_t>(t)}));
            const SplitTree tree =
                (t % 2 == 0) ? non_generic_tree(n, rng) : generate_split(n, {}, rng);
            Uob uob = expand_tree(tree);
            if (!validate_uob(uob, 1e-9).pass) all_valid = false;
            uobs.push_back(std::move(uob));
        }
        for (int f = 0; f < 50; ++f) {
            const double c =
                4.0 * word_to_unit(hash_words(seed, {4, static_cast<std::uint64_t>(n), 7,
                                                     static_cast<std::uint64_t>(f)})) -
                2.0;
            const FrameFunction ff(PhiFamily::prf(
                n,
                derive_seed(seed, {4, static_cast<std::uint64_t>(n), 9,
                                   static_cast<std::uint64_t>(f)}),
                c));
            for (const Uob& uob : uobs) {
                double sum = 0.0;
                for (const ProductState& s : uob.states) sum += ff.evaluate(s);
                max_residual = std::max(max_residual, std::abs(sum - c));
            }
        }
    }
    r.seconds = elapsed_seconds(start);
    r.metric = max_residual;
    r.pass = all_valid && max_residual <= r.threshold && r.seconds < 120.0;
    r.detail = "max |sum - c| = " + sci(max_residual) + " on non-generic trees, n = 3, 4";
    return r;
}

// ---------------------------------------------------------------------
// 5. Operator-valued sum invariance on mixed signatures.
CriterionResult criterion_operator_sums(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 5;
    r.name = "operator-valued-uob-sum";
    r.threshold = 1e-9;

    double max_residual = 0.0;
    const int tail_dims[] = {1, 3, 4};
    for (int k = 1; k <= 3; ++k) {
        for (const int d : tail_dims) {
            for (int f = 0; f < 20; ++f) {
                const OperatorPhiFamily family = OperatorPhiFamily::prf(
                    k, d,
                    derive_seed(seed, {5, static_cast<std::uint64_t>(k),
                                       static_cast<std::uint64_t>(d),
                                       static_cast<std::uint64_t>(f)}));
                for (int t = 0; t < 50; ++t) {
                    Rng rng(derive_seed(seed, {5, static_cast<std::uint64_t>(k),
                                               static_cast<std::uint64_t>(d),
                                               static_cast<std::uint64_t>(f),
                                               static_cast<std::uint64_t>(t)}));
                    const std::vector<int> tail =
                        d == 1 ? std::vector<int>{} : std::vector<int>{d};
                    const Uob uob = expand_tree(generate_split(k, tail, rng));
                    const SumReport report = verify_general(family, uob);
                    max_residual = std::max(max_residual, report.residual);
                }
            }
        }
    }
    r.seconds = elapsed_seconds(start);
    r.metric = max_residual;
    r.pass = max_residual <= r.threshold && r.seconds < 120.0;
    r.detail = "max |sum - tr phi(omega)| = " + sci(max_residual) +
               " over k in 1..3, d in {1,3,4}";
    return r;
}

// ---------------------------------------------------------------------
// 6. Reconstruction round trips: single operators from quadratic-form
//    oracles, then a full operator family from a black-box function.
CriterionResult criterion_reconstruction(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 6;
    r.name = "operator-reconstruction-round-trip";
    r.threshold = 1e-9;

    double max_frobenius = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const int d = 1 + (t % 8);
        Rng rng(derive_seed(seed, {6, static_cast<std::uint64_t>(t)}));
        const HermitianOperator target = HermitianOperator::random(d, rng);
        const HermitianOperator recovered = reconstruct_operator(
            [&](const FactorState& u) { return gleason_eval(target, u); }, d,
            derive_seed(seed, {6, static_cast<std::uint64_t>(t), 1}));
        max_frobenius = std::max(max_frobenius, recovered.frobenius_distance(target));
    }

    const int k = 2;
    const int d = 3;
    Rng rng(derive_seed(seed, {6, 5000}));
    const OperatorPhiFamily source =
        OperatorPhiFamily::prf(k, d, derive_seed(seed, {6, 5001}));
    const GeneralOracle oracle = [&](const ProductState& z, const FactorState& u) {
        return evaluate_general(source, z, u);
    };
    std::vector<ProductState> samples;
    for (int s = 0; s < 10; ++s) samples.push_back(random_canonical_state(rng, k));
    const PhiReconstruction recon = reconstruct_phi_operators(oracle, k, d, samples);

    double max_fresh = 0.0;
    for (int t = 0; t < 1000; ++t) {
        const SubsetMask J(rng.below(std::uint64_t{1} << k));
        const ProductState state = apply_sigma_mask(samples[rng.below(samples.size())], J);
        const FactorState u = random_unit_factor(rng, d);
        max_fresh = std::max(
            max_fresh, std::abs(evaluate_general(recon.family, state, u) - oracle(state, u)));
    }

    r.seconds = elapsed_seconds(start);
    r.metric = max_frobenius;
    r.pass = max_frobenius <= 1e-9 && max_fresh <= 1e-8 && r.seconds < 120.0;
    r.detail = "max Frobenius error " + sci(max_frobenius) + " over 1000 targets (d <= 8); " +
               "family recovery at 1000 fresh inputs deviates by " + sci(max_fresh) +
               " (cap 1e-8)";
    return r;
}

// ---------------------------------------------------------------------
// 7. The nonnegativity scan flags a family with a negative cell and
//    passes the uniform one.
CriterionResult criterion_nonneg_flags(std::uint64_t seed) {
    const auto start = Clock::now();
    CriterionResult r;
    r.id = 7;
    r.name = "nonnegativity-scan-flags";
    r.threshold = 0.0;

    const FrameFunction violating(PhiFamily::constants(2, {0.9, 0.2, 0.2}, 1.0));
    Rng rng1(derive_seed(seed, {7, 1}));
    const NonnegReport violated = scan_nonneg(violating, 2000, rng1);
    const bool caught = violated.sampled && !violated.definition1_candidate &&
                        violated.min_value < 0.0 && violated.fraction_negative > 0.0;

    const FrameFunction uniform(PhiFamily::uniform(2));
    Rng rng2(derive_seed(seed, {7, 2}));
    const NonnegReport clean = scan_nonneg(uniform, 2000, rng2);
    const bool passed = clean.sampled && clean.definition1_candidate &&
                        std::abs(clean.min_value - 0.25) <= 1e-15 &&
                        clean.fraction_negative == 0.0;

    r.seconds = elapsed_seconds(start);
    r.metric = violated.min_value;
    r.pass = caught && passed;
    r.detail = "violating family minimum " + sci(violated.min_value) +
               " flagged; uniform family minimum " + sci(clean.min_value) + " accepted";
    return r;
}

} // namespace

bool AcceptanceReport::all_pass() const {
    for (const CriterionResult& c : criteria) {
        if (!c.pass) return false;
    }
    return !criteria.empty();
}

AcceptanceReport run_criteria(std::uint64_t seed) {
    AcceptanceReport report;
    report.seed = seed;
    report.criteria.push_back(criterion_partition(seed));
    report.criteria.push_back(criterion_scalar_sums(seed));
    report.criteria.push_back(criterion_recovery_roundtrip(seed));
    report.criteria.push_back(criterion_non_generic(seed));
    report.criteria.push_back(criterion_operator_sums(seed));
    report.criteria.push_back(criterion_reconstruction(seed));
    report.criteria.push_back(criterion_nonneg_flags(seed));
    return report;
}

nlohmann::json report_to_json(const AcceptanceReport& report) {
    nlohmann::json criteria = nlohmann::json::array();
    for (const CriterionResult& c : report.criteria) {
        criteria.push_back(nlohmann::json{{"id", c.id},
                                          {"name", c.name},
                                          {"pass", c.pass},
                                          {"metric", c.metric},
                                          {"threshold", c.threshold},
                                          {"detail", c.detail}});
    }
    return nlohmann::json{{"format", 1},
                          {"seed", report.seed},
                          {"criteria", criteria},
                          {"all_pass", report.all_pass()}};
}

AcceptanceReport run_full_acceptance(std::uint64_t seed) {
    const auto start = Clock::now();
    AcceptanceReport first = run_criteria(seed);
    const AcceptanceReport second = run_criteria(seed);
    const std::string bytes_first = report_to_json(first).dump(2);
    const std::string bytes_second = report_to_json(second).dump(2);

    CriterionResult c8;
    c8.id = 8;
    c8.name = "selftest-determinism";
    c8.pass = bytes_first == bytes_second;
    c8.metric = c8.pass ? 1.0 : 0.0;
    c8.threshold = 1.0;
    c8.detail = c8.pass ? "two runs with the same seed produced identical report bytes"
                        : "report bytes differ between runs";
    c8.seconds = elapsed_seconds(start);
    first.criteria.push_back(c8);
    return first;
}

void print_report(const AcceptanceReport& report, std::ostream& out) {
    for (const CriterionResult& c : report.criteria) {
        char line[512];
        std::snprintf(line, sizeof(line), "%s  [%d] %-45s metric=%.3e  (%s)  [%.2fs]",
                      c.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), c.metric,
                      c.detail.c_str(), c.seconds);
        out << line << "\n";
    }
    out << (report.all_pass() ? "acceptance: all criteria passed"
                              : "acceptance: at least one criterion FAILED")
        << " (seed " << report.seed << ")\n";
}

} // namespace uff
