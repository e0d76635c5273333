#include <doctest.h>

#include <cmath>
#include <functional>
#include <string>

#include "uff/json_io.hpp"
#include "uff/rng.hpp"
#include "uff/sampling.hpp"

using namespace uff;

namespace {

std::string message_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("projective point and canonical qubit round trips") {
    const ProjectivePoint inf = ProjectivePoint::infinity();
    CHECK(decode_projective_point(encode(inf), "p") == inf);

    const ProjectivePoint p(0.25, -1.5);
    CHECK(decode_projective_point(encode(p), "p") == p);

    Rng rng(3);
    CanonicalQubit q = random_interior_point(rng);
    q.flipped = true;
    const CanonicalQubit back = decode_canonical_qubit(encode(q), "q");
    CHECK(back.base == q.base);
    CHECK(back.flipped == q.flipped);
}

TEST_CASE("subset masks serialize as sorted 1-based indices") {
    const Json j = encode(SubsetMask::of({3, 1}));
    REQUIRE(j.is_array());
    CHECK(j[0] == 1);
    CHECK(j[1] == 3);
    CHECK(decode_subset_mask(j, "m") == SubsetMask::of({1, 3}));
    CHECK_THROWS_AS((void)decode_subset_mask(Json::array({0}), "m"), InputError);
}

TEST_CASE("product states keep canonical coordinates bit-exact") {
    Rng rng(5);
    const ProductState state = random_qubit_state(rng, 3);
    const ProductState back = decode_product_state(encode(state), "s");
    for (int i = 0; i < 3; ++i) {
        const std::size_t f = static_cast<std::size_t>(i);
        CHECK(back.factors[f].canonical->base == state.factors[f].canonical->base);
        CHECK(back.factors[f].canonical->flipped == state.factors[f].canonical->flipped);
        CHECK(back.factors[f].amplitudes == state.factors[f].amplitudes);
    }

    // without the stored pair the coordinates are recomputed
    Json stripped = encode(state);
    for (auto& factor : stripped["factors"]) factor.erase("canonical");
    const ProductState recomputed = decode_product_state(stripped, "s");
    for (int i = 0; i < 3; ++i) {
        const std::size_t f = static_cast<std::size_t>(i);
        CHECK(std::abs(recomputed.factors[f].canonical->base -
                       state.factors[f].canonical->base) <= 1e-12);
        CHECK(recomputed.factors[f].canonical->flipped ==
              state.factors[f].canonical->flipped);
    }
}

TEST_CASE("uob and split tree round trips") {
    Rng rng(7);
    const SplitTree tree = generate_split(3, {3}, rng);
    const SplitTree tree_back = decode_split_tree(encode(tree), "t");
    const Uob original = expand_tree(tree);
    const Uob rebuilt = expand_tree(tree_back);
    REQUIRE(original.states.size() == rebuilt.states.size());
    for (std::size_t s = 0; s < original.states.size(); ++s) {
        for (std::size_t f = 0; f < original.states[s].factors.size(); ++f) {
            CHECK(original.states[s].factors[f].amplitudes ==
                  rebuilt.states[s].factors[f].amplitudes);
        }
    }

    const Uob uob_back = decode_uob(encode(original), "u");
    CHECK(uob_back.signature == original.signature);
    CHECK(validate_uob(uob_back, 1e-9).pass);

    // stable bytes: encoding twice gives identical text
    CHECK(to_stable_string(encode(original)) == to_stable_string(encode(original)));
}

TEST_CASE("hermitian operator round trip") {
    Rng rng(9);
    const HermitianOperator h = HermitianOperator::random(4, rng);
    const HermitianOperator back = decode_hermitian(encode(h), "h");
    CHECK(back.frobenius_distance(h) == 0.0);

    Json bad = encode(h);
    bad["entries"][0][1][0] = bad["entries"][0][1][0].get<double>() + 0.5;
    CHECK_THROWS_AS((void)decode_hermitian(bad, "h"), InputError);
}

TEST_CASE("phi family round trips preserve evaluation bits") {
    Rng rng(11);
    const std::vector<ProductState> states = {random_qubit_state(rng, 3),
                                              random_qubit_state(rng, 3)};

    const auto check_roundtrip = [&](const PhiFamily& fam) {
        const PhiFamily back = decode_phi_family(encode(fam), "fam");
        const FrameFunction a(fam);
        const FrameFunction b(back);
        for (const ProductState& s : states) CHECK(a.evaluate(s) == b.evaluate(s));
    };
    check_roundtrip(PhiFamily::prf(3, 1234, 0.75));
    check_roundtrip(PhiFamily::constants(3, std::vector<double>(7, 0.125), 1.0));
    check_roundtrip(PhiFamily::polynomial(3, PolynomialParams{0.1, 0.2, -0.3, 0.4}, 2.0));

    CHECK_THROWS_AS(
        (void)encode(PhiFamily::from_hook(
            2, [](SubsetMask, std::span<const Complex>) { return 0.0; }, 1.0)),
        InputError);
}

TEST_CASE("tabulated recovery files survive the round trip") {
    const FrameFunction source(PhiFamily::prf(2, 13, 0.5));
    Rng rng(13);
    std::vector<ProductState> samples;
    for (int i = 0; i < 4; ++i) samples.push_back(random_canonical_state(rng, 2));
    const PhiFamily recovered = recover_phi(
        [&](const ProductState& s) { return source.evaluate(s); }, 2, samples);

    const PhiFamily back = decode_phi_family(encode(recovered), "rec");
    const FrameFunction rebuilt(back);
    for (const ProductState& z : samples) {
        for (std::uint64_t mask = 0; mask < 4; ++mask) {
            const ProductState state = apply_sigma_mask(z, SubsetMask(mask));
            CHECK(rebuilt.evaluate(state) == FrameFunction(recovered).evaluate(state));
        }
    }
}

TEST_CASE("operator family round trips") {
    const OperatorPhiFamily prf = OperatorPhiFamily::prf(2, 3, 17, true);
    const OperatorPhiFamily prf_back = decode_operator_phi_family(encode(prf), "f");
    Rng rng(17);
    const ProductState z = random_canonical_state(rng, 2);
    const std::vector<Complex> coords = tau_project(z, SubsetMask::empty());
    CHECK(prf.phi(SubsetMask::empty(), coords)
              .frobenius_distance(prf_back.phi(SubsetMask::empty(), coords)) == 0.0);
    CHECK(prf.trace_at_omega() == prf_back.trace_at_omega());

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(3, 3) * 0.4;
    const OperatorPhiFamily constant = OperatorPhiFamily::constant(
        1, 3, {HermitianOperator(m), HermitianOperator(m * 0.5)});
    const OperatorPhiFamily constant_back =
        decode_operator_phi_family(encode(constant), "c");
    CHECK(constant_back.trace_at_omega() == doctest::Approx(0.6));
}

TEST_CASE("decoders name the offending field") {
    const std::string no_states =
        message_of([] { (void)decode_uob(Json{{"signature", Json::array({2})}}, "u.json"); });
    CHECK(no_states.find("u.json") != std::string::npos);
    CHECK(no_states.find("states") != std::string::npos);

    Json state = encode(FactorState::basis_vector(2, 0));
    state["amps"][0][0] = 0.2; // breaks the unit norm
    const std::string bad_norm = message_of([&] {
        (void)decode_product_state(Json{{"factors", Json::array({state})}}, "s.json");
    });
    CHECK(bad_norm.find("s.json.factors[0].amps") != std::string::npos);

    const std::string bad_dim = message_of([] {
        (void)decode_factor_state(
            Json{{"dim", 3}, {"amps", Json::array({Json::array({1.0, 0.0})})}}, "f");
    });
    CHECK(bad_dim.find("f.amps") != std::string::npos);
}
