#include <doctest.h>

#include <algorithm>
#include <functional>

#include "uff/frame_function.hpp"
#include "uff/rng.hpp"
#include "uff/sampling.hpp"
#include "uff/uob.hpp"

using namespace uff;

TEST_CASE("computational basis validates") {
    const Uob basis = computational_basis({2, 2});
    REQUIRE(basis.states.size() == 4);
    const UobValidationReport report = validate_uob(basis);
    CHECK(report.pass);
    CHECK(report.max_off_diagonal == 0.0);
    CHECK(report.count_ok);

    Uob duplicated = basis;
    duplicated.states[1] = duplicated.states[0];
    const UobValidationReport broken = validate_uob(duplicated);
    CHECK_FALSE(broken.pass);
    CHECK(broken.max_off_diagonal == doctest::Approx(1.0));
}

TEST_CASE("generic tree structure and expansion order") {
    Rng rng(17);
    const SplitTree tree = generate_generic(2, rng);
    const Uob uob = expand_tree(tree);
    REQUIRE(uob.states.size() == 4);

    // expansion order: a(x)b1, a(x)b1^, a^(x)b2, a^(x)b2^
    const bool flips[4][2] = {{false, false}, {false, true}, {true, false}, {true, true}};
    for (int s = 0; s < 4; ++s) {
        for (int q = 0; q < 2; ++q) {
            CHECK(uob.states[static_cast<std::size_t>(s)]
                      .factors[static_cast<std::size_t>(q)]
                      .canonical->flipped == flips[s][q]);
        }
    }
    // first factor shares one base across all states; second differs per branch
    const Complex a = uob.states[0].factors[0].canonical->base;
    for (const ProductState& s : uob.states) CHECK(s.factors[0].canonical->base == a);
    CHECK(uob.states[0].factors[1].canonical->base == uob.states[1].factors[1].canonical->base);
    CHECK(uob.states[2].factors[1].canonical->base == uob.states[3].factors[1].canonical->base);
    CHECK(uob.states[0].factors[1].canonical->base != uob.states[2].factors[1].canonical->base);

    CHECK(validate_uob(uob).pass);
}

TEST_CASE("single qubit generators give an orthogonal pair") {
    Rng rng(19);
    const Uob generic = expand_tree(generate_generic(1, rng));
    REQUIRE(generic.states.size() == 2);
    CHECK(validate_uob(generic).pass);
    CHECK(generic.states[0].factors[0].canonical->base ==
          generic.states[1].factors[0].canonical->base);
    CHECK_FALSE(generic.states[0].factors[0].canonical->flipped);
    CHECK(generic.states[1].factors[0].canonical->flipped);

    // with one qubit the split generator walks the same path
    Rng rng_a(23);
    Rng rng_b(23);
    const Uob split = expand_tree(generate_split(1, {}, rng_a));
    const Uob again = expand_tree(generate_generic(1, rng_b));
    CHECK(split.states[0].factors[0].canonical->base ==
          again.states[0].factors[0].canonical->base);
}

TEST_CASE("split trees with tails validate") {
    Rng rng(29);
    const Uob uob = expand_tree(generate_split(2, {3}, rng));
    CHECK(uob.states.size() == 12);
    CHECK(uob.signature == std::vector<int>{2, 2, 3});
    CHECK(validate_uob(uob, 1e-9).pass);
}

TEST_CASE("sibling subtrees may split different qubits and still validate") {
    Rng rng(31);
    SplitTree t;
    t.n_qubits = 3;
    // left subtree fixes qubit 2 then 3, right subtree fixes 3 then 2
    const auto leaf = [&] { return t.add_leaf(0); };
    const auto split = [&](int q, int l, int r) {
        return t.add_split(q, random_interior_point(rng), l, r);
    };
    const int left = split(2, split(3, leaf(), leaf()), split(3, leaf(), leaf()));
    const int right = split(3, split(2, leaf(), leaf()), split(2, leaf(), leaf()));
    t.root = t.add_split(1, random_interior_point(rng), left, right);

    const Uob uob = expand_tree(t);
    CHECK(uob.states.size() == 8);
    CHECK(validate_uob(uob, 1e-10).pass);
}

TEST_CASE("functions built from the subset formula sum to c on non-generic trees") {
    Rng rng(97);
    SplitTree t;
    t.n_qubits = 3;
    const auto leaf = [&] { return t.add_leaf(0); };
    const auto split = [&](int q, int l, int r) {
        return t.add_split(q, random_interior_point(rng), l, r);
    };
    const int left = split(2, split(3, leaf(), leaf()), split(3, leaf(), leaf()));
    const int right = split(3, split(2, leaf(), leaf()), split(2, leaf(), leaf()));
    t.root = t.add_split(1, random_interior_point(rng), left, right);
    const Uob uob = expand_tree(t);

    for (int f = 0; f < 20; ++f) {
        const double c = 3.0 * word_to_unit(hash_words(97, {static_cast<std::uint64_t>(f)})) - 1.5;
        const FrameFunction ff(
            PhiFamily::prf(3, derive_seed(97, {static_cast<std::uint64_t>(f)}), c));
        double sum = 0.0;
        for (const ProductState& s : uob.states) sum += ff.evaluate(s);
        CHECK(std::abs(sum - c) <= 1e-10);
    }
}

TEST_CASE("expand_tree rejects malformed trees") {
    Rng rng(37);
    SplitTree missing;
    missing.n_qubits = 2;
    const int l1 = missing.add_leaf(0);
    const int l2 = missing.add_leaf(0);
    missing.root = missing.add_split(1, random_interior_point(rng), l1, l2);
    CHECK_THROWS_AS((void)expand_tree(missing), MalformedTree);

    SplitTree twice;
    twice.n_qubits = 2;
    const int leaf_a = twice.add_leaf(0);
    const int leaf_b = twice.add_leaf(0);
    const int inner = twice.add_split(1, random_interior_point(rng), leaf_a, leaf_b);
    const int inner2 = twice.add_split(1, random_interior_point(rng), twice.add_leaf(0),
                                       twice.add_leaf(0));
    twice.root = twice.add_split(1, random_interior_point(rng), inner, inner2);
    CHECK_THROWS_AS((void)expand_tree(twice), MalformedTree);
}

TEST_CASE("product bases") {
    Rng rng(41);
    const Uob mixed = generate_product_basis({2, 3}, rng);
    CHECK(mixed.states.size() == 6);
    CHECK(validate_uob(mixed, 1e-9).pass);

    const Uob pair = generate_product_basis({2}, rng);
    REQUIRE(pair.states.size() == 2);
    CHECK(pair.states[0].factors[0].canonical->base ==
          pair.states[1].factors[0].canonical->base);
    CHECK(pair.states[0].factors[0].canonical->flipped !=
          pair.states[1].factors[0].canonical->flipped);

    // identity per-factor bases reproduce the computational basis
    std::vector<std::vector<FactorState>> identity(2);
    for (auto& basis : identity) {
        basis = {FactorState::basis_vector(2, 0), FactorState::basis_vector(2, 1)};
    }
    const Uob from_identity = product_uob_from_bases(identity);
    const Uob computational = computational_basis({2, 2});
    REQUIRE(from_identity.states.size() == computational.states.size());
    for (std::size_t i = 0; i < from_identity.states.size(); ++i) {
        for (std::size_t f = 0; f < 2; ++f) {
            CHECK(from_identity.states[i].factors[f].amplitudes ==
                  computational.states[i].factors[f].amplitudes);
        }
    }
}

TEST_CASE("generated bases stay orthonormal across seeds and sizes") {
    for (int trial = 0; trial < 1200; ++trial) {
        const int n = 1 + (trial % 6);
        const int kind = (trial / 6) % 3;
        Rng rng(derive_seed(1000, {static_cast<std::uint64_t>(trial)}));
        Uob uob;
        double bound = 1e-10;
        if (kind == 0) {
            uob = expand_tree(generate_generic(n, rng));
        } else if (kind == 1) {
            uob = expand_tree(generate_split(n, {}, rng));
        } else {
            uob = expand_tree(generate_split(n, {3}, rng));
            bound = 1e-9;
        }
        const UobValidationReport report = validate_uob(uob, 1e-9);
        REQUIRE(report.pass);
        REQUIRE(report.max_off_diagonal <= bound);
        REQUIRE(report.max_norm_residual <= 1e-12);
    }
}

TEST_CASE("permuting the factor order of a basis keeps it a basis") {
    Rng rng(47);
    const Uob uob = expand_tree(generate_split(3, {}, rng));
    Uob permuted = uob;
    const std::size_t order[3] = {2, 0, 1};
    for (ProductState& s : permuted.states) {
        std::vector<FactorState> factors;
        for (std::size_t f : order) factors.push_back(s.factors[f]);
        s.factors = std::move(factors);
    }
    CHECK(validate_uob(permuted, 1e-9).pass);
}

TEST_CASE("tree generation is deterministic per seed") {
    const auto make = [] {
        Rng rng(51);
        return expand_tree(generate_split(4, {3}, rng));
    };
    const Uob a = make();
    const Uob b = make();
    REQUIRE(a.states.size() == b.states.size());
    for (std::size_t i = 0; i < a.states.size(); ++i) {
        for (std::size_t f = 0; f < a.states[i].factors.size(); ++f) {
            CHECK(a.states[i].factors[f].amplitudes == b.states[i].factors[f].amplitudes);
        }
    }
}

TEST_CASE("generic trees always split the first remaining qubit") {
    Rng rng(53);
    const SplitTree tree = generate_generic(4, rng);
    // walk every path and record split order
    std::vector<std::vector<int>> orders;
    std::vector<int> stack;
    const std::function<void(int)> walk = [&](int index) {
        const SplitTree::Node& node = tree.nodes[static_cast<std::size_t>(index)];
        if (node.leaf) {
            orders.push_back(stack);
            return;
        }
        stack.push_back(node.qubit_index);
        walk(node.left);
        walk(node.right);
        stack.pop_back();
    };
    walk(tree.root);
    CHECK(orders.size() == 16);
    for (const auto& order : orders) {
        CHECK(order == std::vector<int>{1, 2, 3, 4});
    }
}
