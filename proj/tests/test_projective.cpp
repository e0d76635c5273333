#include <doctest.h>

#include <cmath>
#include <complex>

#include "uff/projective.hpp"
#include "uff/rng.hpp"
#include "uff/sampling.hpp"

using namespace uff;

namespace {

ProjectivePoint random_point_off_circle(Rng& rng, double margin = 1e-9) {
    while (true) {
        const Complex z(5.0 * rng.uniform() - 2.5, 5.0 * rng.uniform() - 2.5);
        if (std::abs(std::abs(z) - 1.0) >= margin) return ProjectivePoint(z);
    }
}

} // namespace

TEST_CASE("sigma_point basic values") {
    CHECK(sigma_point(ProjectivePoint(0.0)) == ProjectivePoint::infinity());
    CHECK(sigma_point(ProjectivePoint::infinity()) == ProjectivePoint(0.0));

    const ProjectivePoint minus_i = sigma_point(ProjectivePoint(0.0, 1.0));
    CHECK(minus_i.value.real() == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(minus_i.value.imag() == doctest::Approx(-1.0).epsilon(1e-15));

    const ProjectivePoint half = sigma_point(ProjectivePoint(2.0));
    CHECK(half.value.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(half.value.imag() == 0.0);
}

TEST_CASE("sigma_point is an involution") {
    CHECK(sigma_point(sigma_point(ProjectivePoint(0.0))) == ProjectivePoint(0.0));
    CHECK(sigma_point(sigma_point(ProjectivePoint::infinity())) ==
          ProjectivePoint::infinity());
    Rng rng(11);
    for (int i = 0; i < 500; ++i) {
        const ProjectivePoint p = random_point_off_circle(rng);
        if (p.value == Complex(0.0, 0.0)) continue;
        const ProjectivePoint back = sigma_point(sigma_point(p));
        CHECK(std::abs(back.value - p.value) <= 1e-15 * std::abs(p.value));
    }
}

TEST_CASE("sigma_vector basic values and orthogonality") {
    const QubitVector e1{1.0, 0.0};
    const QubitVector e2{0.0, 1.0};
    CHECK(sigma_vector(e1).x == Complex(0.0, 0.0));
    CHECK(sigma_vector(e1).y == Complex(1.0, 0.0));
    CHECK(sigma_vector(e2).x == Complex(-1.0, 0.0));
    CHECK(sigma_vector(e2).y == Complex(0.0, 0.0));

    const double s = 1.0 / std::sqrt(2.0);
    const QubitVector v{Complex(s, 0.0), Complex(0.0, s)};
    const QubitVector hat = sigma_vector(v);
    CHECK(hat.x.real() == doctest::Approx(0.0));
    CHECK(hat.x.imag() == doctest::Approx(s));
    CHECK(hat.y.real() == doctest::Approx(s));
    CHECK(hat.y.imag() == doctest::Approx(0.0));

    CHECK_THROWS_AS(sigma_vector(QubitVector{1.0, 1.0}), NotUnitNorm);

    Rng rng(5);
    for (int i = 0; i < 200; ++i) {
        const QubitVector u = point_to_vector(random_interior_point(rng));
        CHECK(std::abs(inner(u, sigma_vector(u))) <= 1e-15);
        // applying sigma twice negates the vector
        const QubitVector twice = sigma_vector(sigma_vector(u));
        CHECK(twice.x == -u.x);
        CHECK(twice.y == -u.y);
    }
}

TEST_CASE("fundamental domain membership") {
    CHECK(in_fundamental_domain(ProjectivePoint(0.0)));
    CHECK_FALSE(in_fundamental_domain(ProjectivePoint::infinity()));
    CHECK_FALSE(in_fundamental_domain(ProjectivePoint(0.0, -1.0))); // -i
    CHECK(in_fundamental_domain(ProjectivePoint(0.0, 1.0)));        // i
    CHECK(in_fundamental_domain(ProjectivePoint(1.0)));
    CHECK_FALSE(in_fundamental_domain(ProjectivePoint(-1.0)));
    CHECK(in_fundamental_domain(ProjectivePoint(0.999999)));
    CHECK_FALSE(in_fundamental_domain(ProjectivePoint(1.000001)));
}

TEST_CASE("canonicalize") {
    const CanonicalQubit interior = canonicalize(ProjectivePoint(0.3, 0.1));
    CHECK(interior.base == Complex(0.3, 0.1));
    CHECK_FALSE(interior.flipped);

    const CanonicalQubit from_inf = canonicalize(ProjectivePoint::infinity());
    CHECK(from_inf.base == Complex(0.0, 0.0));
    CHECK(from_inf.flipped);

    const CanonicalQubit from_minus_one = canonicalize(ProjectivePoint(-1.0));
    CHECK(from_minus_one.base == Complex(1.0, 0.0));
    CHECK(from_minus_one.flipped);
}

TEST_CASE("exactly one of each antipodal pair lies in the fundamental domain") {
    Rng rng(42);
    for (int i = 0; i < 5000; ++i) {
        ProjectivePoint p;
        if (i == 0) {
            p = ProjectivePoint::infinity();
        } else if (i == 1) {
            p = ProjectivePoint(0.0);
        } else {
            p = random_point_off_circle(rng);
        }
        const bool a = in_fundamental_domain(p);
        const bool b = in_fundamental_domain(sigma_point(p));
        CHECK(a != b);
    }
}

TEST_CASE("point_to_vector basic values") {
    const QubitVector zero = point_to_vector({Complex(0.0, 0.0), false});
    CHECK(zero.x == Complex(0.0, 0.0));
    CHECK(zero.y == Complex(1.0, 0.0));

    const QubitVector zero_flipped = point_to_vector({Complex(0.0, 0.0), true});
    CHECK(zero_flipped.x == Complex(-1.0, 0.0));
    CHECK(zero_flipped.y == Complex(0.0, 0.0));

    const QubitVector one = point_to_vector({Complex(1.0, 0.0), false});
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(one.x.real() == doctest::Approx(s).epsilon(1e-14));
    CHECK(one.y.real() == doctest::Approx(s).epsilon(1e-14));
}

TEST_CASE("point_to_vector produces unit vectors with orthogonal partners") {
    Rng rng(7);
    for (int i = 0; i < 500; ++i) {
        const CanonicalQubit q = random_interior_point(rng);
        const QubitVector v = point_to_vector(q);
        const QubitVector w = point_to_vector(q.flip());
        CHECK(std::abs(v.norm() - 1.0) <= 1e-12);
        CHECK(std::abs(w.norm() - 1.0) <= 1e-12);
        CHECK(std::abs(inner(v, w)) <= 1e-12);
    }
}

TEST_CASE("vector_to_point basic values and phase invariance") {
    CHECK(vector_to_point(QubitVector{1.0, 0.0}) == ProjectivePoint::infinity());
    const double s = 1.0 / std::sqrt(2.0);
    const ProjectivePoint one = vector_to_point({Complex(s, 0.0), Complex(s, 0.0)});
    CHECK(one.value.real() == doctest::Approx(1.0).epsilon(1e-14));

    const Complex phase = std::polar(1.0, 2.1);
    const QubitVector base{Complex(0.6, 0.0), Complex(0.0, 0.8)};
    const QubitVector rotated{base.x * phase, base.y * phase};
    const ProjectivePoint p0 = vector_to_point(base);
    const ProjectivePoint p1 = vector_to_point(rotated);
    REQUIRE_FALSE(p0.infinite);
    REQUIRE_FALSE(p1.infinite);
    CHECK(std::abs(p0.value - p1.value) <= 1e-12);

    CHECK_THROWS_AS(vector_to_point(QubitVector{0.5, 0.5}), NotUnitNorm);
}

TEST_CASE("canonical round trip is exact on the flag and tight on the base") {
    Rng rng(13);
    for (int i = 0; i < 500; ++i) {
        CanonicalQubit q = random_interior_point(rng, 1e-9);
        q.flipped = rng.below(2) == 1;
        const CanonicalQubit back = canonicalize(vector_to_point(point_to_vector(q)));
        CHECK(back.flipped == q.flipped);
        CHECK(std::abs(back.base - q.base) <= 1e-12);
    }
}
