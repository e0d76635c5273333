#pragma once

#include <complex>

#include "uff/errors.hpp"

namespace uff {

using Complex = std::complex<double>;

// A point of the complex projective line under the identification
// (x, y) -> x/y, i.e. an element of C u {inf}. Infinity is a tagged case,
// never an encoded float, so that sigma(0) = inf round-trips exactly.
struct ProjectivePoint {
    Complex value{0.0, 0.0};
    bool infinite = false;

    ProjectivePoint() = default;
    ProjectivePoint(Complex z) : value(z) {}
    ProjectivePoint(double re, double im = 0.0) : value(re, im) {}

    static ProjectivePoint infinity() {
        ProjectivePoint p;
        p.infinite = true;
        return p;
    }

    friend bool operator==(const ProjectivePoint& a, const ProjectivePoint& b) {
        if (a.infinite || b.infinite) return a.infinite == b.infinite;
        return a.value == b.value;
    }
};

// A single-qubit pure state written as (base, flipped): base is the
// representative inside the fundamental domain F and the flag selects
// the state itself (false) or its unique orthogonal partner (true).
struct CanonicalQubit {
    Complex base{0.0, 0.0};
    bool flipped = false;

    CanonicalQubit flip() const { return {base, !flipped}; }

    friend bool operator==(const CanonicalQubit& a, const CanonicalQubit& b) {
        return a.base == b.base && a.flipped == b.flipped;
    }
};

// Unit vector (x, y) in C^2.
struct QubitVector {
    Complex x{0.0, 0.0};
    Complex y{0.0, 0.0};

    double norm() const;
};

// <a|b> with the physics convention (conjugate-linear in the first slot).
Complex inner(const QubitVector& a, const QubitVector& b);

// The antipodal involution z -> -1/conj(z); 0 <-> inf are tagged exact cases.
ProjectivePoint sigma_point(const ProjectivePoint& p);

// (x, y) -> (-conj(y), conj(x)); the image is orthogonal to the input.
// Throws NotUnitNorm when |norm - 1| > 1e-9.
QubitVector sigma_vector(const QubitVector& v);

// Membership in F = {|z| < 1} u {|z| = 1, Im z > 0} u {1}, decided with
// exact floating-point comparisons on the computed |z|^2. Infinity is
// never in F (it is sigma(0) and 0 is in F).
bool in_fundamental_domain(const ProjectivePoint& p);

// Decompose a projective point as (base in F, flipped). Only the
// membership of p is tested; when p lies outside F the returned base is
// sigma(p) and is not re-tested, which keeps the partition operational
// under float rounding at the |z| = 1 boundary.
CanonicalQubit canonicalize(const ProjectivePoint& p);

// Fixed unit-vector section of the projective quotient: base w lifts to
// (w, 1)/sqrt(1 + |w|^2) (second coordinate real positive), and the
// flipped state is the sigma image of that lift.
QubitVector point_to_vector(const CanonicalQubit& q);

// x/y, or infinity when y = 0. Phase-invariant. Throws NotUnitNorm.
ProjectivePoint vector_to_point(const QubitVector& v);

} // namespace uff
