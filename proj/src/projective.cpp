#include "uff/projective.hpp"

#include <cmath>

namespace uff {

namespace {

void require_unit(const QubitVector& v, const char* who) {
    if (std::abs(v.norm() - 1.0) > 1e-9) {
        throw NotUnitNorm(std::string(who) + ": qubit vector is not unit norm");
    }
}

} // namespace

double QubitVector::norm() const {
    return std::sqrt(std::norm(x) + std::norm(y));
}

Complex inner(const QubitVector& a, const QubitVector& b) {
    return std::conj(a.x) * b.x + std::conj(a.y) * b.y;
}

ProjectivePoint sigma_point(const ProjectivePoint& p) {
    if (p.infinite) return ProjectivePoint(0.0);
    if (p.value == Complex(0.0, 0.0)) return ProjectivePoint::infinity();
    return ProjectivePoint(-1.0 / std::conj(p.value));
}

QubitVector sigma_vector(const QubitVector& v) {
    require_unit(v, "sigma_vector");
    return {-std::conj(v.y), std::conj(v.x)};
}

bool in_fundamental_domain(const ProjectivePoint& p) {
    if (p.infinite) return false;
    const double r2 = std::norm(p.value);
    if (r2 < 1.0) return true;
    if (r2 == 1.0) {
        if (p.value.imag() > 0.0) return true;
        return p.value == Complex(1.0, 0.0);
    }
    return false;
}

CanonicalQubit canonicalize(const ProjectivePoint& p) {
    if (in_fundamental_domain(p)) return {p.value, false};
    // p is inf or |p| >= 1, so sigma(p) is finite.
    return {sigma_point(p).value, true};
}

QubitVector point_to_vector(const CanonicalQubit& q) {
    const Complex w = q.base;
    const double s = 1.0 / std::sqrt(1.0 + std::norm(w));
    const QubitVector lift{w * s, Complex(s, 0.0)};
    return q.flipped ? sigma_vector(lift) : lift;
}

ProjectivePoint vector_to_point(const QubitVector& v) {
    require_unit(v, "vector_to_point");
    if (v.y == Complex(0.0, 0.0)) return ProjectivePoint::infinity();
    return ProjectivePoint(v.x / v.y);
}

} // namespace uff
