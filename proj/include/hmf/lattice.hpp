#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "hmf/ideal.hpp"

namespace hmf {

// Every point x of I with lo1 <= theta1(x) <= hi1 and lo2 <= theta2(x) <= hi2 is visited;
// a few points just outside may be visited too, so callers filter exactly.
void for_each_in_box(const FracIdeal& I, long double lo1, long double hi1, long double lo2, long double hi2,
                     const std::function<void(const Element&)>& fn);

std::optional<Element> principal_generator(const FracIdeal& I);
std::optional<Element> totally_positive_generator(const FracIdeal& I);

Rational relative_norm(const Element& m, const FracIdeal& M);

struct OrbitRep {
    Element rep;     // u^exponent * m
    long exponent;
};
// Canonical point of the <u>-orbit of a totally positive m: 1 <= theta1/theta2 < theta1(u)/theta2(u).
OrbitRep orbit_representative(const Element& m, const Element& u);
Element orbit_representative(const Element& m);

// One representative per <eps_plus^period>-orbit of {m in M, m >> 0, Nm(m)/Nm(M) <= B},
// sorted by relative norm, then by position in the fundamental domain.
std::vector<Element> enumerate_orbit_reps(const FracIdeal& M, const Rational& B, long period = 1);

// Strict weak order by theta1/theta2, for totally positive elements.
bool ratio_less(const Element& x, const Element& y);

}  // namespace hmf
