#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hmf/ring.hpp"

namespace hmf {

// Coordinates (x, y) of m = x*basis1 + y*basis2 in the HNF basis of M.
std::pair<Integer, Integer> lattice_coords(const FracIdeal& M, const Element& m);
Element from_coords(const FracIdeal& M, const Integer& x, const Integer& y);
bool is_primitive(const FracIdeal& M, const Element& m);
Element primitive_part(const FracIdeal& M, const Element& m);

// Boundary lattice points of conv((cone(u, v) cap M) - 0) strictly between u and v.
std::vector<Element> hj_subdivision(const FracIdeal& M, const Element& u, const Element& v);

// A unit-periodic fan in the totally positive cone of M: rays(i + period) = unit * rays(i).
struct Fan {
    FracIdeal M;
    Element unit;                 // totally positive, theta_1 > 1
    std::vector<Element> window;  // one period, increasing theta1/theta2

    std::size_t period() const { return window.size(); }
    Element ray(long i) const;
};

// smooth: every boundary point of conv(M_+); otherwise only the vertices of the hull.
Fan build_unit_invariant_fan(const FracIdeal& M, const Element& unit, bool smooth);
// Subdivide every cone until adjacent rays are a Z-basis of M.
Fan smooth_fan(const Fan& f);

struct FanReport {
    bool coverage = false;
    bool periodic = false;
    bool smooth = false;
    std::string message;
};
// Coverage is also spot-checked on totally positive points of relative norm <= bound.
FanReport check_fan(const Fan& f, long bound = 50);

// Exponent e with unit = eps_plus^e (e >= 1); throws if none.
long unit_exponent(const Element& unit);

// Every cone of `coarse` (on M1, mapped by m -> alpha*m) is a union of cones of `fine`.
bool refine_check(const Fan& fine, const Fan& coarse, const Element& alpha);
// Smallest common refinement of `fine` by the alpha-image of `coarse`, on fine.M.
Fan refine_to(const Fan& fine, const Fan& coarse, const Element& alpha, bool smooth);

// Truncated series sum r_m q^m over m in scale^-1 M, m >> 0 with Nm(m)/Nm(scale^-1 M) <= bound, plus m = 0.
struct MonoidSeries {
    FracIdeal M;
    FracIdeal scale;
    Rational bound;
    CoeffRing ring;
    std::map<Element, Coeff> coeffs;   // zero coefficients are not stored
    Coeff twist;                       // scalar on the rank-one basis symbol b

    FracIdeal exponents() const { return inverse(scale) * M; }
    Coeff at(const Element& m) const;
    void set(const Element& m, const Coeff& c);
};

MonoidSeries make_series(const FracIdeal& M, const FracIdeal& scale, const Rational& bound, const CoeffRing& R);
// Every key lies in the declared index set.
bool support_ok(const MonoidSeries& s);
bool series_equal(const MonoidSeries& a, const MonoidSeries& b);

// Output over M1 with r'_m = r_{alpha m} and twist multiplied by beta.
MonoidSeries saving_trace_local(const MonoidSeries& s, const FracIdeal& M1, const Element& alpha, const Coeff& beta);
// q^m -> q^{alpha m}, from M1 to M.
MonoidSeries pullback(const MonoidSeries& s1, const FracIdeal& M, const Element& alpha);
// Keeps the coefficients supported on alpha(M1).
MonoidSeries support_projection(const MonoidSeries& s, const FracIdeal& M1, const Element& alpha);
// Nm(q2)^-1 * [M : alpha M1], the scalar of Nm(q2)^-1 wedge^2 alpha^* on the basis symbol.
Rational saving_trace_twist(const FracIdeal& q2, const FracIdeal& M, const FracIdeal& M1, const Element& alpha);

struct DegreeCertificate {
    long rank = 0;                 // number of free generators found
    long bound = 0;                // degrees checked
    Integer index;                 // [M : alpha M1]
    bool conclusive = false;       // every coset part is a translate of the submonoid up to bound
    std::vector<Element> generators;
    std::string message;
};
// sigma = cone(r1, r2) with r1, r2 a basis of alpha(M1); counts Z[sigma cap M] over Z[sigma cap alpha M1]
// coset by coset, graded by the r-coordinate sum.
DegreeCertificate monoid_trace_degree(const Element& r1, const Element& r2, const FracIdeal& M, const FracIdeal& M1,
                                      const Element& alpha, long degree_bound);

}  // namespace hmf
