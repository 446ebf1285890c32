#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hmf/field.hpp"

namespace hmf {

// Z-lattice of rank 2 in F with row basis (a, 0), (b, c) in the basis (1, omega);
// a, c > 0 and 0 <= b < a. Only O-modules are constructed.
class FracIdeal {
public:
    FracIdeal() = default;

    static FracIdeal unit(const Field* F);
    static FracIdeal principal(const Element& x);
    static FracIdeal rational(const Field* F, const Rational& q);
    static FracIdeal from_generators(const Field* F, const std::vector<Element>& gens);
    // Validates that the rows span an O-module.
    static FracIdeal from_hnf(const Field* F, const Rational& a, const Rational& b, const Rational& c);

    const Field* field() const { return F_; }
    const Rational& a() const { return a_; }
    const Rational& b() const { return b_; }
    const Rational& c() const { return c_; }
    Rational norm() const { return a_ * c_; }
    Element basis1() const { return Element(F_, a_); }
    Element basis2() const { return Element(F_, b_, c_); }

    bool contains(const Element& x) const;
    bool contains(const FracIdeal& J) const;
    bool is_integral() const { return a_.get_den() == 1 && b_.get_den() == 1 && c_.get_den() == 1; }
    bool is_unit() const { return a_ == 1 && c_ == 1; }
    // smallest positive integer d with d*I integral
    Integer denominator() const;

    bool operator==(const FracIdeal& o) const { return a_ == o.a_ && b_ == o.b_ && c_ == o.c_; }
    bool operator!=(const FracIdeal& o) const { return !(*this == o); }
    bool operator<(const FracIdeal& o) const;

private:
    const Field* F_ = nullptr;
    Rational a_, b_, c_;
};

FracIdeal operator*(const FracIdeal& I, const FracIdeal& J);
FracIdeal operator*(const Element& x, const FracIdeal& I);
FracIdeal operator+(const FracIdeal& I, const FracIdeal& J);
FracIdeal operator/(const FracIdeal& I, const FracIdeal& J);
FracIdeal inverse(const FracIdeal& I);
FracIdeal conj(const FracIdeal& I);
FracIdeal pow(const FracIdeal& I, long e);
FracIdeal different(const Field* F);
std::string to_string(const FracIdeal& I);

struct PrimeIdeal {
    FracIdeal P;
    long ell = 0;
    int e = 1, f = 1;
    long norm() const;
    bool operator==(const PrimeIdeal& o) const { return P == o.P; }
    bool operator<(const PrimeIdeal& o) const { return P < o.P; }
};

enum class Splitting { split, inert, ramified };

std::vector<PrimeIdeal> primes_above(const Field* F, long ell);
Splitting splitting(const Field* F, long ell);
PrimeIdeal as_prime(const FracIdeal& P);   // throws if not prime
int valuation(const PrimeIdeal& P, const FracIdeal& I);
int valuation(const PrimeIdeal& P, const Element& x);
std::vector<std::pair<PrimeIdeal, int>> factor(const FracIdeal& I);
bool coprime(const FracIdeal& I, long m);   // no prime of I lies over a divisor of m
bool coprime(const FracIdeal& I, const FracIdeal& J);
// Integral ideals of norm N, in canonical order.
std::vector<FracIdeal> ideals_of_norm(const Field* F, long N);
// Divisors of a squarefree integral ideal, ordered by norm.
std::vector<FracIdeal> divisors(const FracIdeal& P);

// x in b with 1 - x in n, for coprime integral b, n.
Element crt_one(const FracIdeal& b, const FracIdeal& n);
// v_P(pi) = 1 and v_Q(pi) = 0 at the other primes Q over the same rational prime.
Element find_uniformizer(const PrimeIdeal& P);

// Integer row reduction of 2-vectors, tracking coefficients.
struct Hnf2 {
    Integer A, B, C;                 // rows (A, 0), (B, C)
    std::vector<Integer> ca, cb;     // coefficient vectors of the two rows
};
Hnf2 hnf2(const std::vector<std::pair<Integer, Integer>>& rows);

}  // namespace hmf
