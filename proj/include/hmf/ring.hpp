#pragma once

#include <random>
#include <string>
#include <vector>

#include "hmf/ideal.hpp"

namespace hmf {

using Coeff = std::vector<Rational>;

// Coefficient rings B[zeta_N] / Phi_N with B one of
//   exact:   Q(sqrt D), theta_1 = identity, theta_2 = conjugation;
//   torsion: O_F,P / p^n, i.e. (Z/p^n)[omega] for P inert or ramified, Z/p^n for P split
//            with theta_1 reduction at P and theta_2 = theta_1 o conj.
// Coordinates are indexed zeta^j omega^i -> j*base_dim + i.
class CoeffRing {
public:
    static CoeffRing exact(const Field* F, long zeta_order = 1);
    static CoeffRing torsion(const PrimeIdeal& P, int exponent, long zeta_order = 1);

    const Field* field() const { return F_; }
    bool is_torsion() const { return mod_ != 0; }
    long p() const { return p_; }
    int exponent() const { return n_; }
    const PrimeIdeal& prime() const { return P_; }   // torsion only
    long zeta_order() const { return N_; }
    std::size_t dim() const { return base_dim_ * phi_; }
    std::string describe() const;

    Coeff zero() const { return Coeff(dim(), 0); }
    Coeff one() const;
    Coeff from_int(long k) const { return from_rational(k); }
    Coeff from_rational(const Rational& q) const;
    Coeff theta1(const Element& x) const;
    Coeff theta2(const Element& x) const { return theta1(conj(x)); }
    Coeff zeta_pow(long k) const;

    Coeff add(const Coeff& x, const Coeff& y) const;
    Coeff sub(const Coeff& x, const Coeff& y) const;
    Coeff neg(const Coeff& x) const;
    Coeff mul(const Coeff& x, const Coeff& y) const;
    Coeff scale(const Rational& q, const Coeff& x) const { return mul(from_rational(q), x); }
    Coeff pow(const Coeff& x, unsigned long e) const;
    bool eq(const Coeff& x, const Coeff& y) const;
    bool is_zero(const Coeff& x) const;
    // x in d*R
    bool divisible_by(const Coeff& x, const Integer& d) const;
    Coeff random(std::mt19937_64& rng) const;
    Coeff normalize(Coeff x) const;

    bool operator==(const CoeffRing& o) const;

    CoeffRing() = default;

private:
    void init_cyclotomic();
    Rational reduce(const Rational& q) const;
    Integer hensel_root(int precision) const;

    const Field* F_ = nullptr;
    long N_ = 1;
    std::size_t phi_ = 1;
    std::size_t base_dim_ = 2;
    Integer mod_ = 0;     // p^n, or 0 in characteristic 0
    long p_ = 0;
    int n_ = 0;
    PrimeIdeal P_;
    Integer root_;        // omega mod p^n at P (split case)
    std::vector<std::vector<long>> zred_;   // zeta^k in the power basis, k < 2*phi
};

// zeta^k * theta_1(y) with y a unit at the relevant primes: the shape of every
// character value handled here, so inverses are exact.
struct CharValue {
    long zeta = 0;
    Element y;

    CharValue() = default;
    CharValue(long z, Element e) : zeta(z), y(std::move(e)) {}
};
CharValue operator*(const CharValue& a, const CharValue& b);
CharValue inverse(const CharValue& a);
CharValue pow(const CharValue& a, long e);
Coeff to_ring(const CoeffRing& R, const CharValue& v);

}  // namespace hmf
