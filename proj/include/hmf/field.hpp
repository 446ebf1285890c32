#pragma once

#include <functional>
#include <string>

#include "hmf/arith.hpp"

namespace hmf {

class Field;

// a + b*omega, with omega = sqrt(D) or (1 + sqrt(D))/2.
struct Element {
    const Field* F = nullptr;
    Rational a, b;

    Element() = default;
    Element(const Field* f, Rational a_, Rational b_ = 0) : F(f), a(std::move(a_)), b(std::move(b_)) {}

    bool is_zero() const { return a == 0 && b == 0; }
    bool is_rational() const { return b == 0; }
    bool is_integral() const { return a.get_den() == 1 && b.get_den() == 1; }
    Integer denominator() const { return lcm(a.get_den(), b.get_den()); }
};

class Field {
public:
    // Interned: one instance per D for the lifetime of the process.
    static const Field* get(long D);

    long D;
    long disc;
    int t;   // omega^2 = t*omega - s
    long s;
    long double w1, w2;   // theta_1(omega) > theta_2(omega)

    Element zero() const { return Element(this, 0); }
    Element one() const { return Element(this, 1); }
    Element omega() const { return Element(this, 0, 1); }
    Element sqrt_d() const;
    Element from(const Rational& q) const { return Element(this, q); }

    const Element& fundamental_unit() const { return eps_; }   // theta_1 > 1
    const Element& eps_plus() const { return eps_plus_; }
    int unit_norm() const { return unit_norm_; }

    std::string name() const { return "Q(sqrt(" + std::to_string(D) + "))"; }

private:
    explicit Field(long D);
    Element eps_, eps_plus_;
    int unit_norm_ = 1;
};

Element operator+(const Element& x, const Element& y);
Element operator-(const Element& x, const Element& y);
Element operator-(const Element& x);
Element operator*(const Element& x, const Element& y);
Element operator*(const Rational& q, const Element& x);
Element operator/(const Element& x, const Element& y);
Element operator/(const Element& x, const Rational& q);
bool operator==(const Element& x, const Element& y);
inline bool operator!=(const Element& x, const Element& y) { return !(x == y); }
// Total order on coordinates; only for containers.
bool operator<(const Element& x, const Element& y);

Element conj(const Element& x);
Rational norm(const Element& x);
Rational trace(const Element& x);
Element inverse(const Element& x);
Element pow(const Element& x, long e);

int sign1(const Element& x);
int sign2(const Element& x);
bool is_totally_positive(const Element& x);
long double theta1(const Element& x);
long double theta2(const Element& x);
// theta_1(x)/theta_2(x) >= 1, decided exactly; both embeddings must be nonzero.
bool ratio_at_least(const Element& x, const Element& y);

std::string to_string(const Element& x);

struct ElementHash {
    std::size_t operator()(const Element& x) const;
};

}  // namespace hmf
