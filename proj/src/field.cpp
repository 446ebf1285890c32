#include "hmf/field.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

namespace hmf {

namespace {

void same_field(const Element& x, const Element& y) {
    if (x.F != y.F) throw DomainError("elements of different fields");
}

// x = u + v*sqrt(D)
void sqrt_coords(const Element& x, Rational& u, Rational& v) {
    if (x.F->t == 1) {
        v = x.b / 2;
        u = x.a + v;
    } else {
        u = x.a;
        v = x.b;
    }
}

int sign_of(const Rational& u, const Rational& v, long D) {
    int su = sgn(u), sv = sgn(v);
    if (sv == 0) return su;
    if (su == 0 || su == sv) return sv;
    Rational lhs = u * u, rhs = v * v * D;
    return lhs > rhs ? su : sv;
}

// Fundamental solution of x^2 - D y^2 = +-1 from the continued fraction of sqrt(D).
void pell(long D, Integer& x, Integer& y) {
    Integer a0;
    mpz_sqrt(a0.get_mpz_t(), Integer(D).get_mpz_t());
    Integer m = 0, d = 1, a = a0;
    Integer h1 = 1, h = a0, k1 = 0, k = 1;
    for (;;) {
        Integer n = h * h - D * k * k;
        if (n == 1 || n == -1) break;
        m = d * a - m;
        d = (D - m * m) / d;
        a = (a0 + m) / d;
        Integer h2 = a * h + h1, k2 = a * k + k1;
        h1 = h;
        k1 = k;
        h = h2;
        k = k2;
    }
    x = h;
    y = k;
}

}  // namespace

Field::Field(long D_) : D(D_) {
    if (D <= 1 || !is_squarefree(D)) throw SchemaError("D must be a squarefree integer > 1");
    long double r = std::sqrt(static_cast<long double>(D));
    if (D % 4 == 1) {
        disc = D;
        t = 1;
        s = (1 - D) / 4;
        w1 = (1 + r) / 2;
        w2 = (1 - r) / 2;
    } else {
        disc = 4 * D;
        t = 0;
        s = -D;
        w1 = r;
        w2 = -r;
    }
    Integer x, y;
    pell(D, x, y);
    Element eta = sqrt_d() * Element(this, Rational(y)) + Element(this, Rational(x));
    eps_ = eta;
    if (D % 8 == 5) {
        // eta may be the cube of a half-integral unit (X + Y sqrt D)/2.
        int N = sgn(Rational(x * x - D * y * y));
        Integer tr = 2 * x, sigma;
        mpz_root(sigma.get_mpz_t(), tr.get_mpz_t(), 3);
        for (Integer c = sigma - 3; c <= sigma + 3; ++c) {
            if (c * c * c - 3 * N * c != tr) continue;
            Integer q = c * c - 4 * N;
            if (q <= 0 || q % D != 0) continue;
            Integer y2 = q / D, yy;
            if (!mpz_perfect_square_p(y2.get_mpz_t())) continue;
            mpz_sqrt(yy.get_mpz_t(), y2.get_mpz_t());
            Element cand(this, frac(c - yy, 2), Rational(yy));
            if (pow(cand, 3) == eta) eps_ = cand;
        }
    }
    unit_norm_ = sgn(norm(eps_));
    eps_plus_ = unit_norm_ == 1 ? eps_ : eps_ * eps_;
}

const Field* Field::get(long D) {
    static std::mutex mu;
    static std::map<long, std::unique_ptr<Field>> registry;
    std::lock_guard<std::mutex> lock(mu);
    auto it = registry.find(D);
    if (it != registry.end()) return it->second.get();
    std::unique_ptr<Field> f(new Field(D));
    const Field* out = f.get();
    registry.emplace(D, std::move(f));
    return out;
}

Element Field::sqrt_d() const { return t == 1 ? Element(this, -1, 2) : Element(this, 0, 1); }

Element operator+(const Element& x, const Element& y) {
    same_field(x, y);
    return Element(x.F, x.a + y.a, x.b + y.b);
}

Element operator-(const Element& x, const Element& y) {
    same_field(x, y);
    return Element(x.F, x.a - y.a, x.b - y.b);
}

Element operator-(const Element& x) { return Element(x.F, -x.a, -x.b); }

Element operator*(const Element& x, const Element& y) {
    same_field(x, y);
    Rational bd = x.b * y.b;
    return Element(x.F, x.a * y.a - x.F->s * bd, x.a * y.b + x.b * y.a + x.F->t * bd);
}

Element operator*(const Rational& q, const Element& x) { return Element(x.F, q * x.a, q * x.b); }

Element operator/(const Element& x, const Element& y) { return x * inverse(y); }

Element operator/(const Element& x, const Rational& q) {
    if (q == 0) throw DomainError("division by zero");
    return Element(x.F, x.a / q, x.b / q);
}

bool operator==(const Element& x, const Element& y) { return x.a == y.a && x.b == y.b; }

bool operator<(const Element& x, const Element& y) {
    if (x.a != y.a) return x.a < y.a;
    return x.b < y.b;
}

Element conj(const Element& x) { return Element(x.F, x.a + x.F->t * x.b, -x.b); }

Rational norm(const Element& x) { return x.a * x.a + x.F->t * x.a * x.b + x.F->s * x.b * x.b; }

Rational trace(const Element& x) { return 2 * x.a + x.F->t * x.b; }

Element inverse(const Element& x) {
    Rational n = norm(x);
    if (n == 0) throw DomainError("inverse of zero");
    return conj(x) / n;
}

Element pow(const Element& x, long e) {
    if (e < 0) return pow(inverse(x), -e);
    Element r = x.F->one(), b = x;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

int sign1(const Element& x) {
    Rational u, v;
    sqrt_coords(x, u, v);
    return sign_of(u, v, x.F->D);
}

int sign2(const Element& x) {
    Rational u, v;
    sqrt_coords(x, u, v);
    return sign_of(u, -v, x.F->D);
}

bool is_totally_positive(const Element& x) {
    if (x.is_zero()) throw DomainError("total positivity of zero");
    return sign1(x) > 0 && sign2(x) > 0;
}

long double theta1(const Element& x) { return x.a.get_d() + x.b.get_d() * x.F->w1; }
long double theta2(const Element& x) { return x.a.get_d() + x.b.get_d() * x.F->w2; }

bool ratio_at_least(const Element& x, const Element& y) {
    // x1/x2 >= y1/y2  <=>  sign of (x1 y2 - x2 y1)/(x2 y2) >= 0.
    // x1 y2 - x2 y1 is the sqrt(D)-part of x*conj(y), up to the factor 2 sqrt(D).
    Element z = x * conj(y);
    Rational u, v;
    sqrt_coords(z, u, v);
    int s = sgn(v) * sign2(x) * sign2(y);
    return s >= 0;
}

std::string to_string(const Element& x) {
    if (x.b == 0) return to_string(x.a);
    std::string w = "w";
    std::string bs = x.b == 1 ? w : x.b == -1 ? "-" + w : to_string(x.b) + "*" + w;
    if (x.a == 0) return bs;
    return to_string(x.a) + (x.b > 0 ? "+" : "") + bs;
}

std::size_t ElementHash::operator()(const Element& x) const {
    std::size_t h1 = mpz_get_ui(x.a.get_num_mpz_t()) * 1000003u ^ mpz_get_ui(x.a.get_den_mpz_t());
    std::size_t h2 = mpz_get_ui(x.b.get_num_mpz_t()) * 998244353u ^ mpz_get_ui(x.b.get_den_mpz_t());
    return h1 * 31 + h2 + (sgn(x.a) + 2) * 7 + sgn(x.b);
}

}  // namespace hmf
