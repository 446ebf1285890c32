#include "hmf/ideal.hpp"

#include <algorithm>

namespace hmf {

Hnf2 hnf2(const std::vector<std::pair<Integer, Integer>>& rows) {
    const std::size_t n = rows.size();
    Hnf2 h;
    h.A = 0;
    h.B = 0;
    h.C = 0;
    h.ca.assign(n, 0);
    h.cb.assign(n, 0);
    bool have = false;
    auto combine = [n](const Integer& u, const std::vector<Integer>& x, const Integer& v,
                       const std::vector<Integer>& y) {
        std::vector<Integer> r(n);
        for (std::size_t i = 0; i < n; ++i) r[i] = u * x[i] + v * y[i];
        return r;
    };
    auto fold_a = [&](const Integer& k, const std::vector<Integer>& ck) {
        if (k == 0) return;
        Integer u, v;
        Integer g = gcdext(h.A, k, u, v);
        h.ca = combine(u, h.ca, v, ck);
        h.A = g;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const auto& [x, y] = rows[i];
        std::vector<Integer> ei(n, 0);
        ei[i] = 1;
        if (y == 0) {
            fold_a(x, ei);
            continue;
        }
        if (!have) {
            have = true;
            h.B = x;
            h.C = y;
            h.cb = ei;
            if (h.C < 0) {
                h.B = -h.B;
                h.C = -h.C;
                h.cb[i] = -1;
            }
            continue;
        }
        Integer u, v;
        Integer g = gcdext(h.C, y, u, v);
        Integer yg = y / g, cg = h.C / g;
        Integer k = yg * h.B - cg * x;
        std::vector<Integer> ck = combine(yg, h.cb, -cg, ei);
        h.B = u * h.B + v * x;
        h.cb = combine(u, h.cb, v, ei);
        h.C = g;
        fold_a(k, ck);
    }
    if (h.A != 0) {
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), h.B.get_mpz_t(), h.A.get_mpz_t());
        h.B -= q * h.A;
        for (std::size_t i = 0; i < n; ++i) h.cb[i] -= q * h.ca[i];
    }
    return h;
}

namespace {

FracIdeal z_span(const Field* F, const std::vector<Element>& gens) {
    Integer d = 1;
    for (const auto& g : gens) d = lcm(d, g.denominator());
    std::vector<std::pair<Integer, Integer>> rows;
    rows.reserve(gens.size());
    for (const auto& g : gens) {
        Rational x = g.a * d, y = g.b * d;
        rows.emplace_back(x.get_num(), y.get_num());
    }
    Hnf2 h = hnf2(rows);
    if (h.A == 0 || h.C == 0) throw DomainError("degenerate lattice");
    return FracIdeal::from_hnf(F, frac(h.A, d), frac(h.B, d), frac(h.C, d));
}

}  // namespace

FracIdeal FracIdeal::unit(const Field* F) {
    FracIdeal I;
    I.F_ = F;
    I.a_ = 1;
    I.b_ = 0;
    I.c_ = 1;
    return I;
}

FracIdeal FracIdeal::principal(const Element& x) {
    if (x.is_zero()) throw DomainError("zero ideal");
    return z_span(x.F, {x, x * x.F->omega()});
}

FracIdeal FracIdeal::rational(const Field* F, const Rational& q) { return principal(F->from(q)); }

FracIdeal FracIdeal::from_generators(const Field* F, const std::vector<Element>& gens) {
    std::vector<Element> all;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        all.push_back(g);
        all.push_back(g * F->omega());
    }
    if (all.empty()) throw DomainError("zero ideal");
    return z_span(F, all);
}

FracIdeal FracIdeal::from_hnf(const Field* F, const Rational& a, const Rational& b, const Rational& c) {
    if (a <= 0 || c <= 0) throw DomainError("HNF diagonal must be positive");
    FracIdeal I;
    I.F_ = F;
    I.a_ = a;
    I.c_ = c;
    I.b_ = b - Rational(floor(b / a)) * a;
    Element w = F->omega();
    if (!I.contains(I.basis1() * w) || !I.contains(I.basis2() * w))
        throw DomainError("lattice is not an O_F-module");
    return I;
}

bool FracIdeal::contains(const Element& x) const {
    Rational k = x.b / c_;
    if (k.get_den() != 1) return false;
    Rational r = (x.a - k * b_) / a_;
    return r.get_den() == 1;
}

bool FracIdeal::contains(const FracIdeal& J) const { return contains(J.basis1()) && contains(J.basis2()); }

Integer FracIdeal::denominator() const { return lcm(lcm(a_.get_den(), b_.get_den()), c_.get_den()); }

bool FracIdeal::operator<(const FracIdeal& o) const {
    Rational n = norm(), m = o.norm();
    if (n != m) return n < m;
    if (a_ != o.a_) return a_ < o.a_;
    if (c_ != o.c_) return c_ < o.c_;
    return b_ < o.b_;
}

FracIdeal operator*(const FracIdeal& I, const FracIdeal& J) {
    Element e1 = I.basis1(), e2 = I.basis2(), f1 = J.basis1(), f2 = J.basis2();
    return z_span(I.field(), {e1 * f1, e1 * f2, e2 * f1, e2 * f2});
}

FracIdeal operator*(const Element& x, const FracIdeal& I) {
    if (x.is_zero()) throw DomainError("zero ideal");
    return z_span(I.field(), {x * I.basis1(), x * I.basis2()});
}

FracIdeal operator+(const FracIdeal& I, const FracIdeal& J) {
    return z_span(I.field(), {I.basis1(), I.basis2(), J.basis1(), J.basis2()});
}

FracIdeal conj(const FracIdeal& I) { return z_span(I.field(), {conj(I.basis1()), conj(I.basis2())}); }

FracIdeal inverse(const FracIdeal& I) {
    Rational n = I.norm();
    Element e1 = conj(I.basis1()) / n, e2 = conj(I.basis2()) / n;
    return z_span(I.field(), {e1, e2});
}

FracIdeal operator/(const FracIdeal& I, const FracIdeal& J) { return I * inverse(J); }

FracIdeal pow(const FracIdeal& I, long e) {
    if (e < 0) return pow(inverse(I), -e);
    FracIdeal r = FracIdeal::unit(I.field()), b = I;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

FracIdeal different(const Field* F) {
    return FracIdeal::principal(Element(F, -F->t, 2));
}

std::string to_string(const FracIdeal& I) {
    return "[" + to_string(I.a()) + ", 0; " + to_string(I.b()) + ", " + to_string(I.c()) + "]";
}

long PrimeIdeal::norm() const { return f == 1 ? ell : ell * ell; }

namespace {

std::vector<long> roots_mod(const Field* F, long ell) {
    std::vector<long> out;
    long s = ((F->s % ell) + ell) % ell;
    for (long r = 0; r < ell; ++r)
        if (((r * r - F->t * r + s) % ell + ell) % ell == 0) out.push_back(r);
    return out;
}

}  // namespace

std::vector<PrimeIdeal> primes_above(const Field* F, long ell) {
    if (!is_prime(ell)) throw DomainError(std::to_string(ell) + " is not prime");
    auto roots = roots_mod(F, ell);
    std::vector<PrimeIdeal> out;
    if (roots.empty()) {
        out.push_back({FracIdeal::rational(F, ell), ell, 1, 2});
        return out;
    }
    // a double root of the minimal polynomial mod ell means ramification
    long dl = F->disc % ell;
    if (dl == 0) {
        Element g(F, -roots[0], 1);
        out.push_back({FracIdeal::from_generators(F, {F->from(ell), g}), ell, 2, 1});
        return out;
    }
    for (long r : roots) {
        Element g(F, -r, 1);
        out.push_back({FracIdeal::from_generators(F, {F->from(ell), g}), ell, 1, 1});
    }
    return out;
}

Splitting splitting(const Field* F, long ell) {
    auto ps = primes_above(F, ell);
    if (ps.size() == 2) return Splitting::split;
    return ps[0].e == 2 ? Splitting::ramified : Splitting::inert;
}

PrimeIdeal as_prime(const FracIdeal& P) {
    if (!P.is_integral()) throw DomainError("not a prime ideal: " + to_string(P));
    Integer N = P.norm().get_num();
    if (N < 2 || !N.fits_slong_p()) throw DomainError("not a prime ideal: " + to_string(P));
    long n = N.get_si();
    auto pf = prime_factors(n);
    if (pf.size() != 1) throw DomainError("not a prime ideal: " + to_string(P));
    for (const auto& q : primes_above(P.field(), pf[0]))
        if (q.P == P) return q;
    throw DomainError("not a prime ideal: " + to_string(P));
}

int valuation(const PrimeIdeal& P, const FracIdeal& I) {
    Integer d = I.denominator();
    FracIdeal J = Rational(d) == 1 ? I : I.field()->from(Rational(d)) * I;
    int v = 0;
    FracIdeal Pinv = inverse(P.P);
    while (P.P.contains(J)) {
        J = J * Pinv;
        ++v;
    }
    int vd = d == 1 ? 0 : valuation(d, P.ell) * P.e;
    return v - vd;
}

int valuation(const PrimeIdeal& P, const Element& x) { return valuation(P, FracIdeal::principal(x)); }

std::vector<std::pair<PrimeIdeal, int>> factor(const FracIdeal& I) {
    Integer d = I.denominator();
    FracIdeal J = I.field()->from(Rational(d)) * I;
    Integer N = J.norm().get_num() * d;
    std::vector<std::pair<PrimeIdeal, int>> out;
    for (long ell : prime_factors(to_int64(N))) {
        for (const auto& P : primes_above(I.field(), ell)) {
            int v = valuation(P, I);
            if (v != 0) out.emplace_back(P, v);
        }
    }
    return out;
}

bool coprime(const FracIdeal& I, long m) {
    for (long ell : prime_factors(m))
        for (const auto& P : primes_above(I.field(), ell))
            if (valuation(P, I) != 0) return false;
    return true;
}

bool coprime(const FracIdeal& I, const FracIdeal& J) {
    for (const auto& [P, e] : factor(J))
        if (valuation(P, I) != 0) return false;
    return true;
}

std::vector<FracIdeal> ideals_of_norm(const Field* F, long N) {
    std::vector<FracIdeal> out;
    if (N < 1) return out;
    Element w = F->omega();
    for (long C = 1; C <= N; ++C) {
        if (N % C) continue;
        long A = N / C;
        // A must be a multiple of C for the lattice to be an ideal containing A*omega
        if (A % C) continue;
        for (long B = 0; B < A; ++B) {
            FracIdeal I;
            try {
                I = FracIdeal::from_hnf(F, A, B, C);
            } catch (const DomainError&) {
                continue;
            }
            out.push_back(I);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<FracIdeal> divisors(const FracIdeal& P) {
    std::vector<FracIdeal> out{FracIdeal::unit(P.field())};
    for (const auto& [Q, e] : factor(P)) {
        if (e != 1) throw DomainError("ideal is not squarefree: " + to_string(P));
        std::size_t n = out.size();
        for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * Q.P);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Element crt_one(const FracIdeal& b, const FracIdeal& n) {
    const Field* F = b.field();
    std::vector<Element> g{b.basis1(), b.basis2(), n.basis1(), n.basis2()};
    std::vector<std::pair<Integer, Integer>> rows;
    for (const auto& x : g) {
        if (!x.is_integral()) throw DomainError("crt_one needs integral ideals");
        rows.emplace_back(x.a.get_num(), x.b.get_num());
    }
    Hnf2 h = hnf2(rows);
    if (h.A != 1 || h.C != 1) throw DomainError("ideals are not coprime");
    (void)F;
    return Rational(h.ca[0]) * g[0] + Rational(h.ca[1]) * g[1];
}

Element find_uniformizer(const PrimeIdeal& P) {
    const Field* F = P.P.field();
    auto others = primes_above(F, P.ell);
    auto good = [&](const Element& x) {
        if (valuation(P, x) != 1) return false;
        for (const auto& Q : others)
            if (!(Q == P) && valuation(Q, x) != 0) return false;
        return true;
    };
    if (P.f == 2) return F->from(P.ell);
    if (P.e == 2) {
        Element r = F->sqrt_d();
        if (good(r)) return r;
        Element r1 = F->one() + r;
        if (good(r1)) return r1;
    }
    Integer r = mod(-P.P.b().get_num(), Integer(P.ell));   // omega - r lies in P
    for (long k = 0; k < 4; ++k) {
        Element x(F, Rational(-r - k * P.ell), 1);
        if (good(x)) return x;
    }
    throw DomainError("no uniformizer found for " + to_string(P.P));
}

}  // namespace hmf
