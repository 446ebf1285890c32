#include "hmf/ring.hpp"

#include <map>

namespace hmf {

namespace {

using Poly = std::vector<long>;   // low degree first

Poly poly_divide(Poly num, const Poly& den) {
    Poly q(num.size() - den.size() + 1, 0);
    for (std::size_t i = q.size(); i-- > 0;) {
        long c = num[i + den.size() - 1];   // den is monic
        q[i] = c;
        for (std::size_t j = 0; j < den.size(); ++j) num[i + j] -= c * den[j];
    }
    return q;
}

Poly cyclotomic(long N) {
    static std::map<long, Poly> cache;
    auto it = cache.find(N);
    if (it != cache.end()) return it->second;
    Poly p(static_cast<std::size_t>(N) + 1, 0);
    p[0] = -1;
    p[static_cast<std::size_t>(N)] = 1;
    for (long d = 1; d < N; ++d)
        if (N % d == 0) p = poly_divide(p, cyclotomic(d));
    cache[N] = p;
    return p;
}

}  // namespace

CoeffRing CoeffRing::exact(const Field* F, long zeta_order) {
    if (zeta_order < 1) throw SchemaError("root of unity order must be positive");
    CoeffRing R;
    R.F_ = F;
    R.N_ = zeta_order;
    R.base_dim_ = 2;
    R.init_cyclotomic();
    return R;
}

CoeffRing CoeffRing::torsion(const PrimeIdeal& P, int exponent, long zeta_order) {
    if (exponent < 1) throw SchemaError("torsion exponent must be positive");
    if (zeta_order < 1) throw SchemaError("root of unity order must be positive");
    if (zeta_order % P.ell == 0) throw DomainError("root of unity order divisible by the residue characteristic");
    CoeffRing R;
    R.F_ = P.P.field();
    R.N_ = zeta_order;
    R.P_ = P;
    R.p_ = P.ell;
    R.n_ = exponent;
    R.mod_ = hmf::pow(Integer(P.ell), static_cast<unsigned long>(exponent));
    bool split = primes_above(R.F_, P.ell).size() == 2;
    R.base_dim_ = split ? 1 : 2;
    if (split) R.root_ = R.hensel_root(exponent);
    R.init_cyclotomic();
    return R;
}

void CoeffRing::init_cyclotomic() {
    Poly phi = cyclotomic(N_);
    phi_ = phi.size() - 1;
    zred_.assign(2 * phi_, std::vector<long>(phi_, 0));
    for (std::size_t k = 0; k < phi_; ++k) zred_[k][k] = 1;
    for (std::size_t k = phi_; k < 2 * phi_; ++k) {
        const auto& prev = zred_[k - 1];
        std::vector<long> cur(phi_, 0);
        long top = prev[phi_ - 1];
        for (std::size_t i = phi_ - 1; i > 0; --i) cur[i] = prev[i - 1];
        for (std::size_t i = 0; i < phi_; ++i) cur[i] -= top * phi[i];
        zred_[k] = cur;
    }
}

Integer CoeffRing::hensel_root(int precision) const {
    Integer m = hmf::pow(Integer(p_), static_cast<unsigned long>(precision));
    Integer s = mod(-P_.P.b().get_num(), Integer(p_));
    for (int i = 0; i < precision + 1; ++i) {
        Integer f = s * s - F_->t * s + F_->s;
        Integer df = 2 * s - F_->t;
        s = mod(s - f * inv_mod(df, m), m);
    }
    return s;
}

std::string CoeffRing::describe() const {
    std::string base = is_torsion() ? "O_F/" + to_string(P_.P) + "^" + std::to_string(n_ * P_.e) + " (p^" +
                                          std::to_string(n_) + " = 0)"
                                    : F_->name();
    return N_ > 1 ? base + "[zeta_" + std::to_string(N_) + "]" : base;
}

Rational CoeffRing::reduce(const Rational& q) const {
    if (mod_ == 0) return q;
    if (q.get_den() == 1) return Rational(mod(q.get_num(), mod_));
    if (mpz_divisible_ui_p(q.get_den_mpz_t(), static_cast<unsigned long>(p_)))
        throw DomainError("non-integral value " + to_string(q) + " in a p-torsion ring");
    return Rational(mod(q.get_num() * inv_mod(q.get_den(), mod_), mod_));
}

Coeff CoeffRing::normalize(Coeff x) const {
    if (mod_ != 0)
        for (auto& c : x) c = reduce(c);
    return x;
}

Coeff CoeffRing::one() const {
    Coeff x = zero();
    x[0] = 1;
    return normalize(x);
}

Coeff CoeffRing::from_rational(const Rational& q) const {
    Coeff x = zero();
    x[0] = reduce(q);
    return x;
}

Coeff CoeffRing::theta1(const Element& x) const {
    if (x.F != F_) throw DomainError("element of a different field");
    Coeff out = zero();
    if (base_dim_ == 2) {
        out[0] = reduce(x.a);
        out[1] = reduce(x.b);
        return out;
    }
    Integer d = x.denominator();
    int e = d == 1 ? 0 : valuation(d, p_);
    Integer pe = hmf::pow(Integer(p_), static_cast<unsigned long>(e));
    Integer m = mod_ * pe;
    Integer s = e == 0 ? root_ : hensel_root(n_ + e);
    Rational za = x.a * d, zb = x.b * d;
    Integer v = mod(za.get_num() + zb.get_num() * s, m);
    if (v % pe != 0) throw DomainError("non-integral value " + to_string(x) + " at " + to_string(P_.P));
    v /= pe;
    Integer dr = d / pe;
    out[0] = Rational(mod(v * inv_mod(dr, mod_), mod_));
    return out;
}

Coeff CoeffRing::zeta_pow(long k) const {
    if (N_ == 1) return one();
    k %= N_;
    if (k < 0) k += N_;
    Coeff z = zero();
    for (std::size_t j = 0; j < phi_; ++j) z[j * base_dim_] = zred_[1][j];
    return pow(normalize(z), static_cast<unsigned long>(k));
}

Coeff CoeffRing::add(const Coeff& x, const Coeff& y) const {
    Coeff z(dim());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] + y[i];
    return normalize(std::move(z));
}

Coeff CoeffRing::sub(const Coeff& x, const Coeff& y) const {
    Coeff z(dim());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = x[i] - y[i];
    return normalize(std::move(z));
}

Coeff CoeffRing::neg(const Coeff& x) const {
    Coeff z(dim());
    for (std::size_t i = 0; i < z.size(); ++i) z[i] = -x[i];
    return normalize(std::move(z));
}

Coeff CoeffRing::mul(const Coeff& x, const Coeff& y) const {
    const std::size_t bd = base_dim_;
    // product in B[zeta] before reduction by Phi_N
    std::vector<Rational> acc((2 * phi_ - 1) * bd, 0);
    for (std::size_t j1 = 0; j1 < phi_; ++j1)
        for (std::size_t i1 = 0; i1 < bd; ++i1) {
            const Rational& a = x[j1 * bd + i1];
            if (a == 0) continue;
            for (std::size_t j2 = 0; j2 < phi_; ++j2)
                for (std::size_t i2 = 0; i2 < bd; ++i2) {
                    const Rational& b = y[j2 * bd + i2];
                    if (b == 0) continue;
                    Rational c = a * b;
                    std::size_t j = j1 + j2;
                    if (i1 + i2 < 2) {
                        acc[j * bd + i1 + i2] += c;
                    } else {
                        acc[j * bd] -= F_->s * c;
                        acc[j * bd + 1] += F_->t * c;
                    }
                }
        }
    Coeff z = zero();
    for (std::size_t j = 0; j < 2 * phi_ - 1; ++j)
        for (std::size_t i = 0; i < bd; ++i) {
            const Rational& c = acc[j * bd + i];
            if (c == 0) continue;
            if (j < phi_) {
                z[j * bd + i] += c;
                continue;
            }
            for (std::size_t k = 0; k < phi_; ++k)
                if (zred_[j][k]) z[k * bd + i] += zred_[j][k] * c;
        }
    return normalize(std::move(z));
}

Coeff CoeffRing::pow(const Coeff& x, unsigned long e) const {
    Coeff r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

bool CoeffRing::eq(const Coeff& x, const Coeff& y) const {
    for (std::size_t i = 0; i < dim(); ++i)
        if (x[i] != y[i]) return false;
    return true;
}

bool CoeffRing::is_zero(const Coeff& x) const {
    for (const auto& c : x)
        if (c != 0) return false;
    return true;
}

bool CoeffRing::divisible_by(const Coeff& x, const Integer& d) const {
    if (d == 0) return is_zero(x);
    if (mod_ == 0) return true;
    int k = std::min(valuation(d, p_), n_);
    Integer pk = hmf::pow(Integer(p_), static_cast<unsigned long>(k));
    for (const auto& c : x)
        if (c.get_num() % pk != 0) return false;
    return true;
}

Coeff CoeffRing::random(std::mt19937_64& rng) const {
    Coeff x = zero();
    if (mod_ == 0) {
        std::uniform_int_distribution<int> d(-9, 9);
        for (auto& c : x) c = d(rng);
        return x;
    }
    std::uniform_int_distribution<long> d(0, to_int64(mod_) - 1);
    for (auto& c : x) c = d(rng);
    return x;
}

bool CoeffRing::operator==(const CoeffRing& o) const {
    return F_ == o.F_ && N_ == o.N_ && mod_ == o.mod_ && (mod_ == 0 || P_ == o.P_);
}

CharValue operator*(const CharValue& a, const CharValue& b) { return {a.zeta + b.zeta, a.y * b.y}; }
CharValue inverse(const CharValue& a) { return {-a.zeta, inverse(a.y)}; }
CharValue pow(const CharValue& a, long e) { return {a.zeta * e, pow(a.y, e)}; }
Coeff to_ring(const CoeffRing& R, const CharValue& v) { return R.mul(R.zeta_pow(v.zeta), R.theta1(v.y)); }

}  // namespace hmf
