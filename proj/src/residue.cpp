#include "hmf/residue.hpp"

namespace hmf {

ResidueRing::ResidueRing(const FracIdeal& n) : n_(n), F_(n.field()) {
    if (!n.is_integral()) throw DomainError("modulus must be integral");
    A_ = to_int64(n.a().get_num());
    B_ = to_int64(n.b().get_num());
    C_ = to_int64(n.c().get_num());
    if (A_ > 3037000499LL / (C_ > 0 ? C_ : 1)) throw BudgetError("modulus too large");
    phi_ = 1;
    for (const auto& [P, e] : factor(n)) {
        primes_.push_back(P);
        std::uint64_t q = static_cast<std::uint64_t>(P.norm());
        for (int i = 1; i < e; ++i) phi_ *= q;
        phi_ *= q - 1;
    }
}

ResidueRing::Res ResidueRing::make(__int128 u, __int128 v) const {
    __int128 q = v / C_;
    if (v - q * C_ < 0) --q;
    v -= q * C_;
    u -= q * B_;
    u %= A_;
    if (u < 0) u += A_;
    return static_cast<Res>(u + A_ * v);
}

ResidueRing::Res ResidueRing::reduce(const Element& x) const {
    if (x.is_integral()) {
        Integer u = mod(x.a.get_num(), Integer(A_ * C_)), v = mod(x.b.get_num(), Integer(A_ * C_));
        return make(u.get_si(), v.get_si());
    }
    FracIdeal den = hmf::inverse(FracIdeal::from_generators(F_, {F_->one(), x}));
    if (!coprime(den, n_)) throw DomainError("element " + to_string(x) + " is not integral at the modulus");
    Element y = crt_one(den, n_);
    return reduce(y * x);
}

Element ResidueRing::lift(Res r) const {
    std::int64_t u = static_cast<std::int64_t>(r % A_), v = static_cast<std::int64_t>(r / A_);
    return Element(F_, Rational(u), Rational(v));
}

ResidueRing::Res ResidueRing::add(Res x, Res y) const {
    __int128 u = x % A_ + y % A_, v = x / A_ + y / A_;
    return make(u, v);
}

ResidueRing::Res ResidueRing::neg(Res x) const {
    __int128 u = -static_cast<__int128>(x % A_), v = -static_cast<__int128>(x / A_);
    return make(u, v);
}

ResidueRing::Res ResidueRing::mul(Res x, Res y) const {
    __int128 a = x % A_, b = x / A_, c = y % A_, d = y / A_;
    __int128 bd = b * d;
    __int128 u = a * c - F_->s * bd, v = a * d + b * c + F_->t * bd;
    return make(u, v);
}

ResidueRing::Res ResidueRing::pow(Res x, std::uint64_t e) const {
    Res r = one(), b = x;
    while (e) {
        if (e & 1) r = mul(r, b);
        e >>= 1;
        if (e) b = mul(b, b);
    }
    return r;
}

bool ResidueRing::is_unit(Res x) const {
    Element e = lift(x);
    for (const auto& P : primes_)
        if (P.P.contains(e)) return false;
    return true;
}

ResidueRing::Res ResidueRing::inverse(Res x) const {
    if (!is_unit(x)) throw DomainError("residue is not a unit");
    return pow(x, phi_ - 1);
}

std::vector<ResidueRing::Res> ResidueRing::units() const {
    std::vector<Res> out;
    std::uint64_t used = 0;
    charge(used, size(), "unit enumeration");
    for (Res r = 0; r < size(); ++r)
        if (is_unit(r)) out.push_back(r);
    return out;
}

}  // namespace hmf
