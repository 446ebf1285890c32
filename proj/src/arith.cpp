#include "hmf/arith.hpp"

#include <cstdlib>

namespace hmf {

Rational frac(const Integer& n, const Integer& d) {
    if (d == 0) throw DomainError("division by zero");
    Rational r(n, d);
    r.canonicalize();
    return r;
}

std::string to_string(const Integer& x) { return x.get_str(); }

std::string to_string(const Rational& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

Rational parse_rational(const std::string& s) {
    auto bad = [&] { return SchemaError("malformed rational '" + s + "'"); };
    if (s.empty()) throw bad();
    auto slash = s.find('/');
    auto valid = [](const std::string& t) {
        std::size_t i = (!t.empty() && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
        if (i >= t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string n = s.substr(0, slash);
    std::string d = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid(n) || !valid(d) || d[0] == '-' || d[0] == '+') throw bad();
    if (n[0] == '+') n = n.substr(1);
    Integer den(d);
    if (den == 0) throw bad();
    Rational r(Integer(n), den);
    r.canonicalize();
    return r;
}

Integer floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer ceil(const Rational& x) {
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return q;
}

Integer mod(const Integer& a, const Integer& m) {
    Integer r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

Integer gcd(const Integer& a, const Integer& b) {
    Integer g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer lcm(const Integer& a, const Integer& b) {
    Integer g;
    mpz_lcm(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer gcdext(const Integer& a, const Integer& b, Integer& u, Integer& v) {
    Integer g;
    mpz_gcdext(g.get_mpz_t(), u.get_mpz_t(), v.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

Integer inv_mod(const Integer& a, const Integer& m) {
    Integer r;
    if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
        throw DomainError("not invertible mod " + m.get_str());
    return r;
}

Integer pow(const Integer& a, unsigned long e) {
    Integer r;
    mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
    return r;
}

Rational pow(const Rational& a, long e) {
    if (e < 0) {
        if (a == 0) throw DomainError("zero to a negative power");
        return pow(Rational(1) / a, -e);
    }
    return frac(pow(a.get_num(), static_cast<unsigned long>(e)), pow(a.get_den(), static_cast<unsigned long>(e)));
}

int valuation(const Integer& n, long p) {
    if (n == 0) throw DomainError("valuation of zero");
    Integer m = abs(n);
    int v = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
        m /= p;
        ++v;
    }
    return v;
}

int valuation(const Rational& x, long p) { return valuation(x.get_num(), p) - valuation(x.get_den(), p); }

std::vector<long> prime_factors(long n) {
    std::vector<long> out;
    if (n < 0) n = -n;
    for (long q = 2; q * q <= n; ++q) {
        if (n % q) continue;
        out.push_back(q);
        while (n % q == 0) n /= q;
    }
    if (n > 1) out.push_back(n);
    return out;
}

bool is_squarefree(long n) {
    if (n == 0) return false;
    if (n < 0) n = -n;
    for (long q = 2; q * q <= n; ++q)
        if (n % (q * q) == 0) return false;
    return true;
}

bool is_prime(long n) {
    if (n < 2) return false;
    for (long q = 2; q * q <= n; ++q)
        if (n % q == 0) return false;
    return true;
}

std::int64_t to_int64(const Integer& x) {
    if (!x.fits_slong_p()) throw BudgetError("integer exceeds machine range: " + x.get_str());
    return x.get_si();
}

std::uint64_t enumeration_budget() {
    const char* s = std::getenv("HMF_BUDGET");
    if (!s || !*s) return 20000000;
    char* end = nullptr;
    auto v = std::strtoull(s, &end, 10);
    return (end && *end == 0 && v > 0) ? std::uint64_t(v) : std::uint64_t(20000000);
}

void charge(std::uint64_t& used, std::uint64_t amount, const char* what) {
    used += amount;
    if (used > enumeration_budget())
        throw BudgetError(std::string("enumeration budget exceeded in ") + what);
}

}  // namespace hmf
