#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmf {

using Integer = mpz_class;
using Rational = mpq_class;

// Exit-code taxonomy of the CLI maps onto these.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct GateError : DomainError {
    using DomainError::DomainError;
};
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Canonicalized n/d; mpq_class(n, d) alone does not reduce.
Rational frac(const Integer& n, const Integer& d);

std::string to_string(const Integer& x);
std::string to_string(const Rational& x);
Rational parse_rational(const std::string& s);

Integer floor(const Rational& x);
Integer ceil(const Rational& x);
Integer mod(const Integer& a, const Integer& m);   // in [0, |m|)
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
// g = u*a + v*b, g >= 0
Integer gcdext(const Integer& a, const Integer& b, Integer& u, Integer& v);
Integer inv_mod(const Integer& a, const Integer& m);
Integer pow(const Integer& a, unsigned long e);
Rational pow(const Rational& a, long e);
int valuation(const Integer& n, long p);
int valuation(const Rational& x, long p);

std::vector<long> prime_factors(long n);
bool is_squarefree(long n);
bool is_prime(long n);
std::int64_t to_int64(const Integer& x);

// Enumeration budget shared by every brute-force search (HMF_BUDGET).
std::uint64_t enumeration_budget();
void charge(std::uint64_t& used, std::uint64_t amount, const char* what);

}  // namespace hmf
