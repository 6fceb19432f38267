#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gg {

// Exact Gaussian integer a+bi on 64-bit components.
struct GInt {
    long long re = 0;
    long long im = 0;

    constexpr GInt() = default;
    constexpr GInt(long long r, long long i = 0) : re(r), im(i) {}

    constexpr GInt operator-() const { return {-re, -im}; }
    constexpr GInt operator+(const GInt& w) const { return {re + w.re, im + w.im}; }
    constexpr GInt operator-(const GInt& w) const { return {re - w.re, im - w.im}; }
    constexpr GInt operator*(const GInt& w) const {
        return {re * w.re - im * w.im, re * w.im + im * w.re};
    }
    constexpr bool operator==(const GInt& w) const { return re == w.re && im == w.im; }
    constexpr bool operator!=(const GInt& w) const { return !(*this == w); }
};

constexpr GInt conj(const GInt& a) { return {a.re, -a.im}; }
constexpr long long normSq(const GInt& a) { return a.re * a.re + a.im * a.im; }
constexpr bool is_zero(const GInt& a) { return a.re == 0 && a.im == 0; }
constexpr bool is_unit(const GInt& a) { return normSq(a) == 1; }

std::string to_string(const GInt& a);

// Unique associate in the quarter plane re > 0, im >= 0 (zero maps to zero).
GInt canonical_associate(const GInt& a);

// Euclidean division: a = q*b + r with normSq(r) <= normSq(b)/2.
std::pair<GInt, GInt> gdivmod(const GInt& a, const GInt& b);

bool divides(const GInt& d, const GInt& a);
GInt exact_div(const GInt& a, const GInt& d);

// gcd up to associates; returned canonical, gcd(0,0) = 0.
GInt ggcd(GInt a, GInt b);

GInt gpow(const GInt& a, unsigned e);

enum class PrimeClass { ramified, split, inert };

const char* class_name(PrimeClass c);

struct CanonicalPrime {
    GInt value;
    PrimeClass cls;
};

struct PrimeSet {
    std::vector<CanonicalPrime> primes;
    double aP = 0.0;  // sum of 1/normSq over members
};

bool is_rational_prime(long long n);

// All canonical Gaussian primes with normSq <= bound, sorted by (normSq, re).
std::vector<CanonicalPrime> sieve_primes(long long bound_normSq);

PrimeSet make_prime_set(std::vector<CanonicalPrime> primes);

struct Factorization {
    GInt unit;
    std::vector<std::pair<CanonicalPrime, int>> factors;  // sorted by (normSq, re)
};

Factorization factor(const GInt& alpha);

// Number of distinct primes of P dividing alpha (up to associates).
int omega(const GInt& alpha, const PrimeSet& P);

struct TkResult {
    double lhs = 0.0;
    double rhs_unit = 0.0;
};

// lhs = (1/x^2) sum over R_x of |omega_P - A_P|; rhs_unit = sqrt(A_P).
TkResult tk_discrepancy(const PrimeSet& P, int x);

}  // namespace gg
