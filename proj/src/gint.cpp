#include "gg/gint.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gg {

std::string to_string(const GInt& a) {
    std::string s = std::to_string(a.re);
    if (a.im >= 0) s += "+";
    s += std::to_string(a.im) + "i";
    return s;
}

GInt canonical_associate(const GInt& a) {
    if (is_zero(a)) return a;
    GInt g = a;
    for (int k = 0; k < 4; ++k) {
        if (g.re > 0 && g.im >= 0) return g;
        g = GInt{-g.im, g.re};  // multiply by i
    }
    throw std::logic_error("canonical_associate: no quadrant representative");
}

namespace {

// Nearest-integer division, ties away from zero: |num/den - q| <= 1/2.
long long div_round(long long num, long long den) {
    if (num >= 0) return (num + den / 2) / den;
    return -((-num + den / 2) / den);
}

}  // namespace

std::pair<GInt, GInt> gdivmod(const GInt& a, const GInt& b) {
    if (is_zero(b)) throw std::invalid_argument("gdivmod: division by zero");
    const GInt num = a * conj(b);
    const long long n = normSq(b);
    const GInt q{div_round(num.re, n), div_round(num.im, n)};
    return {q, a - q * b};
}

bool divides(const GInt& d, const GInt& a) {
    if (is_zero(d)) return is_zero(a);
    const GInt num = a * conj(d);
    const long long n = normSq(d);
    return num.re % n == 0 && num.im % n == 0;
}

GInt exact_div(const GInt& a, const GInt& d) {
    const GInt num = a * conj(d);
    const long long n = normSq(d);
    if (n == 0 || num.re % n != 0 || num.im % n != 0)
        throw std::invalid_argument("exact_div: not divisible");
    return {num.re / n, num.im / n};
}

GInt ggcd(GInt a, GInt b) {
    while (!is_zero(b)) {
        auto [q, r] = gdivmod(a, b);
        a = b;
        b = r;
    }
    return canonical_associate(a);
}

GInt gpow(const GInt& a, unsigned e) {
    GInt acc{1, 0}, base = a;
    while (e) {
        if (e & 1u) acc = acc * base;
        base = base * base;
        e >>= 1u;
    }
    return acc;
}

const char* class_name(PrimeClass c) {
    switch (c) {
        case PrimeClass::ramified: return "ramified";
        case PrimeClass::split: return "split";
        case PrimeClass::inert: return "inert";
    }
    return "?";
}

bool is_rational_prime(long long n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (long long d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

namespace {

long long powmod(long long base, long long exp, long long mod) {
    unsigned __int128 acc = 1, b = static_cast<unsigned __int128>(base % mod);
    while (exp) {
        if (exp & 1) acc = acc * b % mod;
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<long long>(acc);
}

long long isqrt_ll(long long n) {
    if (n < 0) return -1;
    long long r = static_cast<long long>(std::sqrt(static_cast<double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

// Cornacchia: a^2 + b^2 = p for a rational prime p = 1 mod 4.
GInt split_prime(long long p) {
    long long t = 0;
    for (long long q = 2;; ++q) {
        if (powmod(q, (p - 1) / 2, p) == p - 1) {
            t = powmod(q, (p - 1) / 4, p);
            break;
        }
    }
    if (t > p - t) t = p - t;
    long long r0 = p, r1 = t;
    while (r1 * r1 >= p) {
        long long r2 = r0 % r1;
        r0 = r1;
        r1 = r2;
    }
    const long long a = r1;
    const long long b = isqrt_ll(p - a * a);
    if (a * a + b * b != p)
        throw std::logic_error("split_prime: descent failed for " + std::to_string(p));
    return {a, b};
}

bool prime_order(const CanonicalPrime& x, const CanonicalPrime& y) {
    const long long nx = normSq(x.value), ny = normSq(y.value);
    if (nx != ny) return nx < ny;
    if (x.value.re != y.value.re) return x.value.re < y.value.re;
    return x.value.im < y.value.im;
}

}  // namespace

std::vector<CanonicalPrime> sieve_primes(long long bound_normSq) {
    std::vector<CanonicalPrime> out;
    if (bound_normSq < 2) return out;
    out.push_back({canonical_associate({1, 1}), PrimeClass::ramified});
    for (long long p = 3; p <= bound_normSq; p += 2) {
        if (!is_rational_prime(p)) continue;
        if (p % 4 == 1) {
            const GInt pi = split_prime(p);
            out.push_back({canonical_associate(pi), PrimeClass::split});
            out.push_back({canonical_associate(conj(pi)), PrimeClass::split});
        } else if (p * p <= bound_normSq) {
            out.push_back({GInt{p, 0}, PrimeClass::inert});
        }
    }
    std::sort(out.begin(), out.end(), prime_order);
    return out;
}

PrimeSet make_prime_set(std::vector<CanonicalPrime> primes) {
    PrimeSet set;
    set.primes = std::move(primes);
    double a = 0.0;
    for (const auto& p : set.primes) a += 1.0 / static_cast<double>(normSq(p.value));
    set.aP = a;
    return set;
}

Factorization factor(const GInt& alpha) {
    if (is_zero(alpha)) throw std::invalid_argument("zero has no factorization");
    Factorization f;
    GInt rest = alpha;
    long long n = normSq(alpha);

    auto strip = [&rest](const GInt& p) {
        int m = 0;
        while (divides(p, rest)) {
            rest = exact_div(rest, p);
            ++m;
        }
        return m;
    };

    if (n % 2 == 0) {
        const GInt ram = canonical_associate({1, 1});
        const int m = strip(ram);
        if (m > 0) f.factors.push_back({{ram, PrimeClass::ramified}, m});
        while (n % 2 == 0) n /= 2;
    }
    for (long long p = 3; p * p <= n; p += 2) {
        if (n % p != 0) continue;
        while (n % p == 0) n /= p;
        if (p % 4 == 3) {
            const int m = strip({p, 0});
            if (m > 0) f.factors.push_back({{GInt{p, 0}, PrimeClass::inert}, m});
        } else {
            const GInt pi = canonical_associate(split_prime(p));
            const GInt pibar = canonical_associate(conj(pi));
            int m = strip(pi);
            if (m > 0) f.factors.push_back({{pi, PrimeClass::split}, m});
            m = strip(pibar);
            if (m > 0) f.factors.push_back({{pibar, PrimeClass::split}, m});
        }
    }
    if (n > 1) {
        // leftover rational prime factor of the norm
        if (n % 4 == 3) {
            const int m = strip({n, 0});
            if (m > 0) f.factors.push_back({{GInt{n, 0}, PrimeClass::inert}, m});
        } else {
            const GInt pi = canonical_associate(split_prime(n));
            const GInt pibar = canonical_associate(conj(pi));
            int m = strip(pi);
            if (m > 0) f.factors.push_back({{pi, PrimeClass::split}, m});
            m = strip(pibar);
            if (m > 0) f.factors.push_back({{pibar, PrimeClass::split}, m});
        }
    }
    if (!is_unit(rest))
        throw std::logic_error("factor: non-unit residue for " + to_string(alpha));
    f.unit = rest;
    std::sort(f.factors.begin(), f.factors.end(),
              [](const auto& x, const auto& y) { return prime_order(x.first, y.first); });
    return f;
}

int omega(const GInt& alpha, const PrimeSet& P) {
    if (is_zero(alpha)) throw std::invalid_argument("omega: zero input");
    int count = 0;
    for (const auto& p : P.primes)
        if (divides(p.value, alpha)) ++count;
    return count;
}

TkResult tk_discrepancy(const PrimeSet& P, int x) {
    if (x < 1) throw std::invalid_argument("tk_discrepancy: x must be >= 1");
    TkResult res;
    res.rhs_unit = std::sqrt(P.aP);
    if (P.primes.empty()) return res;

    std::vector<double> row_sum(static_cast<size_t>(x), 0.0);
#pragma omp parallel for schedule(static)
    for (int a = 1; a <= x; ++a) {
        double s = 0.0;
        for (int b = 1; b <= x; ++b) {
            int w = 0;
            const GInt alpha{a, b};
            for (const auto& p : P.primes)
                if (divides(p.value, alpha)) ++w;
            s += std::abs(static_cast<double>(w) - P.aP);
        }
        row_sum[static_cast<size_t>(a - 1)] = s;
    }
    double total = 0.0;
    for (int a = 0; a < x; ++a) total += row_sum[static_cast<size_t>(a)];
    res.lhs = total / (static_cast<double>(x) * static_cast<double>(x));
    return res;
}

}  // namespace gg
