#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "gg/gint.hpp"

using namespace gg;

namespace {

GInt random_gint(std::mt19937_64& rng, long long span) {
    const long long r = static_cast<long long>(rng() % (2 * span + 1)) - span;
    const long long i = static_cast<long long>(rng() % (2 * span + 1)) - span;
    return {r, i};
}

// Independent Gaussian-primality oracle: alpha is prime iff no beta with
// 1 < normSq(beta) < normSq(alpha) divides it.
bool is_gaussian_prime_brute(const GInt& alpha) {
    const long long n = normSq(alpha);
    if (n < 2) return false;
    for (long long a = 0; a * a < n; ++a) {
        for (long long b = 0; a * a + b * b < n; ++b) {
            const GInt beta{a, b};
            if (normSq(beta) <= 1) continue;
            if (divides(beta, alpha)) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("basic arithmetic and units") {
    const GInt a{3, -2}, b{-1, 4};
    CHECK(a + b == GInt{2, 2});
    CHECK(a * b == GInt{5, 14});
    CHECK(conj(conj(a)) == a);
    CHECK(normSq(a * b) == normSq(a) * normSq(b));
    int units = 0;
    for (long long r = -2; r <= 2; ++r)
        for (long long i = -2; i <= 2; ++i)
            if (is_unit(GInt{r, i})) ++units;
    CHECK(units == 4);
}

TEST_CASE("normSq multiplicative over random pairs") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 10000; ++t) {
        const GInt a = random_gint(rng, 1000), b = random_gint(rng, 1000);
        CHECK(normSq(a * b) == normSq(a) * normSq(b));
    }
}

TEST_CASE("canonical associate lands in the quarter plane, once") {
    std::mt19937_64 rng(12);
    for (int t = 0; t < 2000; ++t) {
        GInt a = random_gint(rng, 50);
        if (is_zero(a)) continue;
        const GInt c = canonical_associate(a);
        CHECK(c.re > 0);
        CHECK(c.im >= 0);
        int hits = 0;
        GInt g = a;
        for (int k = 0; k < 4; ++k) {
            if (g.re > 0 && g.im >= 0) ++hits;
            g = GInt{-g.im, g.re};
        }
        CHECK(hits == 1);
    }
    CHECK(canonical_associate({0, 1}) == GInt{1, 0});
    CHECK(canonical_associate({1, 1}) == GInt{1, 1});
    CHECK(canonical_associate({-3, 0}) == GInt{3, 0});
}

TEST_CASE("gdivmod remainder below half the divisor norm") {
    std::mt19937_64 rng(13);
    for (int t = 0; t < 5000; ++t) {
        const GInt a = random_gint(rng, 500);
        GInt b = random_gint(rng, 60);
        if (is_zero(b)) b = GInt{1, 1};
        auto [q, r] = gdivmod(a, b);
        CHECK(a == q * b + r);
        CHECK(2 * normSq(r) <= normSq(b));
    }
}

TEST_CASE("ggcd divides both arguments and is canonical") {
    std::mt19937_64 rng(14);
    for (int t = 0; t < 2000; ++t) {
        GInt a = random_gint(rng, 200), b = random_gint(rng, 200);
        if (is_zero(a) && is_zero(b)) continue;
        const GInt g = ggcd(a, b);
        CHECK(divides(g, a));
        CHECK(divides(g, b));
        CHECK(g == canonical_associate(g));
    }
    const GInt g = ggcd({6, 0}, {4, 2});
    CHECK(divides(g, {6, 0}));
    CHECK(divides(g, {4, 2}));
    CHECK(normSq(g) == 4);
}

TEST_CASE("sieve: bound 2 and bound 10") {
    const auto tiny = sieve_primes(2);
    REQUIRE(tiny.size() == 1);
    CHECK(tiny[0].value == GInt{1, 1});
    CHECK(tiny[0].cls == PrimeClass::ramified);

    const auto ten = sieve_primes(10);
    REQUIRE(ten.size() == 4);
    CHECK(ten[0].value == GInt{1, 1});
    CHECK(ten[1].value == GInt{1, 2});
    CHECK(ten[2].value == GInt{2, 1});
    CHECK(ten[3].value == GInt{3, 0});
    CHECK(ten[0].cls == PrimeClass::ramified);
    CHECK(ten[1].cls == PrimeClass::split);
    CHECK(ten[2].cls == PrimeClass::split);
    CHECK(ten[3].cls == PrimeClass::inert);
}

TEST_CASE("sieve ordering is (normSq, re) nondecreasing") {
    const auto ps = sieve_primes(2000);
    for (size_t k = 1; k < ps.size(); ++k) {
        const long long n0 = normSq(ps[k - 1].value), n1 = normSq(ps[k].value);
        CHECK(n0 <= n1);
        if (n0 == n1) CHECK(ps[k - 1].value.re < ps[k].value.re);
    }
}

TEST_CASE("sieve matches the brute trial-division oracle up to normSq 10000") {
    const long long bound = 10000;
    const auto ps = sieve_primes(bound);

    std::set<std::pair<long long, long long>> listed;
    for (const auto& p : ps) listed.insert({p.value.re, p.value.im});
    CHECK(listed.size() == ps.size());

    std::set<std::pair<long long, long long>> brute;
    for (long long a = 1; a * a <= bound; ++a) {
        for (long long b = 0; a * a + b * b <= bound; ++b) {
            const GInt alpha{a, b};
            if (canonical_associate(alpha) != alpha) continue;
            if (is_gaussian_prime_brute(alpha)) brute.insert({a, b});
        }
    }
    CHECK(brute == listed);

    // classification tags against the rational-prime shape of the norm
    for (const auto& p : ps) {
        const long long n = normSq(p.value);
        if (p.cls == PrimeClass::ramified) {
            CHECK(n == 2);
        } else if (p.cls == PrimeClass::split) {
            CHECK(is_rational_prime(n));
            CHECK(n % 4 == 1);
        } else {
            CHECK(p.value.im == 0);
            CHECK(is_rational_prime(p.value.re));
            CHECK(p.value.re % 4 == 3);
        }
    }
}

TEST_CASE("sieve closure: every small non-unit has a listed prime divisor") {
    const long long bound = 500;
    const auto ps = sieve_primes(bound);
    for (long long a = -22; a <= 22; ++a) {
        for (long long b = -22; b <= 22; ++b) {
            const GInt alpha{a, b};
            const long long n = normSq(alpha);
            if (n <= 1 || n > bound) continue;
            bool hit = false;
            for (const auto& p : ps)
                if (divides(p.value, alpha)) {
                    hit = true;
                    break;
                }
            CHECK(hit);
        }
    }
}

TEST_CASE("no two sieve members are associates") {
    const auto ps = sieve_primes(3000);
    for (size_t i = 0; i < ps.size(); ++i)
        for (size_t j = i + 1; j < ps.size(); ++j) {
            if (normSq(ps[i].value) != normSq(ps[j].value)) continue;
            CHECK(canonical_associate(ps[i].value) != canonical_associate(ps[j].value));
        }
}

TEST_CASE("norm collisions among canonical primes stay below the bound") {
    const auto ps = sieve_primes(10000);
    std::map<long long, int> byNorm;
    for (const auto& p : ps) ++byNorm[normSq(p.value)];
    for (const auto& [n, c] : byNorm) CHECK(c <= 4);
}

TEST_CASE("factor: worked examples") {
    const auto f5 = factor({5, 0});
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.factors[0].first.value == GInt{1, 2});
    CHECK(f5.factors[0].second == 1);
    CHECK(f5.factors[1].first.value == GInt{2, 1});
    CHECK(f5.factors[1].second == 1);
    GInt prod = f5.unit;
    for (const auto& [p, m] : f5.factors) prod = prod * gpow(p.value, static_cast<unsigned>(m));
    CHECK(prod == GInt{5, 0});

    const auto f1 = factor({1, 0});
    CHECK(f1.unit == GInt{1, 0});
    CHECK(f1.factors.empty());

    const auto fm16 = factor({-16, 0});
    REQUIRE(fm16.factors.size() == 1);
    CHECK(fm16.factors[0].first.value == GInt{1, 1});
    CHECK(fm16.factors[0].second == 8);
    CHECK(fm16.unit * gpow(GInt{1, 1}, 8) == GInt{-16, 0});

    CHECK_THROWS_AS(factor({0, 0}), std::invalid_argument);
}

TEST_CASE("factor round-trips on random inputs") {
    std::mt19937_64 rng(15);
    int done = 0;
    while (done < 10000) {
        const GInt alpha = random_gint(rng, 1000);
        if (is_zero(alpha) || normSq(alpha) > 1000000) continue;
        ++done;
        const auto f = factor(alpha);
        CHECK(is_unit(f.unit));
        GInt prod = f.unit;
        for (const auto& [p, m] : f.factors) {
            CHECK(p.value == canonical_associate(p.value));
            prod = prod * gpow(p.value, static_cast<unsigned>(m));
        }
        CHECK(prod == alpha);
    }
}

TEST_CASE("omega: worked examples") {
    const auto P3 = make_prime_set({{GInt{1, 1}, PrimeClass::ramified},
                                    {GInt{2, 1}, PrimeClass::split},
                                    {GInt{1, 2}, PrimeClass::split}});
    CHECK(omega({5, 0}, P3) == 2);
    CHECK(omega({1, 0}, P3) == 0);

    const auto P2 = make_prime_set({{GInt{1, 1}, PrimeClass::ramified},
                                    {GInt{3, 0}, PrimeClass::inert}});
    CHECK(omega({6, 0}, P2) == 2);
    CHECK_THROWS_AS(omega({0, 0}, P2), std::invalid_argument);
}

TEST_CASE("omega additive on coprime pairs") {
    const auto P = make_prime_set(sieve_primes(100));
    std::mt19937_64 rng(16);
    int done = 0;
    while (done < 2000) {
        const GInt a = random_gint(rng, 40), b = random_gint(rng, 40);
        if (is_zero(a) || is_zero(b)) continue;
        if (!is_unit(ggcd(a, b))) continue;
        ++done;
        CHECK(omega(a * b, P) == omega(a, P) + omega(b, P));
    }
}

TEST_CASE("prime set aP accumulates reciprocal norms") {
    const auto P = make_prime_set(sieve_primes(100));
    double s = 0.0;
    for (const auto& p : P.primes) s += 1.0 / static_cast<double>(normSq(p.value));
    CHECK(std::abs(P.aP - s) <= 1e-12 * std::max(1.0, std::abs(s)));
}

TEST_CASE("tk_discrepancy: empty set and double-loop oracle") {
    const auto none = make_prime_set({});
    const auto r0 = tk_discrepancy(none, 50);
    CHECK(r0.lhs == 0.0);
    CHECK(r0.rhs_unit == 0.0);

    const auto P = make_prime_set({{GInt{1, 1}, PrimeClass::ramified}});
    const auto r = tk_discrepancy(P, 100);
    double oracle = 0.0;
    for (int a = 1; a <= 100; ++a)
        for (int b = 1; b <= 100; ++b) {
            const int w = divides(GInt{1, 1}, GInt{a, b}) ? 1 : 0;
            oracle += std::abs(w - P.aP);
        }
    oracle /= 100.0 * 100.0;
    CHECK(std::abs(r.lhs - oracle) <= 1e-12);
    CHECK(r.rhs_unit == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("tk_discrepancy ratio stays modest as the box grows") {
    const auto P = make_prime_set(sieve_primes(100));
    const auto r1 = tk_discrepancy(P, 100);
    const auto r2 = tk_discrepancy(P, 200);
    CHECK(r1.rhs_unit > 0.0);
    CHECK(r1.lhs / r1.rhs_unit < 8.0);
    CHECK(r2.lhs / r2.rhs_unit < 8.0);
}
