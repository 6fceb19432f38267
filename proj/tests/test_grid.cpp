#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <string>

#include "gg/grid.hpp"
#include "gg/rng.hpp"

using namespace gg;

namespace {

constexpr double kPi = std::numbers::pi;

cplx e2pi(double x) { return cplx(std::cos(2.0 * kPi * x), std::sin(2.0 * kPi * x)); }

GridFunction random_function(const TorusGrid& g, uint64_t seed) {
    GridFunction f(g);
    uint64_t s = seed;
    for (auto& z : f.values) {
        const double re = 2.0 * unit_double(s) - 1.0;
        const double im = 2.0 * unit_double(s) - 1.0;
        z = cplx(re, im);
    }
    return f;
}

double max_abs_diff(const GridFunction& f, const GridFunction& g) {
    double d = 0.0;
    for (size_t k = 0; k < f.values.size(); ++k)
        d = std::max(d, std::abs(f.values[k] - g.values[k]));
    return d;
}

}  // namespace

TEST_CASE("make_grid picks the next prime above the scale bound") {
    CHECK(make_grid(1, 10, false).n_tilde == 1009);
    CHECK(make_grid(1, 1, false).n_tilde == 101);
    CHECK(make_grid(1, 10, true).n_tilde == 11);
    CHECK(make_grid(2, 3, false).n_tilde == 601);
    CHECK(make_grid(1, 50, true).n_tilde == 53);
    CHECK_THROWS_AS(make_grid(0, 10, false), std::invalid_argument);
}

TEST_CASE("torus distance helper") {
    uint64_t s = 7;
    for (int t = 0; t < 1000; ++t) {
        const double x = 10.0 * unit_double(s) - 5.0;
        CHECK(torus_dist(x) == doctest::Approx(torus_dist(-x)).epsilon(1e-12));
        CHECK(torus_dist(x) == doctest::Approx(torus_dist(x + 1.0)).epsilon(1e-9));
        CHECK(torus_dist(x) <= 0.5);
        CHECK(torus_dist(x) >= 0.0);
    }
    CHECK(torus_dist(0.25) == doctest::Approx(0.25));
    CHECK(torus_dist(0.75) == doctest::Approx(0.25));
}

TEST_CASE("fourier of constants and characters") {
    const TorusGrid g = make_grid(1, 6, true);  // n_tilde = 7
    GridFunction one(g);
    for (auto& z : one.values) z = cplx(1.0, 0.0);
    const GridFunction Fhat = fourier(one);
    for (long long x1 = 0; x1 < 7; ++x1)
        for (long long x2 = 0; x2 < 7; ++x2) {
            const cplx want = (x1 == 0 && x2 == 0) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            CHECK(std::abs(Fhat.at(x1, x2) - want) <= 1e-12);
        }

    const long long xi1 = 3, xi2 = 5;
    GridFunction chr(g);
    for (long long a = 0; a < 7; ++a)
        for (long long b = 0; b < 7; ++b)
            chr.at(a, b) = e2pi(static_cast<double>(a * xi1 + b * xi2) / 7.0);
    const GridFunction Chat = fourier(chr);
    for (long long x1 = 0; x1 < 7; ++x1)
        for (long long x2 = 0; x2 < 7; ++x2) {
            const cplx want = (x1 == xi1 && x2 == xi2) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
            CHECK(std::abs(Chat.at(x1, x2) - want) <= 1e-12);
        }
}

TEST_CASE("fourier inversion round-trips") {
    for (long long n : {6LL, 10LL, 100LL}) {
        const TorusGrid g = make_grid(1, n, true);  // 7, 11, 101
        const GridFunction f = random_function(g, 100 + static_cast<uint64_t>(n));
        const GridFunction back = inverse_fourier(fourier(f));
        CHECK(max_abs_diff(f, back) <= 1e-10);
        const GridFunction fwd = fourier(inverse_fourier(f));
        CHECK(max_abs_diff(f, fwd) <= 1e-10);
    }
}

TEST_CASE("parseval on a random function") {
    const TorusGrid g = make_grid(1, 10, true);
    const GridFunction f = random_function(g, 42);
    const GridFunction Fhat = fourier(f);
    double lhs = 0.0, rhs = 0.0;
    for (const auto& z : Fhat.values) lhs += std::norm(z);
    for (const auto& z : f.values) rhs += std::norm(z);
    rhs /= static_cast<double>(f.values.size());
    CHECK(std::abs(lhs - rhs) <= 1e-10);
}

TEST_CASE("convolution identity, commutativity, and the direct path") {
    const TorusGrid g7 = make_grid(1, 6, true);
    const GridFunction f = random_function(g7, 1);

    GridFunction delta(g7);
    delta.at(0, 0) = cplx(49.0, 0.0);
    CHECK(max_abs_diff(convolve(f, delta), f) <= 1e-10);

    const TorusGrid g11 = make_grid(1, 10, true);
    const GridFunction u = random_function(g11, 2);
    const GridFunction v = random_function(g11, 3);
    CHECK(max_abs_diff(convolve(u, v), convolve(v, u)) <= 1e-10);

    const GridFunction w = random_function(g7, 4);
    CHECK(max_abs_diff(convolve(f, w), convolve_direct(f, w)) <= 1e-10);

    CHECK_THROWS_AS(convolve(f, u), std::invalid_argument);
}

TEST_CASE("convolution theorem") {
    const TorusGrid g = make_grid(1, 10, true);
    const GridFunction f = random_function(g, 5);
    const GridFunction h = random_function(g, 6);
    const GridFunction lhs = fourier(convolve(f, h));
    const GridFunction F = fourier(f), H = fourier(h);
    double d = 0.0;
    for (size_t k = 0; k < lhs.values.size(); ++k)
        d = std::max(d, std::abs(lhs.values[k] - F.values[k] * H.values[k]));
    CHECK(d <= 1e-10);
}

TEST_CASE("dilate: identity, i-rotation order four, bijectivity") {
    const TorusGrid g = make_grid(1, 6, true);
    const GridFunction f = random_function(g, 8);
    CHECK(max_abs_diff(dilate(f, {1, 0}), f) == 0.0);

    GridFunction r = f;
    for (int k = 0; k < 4; ++k) r = dilate(r, {0, 1});
    CHECK(max_abs_diff(r, f) == 0.0);

    const TorusGrid g11 = make_grid(1, 10, true);
    const GridFunction u = random_function(g11, 9);
    const GridFunction du = dilate(u, {2, 3});
    auto key = [](const cplx& z) { return std::make_pair(z.real(), z.imag()); };
    std::vector<std::pair<double, double>> a, b;
    for (const auto& z : u.values) a.push_back(key(z));
    for (const auto& z : du.values) b.push_back(key(z));
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    CHECK(a == b);

    CHECK_THROWS_AS(dilate(f, {7, 0}), std::invalid_argument);
}

TEST_CASE("fejer kernel: degenerate, direct double sum, closed-form spectrum") {
    const TorusGrid g11 = make_grid(1, 10, true);

    const Kernel k1 = fejer_kernel(g11, 1);
    for (const auto& z : k1.base.values) CHECK(std::abs(z - cplx(1.0, 0.0)) <= 1e-12);

    const Kernel k2 = fejer_kernel(g11, 2);
    double mean = 0.0, minv = 1e300;
    for (const auto& z : k2.base.values) {
        mean += z.real();
        minv = std::min(minv, z.real());
    }
    mean /= 121.0;
    CHECK(std::abs(mean - 1.0) <= 1e-12);
    CHECK(minv >= 0.0);

    // direct evaluation of the defining double sum
    for (long long a = 0; a < 11; ++a)
        for (long long b = 0; b < 11; ++b) {
            cplx acc(0.0, 0.0);
            for (long long j1 = -1; j1 <= 1; ++j1)
                for (long long j2 = -1; j2 <= 1; ++j2) {
                    const double w = (1.0 - std::abs(j1) / 2.0) * (1.0 - std::abs(j2) / 2.0);
                    acc += w * e2pi(static_cast<double>(j1 * a + j2 * b) / 11.0);
                }
            CHECK(std::abs(k2.base.at(a, b) - acc) <= 1e-10);
        }

    const Kernel k3 = fejer_kernel(g11, 3);
    const GridFunction spec = fourier(k3.base);
    CHECK(std::abs(spec.at(1, 2) - cplx(2.0 / 9.0, 0.0)) <= 1e-10);
    for (long long x1 = 0; x1 < 11; ++x1)
        for (long long x2 = 0; x2 < 11; ++x2) {
            const long long d1 = std::min(x1, 11 - x1), d2 = std::min(x2, 11 - x2);
            const double want = (d1 < 3 && d2 < 3)
                                    ? (1.0 - static_cast<double>(d1) / 3.0) *
                                          (1.0 - static_cast<double>(d2) / 3.0)
                                    : 0.0;
            CHECK(std::abs(spec.at(x1, x2) - cplx(want, 0.0)) <= 1e-10);
        }

    CHECK_THROWS_AS(fejer_kernel(g11, 6), std::invalid_argument);
    CHECK_THROWS_AS(fejer_kernel(g11, 0), std::invalid_argument);
}

TEST_CASE("ceil_inv_eps4 snaps near-integers") {
    CHECK(ceil_inv_eps4(0.5) == 16);
    CHECK(ceil_inv_eps4(0.3) == 124);
    CHECK(ceil_inv_eps4(1.0) == 1);
    CHECK(ceil_inv_eps4(0.1) == 10000);
    CHECK_THROWS_AS(ceil_inv_eps4(0.0), std::invalid_argument);
}

TEST_CASE("phi kernel: Q=1 reduction, dilation relation, spectrum formula") {
    const TorusGrid g = make_grid(1, 100, true);  // n_tilde = 101
    const double eps = 0.9;                       // ceil(eps^-4) = 2

    const Kernel phi1 = phi_kernel(g, 1, 1, eps);
    const Kernel fe = fejer_kernel(g, 2 * ceil_inv_eps4(eps));
    CHECK(max_abs_diff(phi1.base, fe.base) <= 1e-12);

    const TorusGrid g211 = make_grid(1, 210, true);  // n_tilde = 211
    const Kernel phi = phi_kernel(g211, 3, 2, eps);  // m = 24
    CHECK(phi.m == 24);
    const Kernel fen = fejer_kernel(g211, 24);
    // phi(x) = fejer(Q* x), so phi(Qx) = fejer(x)
    CHECK(max_abs_diff(dilate(phi.base, {3, 0}), fen.base) <= 1e-12);

    const GridFunction spec = fourier(phi.base);
    const GridFunction fspec = fourier(fen.base);
    const long long L = 211;
    for (long long x1 = 0; x1 < L; ++x1)
        for (long long x2 = 0; x2 < L; ++x2) {
            // phi_hat(xi) = fejer_hat(Q xi)
            CHECK(std::abs(spec.at(x1, x2) - fspec.at(3 * x1 % L, 3 * x2 % L)) <= 1e-10);
            const double t1 = torus_dist(3.0 * static_cast<double>(x1) / 211.0);
            const double t2 = torus_dist(3.0 * static_cast<double>(x2) / 211.0);
            const double md = static_cast<double>(phi.m) / 211.0;
            const double want =
                (t1 < md && t2 < md)
                    ? (1.0 - t1 * 211.0 / static_cast<double>(phi.m)) *
                          (1.0 - t2 * 211.0 / static_cast<double>(phi.m))
                    : 0.0;
            CHECK(std::abs(spec.at(x1, x2) - cplx(want, 0.0)) <= 1e-10);
        }
}

TEST_CASE("phi kernel monotonicity in eps with shared (Q,V)") {
    const TorusGrid g = make_grid(1, 100, true);  // n_tilde = 101
    const Kernel lo = phi_kernel(g, 1, 1, 0.9);
    const Kernel hi = phi_kernel(g, 1, 1, 0.45);
    const GridFunction slo = fourier(lo.base);
    const GridFunction shi = fourier(hi.base);
    for (size_t k = 0; k < slo.values.size(); ++k) {
        CHECK(slo.values[k].real() >= -1e-10);
        CHECK(shi.values[k].real() >= slo.values[k].real() - 1e-10);
    }
}

TEST_CASE("phi kernel error names the minimal admissible size") {
    const TorusGrid g = make_grid(1, 50, true);  // n_tilde = 53
    try {
        phi_kernel(g, 1, 1, 0.3);
        FAIL("expected a precondition error");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("496") != std::string::npos);
        CHECK(msg.find("499") != std::string::npos);
    }
}

TEST_CASE("csv and binary io round-trip") {
    const TorusGrid g = make_grid(1, 10, true);
    const GridFunction f = random_function(g, 77);

    const std::string csv = "/tmp/gg_test_grid.csv";
    write_csv(f, csv);
    const GridFunction fc = read_csv(csv);
    CHECK(fc.side() == 11);
    CHECK(max_abs_diff(f, fc) == 0.0);

    const std::string bin = "/tmp/gg_test_grid.ggr1";
    write_ggr1(f, bin);
    const GridFunction fb = read_ggr1(bin);
    CHECK(fb.side() == 11);
    CHECK(max_abs_diff(f, fb) <= 1e-6);

    std::remove(csv.c_str());
    std::remove(bin.c_str());
}
