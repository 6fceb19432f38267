#include "gg/grid.hpp"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>
#include <sstream>

#include "fft_impl.hpp"

namespace gg {

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

long long next_prime_after(long long n) {
    long long c = n + 1;
    if (c <= 2) return 2;
    if (c % 2 == 0) ++c;
    while (!is_rational_prime(c)) c += 2;
    return c;
}

TorusGrid make_grid(int ell, long long n, bool relaxed) {
    if (ell < 1 || n < 1) throw std::invalid_argument("make_grid: ell and n must be >= 1");
    TorusGrid g;
    g.ell = ell;
    g.n = n;
    g.relaxed = relaxed;
    g.n_tilde = next_prime_after(relaxed ? n : 100LL * ell * n);
    return g;
}

TorusGrid grid_from_prime(long long n_tilde) {
    if (n_tilde < 2 || !is_rational_prime(n_tilde))
        throw std::invalid_argument("grid_from_prime: size must be prime");
    TorusGrid g;
    g.ell = 1;
    g.n = n_tilde == 2 ? 1 : n_tilde - 1;
    g.n_tilde = n_tilde;
    g.relaxed = true;
    return g;
}

double torus_dist(double x) {
    const double f = x - std::floor(x);
    return std::min(f, 1.0 - f);
}

long long mod_inverse(long long a, long long m) {
    long long r0 = m, r1 = ((a % m) + m) % m, t0 = 0, t1 = 1;
    while (r1 != 0) {
        const long long q = r0 / r1;
        r0 -= q * r1;
        std::swap(r0, r1);
        t0 -= q * t1;
        std::swap(t0, t1);
    }
    if (r0 != 1) throw std::invalid_argument("mod_inverse: arguments not coprime");
    return ((t0 % m) + m) % m;
}

namespace {

void transform_2d(GridFunction& f, bool inverse) {
    const long long L = f.side();
    const detail::Dft1D plan(L);
#pragma omp parallel
    {
        std::vector<cplx> ws(plan.workspace_size());
        std::vector<cplx> col(static_cast<size_t>(L));
#pragma omp for schedule(static)
        for (long long r = 0; r < L; ++r)
            plan.apply(f.values.data() + static_cast<size_t>(r) * static_cast<size_t>(L), inverse,
                       ws.data());
#pragma omp for schedule(static)
        for (long long c = 0; c < L; ++c) {
            for (long long r = 0; r < L; ++r)
                col[static_cast<size_t>(r)] = f.values[static_cast<size_t>(r) *
                                                           static_cast<size_t>(L) +
                                                       static_cast<size_t>(c)];
            plan.apply(col.data(), inverse, ws.data());
            for (long long r = 0; r < L; ++r)
                f.values[static_cast<size_t>(r) * static_cast<size_t>(L) +
                         static_cast<size_t>(c)] = col[static_cast<size_t>(r)];
        }
    }
}

void check_same_grid(const GridFunction& f, const GridFunction& g, const char* who) {
    if (!(f.grid == g.grid)) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

}  // namespace

GridFunction fourier(const GridFunction& f) {
    GridFunction F = f;
    transform_2d(F, false);
    const double s = 1.0 / (static_cast<double>(f.side()) * static_cast<double>(f.side()));
    for (auto& z : F.values) z *= s;
    return F;
}

GridFunction inverse_fourier(const GridFunction& F) {
    GridFunction f = F;
    transform_2d(f, true);
    return f;
}

GridFunction convolve(const GridFunction& f, const GridFunction& g) {
    check_same_grid(f, g, "convolve");
    GridFunction F = fourier(f);
    const GridFunction G = fourier(g);
    for (size_t k = 0; k < F.values.size(); ++k) F.values[k] *= G.values[k];
    return inverse_fourier(F);
}

GridFunction convolve_direct(const GridFunction& f, const GridFunction& g) {
    check_same_grid(f, g, "convolve");
    const long long L = f.side();
    GridFunction out(f.grid);
    const double scale = 1.0 / (static_cast<double>(L) * static_cast<double>(L));
#pragma omp parallel for collapse(2) schedule(static)
    for (long long a1 = 0; a1 < L; ++a1)
        for (long long a2 = 0; a2 < L; ++a2) {
            cplx acc(0.0, 0.0);
            for (long long b1 = 0; b1 < L; ++b1)
                for (long long b2 = 0; b2 < L; ++b2)
                    acc += f.at(a1 - b1, a2 - b2) * g.at(b1, b2);
            out.at(a1, a2) = acc * scale;
        }
    return out;
}

GridFunction dilate(const GridFunction& f, const GInt& gamma) {
    const long long L = f.side();
    if (normSq(gamma) % L == 0) throw std::invalid_argument("non-invertible dilation");
    GridFunction out(f.grid);
    for (long long a = 0; a < L; ++a)
        for (long long b = 0; b < L; ++b)
            out.at(a, b) = f.at(gamma.re * a - gamma.im * b, gamma.re * b + gamma.im * a);
    return out;
}

long long ceil_inv_eps4(double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    const double x = 1.0 / (eps * eps * eps * eps);
    const double r = std::round(x);
    if (std::abs(x - r) < 1e-9) return static_cast<long long>(r);
    return static_cast<long long>(std::ceil(x));
}

namespace {

// 1-D Fejer values (1/m)(sin(pi m t/L)/sin(pi t/L))^2 for residues t = 0..L-1.
std::vector<double> fejer_row(long long L, long long m) {
    std::vector<double> row(static_cast<size_t>(L));
    row[0] = static_cast<double>(m);
    for (long long t = 1; t < L; ++t) {
        const double num = std::sin(kPi * static_cast<double>(m) * static_cast<double>(t) /
                                    static_cast<double>(L));
        const double den = std::sin(kPi * static_cast<double>(t) / static_cast<double>(L));
        row[static_cast<size_t>(t)] = num * num / (den * den * static_cast<double>(m));
    }
    return row;
}

void check_kernel_invariants(const GridFunction& base, const char* who) {
    const long long L = base.side();
    double mean = 0.0;
    for (const auto& z : base.values) {
        if (z.real() < -1e-12 || std::abs(z.imag()) > 1e-12)
            throw std::logic_error(std::string(who) + ": kernel values must be real nonnegative");
        mean += z.real();
    }
    mean /= static_cast<double>(L) * static_cast<double>(L);
    if (std::abs(mean - 1.0) > 1e-12)
        throw std::logic_error(std::string(who) + ": kernel mean deviates from 1");
}

}  // namespace

Kernel fejer_kernel(const TorusGrid& grid, long long m) {
    if (m < 1) throw std::invalid_argument("fejer_kernel: m must be >= 1");
    if (grid.n_tilde <= 2 * m)
        throw std::invalid_argument(
            "fejer_kernel: requires n_tilde > 2m, got n_tilde = " + std::to_string(grid.n_tilde) +
            ", m = " + std::to_string(m));
    Kernel k;
    k.base = GridFunction(grid);
    k.m = m;
    const auto row = fejer_row(grid.n_tilde, m);
    for (long long a = 0; a < grid.n_tilde; ++a)
        for (long long b = 0; b < grid.n_tilde; ++b)
            k.base.at(a, b) = row[static_cast<size_t>(a)] * row[static_cast<size_t>(b)];
    check_kernel_invariants(k.base, "fejer_kernel");
    return k;
}

Kernel phi_kernel(const TorusGrid& grid, long long Q, long long V, double eps) {
    if (Q < 1 || V < 1) throw std::invalid_argument("phi_kernel: Q and V must be >= 1");
    const long long L = grid.n_tilde;
    if (Q % L == 0) throw std::invalid_argument("phi_kernel: gcd(Q, n_tilde) != 1");
    const long long e4 = ceil_inv_eps4(eps);
    const long long m = 2 * Q * V * e4;
    if (L <= 2 * m)
        throw std::invalid_argument(
            "phi_kernel: requires n_tilde > 4*Q*V*ceil(eps^-4) = " + std::to_string(2 * m) +
            "; smallest admissible n_tilde is " + std::to_string(next_prime_after(2 * m)));
    Kernel k;
    k.base = GridFunction(grid);
    k.m = m;
    k.is_phi = true;
    k.q = Q;
    k.v = V;
    k.q_star = mod_inverse(Q, L);
    k.eps = eps;
    const auto row = fejer_row(L, m);
    for (long long a = 0; a < L; ++a)
        for (long long b = 0; b < L; ++b)
            k.base.at(a, b) = row[static_cast<size_t>((k.q_star * a) % L)] *
                              row[static_cast<size_t>((k.q_star * b) % L)];
    check_kernel_invariants(k.base, "phi_kernel");
    return k;
}

void write_csv(const GridFunction& f, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "w");
    if (!fp) throw std::runtime_error("write_csv: cannot open " + path);
    std::fprintf(fp, "a,b,re,im\n");
    const long long L = f.side();
    for (long long a = 1; a <= L; ++a)
        for (long long b = 1; b <= L; ++b) {
            const cplx z = f.at(a, b);
            std::fprintf(fp, "%lld,%lld,%.17g,%.17g\n", a, b, z.real(), z.imag());
        }
    std::fclose(fp);
}

GridFunction read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_csv: cannot open " + path);
    std::string line;
    struct Row {
        long long a, b;
        double re, im;
    };
    std::vector<Row> rows;
    long long maxab = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (!std::isdigit(static_cast<unsigned char>(line[0])) && line[0] != '-') continue;
        Row r{};
        char* end = nullptr;
        r.a = std::strtoll(line.c_str(), &end, 10);
        if (*end != ',') throw std::runtime_error("read_csv: malformed line: " + line);
        r.b = std::strtoll(end + 1, &end, 10);
        if (*end != ',') throw std::runtime_error("read_csv: malformed line: " + line);
        r.re = std::strtod(end + 1, &end);
        if (*end != ',') throw std::runtime_error("read_csv: malformed line: " + line);
        r.im = std::strtod(end + 1, &end);
        rows.push_back(r);
        maxab = std::max({maxab, r.a, r.b});
    }
    if (rows.empty()) throw std::runtime_error("read_csv: no data rows in " + path);
    if (!is_rational_prime(maxab))
        throw std::runtime_error("read_csv: inferred size " + std::to_string(maxab) +
                                 " is not prime");
    if (static_cast<long long>(rows.size()) != maxab * maxab)
        throw std::runtime_error("read_csv: expected " + std::to_string(maxab * maxab) +
                                 " rows, got " + std::to_string(rows.size()));
    GridFunction f(grid_from_prime(maxab));
    for (const auto& r : rows) f.at(r.a, r.b) = cplx(r.re, r.im);
    return f;
}

void write_ggr1(const GridFunction& f, const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error("write_ggr1: cannot open " + path);
    std::fwrite("GGR1", 1, 4, fp);
    const uint32_t L = static_cast<uint32_t>(f.side());
    std::fwrite(&L, sizeof(L), 1, fp);
    for (long long a = 1; a <= f.side(); ++a)
        for (long long b = 1; b <= f.side(); ++b) {
            const cplx z = f.at(a, b);
            const float pair[2] = {static_cast<float>(z.real()), static_cast<float>(z.imag())};
            std::fwrite(pair, sizeof(float), 2, fp);
        }
    std::fclose(fp);
}

GridFunction read_ggr1(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    if (!fp) throw std::runtime_error("read_ggr1: cannot open " + path);
    char magic[4];
    uint32_t L = 0;
    if (std::fread(magic, 1, 4, fp) != 4 || std::memcmp(magic, "GGR1", 4) != 0 ||
        std::fread(&L, sizeof(L), 1, fp) != 1) {
        std::fclose(fp);
        throw std::runtime_error("read_ggr1: bad header in " + path);
    }
    GridFunction f(grid_from_prime(static_cast<long long>(L)));
    for (long long a = 1; a <= f.side(); ++a)
        for (long long b = 1; b <= f.side(); ++b) {
            float pair[2];
            if (std::fread(pair, sizeof(float), 2, fp) != 2) {
                std::fclose(fp);
                throw std::runtime_error("read_ggr1: truncated data in " + path);
            }
            f.at(a, b) = cplx(pair[0], pair[1]);
        }
    std::fclose(fp);
    return f;
}

}  // namespace gg
