#include "gg/nil.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gg {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx e2pi(double t) {
    const double a = 2.0 * kPi * t;
    return {std::cos(a), std::sin(a)};
}

double frac01(double v) {
    double f = v - std::floor(v);
    if (f >= 1.0) f = 0.0;
    return f;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void check_dim(const NilGroup& g, const NilElement& a, const char* where) {
    if (static_cast<long long>(a.x.size()) != g.s)
        throw std::invalid_argument(std::string(where) + ": element has wrong dimension");
}

// Strictly lower part of b contracted against two coordinate vectors.
double lower_form(const NilGroup& g, const std::vector<double>& u, const std::vector<double>& v) {
    double acc = 0.0;
    for (long long i = 1; i < g.s; ++i) {
        for (long long j = 0; j < i; ++j) {
            const long long bij = g.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (bij != 0) acc += static_cast<double>(bij) * u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
        }
    }
    return acc;
}

__int128 det_bareiss(std::vector<std::vector<__int128>> m) {
    const size_t n = m.size();
    if (n == 0) return 1;
    __int128 prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            size_t piv = k + 1;
            while (piv < n && m[piv][k] == 0) ++piv;
            if (piv == n) return 0;
            std::swap(m[k], m[piv]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    return sign > 0 ? m[n - 1][n - 1] : -m[n - 1][n - 1];
}

// Gram-Schmidt with tiny residuals dropped; returns an orthonormal basis of
// the row span.
std::vector<std::vector<double>> orthonormal_span(const std::vector<std::vector<double>>& rows,
                                                  bool* all_independent) {
    std::vector<std::vector<double>> onb;
    if (all_independent) *all_independent = true;
    for (const auto& row : rows) {
        std::vector<double> r = row;
        double input_norm = 0.0;
        for (double v : row) input_norm += v * v;
        input_norm = std::sqrt(input_norm);
        for (const auto& e : onb) {
            double dot = 0.0;
            for (size_t i = 0; i < r.size(); ++i) dot += r[i] * e[i];
            for (size_t i = 0; i < r.size(); ++i) r[i] -= dot * e[i];
        }
        double nr = 0.0;
        for (double v : r) nr += v * v;
        nr = std::sqrt(nr);
        if (nr <= 1e-9 * std::max(1.0, input_norm)) {
            if (all_independent) *all_independent = false;
            continue;
        }
        for (double& v : r) v /= nr;
        onb.push_back(std::move(r));
    }
    return onb;
}

double residual_outside_span(const std::vector<std::vector<double>>& onb,
                             const std::vector<double>& w) {
    std::vector<double> r = w;
    for (const auto& e : onb) {
        double dot = 0.0;
        for (size_t i = 0; i < r.size(); ++i) dot += r[i] * e[i];
        for (size_t i = 0; i < r.size(); ++i) r[i] -= dot * e[i];
    }
    double mx = 0.0;
    for (double v : r) mx = std::max(mx, std::abs(v));
    return mx;
}

// Exact integer lattice element carried alongside a reduced point.
struct LatticeWord {
    std::vector<long long> x;
    long long y = 0;
};

LatticeWord lattice_of(const NilElement& gamma) {
    LatticeWord w;
    w.x.resize(gamma.x.size());
    for (size_t i = 0; i < gamma.x.size(); ++i) w.x[i] = std::llround(gamma.x[i]);
    w.y = std::llround(gamma.y);
    return w;
}

// Advance the representation g = r * gam by one right factor w, keeping r
// reduced and gam an exact lattice word.
void advance(const NilGroup& g, NilElement& r, LatticeWord& gam, const NilElement& w) {
    double sigma = 0.0;
    for (long long i = 0; i < g.s; ++i) {
        const double gx = static_cast<double>(gam.x[static_cast<size_t>(i)]);
        if (gx == 0.0) continue;
        for (long long j = 0; j < g.s; ++j) {
            long long bij = 0;
            if (i > j) bij = g.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            else if (j > i) bij = -g.b[static_cast<size_t>(j)][static_cast<size_t>(i)];
            if (bij != 0) sigma += static_cast<double>(bij) * gx * w.x[static_cast<size_t>(j)];
        }
    }
    NilElement u = mul(g, r, w);
    u.y += sigma;
    const ReduceResult rr = reduce(g, u);
    const LatticeWord delta = lattice_of(rr.gamma);
    __int128 yy = static_cast<__int128>(delta.y) + gam.y;
    for (long long i = 1; i < g.s; ++i) {
        for (long long j = 0; j < i; ++j) {
            const long long bij = g.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            if (bij != 0)
                yy += static_cast<__int128>(bij) * delta.x[static_cast<size_t>(i)] *
                      gam.x[static_cast<size_t>(j)];
        }
    }
    LatticeWord next;
    next.x.resize(gam.x.size());
    for (size_t i = 0; i < gam.x.size(); ++i) next.x[i] = delta.x[i] + gam.x[i];
    next.y = static_cast<long long>(yy);
    r = rr.point;
    gam = std::move(next);
}

double torus_gap(double a, double b) { return torus_dist(a - b); }

bool points_close(const NilElement& a, const NilElement& b, double tol) {
    for (size_t i = 0; i < a.x.size(); ++i)
        if (torus_gap(a.x[i], b.x[i]) > tol) return false;
    return torus_gap(a.y, b.y) <= tol;
}

long long clamp_ll(double v) { return static_cast<long long>(v); }

}  // namespace

NilGroup make_nil_group(const std::vector<std::vector<long long>>& b) {
    const long long s = static_cast<long long>(b.size());
    if (s == 0) throw std::invalid_argument("make_nil_group: b must be a nonempty square matrix");
    for (const auto& row : b)
        if (static_cast<long long>(row.size()) != s)
            throw std::invalid_argument("make_nil_group: b must be a nonempty square matrix");
    for (long long i = 0; i < s; ++i) {
        for (long long j = 0; j < s; ++j) {
            if (b[static_cast<size_t>(i)][static_cast<size_t>(j)] !=
                -b[static_cast<size_t>(j)][static_cast<size_t>(i)])
                throw std::invalid_argument("make_nil_group: b must be skew-symmetric");
        }
    }
    long long s_prime = 0;
    for (long long i = 0; i < s; ++i)
        for (long long j = 0; j < s; ++j)
            if (b[static_cast<size_t>(i)][static_cast<size_t>(j)] != 0)
                s_prime = std::max(s_prime, std::max(i, j) + 1);
    if (s_prime > 0) {
        std::vector<std::vector<__int128>> blk(static_cast<size_t>(s_prime),
                                               std::vector<__int128>(static_cast<size_t>(s_prime)));
        for (long long i = 0; i < s_prime; ++i)
            for (long long j = 0; j < s_prime; ++j)
                blk[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                    b[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (det_bareiss(std::move(blk)) == 0)
            throw std::invalid_argument("make_nil_group: top-left block of b must be invertible");
    }
    NilGroup g;
    g.s = s;
    g.s_prime = s_prime;
    g.b = b;
    return g;
}

NilElement identity_element(const NilGroup& g) {
    NilElement e;
    e.x.assign(static_cast<size_t>(g.s), 0.0);
    e.y = 0.0;
    return e;
}

NilElement make_element(const NilGroup& g, std::vector<double> x, double y) {
    NilElement e;
    e.x = std::move(x);
    e.y = y;
    check_dim(g, e, "make_element");
    return e;
}

NilElement mul(const NilGroup& g, const NilElement& a, const NilElement& c) {
    check_dim(g, a, "mul");
    check_dim(g, c, "mul");
    NilElement out;
    out.x.resize(a.x.size());
    for (size_t i = 0; i < a.x.size(); ++i) out.x[i] = a.x[i] + c.x[i];
    out.y = a.y + c.y + lower_form(g, a.x, c.x);
    return out;
}

NilElement inv(const NilGroup& g, const NilElement& a) {
    check_dim(g, a, "inv");
    NilElement out;
    out.x.resize(a.x.size());
    for (size_t i = 0; i < a.x.size(); ++i) out.x[i] = -a.x[i];
    out.y = -a.y + lower_form(g, a.x, a.x);
    return out;
}

NilElement nil_pow(const NilGroup& g, const NilElement& a, long long t) {
    check_dim(g, a, "nil_pow");
    NilElement out;
    out.x.resize(a.x.size());
    const double td = static_cast<double>(t);
    for (size_t i = 0; i < a.x.size(); ++i) out.x[i] = td * a.x[i];
    out.y = td * a.y + 0.5 * td * (td - 1.0) * lower_form(g, a.x, a.x);
    return out;
}

NilElement commutator(const NilGroup& g, const NilElement& a, const NilElement& c) {
    return mul(g, mul(g, a, c), inv(g, mul(g, c, a)));
}

double skew_form(const NilGroup& g, const std::vector<double>& u, const std::vector<double>& v) {
    if (static_cast<long long>(u.size()) != g.s || static_cast<long long>(v.size()) != g.s)
        throw std::invalid_argument("skew_form: vectors must have dimension s");
    double acc = 0.0;
    for (long long i = 0; i < g.s; ++i) {
        for (long long j = 0; j < g.s; ++j) {
            long long bij;
            if (i > j) bij = g.b[static_cast<size_t>(i)][static_cast<size_t>(j)];
            else if (j > i) bij = -g.b[static_cast<size_t>(j)][static_cast<size_t>(i)];
            else continue;
            if (bij != 0) acc += static_cast<double>(bij) * u[static_cast<size_t>(i)] * v[static_cast<size_t>(j)];
        }
    }
    return acc;
}

double nil_dist(const NilGroup& g, const NilElement& a, const NilElement& c) {
    const NilElement q = mul(g, a, inv(g, c));
    double mx = std::abs(q.y);
    for (double v : q.x) mx = std::max(mx, std::abs(v));
    return mx;
}

ReduceResult reduce(const NilGroup& g, const NilElement& elem) {
    check_dim(g, elem, "reduce");
    ReduceResult out;
    out.point.x.resize(elem.x.size());
    out.gamma.x.resize(elem.x.size());
    std::vector<double> k(elem.x.size());
    for (size_t i = 0; i < elem.x.size(); ++i) {
        k[i] = std::floor(elem.x[i]);
        out.gamma.x[i] = k[i];
        double f = elem.x[i] - k[i];
        if (f >= 1.0) f = 0.0;
        out.point.x[i] = f;
    }
    const double ybar = elem.y - lower_form(g, out.point.x, k);
    const double l = std::floor(ybar);
    out.gamma.y = l;
    double fy = ybar - l;
    if (fy >= 1.0) fy = 0.0;
    out.point.y = fy;
    return out;
}

PolySeq2 make_poly_seq(const NilGroup& g, NilElement g0, NilElement g11, NilElement g12,
                       NilElement g21, NilElement g22, NilElement g23) {
    check_dim(g, g0, "make_poly_seq");
    check_dim(g, g11, "make_poly_seq");
    check_dim(g, g12, "make_poly_seq");
    check_dim(g, g21, "make_poly_seq");
    check_dim(g, g22, "make_poly_seq");
    check_dim(g, g23, "make_poly_seq");
    for (const NilElement* c : {&g21, &g22, &g23})
        for (double v : c->x)
            if (v != 0.0)
                throw std::invalid_argument("make_poly_seq: g21, g22, g23 must be central");
    PolySeq2 seq;
    seq.g0 = std::move(g0);
    seq.g11 = std::move(g11);
    seq.g12 = std::move(g12);
    seq.g21 = std::move(g21);
    seq.g22 = std::move(g22);
    seq.g23 = std::move(g23);
    return seq;
}

NilElement eval_direct(const NilGroup& g, const PolySeq2& seq, long long m, long long n) {
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);
    NilElement acc = mul(g, seq.g0, nil_pow(g, seq.g11, m));
    acc = mul(g, acc, nil_pow(g, seq.g12, n));
    acc.y += 0.5 * md * (md - 1.0) * seq.g21.y;
    acc.y += md * nd * seq.g22.y;
    acc.y += 0.5 * nd * (nd - 1.0) * seq.g23.y;
    return acc;
}

std::vector<NilElement> orbit(const NilGroup& g, const PolySeq2& seq, long long n_range) {
    if (n_range < 1) throw std::invalid_argument("orbit: n_range must be at least 1");
    const long long n = n_range;
    std::vector<NilElement> out(static_cast<size_t>(n * n));

    // Row bases g(m, 0) by a serial walk in m; each row then advances in n
    // independently, so rows parallelize cleanly.
    std::vector<NilElement> row_point(static_cast<size_t>(n));
    std::vector<LatticeWord> row_word(static_cast<size_t>(n));
    {
        ReduceResult rr = reduce(g, seq.g0);
        NilElement r = rr.point;
        LatticeWord gam = lattice_of(rr.gamma);
        row_point[0] = r;
        row_word[0] = gam;
        for (long long m = 1; m < n; ++m) {
            NilElement w = seq.g11;
            w.y += static_cast<double>(m - 1) * seq.g21.y;
            advance(g, r, gam, w);
            row_point[static_cast<size_t>(m)] = r;
            row_word[static_cast<size_t>(m)] = gam;
        }
    }

    const long long check_stride = std::max<long long>(1, (n * n) / 100);
    std::vector<char> drift(static_cast<size_t>(n), 0);

#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long m = 0; m < n; ++m) {
        NilElement r = row_point[static_cast<size_t>(m)];
        LatticeWord gam = row_word[static_cast<size_t>(m)];
        for (long long j = 0; j < n; ++j) {
            if (j > 0) {
                NilElement w = seq.g12;
                w.y += static_cast<double>(m) * seq.g22.y +
                       static_cast<double>(j - 1) * seq.g23.y;
                advance(g, r, gam, w);
            }
            const long long idx = m * n + j;
            out[static_cast<size_t>(idx)] = r;
            if (idx % check_stride == 0 || idx == n * n - 1) {
                const NilElement direct = reduce(g, eval_direct(g, seq, m, j)).point;
                if (!points_close(r, direct, 1e-6)) drift[static_cast<size_t>(m)] = 1;
            }
        }
    }
    for (char d : drift)
        if (d) throw std::logic_error("orbit: incremental evaluation drifted from direct");
    return out;
}

long long character_norm(const HorizontalCharacter& eta) {
    long long acc = 0;
    for (long long k : eta.k) acc += std::llabs(k);
    return acc;
}

double apply_character(const HorizontalCharacter& eta, const NilElement& elem) {
    if (eta.k.size() != elem.x.size())
        throw std::invalid_argument("apply_character: dimension mismatch");
    double acc = 0.0;
    for (size_t i = 0; i < eta.k.size(); ++i) acc += static_cast<double>(eta.k[i]) * elem.x[i];
    return acc;
}

TorusPoly2 make_torus_poly(double a00, double a10, double a01, double a20, double a11,
                           double a02) {
    TorusPoly2 p;
    p.a00 = frac01(a00);
    p.a10 = frac01(a10);
    p.a01 = frac01(a01);
    p.a20 = frac01(a20);
    p.a11 = frac01(a11);
    p.a02 = frac01(a02);
    return p;
}

double smoothness_norm(const TorusPoly2& p, long long n) { return smoothness_norm(p, n, n); }

double smoothness_norm(const TorusPoly2& p, long long n1, long long n2) {
    if (n1 < 1 || n2 < 1)
        throw std::invalid_argument("smoothness_norm: scales must be at least 1");
    const double d1 = static_cast<double>(n1);
    const double d2 = static_cast<double>(n2);
    double mx = d1 * torus_dist(p.a10);
    mx = std::max(mx, d2 * torus_dist(p.a01));
    mx = std::max(mx, d1 * d1 * torus_dist(p.a20));
    mx = std::max(mx, d1 * d2 * torus_dist(p.a11));
    mx = std::max(mx, d2 * d2 * torus_dist(p.a02));
    return mx;
}

TorusPoly2 character_poly(const NilGroup& g, const PolySeq2& seq,
                          const HorizontalCharacter& eta) {
    if (static_cast<long long>(eta.k.size()) != g.s)
        throw std::invalid_argument("character_poly: eta has wrong dimension");
    return make_torus_poly(apply_character(eta, seq.g0), apply_character(eta, seq.g11),
                           apply_character(eta, seq.g12), 0.0, 0.0, 0.0);
}

NilTestFunction horizontal_test(const NilGroup& g, std::vector<long long> k) {
    if (static_cast<long long>(k.size()) != g.s)
        throw std::invalid_argument("horizontal_test: k has wrong dimension");
    long long norm = 0;
    for (long long v : k) norm += std::llabs(v);
    if (norm == 0) throw std::invalid_argument("horizontal_test: k must be nonzero");
    NilTestFunction f;
    f.vertical = false;
    f.k = std::move(k);
    f.lip = 2.0 * kPi * static_cast<double>(norm);
    return f;
}

NilTestFunction vertical_test(const NilGroup& g, long long k_y) {
    if (k_y == 0) throw std::invalid_argument("vertical_test: k_y must be nonzero");
    NilTestFunction f;
    f.vertical = true;
    f.k.assign(static_cast<size_t>(g.s), 0);
    f.k_y = k_y;
    f.lip = 2.0 * kPi * static_cast<double>(std::llabs(k_y)) + static_cast<double>(g.s) * kPi;
    return f;
}

cplx evaluate_test(const NilTestFunction& f, const NilElement& reduced_point) {
    if (f.k.size() != reduced_point.x.size())
        throw std::invalid_argument("evaluate_test: dimension mismatch");
    if (!f.vertical) {
        double phase = 0.0;
        for (size_t i = 0; i < f.k.size(); ++i)
            phase += static_cast<double>(f.k[i]) * reduced_point.x[i];
        return e2pi(phase) / f.lip;
    }
    double damp = 1.0;
    for (double v : reduced_point.x) {
        const double sn = std::sin(kPi * v);
        damp *= sn * sn;
    }
    return e2pi(static_cast<double>(f.k_y) * reduced_point.y) * (damp / f.lip);
}

double equid_defect(const std::vector<NilElement>& orbit_points, long long n_range,
                    const NilTestFunction& f, const Progression& p1, const Progression& p2) {
    if (n_range < 1 || orbit_points.size() != static_cast<size_t>(n_range * n_range))
        throw std::invalid_argument("equid_defect: orbit size mismatch");
    if (p1.step < 1 || p2.step < 1 || p1.first < 0 || p2.first < 0)
        throw std::invalid_argument("equid_defect: invalid progression");
    cplx acc{0.0, 0.0};
    for (long long m = p1.first; m < n_range; m += p1.step) {
        for (long long j = p2.first; j < n_range; j += p2.step) {
            acc += evaluate_test(f, orbit_points[static_cast<size_t>(m * n_range + j)]);
        }
    }
    return std::abs(acc) / (static_cast<double>(n_range) * static_cast<double>(n_range));
}

std::optional<std::pair<HorizontalCharacter, double>> leibman_search(const NilGroup& g,
                                                                     const PolySeq2& seq,
                                                                     long long n, long long d) {
    if (n < 1) throw std::invalid_argument("leibman_search: n must be at least 1");
    if (d < 1) throw std::invalid_argument("leibman_search: d must be at least 1");
    std::optional<std::pair<HorizontalCharacter, double>> best;
    std::vector<long long> k(static_cast<size_t>(g.s), 0);
    const auto visit = [&](const auto& self, size_t pos, long long budget) -> void {
        if (pos == k.size()) {
            bool zero = true;
            for (long long v : k) zero = zero && v == 0;
            if (zero) return;
            HorizontalCharacter eta{k};
            const double norm = smoothness_norm(character_poly(g, seq, eta), n);
            if (!best || norm < best->second) best = {eta, norm};
            return;
        }
        for (long long v = -budget; v <= budget; ++v) {
            k[pos] = v;
            self(self, pos + 1, budget - std::llabs(v));
        }
        k[pos] = 0;
    };
    visit(visit, 0, d);
    if (best && best->second <= static_cast<double>(d)) return best;
    return std::nullopt;
}

InverseLeibmanResult inverse_leibman_check(const NilGroup& g, const PolySeq2& seq,
                                           const HorizontalCharacter& eta, double d,
                                           long long n1, long long n2) {
    constexpr double kSmallC = 1.0 / (10.0 * kPi);
    constexpr double kLipC = 2.0 * kPi;
    if (character_norm(eta) == 0)
        throw std::invalid_argument("inverse_leibman_check: eta must be nonzero");
    if (static_cast<double>(character_norm(eta)) > d)
        throw std::invalid_argument("inverse_leibman_check: character norm exceeds the bound d");
    const TorusPoly2 poly = character_poly(g, seq, eta);
    if (smoothness_norm(poly, n1, n2) > d)
        throw std::invalid_argument("inverse_leibman_check: composed polynomial is not d-smooth");
    const long long min_n = static_cast<long long>(std::ceil(8.0 * d / kSmallC));
    if (n1 < min_n || n2 < min_n)
        throw std::invalid_argument("inverse_leibman_check: box too small, need n1 and n2 >= " +
                                    std::to_string(min_n));
    const long long m1 = clamp_ll(kSmallC * static_cast<double>(n1) / d);
    const long long m2 = clamp_ll(kSmallC * static_cast<double>(n2) / d);
    cplx acc{0.0, 0.0};
    for (long long m = 1; m <= m1; ++m) {
        const double md = static_cast<double>(m);
        for (long long n = 1; n <= m2; ++n) {
            const double nd = static_cast<double>(n);
            const double val = poly.a00 + poly.a10 * md + poly.a01 * nd +
                               poly.a20 * 0.5 * md * (md - 1.0) + poly.a11 * md * nd +
                               poly.a02 * 0.5 * nd * (nd - 1.0);
            acc += e2pi(val);
        }
    }
    InverseLeibmanResult res;
    res.correlation = std::abs(acc) / (static_cast<double>(m1) * static_cast<double>(m2));
    res.bound = kSmallC * kSmallC / (4.0 * kLipC * d * d * d);
    if (res.correlation < 0.5 - 1e-9)
        throw std::logic_error("inverse_leibman_check: correlation fell below 1/2");
    return res;
}

SubgroupTypeResult subgroup_type(const NilGroup& g, const SubgroupDesc& h) {
    const size_t dim = static_cast<size_t>(2 * g.s + 2);
    for (const auto& v : h.basis)
        if (v.size() != dim)
            throw std::invalid_argument("subgroup_type: basis vectors must have dimension 2s+2");
    bool independent = true;
    const auto onb = orthonormal_span(h.basis, &independent);
    if (!independent)
        throw std::invalid_argument("subgroup_type: basis is not linearly independent");

    const size_t s = static_cast<size_t>(g.s);
    std::vector<std::pair<double, double>> dirs;
    for (size_t i = 0; i < h.basis.size(); ++i) {
        for (size_t j = i + 1; j < h.basis.size(); ++j) {
            std::vector<double> xu(h.basis[i].begin(), h.basis[i].begin() + s);
            std::vector<double> xv(h.basis[j].begin(), h.basis[j].begin() + s);
            std::vector<double> xpu(h.basis[i].begin() + s + 1, h.basis[i].begin() + 2 * s + 1);
            std::vector<double> xpv(h.basis[j].begin() + s + 1, h.basis[j].begin() + 2 * s + 1);
            const double c = skew_form(g, xu, xv);
            const double d = skew_form(g, xpu, xpv);
            std::vector<double> w(dim, 0.0);
            w[s] = c;
            w[2 * s + 1] = d;
            if (residual_outside_span(onb, w) > 1e-9 * std::max(1.0, std::max(std::abs(c), std::abs(d))))
                throw std::invalid_argument("subgroup_type: basis does not span a subgroup");
            if (std::abs(c) > 1e-9 || std::abs(d) > 1e-9) dirs.emplace_back(c, d);
        }
    }

    SubgroupTypeResult res;
    if (dirs.empty()) {
        res.type = 3;
        return res;
    }
    size_t lead = 0;
    double lead_norm = 0.0;
    for (size_t i = 0; i < dirs.size(); ++i) {
        const double nn = std::max(std::abs(dirs[i].first), std::abs(dirs[i].second));
        if (nn > lead_norm) {
            lead_norm = nn;
            lead = i;
        }
    }
    bool collinear = true;
    for (const auto& dd : dirs) {
        if (std::abs(dd.first * dirs[lead].second - dd.second * dirs[lead].first) >
            1e-9 * lead_norm * std::max(std::abs(dd.first), std::abs(dd.second)) + 1e-12)
            collinear = false;
    }
    if (!collinear) {
        res.type = 1;
        return res;
    }
    res.type = 2;
    const double c = dirs[lead].first;
    const double d = dirs[lead].second;
    if (std::abs(c) > 1e-9) {
        res.lambda1 = 1.0;
        res.lambda2 = d / c;
    } else {
        res.lambda1 = 0.0;
        res.lambda2 = 1.0;
    }
    return res;
}

bool good_pair_check(const NilGroup& g, const SubgroupDesc& h, const SubgroupDesc& h_sub) {
    const auto onb = orthonormal_span(h.basis, nullptr);
    for (const auto& v : h_sub.basis) {
        double scale = 0.0;
        for (double c : v) scale = std::max(scale, std::abs(c));
        if (residual_outside_span(onb, v) > 1e-9 * std::max(1.0, scale))
            throw std::invalid_argument("good_pair_check: h_sub is not contained in h");
    }
    const SubgroupTypeResult th = subgroup_type(g, h);
    const SubgroupTypeResult ts = subgroup_type(g, h_sub);
    if (th.type == 1 && ts.type == 1) return true;
    if (th.type == 1 && ts.type == 2) return std::abs(ts.lambda1 - ts.lambda2) > 1e-9;
    if (th.type == 1 && ts.type == 3) return false;
    if (th.type == 2 && ts.type == 2) return true;
    if (th.type == 2 && ts.type == 3) return false;
    if (th.type == 3 && ts.type == 3) return true;
    throw std::logic_error("good_pair_check: impossible type combination");
}

std::pair<NilElement, NilElement> theta_lambda(const NilGroup& g, double l1, double l2,
                                               const std::vector<double>& x,
                                               const std::vector<double>& y, double w, double z) {
    if (l1 == 0.0 && l2 == 0.0)
        throw std::invalid_argument("theta_lambda: lambda must be nonzero");
    if (static_cast<long long>(x.size()) != g.s || static_cast<long long>(y.size()) != g.s)
        throw std::invalid_argument("theta_lambda: x and y must have dimension s");
    NilElement first, second;
    first.x = x;
    second.x = y;
    if (l1 != 0.0) {
        first.y = l1 * z;
        second.y = l2 * z + w;
    } else {
        first.y = w;
        second.y = l2 * z;
    }
    return {first, second};
}

Rat make_rat(long long num, long long den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const long long g = std::gcd(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    return {num, den};
}

Rat rat_add(const Rat& a, const Rat& b) {
    return make_rat(a.num * b.den + b.num * a.den, a.den * b.den);
}

Rat rat_mul(const Rat& a, const Rat& b) { return make_rat(a.num * b.num, a.den * b.den); }

bool rat_eq(const Rat& a, const Rat& b) {
    const Rat na = make_rat(a.num, a.den);
    const Rat nb = make_rat(b.num, b.den);
    return na.num == nb.num && na.den == nb.den;
}

bool lambda_membership(const std::vector<std::vector<Rat>>& m,
                       const std::vector<std::vector<long long>>& b0) {
    const size_t n = b0.size();
    if (n == 0) throw std::invalid_argument("lambda_membership: b0 must be nonempty");
    for (const auto& row : b0)
        if (row.size() != n) throw std::invalid_argument("lambda_membership: b0 must be square");
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (b0[i][j] != -b0[j][i])
                throw std::invalid_argument("lambda_membership: b0 must be skew-symmetric");
    std::vector<std::vector<__int128>> blk(n, std::vector<__int128>(n));
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) blk[i][j] = b0[i][j];
    if (det_bareiss(std::move(blk)) == 0)
        throw std::invalid_argument("lambda_membership: b0 must be invertible");
    if (m.size() != n) throw std::invalid_argument("lambda_membership: m must match b0");
    for (const auto& row : m)
        if (row.size() != n) throw std::invalid_argument("lambda_membership: m must match b0");

    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            Rat acc = make_rat(0, 1);
            for (size_t a = 0; a < n; ++a) {
                for (size_t c = 0; c < n; ++c) {
                    if (b0[a][c] == 0) continue;
                    acc = rat_add(acc, rat_mul(rat_mul(m[a][i], make_rat(b0[a][c], 1)), m[c][j]));
                }
            }
            if (!rat_eq(acc, make_rat(b0[i][j], 1))) return false;
        }
    }
    return true;
}

FactorizationReport rational_smooth_periodic_check(
    const NilGroup& g, const std::vector<NilElement>& eps_seq,
    const std::vector<NilElement>& gprime_seq, const std::vector<NilElement>& gamma_seq,
    const std::vector<NilElement>& g_seq, long long m_bound, long long n_range,
    double slack) {
    const size_t total = static_cast<size_t>(n_range * n_range);
    if (n_range < 1 || eps_seq.size() != total || gprime_seq.size() != total ||
        gamma_seq.size() != total || g_seq.size() != total)
        throw std::invalid_argument("rational_smooth_periodic_check: sequence size mismatch");
    if (m_bound < 1)
        throw std::invalid_argument("rational_smooth_periodic_check: m_bound must be at least 1");

    FactorizationReport rep;
    const NilElement id = identity_element(g);
    const double md = static_cast<double>(m_bound);

    for (size_t idx = 0; idx < total; ++idx) {
        if (nil_dist(g, eps_seq[idx], id) > slack * md) {
            rep.smooth = false;
            rep.failures.push_back("smoothness: eps strays farther than " +
                                   fmt_double(slack * md) + " from the identity at index " +
                                   std::to_string(idx));
            break;
        }
    }
    if (rep.smooth) {
        const double step_cap = slack * md / static_cast<double>(n_range);
        for (long long m = 0; m < n_range && rep.smooth; ++m) {
            for (long long j = 0; j < n_range; ++j) {
                const size_t idx = static_cast<size_t>(m * n_range + j);
                if (j + 1 < n_range &&
                    nil_dist(g, eps_seq[idx + 1], eps_seq[idx]) > step_cap) {
                    rep.smooth = false;
                    rep.failures.push_back("smoothness: eps jumps by more than " +
                                           fmt_double(step_cap) + " at index " +
                                           std::to_string(idx));
                    break;
                }
                if (m + 1 < n_range &&
                    nil_dist(g, eps_seq[idx + static_cast<size_t>(n_range)], eps_seq[idx]) >
                        step_cap) {
                    rep.smooth = false;
                    rep.failures.push_back("smoothness: eps jumps by more than " +
                                           fmt_double(step_cap) + " at index " +
                                           std::to_string(idx));
                    break;
                }
            }
        }
    }

    for (size_t idx = 0; idx < total; ++idx) {
        bool found = false;
        for (long long t = 1; t <= m_bound && !found; ++t) {
            const NilElement p = nil_pow(g, gamma_seq[idx], t);
            bool integral = std::abs(p.y - std::round(p.y)) <= 1e-9;
            for (double v : p.x) integral = integral && std::abs(v - std::round(v)) <= 1e-9;
            found = integral;
        }
        if (!found) {
            rep.rational = false;
            rep.failures.push_back("rationality: no power up to " + std::to_string(m_bound) +
                                   " of gamma lands in the lattice at index " +
                                   std::to_string(idx));
            break;
        }
    }

    std::vector<NilElement> reduced(total);
    for (size_t idx = 0; idx < total; ++idx) reduced[idx] = reduce(g, gamma_seq[idx]).point;
    bool periodic_found = false;
    for (long long p1 = 1; p1 <= m_bound && !periodic_found; ++p1) {
        for (long long p2 = 1; p2 <= m_bound && !periodic_found; ++p2) {
            bool ok = true;
            for (long long m = 0; m < n_range && ok; ++m) {
                for (long long j = 0; j < n_range && ok; ++j) {
                    const size_t idx = static_cast<size_t>(m * n_range + j);
                    if (m + p1 < n_range)
                        ok = points_close(reduced[static_cast<size_t>((m + p1) * n_range + j)],
                                          reduced[idx], 1e-9);
                    if (ok && j + p2 < n_range)
                        ok = points_close(reduced[static_cast<size_t>(m * n_range + j + p2)],
                                          reduced[idx], 1e-9);
                }
            }
            periodic_found = ok;
        }
    }
    if (!periodic_found) {
        rep.periodic = false;
        rep.failures.push_back("periodicity: reduced gamma orbit has no period pair up to " +
                               std::to_string(m_bound));
    }

    for (size_t idx = 0; idx < total; ++idx) {
        const NilElement recomposed =
            mul(g, mul(g, eps_seq[idx], gprime_seq[idx]), gamma_seq[idx]);
        if (nil_dist(g, recomposed, g_seq[idx]) > 1e-9) {
            rep.recomposes = false;
            rep.failures.push_back("recomposition: eps * g' * gamma differs from g at index " +
                                   std::to_string(idx));
            break;
        }
    }
    return rep;
}

NilGroup group_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("group config: ") + e.what());
    }
    try {
        if (!doc.is_object() || !doc.contains("b"))
            throw std::invalid_argument("group config: missing field 'b'");
        const auto b = doc.at("b").get<std::vector<std::vector<long long>>>();
        if (doc.contains("s") && doc.at("s").get<long long>() != static_cast<long long>(b.size()))
            throw std::invalid_argument("group config: s does not match b");
        return make_nil_group(b);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("group config: ") + e.what());
    }
}

std::string orbit_csv(const NilGroup& g, const std::vector<NilElement>& points,
                      long long n_range) {
    if (n_range < 1 || points.size() != static_cast<size_t>(n_range * n_range))
        throw std::invalid_argument("orbit_csv: orbit size mismatch");
    std::ostringstream out;
    out << "m,n";
    for (long long i = 1; i <= g.s; ++i) out << ",x" << i;
    out << ",y\n";
    for (long long m = 0; m < n_range; ++m) {
        for (long long j = 0; j < n_range; ++j) {
            const NilElement& p = points[static_cast<size_t>(m * n_range + j)];
            out << m << ',' << j;
            for (double v : p.x) out << ',' << fmt_double(v);
            out << ',' << fmt_double(p.y) << '\n';
        }
    }
    return out.str();
}

}  // namespace gg
