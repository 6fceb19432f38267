#include "gg/ramsey.hpp"

#include <cmath>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "gg/rng.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace gg {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool same_unordered_pair(const GInt& a1, const GInt& a2, const GInt& b1, const GInt& b2) {
    return (a1 == b1 && a2 == b2) || (a1 == b2 && a2 == b1);
}

// sign-normalize a square root: re > 0, or im >= 0 on the imaginary axis
GInt canonical_root(GInt r) {
    if (r.re < 0 || (r.re == 0 && r.im < 0)) return -r;
    return r;
}

bool in_r_n(const GInt& a, long long n) {
    return a.re >= 1 && a.re <= n && a.im >= 1 && a.im <= n;
}

struct Candidate {
    bool found = false;
    long long rank = 0;
    Witness w;
};

bool try_candidate(const Coloring& coloring, const QuadraticForm& p, bool require_nonzero,
                   const GInt& x, const GInt& y, Witness& out) {
    if (is_zero(x) || is_zero(y) || x == y) return false;
    const long long color = color_of(coloring, x);
    if (color != color_of(coloring, y)) return false;
    const auto n = solve_in_n(p, x, y, require_nonzero);
    if (!n) return false;
    out = Witness{x, y, *n, color};
    return true;
}

}  // namespace

GInt eval_form(const QuadraticForm& p, const GInt& x, const GInt& y, const GInt& n) {
    return p.a * x * x + p.b * y * y + p.c * n * n + p.d * x * y + p.e * x * n + p.f * y * n;
}

AdmissibleTuple make_admissible_tuple(const GInt& g1, const GInt& g2, const GInt& g3,
                                      const GInt& g4) {
    if (g1 == g2 || g3 == g4 || same_unordered_pair(g1, g2, g3, g4))
        throw std::invalid_argument("make_admissible_tuple: tuple is not admissible");
    return {g1, g2, g3, g4};
}

AdmissibleTuple default_admissible_tuple() {
    return make_admissible_tuple({0, 0}, {2, 0}, {1, 1}, {1, -1});
}

std::optional<GInt> gaussian_sqrt(const GInt& w) {
    if (is_zero(w)) return GInt{0, 0};
    const Factorization fac = factor(w);
    GInt v;
    if (fac.unit == GInt{1, 0}) v = {1, 0};
    else if (fac.unit == GInt{-1, 0}) v = {0, 1};
    else
        return std::nullopt;
    GInt root = v;
    for (const auto& [prime, exp] : fac.factors) {
        if (exp % 2 != 0) return std::nullopt;
        root = root * gpow(prime.value, static_cast<unsigned>(exp / 2));
    }
    return canonical_root(root);
}

FormCondition form_condition(const QuadraticForm& p) {
    const GInt four{4, 0};
    FormCondition out;
    out.r1 = gaussian_sqrt(p.e * p.e - four * p.a * p.c);
    out.r2 = gaussian_sqrt(p.f * p.f - four * p.b * p.c);
    out.r3 = gaussian_sqrt((p.e + p.f) * (p.e + p.f) - four * p.c * (p.a + p.b + p.d));
    out.ok = out.r1 && out.r2 && out.r3;
    return out;
}

std::pair<GInt, GInt> solutions_from_tuple(const AdmissibleTuple& t, const GInt& gamma0,
                                           const GInt& gamma_prime, const GInt& alpha,
                                           const GInt& beta) {
    if (is_zero(gamma0))
        throw std::invalid_argument("solutions_from_tuple: gamma0 must be nonzero");
    const GInt scale = gamma_prime * gamma0;
    const GInt x = scale * (alpha + t.g1 * beta) * (alpha + t.g2 * beta);
    const GInt y = scale * (alpha + t.g3 * beta) * (alpha + t.g4 * beta);
    return {x, y};
}

std::optional<GInt> solve_in_n(const QuadraticForm& p, const GInt& x, const GInt& y,
                               bool require_nonzero) {
    const GInt a_part = p.a * x * x + p.b * y * y + p.d * x * y;
    const GInt b_part = p.e * x + p.f * y;
    if (!is_zero(p.c)) {
        const GInt disc = b_part * b_part - GInt{4, 0} * p.c * a_part;
        const auto root = gaussian_sqrt(disc);
        if (!root) return std::nullopt;
        const GInt two_c = GInt{2, 0} * p.c;
        for (const GInt num : {-b_part - *root, -b_part + *root}) {
            if (!divides(two_c, num)) continue;
            const GInt n = exact_div(num, two_c);
            if (!require_nonzero || !is_zero(n)) return n;
        }
        return std::nullopt;
    }
    if (is_zero(p.e) && is_zero(p.f))
        throw std::invalid_argument("solve_in_n: n does not appear in p");
    if (is_zero(b_part)) {
        if (is_zero(a_part)) return require_nonzero ? GInt{1, 0} : GInt{0, 0};
        return std::nullopt;
    }
    if (!divides(b_part, -a_part)) return std::nullopt;
    const GInt n = exact_div(-a_part, b_part);
    if (require_nonzero && is_zero(n)) return std::nullopt;
    return n;
}

const char* color_kind_name(ColorKind k) {
    switch (k) {
        case ColorKind::residue_mod: return "residue";
        case ColorKind::sector: return "sector";
        case ColorKind::norm_band: return "norm_band";
        case ColorKind::seeded_random: return "seeded";
    }
    return "unknown";
}

Coloring residue_coloring(const GInt& modulus) {
    if (is_zero(modulus))
        throw std::invalid_argument("residue_coloring: modulus must be nonzero");
    Coloring c;
    c.kind = ColorKind::residue_mod;
    c.modulus = modulus;
    return c;
}

Coloring sector_coloring(long long count) {
    if (count < 1) throw std::invalid_argument("sector_coloring: count must be at least 1");
    Coloring c;
    c.kind = ColorKind::sector;
    c.sectors = count;
    return c;
}

Coloring norm_band_coloring(long long width) {
    if (width < 1) throw std::invalid_argument("norm_band_coloring: width must be at least 1");
    Coloring c;
    c.kind = ColorKind::norm_band;
    c.band_width = width;
    return c;
}

Coloring seeded_coloring(long long cells, unsigned long long seed) {
    if (cells < 1) throw std::invalid_argument("seeded_coloring: cells must be at least 1");
    Coloring c;
    c.kind = ColorKind::seeded_random;
    c.cells = cells;
    c.seed = seed;
    return c;
}

namespace {

// gdivmod remainders are not unique on a residue class (nearest-quotient
// ties can fall either way), so pick the class representative minimizing
// (norm, re, im) among the remainder's near translates.
GInt canonical_residue(const GInt& z, const GInt& modulus) {
    const GInt r = gdivmod(z, modulus).second;
    const auto key = [](const GInt& g) {
        return std::tuple<long long, long long, long long>(normSq(g), g.re, g.im);
    };
    GInt best = r;
    for (long long dr = -2; dr <= 2; ++dr)
        for (long long di = -2; di <= 2; ++di) {
            const GInt cand = r + GInt{dr, di} * modulus;
            if (key(cand) < key(best)) best = cand;
        }
    return best;
}

}  // namespace

long long color_of(const Coloring& c, const GInt& z) {
    switch (c.kind) {
        case ColorKind::residue_mod: {
            const GInt r = canonical_residue(z, c.modulus);
            const long long radius =
                static_cast<long long>(std::ceil(std::sqrt(static_cast<double>(normSq(c.modulus))))) + 1;
            return (r.re + radius) * (2 * radius + 1) + (r.im + radius);
        }
        case ColorKind::sector: {
            if (is_zero(z)) return 0;
            double a = std::atan2(static_cast<double>(z.im), static_cast<double>(z.re));
            if (a < 0.0) a += 2.0 * kPi;
            const long long idx =
                static_cast<long long>(a / (2.0 * kPi / static_cast<double>(c.sectors)));
            return idx >= c.sectors ? c.sectors - 1 : idx;
        }
        case ColorKind::norm_band:
            return normSq(z) / c.band_width;
        case ColorKind::seeded_random: {
            const uint64_t h = mix64(c.seed ^ mix64(mix64(static_cast<uint64_t>(z.re)) ^
                                                    static_cast<uint64_t>(z.im)));
            return static_cast<long long>(h % static_cast<uint64_t>(c.cells));
        }
    }
    throw std::logic_error("color_of: unknown kind");
}

std::map<long long, long long> cell_sizes(const Coloring& c, long long box) {
    if (box < 1) throw std::invalid_argument("cell_sizes: box must be at least 1");
    std::map<long long, long long> out;
    for (long long re = -box; re <= box; ++re)
        for (long long im = -box; im <= box; ++im) {
            const GInt z{re, im};
            if (is_zero(z)) continue;
            ++out[color_of(c, z)];
        }
    return out;
}

std::optional<Witness> search_monochromatic(const Coloring& coloring, long long box,
                                            const QuadraticForm& p,
                                            bool require_distinct_nonzero) {
    return search_monochromatic(coloring, box, p, require_distinct_nonzero,
                                default_admissible_tuple());
}

std::optional<Witness> search_monochromatic(const Coloring& coloring, long long box,
                                            const QuadraticForm& p,
                                            bool require_distinct_nonzero,
                                            const AdmissibleTuple& t) {
    if (box < 1) throw std::invalid_argument("search_monochromatic: box must be at least 1");
    if (is_zero(p.c) && is_zero(p.e) && is_zero(p.f))
        throw std::invalid_argument("search_monochromatic: n does not appear in p");

    // phase 1: the parameterization's own candidates, real parameters only
    for (long long gp = 1; gp <= box; ++gp) {
        for (long long ar = 1; ar <= box; ++ar) {
            for (long long br = 1; br <= box; ++br) {
                const auto [x, y] =
                    solutions_from_tuple(t, {1, 0}, {gp, 0}, {ar, 0}, {br, 0});
                Witness w;
                if (try_candidate(coloring, p, require_distinct_nonzero, x, y, w)) return w;
            }
        }
    }

    // phase 2: raster scan of all pairs in the box, one x-row slab at a time
    const long long side = 2 * box + 1;
    const long long slab = side * side * side;
    for (long long xr = -box; xr <= box; ++xr) {
        Candidate best;
#ifdef _OPENMP
#pragma omp parallel
#endif
        {
            Candidate local;
#ifdef _OPENMP
#pragma omp for schedule(dynamic, 8) nowait
#endif
            for (long long flat = 0; flat < slab; ++flat) {
                const long long xi = flat / (side * side) - box;
                const long long yr = flat / side % side - box;
                const long long yi = flat % side - box;
                Witness w;
                if (try_candidate(coloring, p, require_distinct_nonzero, {xr, xi}, {yr, yi},
                                  w) &&
                    (!local.found || flat < local.rank)) {
                    local = {true, flat, w};
                }
            }
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (local.found && (!best.found || local.rank < best.rank)) best = local;
            }
        }
        if (best.found) return best.w;
    }
    return std::nullopt;
}

double recurrence_average(const std::function<bool(const GInt&)>& e, const AdmissibleTuple& t,
                          long long n) {
    if (n < 1) throw std::invalid_argument("recurrence_average: n must be at least 1");
    long long total = 0, hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) reduction(+ : total, hits)
#endif
    for (long long a1 = 1; a1 <= n; ++a1) {
        for (long long a2 = 1; a2 <= n; ++a2) {
            const GInt alpha{a1, a2};
            for (long long b1 = 1; b1 <= n; ++b1) {
                for (long long b2 = 1; b2 <= n; ++b2) {
                    const GInt beta{b1, b2};
                    const GInt s1 = alpha + t.g1 * beta;
                    const GInt s2 = alpha + t.g2 * beta;
                    const GInt s3 = alpha + t.g3 * beta;
                    const GInt s4 = alpha + t.g4 * beta;
                    if (!in_r_n(s1, n) || !in_r_n(s2, n) || !in_r_n(s3, n) || !in_r_n(s4, n))
                        continue;
                    ++total;
                    if (e(s1 * s2) && e(s3 * s4)) ++hits;
                }
            }
        }
    }
    if (total == 0)
        throw std::invalid_argument(
            "recurrence_average: n is too small for the tuple, Theta_N is empty");
    return static_cast<double>(hits) / static_cast<double>(total);
}

}  // namespace gg
