#include "gg/multfn.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "gg/rng.hpp"

namespace gg {

namespace {

cplx e2pi(double x) {
    const double t = 2.0 * std::numbers::pi * x;
    return cplx(std::cos(t), std::sin(t));
}

long long powmod(long long base, long long exp, long long mod) {
    unsigned __int128 acc = 1;
    unsigned __int128 b = static_cast<unsigned __int128>(((base % mod) + mod) % mod);
    while (exp > 0) {
        if (exp & 1) acc = acc * b % static_cast<unsigned __int128>(mod);
        b = b * b % static_cast<unsigned __int128>(mod);
        exp >>= 1;
    }
    return static_cast<long long>(acc);
}

long long smallest_primitive_root(long long p) {
    std::vector<long long> prime_factors;
    long long m = p - 1;
    for (long long d = 2; d * d <= m; ++d) {
        if (m % d != 0) continue;
        prime_factors.push_back(d);
        while (m % d == 0) m /= d;
    }
    if (m > 1) prime_factors.push_back(m);
    for (long long g = 2; g < p; ++g) {
        bool primitive = true;
        for (long long f : prime_factors) {
            if (powmod(g, (p - 1) / f, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("smallest_primitive_root: no generator found");
}

void build_residue_tables(MultiplicativeSpec& chi) {
    const GInt m = chi.modulus;
    const long long p0 = normSq(m);
    if (!is_rational_prime(p0) || p0 % 4 != 1 || canonical_associate(m) != m)
        throw std::invalid_argument(
            "residue_character requires a split canonical prime modulus");
    // x + yi = 0 in the residue field, so i = -x / y there.
    const long long inv_y = powmod(m.im, p0 - 2, p0);
    chi.residue_mod = p0;
    chi.i_residue = ((-m.re % p0 + p0) * inv_y) % p0;

    const long long g = smallest_primitive_root(p0);
    std::vector<long long> dlog(static_cast<size_t>(p0), 0);
    long long r = 1;
    for (long long k = 0; k < p0 - 1; ++k) {
        dlog[static_cast<size_t>(r)] = k;
        r = r * g % p0;
    }
    chi.residue_values.assign(static_cast<size_t>(p0), cplx(1.0, 0.0));
    for (long long t = 1; t < p0; ++t)
        chi.residue_values[static_cast<size_t>(t)] =
            e2pi(static_cast<double>(dlog[static_cast<size_t>(t)]) /
                 static_cast<double>(p0 - 1));
}

long long residue_of(const MultiplicativeSpec& chi, const GInt& a) {
    const long long p0 = chi.residue_mod;
    const long long r = (a.re % p0 + a.im % p0 * chi.i_residue) % p0;
    return (r % p0 + p0) % p0;
}

cplx compute_prime_value(const MultiplicativeSpec& chi, const CanonicalPrime& p) {
    switch (chi.kind) {
        case MultKind::principal:
            return cplx(1.0, 0.0);
        case MultKind::liouville_like:
            return cplx(-1.0, 0.0);
        case MultKind::residue_character: {
            const long long r = residue_of(chi, p.value);
            return chi.residue_values[static_cast<size_t>(r)];
        }
        case MultKind::archimedean: {
            const cplx z(static_cast<double>(p.value.re), static_cast<double>(p.value.im));
            const cplx z2 = z * z;
            const double nsq = static_cast<double>(normSq(p.value));
            return z2 * z2 / (nsq * nsq);
        }
        case MultKind::seeded_random: {
            uint64_t s = chi.seed ^ mix64(mix64(static_cast<uint64_t>(p.value.re)) ^
                                          static_cast<uint64_t>(p.value.im));
            return e2pi(unit_double(s));
        }
    }
    throw std::logic_error("compute_prime_value: unknown kind");
}

}  // namespace

const char* kind_name(MultKind k) {
    switch (k) {
        case MultKind::principal: return "principal";
        case MultKind::liouville_like: return "liouville_like";
        case MultKind::residue_character: return "residue_character";
        case MultKind::archimedean: return "archimedean";
        case MultKind::seeded_random: return "seeded_random";
    }
    return "?";
}

MultKind parse_kind(const std::string& name) {
    for (MultKind k : {MultKind::principal, MultKind::liouville_like,
                       MultKind::residue_character, MultKind::archimedean,
                       MultKind::seeded_random})
        if (name == kind_name(k)) return k;
    throw std::invalid_argument("unknown multiplicative kind: " + name);
}

MultiplicativeSpec make_multiplicative(MultKind kind, uint64_t seed, const GInt& modulus) {
    MultiplicativeSpec chi;
    chi.kind = kind;
    chi.seed = seed;
    chi.modulus = modulus;
    chi.prime_values = std::make_shared<PrimeValueCache>();
    if (kind == MultKind::residue_character) {
        build_residue_tables(chi);
        chi.unit_value_i = chi.residue_values[static_cast<size_t>(chi.i_residue)];
    }
    const cplx u4 = std::pow(chi.unit_value_i, 4);
    if (std::abs(u4 - cplx(1.0, 0.0)) > 1e-12)
        throw std::logic_error("multiplicative spec: unit value at i is not a fourth root of 1");
    return chi;
}

cplx prime_value(const MultiplicativeSpec& chi, const CanonicalPrime& p) {
    const std::pair<long long, long long> key{p.value.re, p.value.im};
    {
        std::lock_guard<std::mutex> lock(chi.prime_values->mu);
        auto it = chi.prime_values->values.find(key);
        if (it != chi.prime_values->values.end()) return it->second;
    }
    const cplx v = compute_prime_value(chi, p);
    if (std::abs(std::abs(v) - 1.0) > 1e-12)
        throw std::logic_error("multiplicative spec: prime value off the unit circle");
    std::lock_guard<std::mutex> lock(chi.prime_values->mu);
    return chi.prime_values->values.emplace(key, v).first->second;
}

cplx evaluate(const MultiplicativeSpec& chi, const GInt& alpha) {
    if (is_zero(alpha)) throw std::invalid_argument("evaluate: alpha must be nonzero");
    const Factorization fac = factor(alpha);
    int k = 0;
    for (GInt u{1, 0}; u != fac.unit; u = u * GInt{0, 1}) ++k;
    cplx acc = std::pow(chi.unit_value_i, k);
    for (const auto& [p, mult] : fac.factors) {
        const cplx v = prime_value(chi, p);
        for (int j = 0; j < mult; ++j) acc *= v;
    }
    return acc;
}

GridFunction embed(const MultiplicativeSpec& chi, const TorusGrid& grid) {
    if (grid.n < 1) throw std::invalid_argument("embed: grid.n must be at least 1");
    GridFunction f(grid);
#pragma omp parallel for schedule(dynamic)
    for (long long a = 1; a <= grid.n; ++a)
        for (long long b = 1; b <= grid.n; ++b) f.at(a, b) = evaluate(chi, {a, b});
    return f;
}

std::vector<GInt> divided_region(const GInt& p, long long n) {
    std::vector<GInt> region;
    for (long long a = 1; a <= n; ++a)
        for (long long b = 1; b <= n; ++b) {
            const GInt beta{a, b};
            if (divides(p, beta)) region.push_back(exact_div(beta, p));
        }
    return region;
}

KataiResult katai_statistic(const GridFunction& f, long long k0, long long k) {
    if (k0 >= k) throw std::invalid_argument("katai_statistic: requires k0 < k");
    const long long n = f.grid.n;

    std::vector<CanonicalPrime> primes;
    for (const CanonicalPrime& p : sieve_primes(k - 1))
        if (normSq(p.value) > k0) primes.push_back(p);

    KataiResult result;
    for (size_t i = 0; i < primes.size(); ++i) {
        for (size_t j = i + 1; j < primes.size(); ++j) {
            const GInt p = primes[i].value;
            const GInt q = primes[j].value;
            if (normSq(p) == normSq(q)) continue;
            cplx sum(0.0, 0.0);
            for (const GInt& alpha : divided_region(p, n)) {
                const GInt qa = q * alpha;
                if (qa.re < 1 || qa.re > n || qa.im < 1 || qa.im > n) continue;
                const GInt pa = p * alpha;
                sum += f.at(pa.re, pa.im) * std::conj(f.at(qa.re, qa.im));
            }
            const double stat = std::abs(sum) / (static_cast<double>(n) * static_cast<double>(n));
            result.table.push_back({p, q, stat});
            if (stat > result.max_pair_corr) {
                result.max_pair_corr = stat;
                result.p = p;
                result.q = q;
            }
        }
    }
    if (result.table.empty()) throw std::invalid_argument("no admissible prime pairs");
    return result;
}

std::string katai_csv(const KataiResult& r) {
    std::string out = "p,q,statistic\n";
    char buf[64];
    for (const KataiEntry& e : r.table) {
        std::snprintf(buf, sizeof(buf), "%.17g", e.statistic);
        out += to_string(e.p) + "," + to_string(e.q) + "," + buf + "\n";
    }
    return out;
}

std::vector<SpectrumPeak> spectrum_peaks(const MultiplicativeSpec& chi, const TorusGrid& grid,
                                         double threshold) {
    if (threshold <= 0.0)
        throw std::invalid_argument("spectrum_peaks: threshold must be positive");
    const GridFunction hat = fourier(embed(chi, grid));
    std::vector<SpectrumPeak> peaks;
    const long long L = grid.n_tilde;
    for (long long t1 = 0; t1 < L; ++t1)
        for (long long t2 = 0; t2 < L; ++t2) {
            const double mag = std::abs(hat.at(t1, t2));
            if (mag >= threshold) peaks.push_back({t1, t2, mag});
        }
    std::sort(peaks.begin(), peaks.end(), [](const SpectrumPeak& a, const SpectrumPeak& b) {
        if (a.magnitude != b.magnitude) return a.magnitude > b.magnitude;
        return std::pair{a.xi1, a.xi2} < std::pair{b.xi1, b.xi2};
    });
    return peaks;
}

std::vector<MultiplicativeSpec> family_from_json(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw std::invalid_argument(std::string("family config: ") + e.what());
    }
    if (!doc.is_array()) throw std::invalid_argument("family config: expected a JSON list");
    std::vector<MultiplicativeSpec> family;
    for (const auto& item : doc) {
        if (!item.is_object() || !item.contains("kind"))
            throw std::invalid_argument("family config: each entry needs a \"kind\"");
        const MultKind kind = parse_kind(item["kind"].get<std::string>());
        const uint64_t seed = item.value("seed", 0ULL);
        GInt modulus{2, 1};
        if (item.contains("modulus")) {
            const auto& m = item["modulus"];
            if (!m.is_array() || m.size() != 2)
                throw std::invalid_argument("family config: modulus must be [re, im]");
            modulus = GInt{m[0].get<long long>(), m[1].get<long long>()};
        }
        family.push_back(make_multiplicative(kind, seed, modulus));
    }
    return family;
}

}  // namespace gg
