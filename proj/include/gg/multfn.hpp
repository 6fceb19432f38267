#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "gg/gint.hpp"
#include "gg/grid.hpp"

namespace gg {

enum class MultKind { principal, liouville_like, residue_character, archimedean, seeded_random };

const char* kind_name(MultKind k);
MultKind parse_kind(const std::string& name);

// Per-prime values discovered so far, shared between copies of a spec so
// concurrent evaluation stays cheap and deterministic.
struct PrimeValueCache {
    std::mutex mu;
    std::map<std::pair<long long, long long>, cplx> values;
};

// A unit-modulus completely multiplicative function on Z[i] \ {0}, defined by
// its values on canonical primes plus the value at i.
struct MultiplicativeSpec {
    MultKind kind = MultKind::principal;
    cplx unit_value_i{1.0, 0.0};
    uint64_t seed = 0;
    GInt modulus{2, 1};  // residue_character only

    // residue_character tables: residues mod the modulus identified with
    // Z/residue_mod, i mapped to i_residue, residue_values[r] the character value.
    long long residue_mod = 0;
    long long i_residue = 0;
    std::vector<cplx> residue_values;

    std::shared_ptr<PrimeValueCache> prime_values;
};

MultiplicativeSpec make_multiplicative(MultKind kind, uint64_t seed = 0,
                                       const GInt& modulus = GInt{2, 1});

// Value at one canonical prime (cached).
cplx prime_value(const MultiplicativeSpec& chi, const CanonicalPrime& p);

cplx evaluate(const MultiplicativeSpec& chi, const GInt& alpha);

// chi on the box R_n = {1..n}^2, zero elsewhere on the torus.
GridFunction embed(const MultiplicativeSpec& chi, const TorusGrid& grid);

// All alpha with p*alpha inside R_n, in the scan order of p*alpha.
std::vector<GInt> divided_region(const GInt& p, long long n);

struct KataiEntry {
    GInt p, q;
    double statistic = 0.0;
};

struct KataiResult {
    double max_pair_corr = 0.0;
    GInt p, q;
    std::vector<KataiEntry> table;
};

// Pair correlations (1/n^2)|sum f(p a) conj(f(q a))| over all canonical prime
// pairs with k0 < normSq(p) < normSq(q) < k.
KataiResult katai_statistic(const GridFunction& f, long long k0, long long k);

std::string katai_csv(const KataiResult& r);

struct SpectrumPeak {
    long long xi1 = 0, xi2 = 0;
    double magnitude = 0.0;
};

// Frequencies where |fourier(embed(chi))| reaches the threshold, sorted by
// descending magnitude (ties by (xi1, xi2)).
std::vector<SpectrumPeak> spectrum_peaks(const MultiplicativeSpec& chi, const TorusGrid& grid,
                                         double threshold);

// Family config: JSON list of {"kind": name, "seed": int?, "modulus": [re, im]?}.
std::vector<MultiplicativeSpec> family_from_json(const std::string& text);

}  // namespace gg
