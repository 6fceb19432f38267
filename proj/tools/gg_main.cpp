// gg: command-line front end for the Gaussian-integer experiment toolkit.
//
// Subcommands: sieve, gowers, katai, decompose, nilorbit, leibman,
// partition, recurrence. Scalar reports are JSON (schema "gg/1"), tables
// are CSV; --out selects a file, otherwise stdout. All randomness flows
// from --seed, and a JSON --config file may supply any flag with argv
// taking precedence. GG_THREADS caps module parallelism.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "gg/decomp.hpp"
#include "gg/gint.hpp"
#include "gg/gowers.hpp"
#include "gg/grid.hpp"
#include "gg/multfn.hpp"
#include "gg/nil.hpp"
#include "gg/ramsey.hpp"

using json = nlohmann::ordered_json;
using namespace gg;

namespace {

// ----- plumbing ------------------------------------------------------------

void write_output(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::invalid_argument("cannot open output file: " + out);
    f << text;
}

json new_report(const std::string& subcommand) {
    json j;
    j["schema"] = "gg/1";
    j["subcommand"] = subcommand;
    return j;
}

json gint_json(const GInt& g) { return json::array({g.re, g.im}); }

// Options that a JSON --config file may supply; argv wins on conflicts.
struct ConfigBinder {
    struct Entry {
        CLI::Option* opt;
        std::string key;
        std::function<void(const json&)> apply;
    };
    std::vector<Entry> entries;
    std::string path;

    void apply_file() {
        if (path.empty()) return;
        std::ifstream f(path);
        if (!f) throw std::invalid_argument("cannot open config file: " + path);
        json cfg = json::parse(f);
        if (!cfg.is_object())
            throw std::invalid_argument("config file must hold a JSON object");
        for (const Entry& e : entries)
            if (e.opt->count() == 0 && cfg.contains(e.key)) e.apply(cfg.at(e.key));
    }
};

template <typename T>
void bind_option(CLI::App* cmd, ConfigBinder& binder, const std::string& flag, T& var,
                 const std::string& desc) {
    CLI::Option* opt = cmd->add_option(flag, var, desc)->capture_default_str();
    const std::string key = flag.substr(flag.find_first_not_of('-'));
    binder.entries.push_back({opt, key, [&var](const json& v) { var = v.get<T>(); }});
}

void bind_flag(CLI::App* cmd, ConfigBinder& binder, const std::string& flag, bool& var,
               const std::string& desc) {
    CLI::Option* opt = cmd->add_flag(flag, var, desc);
    std::string primary = flag.substr(0, flag.find(','));
    const std::string key = primary.substr(primary.find_first_not_of('-'));
    binder.entries.push_back({opt, key, [&var](const json& v) { var = v.get<bool>(); }});
}

void add_config(CLI::App* cmd, ConfigBinder& binder) {
    cmd->add_option("--config", binder.path, "JSON file supplying any flag by name");
}

// ----- small parsers --------------------------------------------------------

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) parts.push_back(item);
    return parts;
}

long long parse_ll(const std::string& s, const std::string& what) {
    try {
        size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(what);
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse integer in " + what + ": '" + s + "'");
    }
}

// one Gaussian integer, "3" or "re:im"
GInt parse_gint(const std::string& s, const std::string& what) {
    const auto parts = split(s, ':');
    if (parts.size() == 1) return {parse_ll(parts[0], what), 0};
    if (parts.size() == 2) return {parse_ll(parts[0], what), parse_ll(parts[1], what)};
    throw std::invalid_argument(what + ": expected 'n' or 're:im', got '" + s + "'");
}

QuadraticForm parse_form(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 6)
        throw std::invalid_argument("--form needs six comma-separated coefficients");
    QuadraticForm p;
    GInt* slots[6] = {&p.a, &p.b, &p.c, &p.d, &p.e, &p.f};
    for (int i = 0; i < 6; ++i) *slots[i] = parse_gint(parts[i], "--form");
    return p;
}

AdmissibleTuple parse_tuple(const std::string& s) {
    const auto parts = split(s, ',');
    if (parts.size() != 8)
        throw std::invalid_argument("--tuple needs eight comma-separated integers");
    long long v[8];
    for (int i = 0; i < 8; ++i) v[i] = parse_ll(parts[i], "--tuple");
    return make_admissible_tuple({v[0], v[1]}, {v[2], v[3]}, {v[4], v[5]}, {v[6], v[7]});
}

Coloring parse_coloring(const std::string& s) {
    const auto head = s.find(':');
    const std::string kind = s.substr(0, head);
    const std::string rest = head == std::string::npos ? "" : s.substr(head + 1);
    const auto params = rest.empty() ? std::vector<std::string>{} : split(rest, ',');
    if (kind == "parity") return residue_coloring({1, 1});
    if (kind == "residue") {
        if (params.size() != 2)
            throw std::invalid_argument("--coloring residue needs re,im");
        return residue_coloring(
            {parse_ll(params[0], "--coloring"), parse_ll(params[1], "--coloring")});
    }
    if (kind == "sector") {
        if (params.size() != 1) throw std::invalid_argument("--coloring sector needs count");
        return sector_coloring(parse_ll(params[0], "--coloring"));
    }
    if (kind == "norm_band") {
        if (params.size() != 1)
            throw std::invalid_argument("--coloring norm_band needs width");
        return norm_band_coloring(parse_ll(params[0], "--coloring"));
    }
    if (kind == "seeded") {
        if (params.size() != 2)
            throw std::invalid_argument("--coloring seeded needs cells,seed");
        return seeded_coloring(parse_ll(params[0], "--coloring"),
                               static_cast<unsigned long long>(
                                   parse_ll(params[1], "--coloring")));
    }
    throw std::invalid_argument("unknown coloring kind: '" + kind +
                                "' (residue, sector, norm_band, seeded, parity)");
}

MultKind parse_chi(const std::string& name) {
    if (name == "liouville") return MultKind::liouville_like;
    if (name == "residue") return MultKind::residue_character;
    if (name == "seeded") return MultKind::seeded_random;
    return parse_kind(name);
}

std::string coloring_json_name(const Coloring& c) {
    std::string name = color_kind_name(c.kind);
    switch (c.kind) {
        case ColorKind::residue_mod:
            return name + ":" + std::to_string(c.modulus.re) + "," +
                   std::to_string(c.modulus.im);
        case ColorKind::sector: return name + ":" + std::to_string(c.sectors);
        case ColorKind::norm_band: return name + ":" + std::to_string(c.band_width);
        case ColorKind::seeded_random:
            return name + ":" + std::to_string(c.cells) + "," + std::to_string(c.seed);
    }
    return name;
}

// ----- nil sequence options (nilorbit and leibman share them) ---------------

struct SeqOpts {
    std::string group = "heisenberg";
    std::string g0 = "0,0,0";
    std::string g11 = "0.25,0.15,0";
    std::string g12 = "0.3,0.05,0";
    std::string g21 = "0,0,0.125";
    std::string g22 = "0,0,0.2";
    std::string g23 = "0,0,0.07";
};

void bind_seq(CLI::App* cmd, ConfigBinder& binder, SeqOpts& o) {
    bind_option(cmd, binder, "--group", o.group,
                "'heisenberg' or a JSON file {\"s\": ..., \"b\": [[...]]}");
    bind_option(cmd, binder, "--g0", o.g0, "constant term, s+1 comma values (x..., y)");
    bind_option(cmd, binder, "--g11", o.g11, "linear m coefficient");
    bind_option(cmd, binder, "--g12", o.g12, "linear n coefficient");
    bind_option(cmd, binder, "--g21", o.g21, "central m(m-1)/2 coefficient");
    bind_option(cmd, binder, "--g22", o.g22, "central mn coefficient");
    bind_option(cmd, binder, "--g23", o.g23, "central n(n-1)/2 coefficient");
}

NilGroup load_group(const std::string& spec) {
    if (spec == "heisenberg") return make_nil_group({{0, -1}, {1, 0}});
    std::ifstream f(spec);
    if (!f) throw std::invalid_argument("cannot open group file: " + spec);
    std::stringstream ss;
    ss << f.rdbuf();
    return group_from_json(ss.str());
}

NilElement parse_element(const NilGroup& g, const std::string& s, const std::string& what) {
    const auto parts = split(s, ',');
    if (static_cast<long long>(parts.size()) != g.s + 1)
        throw std::invalid_argument(what + ": expected " + std::to_string(g.s + 1) +
                                    " comma values (x..., y)");
    std::vector<double> x(static_cast<size_t>(g.s));
    for (long long i = 0; i < g.s; ++i) {
        try {
            x[static_cast<size_t>(i)] = std::stod(parts[static_cast<size_t>(i)]);
        } catch (const std::exception&) {
            throw std::invalid_argument(what + ": cannot parse '" +
                                        parts[static_cast<size_t>(i)] + "'");
        }
    }
    double y = 0.0;
    try {
        y = std::stod(parts.back());
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": cannot parse '" + parts.back() + "'");
    }
    return make_element(g, std::move(x), y);
}

PolySeq2 build_seq(const NilGroup& g, const SeqOpts& o) {
    return make_poly_seq(g, parse_element(g, o.g0, "--g0"), parse_element(g, o.g11, "--g11"),
                         parse_element(g, o.g12, "--g12"), parse_element(g, o.g21, "--g21"),
                         parse_element(g, o.g22, "--g22"), parse_element(g, o.g23, "--g23"));
}

// ----- subcommands -----------------------------------------------------------

struct SieveOpts {
    long long bound = 100;
    std::string out;
    bool as_json = false;
};

void run_sieve(const SieveOpts& o) {
    const auto primes = sieve_primes(o.bound);
    if (o.as_json) {
        json j = new_report("sieve");
        j["bound"] = o.bound;
        j["count"] = primes.size();
        json rows = json::array();
        for (const auto& p : primes) {
            const char* cls = p.cls == PrimeClass::ramified ? "ramified"
                              : p.cls == PrimeClass::split  ? "split"
                                                            : "inert";
            rows.push_back(json::array({p.value.re, p.value.im, normSq(p.value), cls}));
        }
        j["primes"] = std::move(rows);
        write_output(j.dump(2) + "\n", o.out);
        return;
    }
    std::string csv = "re,im,norm,class\n";
    for (const auto& p : primes) {
        const char* cls = p.cls == PrimeClass::ramified ? "ramified"
                          : p.cls == PrimeClass::split  ? "split"
                                                        : "inert";
        csv += std::to_string(p.value.re) + "," + std::to_string(p.value.im) + "," +
               std::to_string(normSq(p.value)) + "," + cls + "\n";
    }
    write_output(csv, o.out);
}

struct ChiOpts {
    std::string chi = "liouville";
    unsigned long long seed = 0;
    std::string modulus = "2,1";
};

MultiplicativeSpec build_chi(const ChiOpts& o) {
    const auto parts = split(o.modulus, ',');
    if (parts.size() != 2) throw std::invalid_argument("--modulus needs re,im");
    const GInt m{parse_ll(parts[0], "--modulus"), parse_ll(parts[1], "--modulus")};
    return make_multiplicative(parse_chi(o.chi), o.seed, m);
}

void bind_chi(CLI::App* cmd, ConfigBinder& binder, ChiOpts& o) {
    bind_option(cmd, binder, "--chi", o.chi,
                "principal, liouville, residue, archimedean, or seeded");
    bind_option(cmd, binder, "--seed", o.seed, "seed for all randomness in the run");
    bind_option(cmd, binder, "--modulus", o.modulus, "residue character modulus re,im");
}

struct GowersOpts {
    ChiOpts chi;
    int degree = 2;
    long long n = 20;
    bool exact_grid = false;
    std::string out;
};

void run_gowers(const GowersOpts& o) {
    if (o.degree < 1 || o.degree > 3) throw std::invalid_argument("degree must be 1..3");
    const TorusGrid grid = make_grid(1, o.n, !o.exact_grid);
    const auto chi = build_chi(o.chi);
    const double value = gowers_norm(embed(chi, grid), o.degree);
    json j = new_report("gowers");
    j["degree"] = o.degree;
    j["n"] = o.n;
    j["n_tilde"] = grid.n_tilde;
    j["chi"] = o.chi.chi;
    j["seed"] = o.chi.seed;
    j["value"] = value;
    write_output(j.dump(2) + "\n", o.out);
}

struct KataiOpts {
    ChiOpts chi;
    long long n = 30;
    long long k0 = 1;
    long long k = 40;
    bool exact_grid = false;
    bool as_csv = false;
    std::string out;
};

void run_katai(const KataiOpts& o) {
    const TorusGrid grid = make_grid(1, o.n, !o.exact_grid);
    const auto chi = build_chi(o.chi);
    const auto r = katai_statistic(embed(chi, grid), o.k0, o.k);
    if (o.as_csv) {
        write_output(katai_csv(r), o.out);
        return;
    }
    json j = new_report("katai");
    j["chi"] = o.chi.chi;
    j["seed"] = o.chi.seed;
    j["n"] = o.n;
    j["k0"] = o.k0;
    j["k"] = o.k;
    j["max_pair_corr"] = r.max_pair_corr;
    j["p"] = gint_json(r.p);
    j["q"] = gint_json(r.q);
    json table = json::array();
    for (const auto& e : r.table)
        table.push_back(json{{"p", gint_json(e.p)},
                             {"q", gint_json(e.q)},
                             {"statistic", e.statistic}});
    j["table"] = std::move(table);
    write_output(j.dump(2) + "\n", o.out);
}

struct DecompOpts {
    ChiOpts chi;
    long long n = 50;
    double eps = 0.3;
    std::string q = "auto";
    std::string v = "auto";
    std::string family = "builtin";
    bool exact_grid = false;
    std::string out;
};

void run_decompose(const DecompOpts& o) {
    const TorusGrid grid = make_grid(1, o.n, !o.exact_grid);
    const auto chi = build_chi(o.chi);
    long long q = 0, v = 0;
    if (o.q != "auto") q = parse_ll(o.q, "--q");
    if (o.v != "auto") v = parse_ll(o.v, "--v");
    if (q == 0 || v == 0) {
        std::vector<MultiplicativeSpec> family;
        if (o.family == "builtin")
            family = {make_multiplicative(MultKind::principal),
                      make_multiplicative(MultKind::liouville_like),
                      make_multiplicative(MultKind::residue_character),
                      make_multiplicative(MultKind::archimedean),
                      make_multiplicative(MultKind::seeded_random, o.chi.seed)};
        else if (o.family == "single")
            family = {chi};
        else
            throw std::invalid_argument("--family must be 'builtin' or 'single'");
        const auto est = estimate_qv(family, grid, o.eps);
        if (q == 0) q = est.q;
        if (v == 0) v = est.v;
    }
    const auto rep = decompose(chi, grid, o.eps, q, v);
    json j = new_report("decompose");
    j["chi"] = o.chi.chi;
    j["family"] = o.family;
    j["seed"] = o.chi.seed;
    j["n"] = o.n;
    j["n_tilde"] = grid.n_tilde;
    j["eps"] = rep.eps;
    j["q"] = rep.q;
    j["v"] = rep.v;
    j["r"] = rep.r;
    j["u2_of_u"] = rep.u2_of_u;
    j["periodicity_residual"] = rep.periodicity_residual;
    write_output(j.dump(2) + "\n", o.out);
}

struct NilorbitOpts {
    SeqOpts seq;
    long long range = 12;
    bool as_json = false;
    std::string out;
};

void run_nilorbit(const NilorbitOpts& o) {
    const NilGroup g = load_group(o.seq.group);
    const PolySeq2 seq = build_seq(g, o.seq);
    const auto points = orbit(g, seq, o.range);
    if (!o.as_json) {
        write_output(orbit_csv(g, points, o.range), o.out);
        return;
    }
    json j = new_report("nilorbit");
    j["group"] = o.seq.group;
    j["range"] = o.range;
    json rows = json::array();
    for (long long m = 0; m < o.range; ++m)
        for (long long n = 0; n < o.range; ++n) {
            const auto& pt = points[static_cast<size_t>(m * o.range + n)];
            json row = json::array({m, n});
            for (const double c : pt.x) row.push_back(c);
            row.push_back(pt.y);
            rows.push_back(std::move(row));
        }
    j["points"] = std::move(rows);
    write_output(j.dump(2) + "\n", o.out);
}

struct LeibmanOpts {
    SeqOpts seq;
    long long range = 200;
    long long d = 5;
    bool check = false;
    long long n1 = 300;
    long long n2 = 300;
    std::string out;
};

void run_leibman(const LeibmanOpts& o) {
    const NilGroup g = load_group(o.seq.group);
    const PolySeq2 seq = build_seq(g, o.seq);
    const auto found = leibman_search(g, seq, o.range, o.d);
    json j = new_report("leibman");
    j["group"] = o.seq.group;
    j["range"] = o.range;
    j["d"] = o.d;
    j["found"] = found.has_value();
    if (found) {
        j["eta"] = found->first.k;
        j["smoothness"] = found->second;
    }
    if (o.check) {
        if (!found)
            throw std::invalid_argument(
                "leibman: no smoothness certificate found, nothing to check");
        const auto res = inverse_leibman_check(g, seq, found->first,
                                               static_cast<double>(o.d), o.n1, o.n2);
        j["check"] = json{{"correlation", res.correlation}, {"bound", res.bound}};
    }
    write_output(j.dump(2) + "\n", o.out);
}

struct PartitionOpts {
    std::string form = "1,-1,-1,0,0,0";
    std::string coloring = "sector:4";
    long long box = 10;
    bool allow_zero_n = false;
    bool as_json = true;
    std::string out;
};

void run_partition(const PartitionOpts& o) {
    const QuadraticForm p = parse_form(o.form);
    const Coloring col = parse_coloring(o.coloring);
    const auto w = search_monochromatic(col, o.box, p, !o.allow_zero_n);
    json j = new_report("partition");
    j["form"] = json::array({gint_json(p.a), gint_json(p.b), gint_json(p.c), gint_json(p.d),
                             gint_json(p.e), gint_json(p.f)});
    j["coloring"] = coloring_json_name(col);
    j["box"] = o.box;
    j["found"] = w.has_value();
    if (w) {
        j["x"] = gint_json(w->x);
        j["y"] = gint_json(w->y);
        j["n"] = gint_json(w->n);
        j["color"] = w->color;
    }
    json sizes = json::object();
    for (const auto& [color, count] : cell_sizes(col, o.box))
        sizes[std::to_string(color)] = count;
    j["cell_sizes"] = std::move(sizes);
    write_output(j.dump(2) + "\n", o.out);
}

struct RecurrenceOpts {
    std::string tuple = "0,0,2,0,1,1,1,-1";
    std::string target = "even";
    long long n = 12;
    std::string out;
};

void run_recurrence(const RecurrenceOpts& o) {
    const AdmissibleTuple t = parse_tuple(o.tuple);
    std::function<bool(const GInt&)> e;
    if (o.target == "all") {
        e = [](const GInt&) { return true; };
    } else if (o.target == "even") {
        e = [](const GInt& z) { return (z.re + z.im) % 2 == 0; };
    } else if (o.target.rfind("normdiv:", 0) == 0) {
        const long long m = parse_ll(o.target.substr(8), "--target normdiv");
        if (m < 1) throw std::invalid_argument("--target normdiv needs a positive modulus");
        e = [m](const GInt& z) { return normSq(z) % m == 0; };
    } else {
        throw std::invalid_argument("unknown --target '" + o.target +
                                    "' (all, even, normdiv:M)");
    }
    const double avg = recurrence_average(e, t, o.n);
    json j = new_report("recurrence");
    j["tuple"] = json::array(
        {gint_json(t.g1), gint_json(t.g2), gint_json(t.g3), gint_json(t.g4)});
    j["target"] = o.target;
    j["n"] = o.n;
    j["average"] = avg;
    write_output(j.dump(2) + "\n", o.out);
}

}  // namespace

int main(int argc, char** argv) {
#ifdef _OPENMP
    if (const char* threads = std::getenv("GG_THREADS")) {
        const int t = std::atoi(threads);
        if (t > 0) omp_set_num_threads(t);
    }
#endif

    CLI::App app{"gg: Gaussian-integer additive combinatorics experiments"};
    app.require_subcommand(1);

    std::vector<std::unique_ptr<ConfigBinder>> binders;
    const auto make_binder = [&binders]() -> ConfigBinder& {
        binders.push_back(std::make_unique<ConfigBinder>());
        return *binders.back();
    };

    // sieve
    {
        auto& b = make_binder();
        auto o = std::make_shared<SieveOpts>();
        CLI::App* cmd = app.add_subcommand("sieve", "canonical Gaussian primes by norm");
        bind_option(cmd, b, "--bound", o->bound, "normSq bound (exclusive)");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        bind_flag(cmd, b, "--json", o->as_json, "emit JSON instead of CSV");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_sieve(*o); });
    }
    // gowers
    {
        auto& b = make_binder();
        auto o = std::make_shared<GowersOpts>();
        CLI::App* cmd = app.add_subcommand("gowers", "U^d norm of a multiplicative function");
        bind_chi(cmd, b, o->chi);
        bind_option(cmd, b, "--degree", o->degree, "Gowers degree d (1..3)");
        bind_option(cmd, b, "--n", o->n, "box side N");
        bind_flag(cmd, b, "--exact-grid", o->exact_grid,
                  "use the full N^2+... torus instead of the relaxed one");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_gowers(*o); });
    }
    // katai
    {
        auto& b = make_binder();
        auto o = std::make_shared<KataiOpts>();
        CLI::App* cmd = app.add_subcommand("katai", "prime-dilate pair correlations");
        bind_chi(cmd, b, o->chi);
        bind_option(cmd, b, "--n", o->n, "box side N");
        bind_option(cmd, b, "--k0", o->k0, "lower normSq cutoff (exclusive)");
        bind_option(cmd, b, "--k", o->k, "upper normSq cutoff (exclusive)");
        bind_flag(cmd, b, "--exact-grid", o->exact_grid, "use the full torus");
        bind_flag(cmd, b, "--csv", o->as_csv, "emit the pair table as CSV");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_katai(*o); });
    }
    // decompose
    {
        auto& b = make_binder();
        auto o = std::make_shared<DecompOpts>();
        CLI::App* cmd =
            app.add_subcommand("decompose", "structured + uniform split of chi on R_N");
        bind_chi(cmd, b, o->chi);
        bind_option(cmd, b, "--n", o->n, "box side N");
        bind_option(cmd, b, "--eps", o->eps, "uniformity target for the remainder");
        bind_option(cmd, b, "--q", o->q, "period q, or 'auto' for the family estimate");
        bind_option(cmd, b, "--v", o->v, "shift count v, or 'auto'");
        bind_option(cmd, b, "--family", o->family,
                    "family for the auto estimate: 'builtin' or 'single'");
        bind_flag(cmd, b, "--exact-grid", o->exact_grid, "use the full torus");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_decompose(*o); });
    }
    // nilorbit
    {
        auto& b = make_binder();
        auto o = std::make_shared<NilorbitOpts>();
        CLI::App* cmd =
            app.add_subcommand("nilorbit", "reduced orbit of a polynomial sequence");
        bind_seq(cmd, b, o->seq);
        bind_option(cmd, b, "--range", o->range, "orbit square side");
        bind_flag(cmd, b, "--json", o->as_json, "emit JSON instead of CSV");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_nilorbit(*o); });
    }
    // leibman
    {
        auto& b = make_binder();
        auto o = std::make_shared<LeibmanOpts>();
        CLI::App* cmd = app.add_subcommand(
            "leibman", "smoothness certificate search, optionally verified");
        bind_seq(cmd, b, o->seq);
        bind_option(cmd, b, "--range", o->range, "scale N");
        bind_option(cmd, b, "--d", o->d, "character size / smoothness bound D");
        bind_flag(cmd, b, "--check", o->check, "run the sub-box correlation check");
        bind_option(cmd, b, "--n1", o->n1, "check box side 1");
        bind_option(cmd, b, "--n2", o->n2, "check box side 2");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_leibman(*o); });
    }
    // partition
    {
        auto& b = make_binder();
        auto o = std::make_shared<PartitionOpts>();
        CLI::App* cmd =
            app.add_subcommand("partition", "monochromatic solution search for a form");
        bind_option(cmd, b, "--form", o->form,
                    "a,b,c,d,e,f for ax^2+by^2+cn^2+dxy+exn+fyn ('re:im' for complex)");
        bind_option(cmd, b, "--coloring", o->coloring,
                    "residue:re,im | sector:k | norm_band:w | seeded:cells,seed | parity");
        bind_option(cmd, b, "--box", o->box, "search box side");
        bind_flag(cmd, b, "--allow-zero-n", o->allow_zero_n, "accept witnesses with n = 0");
        bind_flag(cmd, b, "--json", o->as_json, "emit JSON (always on; kept for scripts)");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_partition(*o); });
    }
    // recurrence
    {
        auto& b = make_binder();
        auto o = std::make_shared<RecurrenceOpts>();
        CLI::App* cmd =
            app.add_subcommand("recurrence", "Theta_N product-pattern recurrence average");
        bind_option(cmd, b, "--tuple", o->tuple, "g1re,g1im,...,g4re,g4im");
        bind_option(cmd, b, "--target", o->target, "all | even | normdiv:M");
        bind_option(cmd, b, "--n", o->n, "box side N");
        bind_option(cmd, b, "--out", o->out, "output path (default stdout)");
        add_config(cmd, b);
        cmd->callback([&b, o]() { b.apply_file(); run_recurrence(*o); });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
