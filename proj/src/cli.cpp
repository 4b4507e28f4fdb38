#include "latdist/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "latdist/acceptance.hpp"
#include "latdist/arcs.hpp"
#include "latdist/diststats.hpp"
#include "latdist/error.hpp"
#include "latdist/numth.hpp"
#include "latdist/rectlat.hpp"

namespace latdist::cli {

namespace {

// A report cell. Wide integers are JSON strings; everything else keeps its
// natural JSON type. CSV always uses `text`.
struct Cell {
    enum class Kind { Int, Wide, Real, Text, Bool } kind;
    std::string text;
};

Cell integer(std::uint64_t v) { return {Cell::Kind::Int, std::to_string(v)}; }
Cell wide(u128 v) { return {Cell::Kind::Wide, to_string(v)}; }
Cell text(std::string s) { return {Cell::Kind::Text, std::move(s)}; }
Cell boolean(bool b) { return {Cell::Kind::Bool, b ? "true" : "false"}; }
Cell real(long double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10Lg", v);
    return {Cell::Kind::Real, buf};
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string csv_escape(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

void emit(const Table& t, const std::string& format, std::ostream& out)
{
    if (format == "json") {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& row : t.rows) {
            nlohmann::ordered_json rec = nlohmann::ordered_json::object();
            for (std::size_t i = 0; i < row.size(); ++i) {
                const auto& c = row[i];
                switch (c.kind) {
                case Cell::Kind::Int: rec[t.columns[i]] = std::stoull(c.text); break;
                case Cell::Kind::Real: rec[t.columns[i]] = std::stod(c.text); break;
                case Cell::Kind::Bool: rec[t.columns[i]] = c.text == "true"; break;
                default: rec[t.columns[i]] = c.text;
                }
            }
            arr.push_back(std::move(rec));
        }
        out << arr.dump(2) << "\n";
        return;
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << "\n";
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_escape(row[i].text);
        out << "\n";
    }
}

Table square_stats(const std::vector<std::uint64_t>& sides, unsigned threads)
{
    Table t{{"side", "N", "x", "energy", "csBound", "gapRatio", "energy_over_N3lnN", "x_sqrtlnN_over_N"}, {}};
    for (auto side : sides) {
        auto r = diststats::square_lattice_report(side, threads);
        t.rows.push_back({integer(side), integer(r.n), integer(r.stats.distinct), wide(r.stats.energy),
                          real(r.stats.cs_bound.value()), real(r.stats.gap_ratio), real(r.energy_over_n3_ln_n),
                          real(r.x_sqrt_ln_n_over_n)});
    }
    return t;
}

Table lshape(const std::vector<std::uint64_t>& ns)
{
    Table t{{"n", "points", "D", "trivialEnergy", "trivialEnergyIntra", "energy", "csBound", "gapRatio",
             "trivialEnergy_over_n3"},
            {}};
    for (auto n : ns) {
        auto r = diststats::lshape_report(n);
        long double n3 = (long double)n * n * n;
        t.rows.push_back({integer(n), integer(2 * n), integer(r.distinct), wide(r.trivial_energy),
                          wide(r.trivial_energy_intra), wide(r.energy), real(r.cs_bound.value()), real(r.gap_ratio),
                          real((long double)r.trivial_energy / n3)});
    }
    return t;
}

std::vector<Rational> parse_rationals(const std::vector<std::string>& xs)
{
    std::vector<Rational> out;
    for (const auto& x : xs) out.push_back(Rational::parse(x));
    return out;
}

Table rect(const std::vector<std::uint64_t>& ns, const std::vector<std::string>& alphas, unsigned threads, bool& ok)
{
    Table t{{"n", "alpha", "W", "H", "iMin", "sublattice", "D", "D_over_n", "rKeys", "excessSum", "sumR", "sumD",
             "sumR2", "sumD2", "sumBinomR2", "sumBinomD2", "S", "S_over_T_ln2n", "lMin", "lMax", "chainHolds"},
            {}};
    for (auto a : parse_rationals(alphas))
        for (auto n : ns) {
            auto r = rectlat::dalpha_report(n, a, threads);
            const auto& id = r.identities;
            long double ln = std::log((long double)n);
            bool holds = id.holds() && r.chain_holds();
            ok = ok && holds;
            t.rows.push_back({integer(n), text(a.str()), integer(r.spec.width), integer(r.spec.height),
                              integer(r.spec.i_min), integer(r.sublattice_size), integer(r.distinct),
                              real((long double)r.distinct / (long double)n), integer(r.r_keys), wide(r.excess_sum),
                              wide(id.sum_r), wide(id.sum_d), wide(id.sum_r2), wide(id.sum_d2), wide(id.sum_binom_r2),
                              wide(id.sum_binom_d2), wide(r.intervals.total),
                              real((long double)r.intervals.total / ((long double)r.spec.interval_scale * ln * ln)),
                              integer(r.intervals.l_min), integer(r.intervals.l_max), boolean(holds)});
        }
    return t;
}

Table identities(const std::vector<std::uint64_t>& ns, const std::vector<std::string>& alphas, unsigned threads,
                 bool& ok)
{
    Table t{{"n", "alpha", "sumR", "sumD", "sumR2", "sumD2", "sumBinomR2", "sumBinomD2", "holds"}, {}};
    for (auto a : parse_rationals(alphas))
        for (auto n : ns) {
            auto id = rectlat::verify_identities(rectlat::rep_counts(rectlat::build_spec(n, a), threads));
            ok = ok && id.holds();
            t.rows.push_back({integer(n), text(a.str()), wide(id.sum_r), wide(id.sum_d), wide(id.sum_r2),
                              wide(id.sum_d2), wide(id.sum_binom_r2), wide(id.sum_binom_d2), boolean(id.holds())});
        }
    return t;
}

Table rhat(const std::vector<std::uint64_t>& ks)
{
    Table t{{"k", "rhat", "rhat_over_klnk"}, {}};
    std::uint64_t top = 0;
    for (auto k : ks) {
        if (k < 1) throw ValidationError("rhat k must be >= 1");
        top = std::max(top, k);
    }
    auto table = numth::rhat_table(top);
    for (auto k : ks) {
        long double denom = (long double)k * std::log((long double)k);
        t.rows.push_back({integer(k), integer(table.rhat[k]), real(k > 1 ? table.rhat[k] / denom : NAN)});
    }
    return t;
}

Table landau(const std::vector<std::uint64_t>& limits)
{
    Table t{{"N", "count", "count_sqrtlnN_over_N"}, {}};
    for (auto n : limits) {
        auto c = numth::landau_count(n);
        t.rows.push_back({integer(n), integer(c),
                          real((long double)c * std::sqrt(std::log((long double)n)) / (long double)n)});
    }
    return t;
}

Table arcs_scan(std::uint64_t n_max, const std::string& beta_text, bool records_only, unsigned threads)
{
    Table t{{"N", "points", "maxCount", "axisCount", "runningMax", "angularWidth", "witnessAngle"}, {}};
    auto rows = arcs::conjecture_scan(n_max, Rational::parse(beta_text), threads);
    std::uint64_t prev = 0;
    for (const auto& row : rows) {
        if (records_only && row.running_max == prev) continue;
        prev = row.running_max;
        const auto& r = row.result;
        t.rows.push_back({integer(r.n), integer(r.point_count), integer(r.max_count), integer(r.axis_count),
                          integer(row.running_max), real(r.angular_width), real(r.witness_start_angle)});
    }
    return t;
}

numth::SpfSieve cached_sieve(std::uint64_t limit, const std::string& cache_dir)
{
    if (cache_dir.empty()) return numth::build_spf_sieve(limit);
    std::filesystem::path path = std::filesystem::path(cache_dir) / ("spf_" + std::to_string(limit) + ".bin");
    if (std::filesystem::exists(path)) return numth::load_sieve(path, limit);
    auto sieve = numth::build_spf_sieve(limit);
    std::filesystem::create_directories(cache_dir);
    numth::save_sieve(path, sieve);
    return sieve;
}

Table oracle_check(std::uint64_t limit, const std::string& cache_dir, unsigned threads, bool& ok)
{
    Table t{{"check", "cases", "mismatches"}, {}};
    auto add = [&](const char* name, std::uint64_t cases, std::uint64_t bad) {
        ok = ok && bad == 0;
        t.rows.push_back({text(name), integer(cases), integer(bad)});
    };

    auto sieve = cached_sieve(std::max<std::uint64_t>(limit, 2), cache_dir);
    std::uint64_t bad = 0;
    for (std::uint64_t k = 1; k <= limit; ++k)
        if (numth::r_fast(k, sieve) != numth::r_bruteforce(k)) ++bad;
    add("r_fast_vs_bruteforce", limit, bad);

    bad = 0;
    std::uint64_t cases = 0;
    for (std::uint32_t w = 2; w <= 12; ++w)
        for (std::uint32_t h = 2; h <= 12; ++h, ++cases)
            if (diststats::histogram_rect_fast(w, h, threads) !=
                diststats::histogram_bruteforce(diststats::PointSet::grid(w, h)))
                ++bad;
    add("rect_fast_vs_bruteforce", cases, bad);

    bad = 0;
    cases = 0;
    for (std::uint32_t n = 1; n <= 8; ++n, ++cases) {
        auto ps = diststats::PointSet::lshape(n);
        auto energy = diststats::quadruple_stats(diststats::histogram_bruteforce(ps)).energy;
        if (diststats::quadruple_bruteforce(ps) != energy || diststats::lshape_report(n).energy != energy) ++bad;
    }
    add("lshape_energy_vs_bruteforce", cases, bad);

    bad = 0;
    cases = 0;
    for (const char* b : {"1/6", "1/4", "2/5"})
        for (std::uint64_t n = 1; n <= 2000; ++n) {
            auto c = arcs::circle_points(n);
            if (c.points.empty()) continue;
            ++cases;
            auto beta = Rational::parse(b);
            if (arcs::max_arc_count(c, beta).max_count != arcs::max_arc_count_bruteforce(c, beta)) ++bad;
        }
    add("arc_sweep_vs_bruteforce", cases, bad);
    return t;
}

Table accept(const std::string& suite_name, unsigned threads, std::ostream& err, bool& ok)
{
    auto suite = suite_name == "full" ? acceptance::Suite::Full : acceptance::Suite::Fast;
    Table t{{"id", "criterion", "status", "measured"}, {}};
    acceptance::run_suite(suite, threads, [&](const acceptance::CriterionResult& r) {
        ok = ok && r.passed;
        char secs[32];
        std::snprintf(secs, sizeof secs, "%.1f", r.seconds);
        err << "[accept] " << r.id << " " << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (" << secs
            << " s)\n";
        t.rows.push_back({integer(std::uint64_t(r.id)), text(r.name), text(r.passed ? "PASS" : "FAIL"),
                          text(r.measured)});
    });
    return t;
}

constexpr const char* kSchemas = R"(CSV schemas (one header row, then data rows):
  square-stats  side,N,x,energy,csBound,gapRatio,energy_over_N3lnN,x_sqrtlnN_over_N
  lshape        n,points,D,trivialEnergy,trivialEnergyIntra,energy,csBound,gapRatio,trivialEnergy_over_n3
  rect          n,alpha,W,H,iMin,sublattice,D,D_over_n,rKeys,excessSum,sumR,sumD,sumR2,sumD2,
                sumBinomR2,sumBinomD2,S,S_over_T_ln2n,lMin,lMax,chainHolds
  identities    n,alpha,sumR,sumD,sumR2,sumD2,sumBinomR2,sumBinomD2,holds
  rhat          k,rhat,rhat_over_klnk
  landau        N,count,count_sqrtlnN_over_N
  arcs          N,points,maxCount,axisCount,runningMax,angularWidth,witnessAngle
  oracle-check  check,cases,mismatches
  accept        id,criterion,status,measured
Exit status: 0 ok, 2 validation error, 3 capacity/overflow error, 4 check or acceptance failure.
Exponents (--alpha, --beta) are exact rationals "p/q"; decimals are rejected.
Wide integers are emitted as decimal strings in JSON.)";

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Exact distance statistics for integer lattices"};
    app.footer(kSchemas);
    app.require_subcommand(1);
    app.fallthrough();

    unsigned threads = 1;
    std::string format = "csv";
    std::string output;
    std::string cache_dir;
    app.add_option("--threads", threads, "Worker thread cap")->check(CLI::Range(1u, 256u));
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", output, "Output file (default: stdout)");
    app.add_option("--cache-dir", cache_dir, "Directory for sieve cache files")->envname("LATDIST_CACHE_DIR");

    std::vector<std::uint64_t> sides, ns, ks, limits;
    std::vector<std::string> alphas;
    std::string beta;
    std::uint64_t n_max = 0, oracle_limit = 100000;
    bool records_only = false;
    std::string suite = "fast";

    auto* sq = app.add_subcommand("square-stats", "Distance energy of the side x side grid");
    sq->add_option("--side", sides, "Grid side(s)")->required()->delimiter(',');
    auto* ls = app.add_subcommand("lshape", "L-shaped configuration report");
    ls->add_option("--n", ns, "Points per axis")->required()->delimiter(',');
    auto* rc = app.add_subcommand("rect", "Rectangular-lattice report over an n x alpha grid");
    rc->add_option("--n", ns, "Lattice parameter(s)")->required()->delimiter(',');
    rc->add_option("--alpha", alphas, "Exponent(s) p/q in (0, 1/2)")->required()->delimiter(',');
    auto* id = app.add_subcommand("identities", "Representation-count identities over an n x alpha grid");
    id->add_option("--n", ns, "Lattice parameter(s)")->required()->delimiter(',');
    id->add_option("--alpha", alphas, "Exponent(s) p/q in (0, 1/2)")->required()->delimiter(',');
    auto* rh = app.add_subcommand("rhat", "Prefix second moments of r(k)");
    rh->add_option("--k", ks, "Evaluation points")->required()->delimiter(',');
    auto* la = app.add_subcommand("landau", "Count of sums of two squares up to N");
    la->add_option("--limit", limits, "N values")->required()->delimiter(',');
    auto* ar = app.add_subcommand("arcs", "Lattice points in short arcs, all N <= nmax");
    ar->add_option("--nmax", n_max, "Largest N")->required();
    ar->add_option("--beta", beta, "Arc exponent p/q in (0, 1/2)")->required();
    ar->add_flag("--records-only", records_only, "Only rows where the running maximum increases");
    auto* oc = app.add_subcommand("oracle-check", "Fast paths against brute-force oracles");
    oc->add_option("--limit", oracle_limit, "Largest k for the r-function check");
    auto* ac = app.add_subcommand("accept", "Run the acceptance criteria");
    ac->add_option("--suite", suite, "fast or full")->check(CLI::IsMember({"fast", "full"}));

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i > 0; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: validation: " << e.what() << "\n";
        return kValidation;
    }

    try {
        bool ok = true;
        Table table;
        if (*sq)
            table = square_stats(sides, threads);
        else if (*ls)
            table = lshape(ns);
        else if (*rc)
            table = rect(ns, alphas, threads, ok);
        else if (*id)
            table = identities(ns, alphas, threads, ok);
        else if (*rh)
            table = rhat(ks);
        else if (*la)
            table = landau(limits);
        else if (*ar)
            table = arcs_scan(n_max, beta, records_only, threads);
        else if (*oc)
            table = oracle_check(oracle_limit, cache_dir, threads, ok);
        else if (*ac)
            table = accept(suite, threads, err, ok);

        if (output.empty()) {
            emit(table, format, out);
        } else {
            std::ofstream file(output);
            if (!file) throw ValidationError("cannot open output file " + output);
            emit(table, format, file);
        }
        if (!ok) {
            err << "error: check: one or more checks failed\n";
            return kAcceptanceFailure;
        }
        return kOk;
    } catch (const ValidationError& e) {
        err << "error: validation: " << e.what() << "\n";
        return kValidation;
    } catch (const CapacityError& e) {
        err << "error: capacity: " << e.what() << "\n";
        return kCapacity;
    } catch (const OverflowError& e) {
        err << "error: overflow: " << e.what() << "\n";
        return kCapacity;
    } catch (const std::bad_alloc&) {
        err << "error: capacity: out of memory\n";
        return kCapacity;
    }
}

} // namespace latdist::cli
