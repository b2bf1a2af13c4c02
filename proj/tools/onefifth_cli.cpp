#include "onefifth/factorizer.hpp"
#include "onefifth/primality.hpp"
#include "onefifth/stats.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

namespace {

using onefifth::EnginePath;
using onefifth::FactorOptions;
using onefifth::FactorReport;
using onefifth::Factorisation;

std::optional<mpz_class> parse_input(const std::string& raw) {
    std::size_t b = raw.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return std::nullopt;
    std::size_t e = raw.find_last_not_of(" \t\r\n");
    std::string s = raw.substr(b, e - b + 1);
    int base = 10;
    if (s.size() > 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) {
        base = 16;
        s = s.substr(2);
    }
    mpz_class v;
    if (mpz_set_str(v.get_mpz_t(), s.c_str(), base) != 0) return std::nullopt;
    if (v < 1) return std::nullopt;
    return v;
}

std::string format_factorisation(const mpz_class& n, const Factorisation& f) {
    std::ostringstream out;
    out << n.get_str() << " = ";
    if (f.factors.empty()) {
        out << "1"; // empty product
        return out.str();
    }
    bool first = true;
    for (const auto& [p, e] : f.factors) {
        if (!first) out << " * ";
        first = false;
        out << p.get_str();
        if (e > 1) out << "^" << e;
    }
    return out.str();
}

struct InputOutcome {
    mpz_class n;
    Factorisation factorisation;
    FactorReport report;
    double elapsed_ms = 0;
    bool resource_capped = false;
    std::string error;
};

InputOutcome factor_one(const mpz_class& n, const FactorOptions& opts) {
    InputOutcome out;
    out.n = n;
    auto t0 = std::chrono::steady_clock::now();
    try {
        out.factorisation = onefifth::factorise(n, opts, &out.report);
    } catch (const onefifth::ResourceLimitError& ex) {
        out.resource_capped = true;
        out.error = ex.what();
    }
    auto t1 = std::chrono::steady_clock::now();
    out.elapsed_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
    return out;
}

bool verify_factorisation(const mpz_class& n, const Factorisation& f) {
    if (f.product() != n) return false;
    for (const auto& [p, e] : f.factors) {
        if (e < 1 || !onefifth::is_probable_prime(p)) return false;
    }
    return true;
}

void print_verbose(std::ostream& os, const InputOutcome& r) {
    os << "# n=" << r.n.get_str()
       << " path=" << onefifth::engine_path_name(r.report.path) << "\n";
    if (r.report.params_set) {
        os << "# params r=" << r.report.params.r.get_str()
           << " m=" << r.report.params.m.get_str()
           << " M=" << r.report.params.M.get_str()
           << " D=" << r.report.params.D.get_str()
           << " stage=" << r.report.semiprime_stage << "\n";
    }
    if (r.report.search_ran) {
        const auto& t = r.report.search;
        os << "# search baby_steps=" << t.baby_steps << " windows=" << t.window_count
           << " giant_steps=" << t.giant_steps << " matches=" << t.match_count
           << " survivors=" << t.survivor_count
           << " resolved_step=" << t.resolved_step << "\n";
    }
}

int run_factor(const std::vector<std::string>& args, bool json, bool verify,
               bool verbose, unsigned jobs, const FactorOptions& opts) {
    std::vector<std::string> raw = args;
    if (raw.empty()) {
        std::string line;
        while (std::getline(std::cin, line)) {
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            raw.push_back(line);
        }
    }
    std::vector<mpz_class> inputs;
    inputs.reserve(raw.size());
    for (const auto& s : raw) {
        auto v = parse_input(s);
        if (!v) {
            std::cerr << "error: malformed input: " << s << "\n";
            return 2;
        }
        inputs.push_back(std::move(*v));
    }

    std::vector<InputOutcome> results(inputs.size());
    if (jobs <= 1 || inputs.size() <= 1) {
        for (std::size_t i = 0; i < inputs.size(); ++i) {
            results[i] = factor_one(inputs[i], opts);
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= inputs.size()) return;
                results[i] = factor_one(inputs[i], opts);
            }
        };
        std::vector<std::thread> pool;
        unsigned nt = std::min<std::size_t>(jobs, inputs.size());
        pool.reserve(nt);
        for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // Output records serialized in input order regardless of completion order.
    for (const auto& r : results) {
        if (r.resource_capped) {
            std::cerr << "error: " << r.error << "\n";
            return 3;
        }
        if (verify && !verify_factorisation(r.n, r.factorisation)) {
            std::cerr << "error: verification failed for " << r.n.get_str() << "\n";
            return 1;
        }
        if (verbose) print_verbose(std::cerr, r);
        if (json) {
            nlohmann::ordered_json obj;
            obj["n"] = r.n.get_str();
            nlohmann::ordered_json fs = nlohmann::ordered_json::array();
            for (const auto& [p, e] : r.factorisation.factors) {
                fs.push_back({{"p", p.get_str()}, {"e", e}});
            }
            obj["factors"] = std::move(fs);
            obj["elapsed_ms"] = r.elapsed_ms;
            obj["path"] = onefifth::engine_path_name(r.report.path);
            std::cout << obj.dump() << "\n";
        } else {
            std::cout << format_factorisation(r.n, r.factorisation) << "\n";
        }
    }
    return 0;
}

// Deterministic semiprime stream: mt19937_64 draws b-bit odd candidates with
// the top bit forced, first Miller-Rabin prime wins. Documented in README.
std::uint64_t draw_prime(std::mt19937_64& rng, unsigned bits) {
    for (;;) {
        std::uint64_t x = rng();
        x &= (bits >= 64) ? ~0ull : ((1ull << bits) - 1);
        x |= (1ull << (bits - 1)) | 1ull;
        if (onefifth::is_prime_u64(x)) return x;
    }
}

int run_bench(unsigned bits, unsigned count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::cout << "index,n,p,q,bits,path,elapsed_ms,modmul,modpow,gcd,"
                 "max_poly_mul_degree,verified\n";
    double total_ms = 0;
    onefifth::stats::Counters sums;
    std::uint64_t max_deg = 0;
    bool all_ok = true;
    for (unsigned i = 0; i < count; ++i) {
        unsigned pb = bits / 2;
        unsigned qb = bits - pb;
        std::uint64_t p = draw_prime(rng, pb);
        std::uint64_t q = draw_prime(rng, qb);
        while (q == p) q = draw_prime(rng, qb);
        if (p > q) std::swap(p, q);
        mpz_class n = mpz_class(static_cast<unsigned long>(p)) *
                      static_cast<unsigned long>(q);

        onefifth::stats::counters().reset();
        InputOutcome r = factor_one(n, FactorOptions{});
        if (r.resource_capped) {
            std::cerr << "error: " << r.error << "\n";
            return 3;
        }
        const auto& c = onefifth::stats::counters();

        bool ok = verify_factorisation(n, r.factorisation) &&
                  r.factorisation.factors.size() == 2 &&
                  r.factorisation.factors[0].first == static_cast<unsigned long>(p) &&
                  r.factorisation.factors[1].first == static_cast<unsigned long>(q);
        all_ok = all_ok && ok;

        std::cout << i << "," << n.get_str() << "," << p << "," << q << ","
                  << mpz_sizeinbase(n.get_mpz_t(), 2) << ","
                  << onefifth::engine_path_name(r.report.path) << ","
                  << r.elapsed_ms << "," << c.modmul << "," << c.modpow << ","
                  << c.gcd << "," << c.max_poly_mul_degree << "," << (ok ? 1 : 0)
                  << "\n";

        total_ms += r.elapsed_ms;
        sums.modmul += c.modmul;
        sums.modpow += c.modpow;
        sums.gcd += c.gcd;
        max_deg = std::max(max_deg, c.max_poly_mul_degree);
    }
    std::cout << "total,,,,,," << total_ms << "," << sums.modmul << ","
              << sums.modpow << "," << sums.gcd << "," << max_deg << ","
              << (all_ok ? 1 : 0) << "\n";
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic integer factorisation"};
    app.require_subcommand(1);

    std::vector<std::string> numbers;
    bool json = false, verify = false, verbose = false;
    unsigned jobs = 1;
    std::uint64_t opt_r = 0, opt_m = 0;
    auto* fac = app.add_subcommand("factor", "factor integers from arguments or stdin");
    fac->add_option("numbers", numbers, "decimal or 0x-hex integers >= 1");
    fac->add_flag("--json", json, "one JSON object per input");
    fac->add_flag("--verify", verify, "re-multiply and primality-check before printing");
    fac->add_flag("--verbose", verbose, "print the search step trace to stderr");
    fac->add_option("--jobs", jobs, "factor inputs concurrently")->default_val(1);
    fac->add_option("--r", opt_r, "override the search parameter r (expert)");
    fac->add_option("--m", opt_m, "override the search parameter m (expert)");

    unsigned bits = 0, count = 0;
    std::uint64_t seed = 1;
    auto* bench = app.add_subcommand("bench", "factor seeded random semiprimes, CSV on stdout");
    bench->add_option("--bits", bits, "bit size of the semiprimes")
        ->required()
        ->check(CLI::Range(8u, 120u));
    bench->add_option("--count", count, "number of instances")->required();
    bench->add_option("--seed", seed, "PRNG seed")->default_val(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (fac->parsed()) {
            FactorOptions opts;
            if (opt_r > 0) opts.override_r = opt_r;
            if (opt_m > 0) opts.override_m = opt_m;
            return run_factor(numbers, json, verify, verbose, jobs, opts);
        }
        if (count < 1) {
            std::cerr << "error: --count must be >= 1\n";
            return 2;
        }
        return run_bench(bits, count, seed);
    } catch (const onefifth::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
