#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <thread>

#include "ghl/certify.hpp"
#include "ghl/error.hpp"
#include "ghl/io.hpp"
#include "ghl/newton.hpp"
#include "ghl/primes.hpp"
#include "ghl/sieve.hpp"

namespace {

using json = nlohmann::ordered_json;

struct ParamArgs {
    std::int64_t d = 3;
    std::int64_t u = 0;
    std::int64_t alpha = 1;
    std::int64_t n = 1;
    std::int64_t delta = 1;
    std::string seed = "ones";
    std::string seed_file;

    ghl::GhlParams params(std::int64_t n_override = 0) const {
        ghl::GhlParams p{d, u, alpha, n_override > 0 ? n_override : n, delta};
        p.validate();
        return p;
    }

    ghl::SeedCoefficients make_seed(std::int64_t degree) const {
        if (seed == "ones") return ghl::ones_seed(degree);
        if (seed == "laguerre") return ghl::laguerre_seed(degree);
        if (seed == "custom") {
            if (seed_file.empty()) ghl::fail(ghl::Errc::invalid_params, "--seed custom needs --seed-file");
            auto s = ghl::read_seed_file(seed_file);
            s.validate(degree);
            return s;
        }
        ghl::fail(ghl::Errc::invalid_params, "unknown seed '" + seed + "'");
    }
};

void add_param_options(CLI::App* sub, ParamArgs& a) {
    sub->add_option("--d", a.d, "denominator of q")->required();
    sub->add_option("--u", a.u, "integer offset of q")->required();
    sub->add_option("--alpha", a.alpha, "numerator of q - u")->required();
    sub->add_option("--n", a.n, "degree")->required();
    sub->add_option("--delta", a.delta, "substitution exponent (1 or d)");
    sub->add_option("--seed", a.seed, "ones | laguerre | custom")->check(CLI::IsMember({"ones", "laguerre", "custom"}));
    sub->add_option("--seed-file", a.seed_file, "coefficient file for --seed custom");
}

std::uint64_t default_sieve_limit() {
    if (const char* env = std::getenv("GHL_SIEVE_LIMIT")) {
        try {
            const auto v = std::stoull(env);
            if (v > 0) return v;
        } catch (const std::exception&) {
        }
        ghl::fail(ghl::Errc::invalid_params, "GHL_SIEVE_LIMIT must be a positive integer");
    }
    return 1000000;
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
    } else {
        ghl::write_text_file(path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Newton-polygon factor-degree certificates and sieve checks for generalized Hermite-Laguerre polynomials"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "INI/TOML config; subcommand keys go under [certify], [build], ... (flags win)");
    bool timing = false;
    unsigned jobs = 0;
    std::string out_path;
    app.add_flag("--timing", timing, "add elapsed_ms to sieve reports");
    app.add_option("--jobs", jobs, "worker threads (default: hardware concurrency)")->check(CLI::PositiveNumber);
    app.add_option("-o,--out", out_path, "output file (default stdout)");

    // build
    ParamArgs build_args;
    auto* build = app.add_subcommand("build", "write the coefficients of G(x^delta)");
    add_param_options(build, build_args);

    // polygon
    std::string poly_path;
    std::uint64_t prime = 0;
    std::string poly_format = "tsv";
    std::string svg_path;
    auto* polygon = app.add_subcommand("polygon", "Newton polygon of a polynomial file");
    polygon->add_option("--poly", poly_path, "polynomial file")->required();
    polygon->add_option("--prime,-p", prime, "prime")->required();
    polygon->add_option("--format", poly_format, "tsv | json")->check(CLI::IsMember({"tsv", "json"}));
    polygon->add_option("--svg", svg_path, "also write an SVG rendering");

    // certify
    ParamArgs cert_args;
    std::int64_t n_max = 0;
    bool no_fallbacks = false;
    bool no_special = false;
    std::uint64_t primes_below = 400;
    auto* certify = app.add_subcommand("certify", "factor-degree certificate for G(x^delta)");
    add_param_options(certify, cert_args);
    certify->add_option("--n-max", n_max, "certify every n from --n to --n-max");
    certify->add_flag("--no-fallbacks", no_fallbacks, "skip the rational-root and Capelli steps");
    certify->add_flag("--no-special", no_special, "skip the special-family handlers");
    certify->add_option("--primes-below", primes_below, "generic Newton-polygon primes");

    // sieve
    auto* sieve = app.add_subcommand("sieve", "range verifications");
    sieve->require_subcommand(1);
    std::uint64_t limit = 0;
    std::uint64_t sd = 4, sk = 2, bound = 12, min_excl = 0, coprime = 1;
    bool odd = false;
    auto* gpf_ap = sieve->add_subcommand("gpf-ap", "n with P(n(n+d)...(n+d(k-1))) <= bound");
    gpf_ap->add_option("--d", sd)->required();
    gpf_ap->add_option("--k", sk)->required();
    gpf_ap->add_option("--bound", bound)->required();
    gpf_ap->add_flag("--odd", odd, "odd n only");
    gpf_ap->add_option("--coprime-to", coprime, "only n coprime to this");
    gpf_ap->add_option("--min", min_excl, "only n > min");
    gpf_ap->add_option("--limit", limit);

    std::uint64_t M = 11, gap = 4;
    auto* smooth = sieve->add_subcommand("smooth", "m with P(m(m+gap)) <= M");
    smooth->add_option("--M", M)->required();
    smooth->add_option("--gap", gap);
    smooth->add_option("--limit", limit);

    auto* upto7 = sieve->add_subcommand("upto7", "P(X(X+3i)) = 5 solutions");
    upto7->add_option("--limit", limit);

    std::uint64_t modulus = 4, gap_bound = 270;
    std::vector<std::int64_t> residues{1, 3};
    std::string gaps_tsv;
    auto* gaps = sieve->add_subcommand("gaps", "gaps between consecutive primes in residue classes");
    gaps->add_option("--mod", modulus)->required();
    gaps->add_option("--residues", residues)->delimiter(',')->required();
    gaps->add_option("--gap-bound", gap_bound)->required();
    gaps->add_option("--limit", limit);
    gaps->add_option("--tsv", gaps_tsv, "write exceptional pairs as TSV");

    std::int64_t rk = 2, rk_max = 0;
    auto* rset = sieve->add_subcommand("rset", "R(k) against the closed form");
    rset->add_option("--k", rk)->required();
    rset->add_option("--k-max", rk_max);

    std::int64_t bk = 67, bk_max = 0, bl = 3;
    bool printed = false;
    auto* bnd = sieve->add_subcommand("bound", "smoothness bound on n");
    bnd->add_option("--k", bk)->required();
    bnd->add_option("--k-max", bk_max);
    bnd->add_option("--l", bl);
    bnd->add_flag("--printed", printed, "use pi(4k) inside L0 instead of pi(4k+3)");

    std::int64_t gk = 401, v0 = 138;
    auto* growth = sieve->add_subcommand("growth", "final growth inequality");
    growth->add_option("--k", gk)->required();
    growth->add_option("--v0", v0);

    std::uint64_t ln = 0, ld = 3, lk = 0;
    auto* l43 = sieve->add_subcommand("lemma43", "P(Delta(n,d,k)) >= n inside the claimed ranges");
    l43->add_option("--n", ln)->required();
    l43->add_option("--d", ld)->required();
    l43->add_option("--k", lk)->required();

    double cx = 10;
    std::int64_t cl = 1;
    auto* count = sieve->add_subcommand("count", "primes <= x in a residue class");
    count->add_option("--x", cx)->required();
    count->add_option("--mod", modulus);
    count->add_option("--l", cl)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*build) {
            const auto p = build_args.params();
            const auto poly = ghl::build_ghl_power(p, build_args.make_seed(p.n));
            std::ostringstream s;
            ghl::write_polynomial(s, poly);
            emit(s.str(), out_path);
            return 0;
        }
        if (*polygon) {
            const auto poly = ghl::read_polynomial_file(poly_path);
            const auto np = ghl::build_polygon(poly, prime);
            if (!svg_path.empty()) ghl::write_text_file(svg_path, ghl::polygon_svg(np));
            emit(poly_format == "json" ? ghl::polygon_json(np).dump(2) + "\n" : ghl::polygon_tsv(np), out_path);
            return 0;
        }
        if (*certify) {
            ghl::CertifyOptions opts;
            opts.fallbacks = !no_fallbacks;
            opts.special_handlers = !no_special;
            opts.primes = ghl::primes_up_to(primes_below);
            if (opts.primes.empty()) ghl::fail(ghl::Errc::invalid_params, "--primes-below leaves no primes");
            const std::int64_t lo = cert_args.n;
            const std::int64_t hi = n_max > 0 ? n_max : lo;
            if (hi < lo) ghl::fail(ghl::Errc::invalid_params, "--n-max below --n");
            for (std::int64_t n = lo; n <= hi; ++n) cert_args.params(n);
            std::vector<ghl::Certificate> certs(static_cast<std::size_t>(hi - lo + 1));
            std::vector<std::exception_ptr> errors(certs.size());
            std::atomic<std::size_t> next{0};
            auto worker = [&] {
                for (std::size_t i = next++; i < certs.size(); i = next++) {
                    try {
                        const auto n = lo + static_cast<std::int64_t>(i);
                        certs[i] = ghl::full_certify(cert_args.params(n), cert_args.make_seed(n), opts);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            };
            const unsigned threads = std::max(1U, std::min<unsigned>(jobs ? jobs : std::thread::hardware_concurrency(),
                                                                      static_cast<unsigned>(certs.size())));
            std::vector<std::thread> pool;
            for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
            worker();
            for (auto& t : pool) t.join();
            for (const auto& e : errors)
                if (e) std::rethrow_exception(e);
            bool residual = false;
            json out = json::array();
            for (const auto& c : certs) {
                residual = residual || !c.residual.empty();
                out.push_back(c.to_json());
            }
            emit((n_max > 0 ? out : out.front()).dump(2) + "\n", out_path);
            return residual ? 1 : 0;
        }
        if (*sieve) {
            if (limit == 0) limit = default_sieve_limit();
            ghl::SieveReport report;
            const auto start = std::chrono::steady_clock::now();
            if (*gpf_ap) {
                ghl::SpfTable table(limit + sd * (sk - 1) + 1, jobs);
                ghl::GpfFilter filter{min_excl, odd ? std::lcm<std::uint64_t>(coprime, 2) : coprime};
                report = ghl::verify_gpf_bound(table, sd, sk, bound, limit, filter);
            } else if (*smooth) {
                ghl::SpfTable table(limit + gap + 1, jobs);
                report.query = "smooth";
                report.params = {{"M", M}, {"gap", gap}, {"limit", limit}};
                for (auto m : ghl::smooth_pairs(table, M, gap, limit)) report.exceptions.push_back(m);
                report.extremal = {{"count", report.exceptions.size()}};
            } else if (*upto7) {
                ghl::SpfTable table(limit + 22, jobs);
                report.query = "upto7";
                report.params = {{"limit", limit}};
                for (const auto& [i, x] : ghl::solve_upto7(table, limit)) report.exceptions.push_back({i, x});
                report.extremal = {{"count", report.exceptions.size()}};
            } else if (*gaps) {
                report = ghl::ap_prime_gaps(modulus, residues, limit, gap_bound, jobs);
                if (!gaps_tsv.empty()) {
                    std::string text;
                    for (const auto& pr : report.exceptions)
                        text += std::to_string(pr[0].get<std::uint64_t>()) + "\t" + std::to_string(pr[1].get<std::uint64_t>()) +
                                "\t" + std::to_string(pr[1].get<std::uint64_t>() - pr[0].get<std::uint64_t>()) + "\n";
                    ghl::write_text_file(gaps_tsv, text);
                }
            } else if (*rset) {
                report.query = "rset";
                const std::int64_t top = rk_max > 0 ? rk_max : rk;
                report.params = {{"k", rk}, {"k_max", top}};
                std::int64_t mismatches = 0;
                auto rows = json::array();
                for (std::int64_t k = rk; k <= top; ++k) {
                    const auto r = ghl::r_set(k);
                    if (!r.matches_formula()) {
                        ++mismatches;
                        report.exceptions.push_back(k);
                    }
                    rows.push_back({{"k", k}, {"alpha", r.alpha}, {"size", r.primes.size()},
                                    {"printed_formula", r.printed_formula}, {"primes", r.primes}});
                }
                report.extremal = {{"mismatches", mismatches}, {"sets", rows}};
            } else if (*bnd) {
                report.query = "bound";
                const std::int64_t top = bk_max > 0 ? bk_max : bk;
                report.params = {{"k", bk}, {"k_max", top}, {"l", bl}, {"printed_variant", printed}};
                double worst = 0;
                std::int64_t worst_k = bk;
                auto rows = json::array();
                for (std::int64_t k = bk; k <= top; ++k) {
                    const auto b = ghl::smoothness_bound(k, bl, printed);
                    if (b.value > worst) {
                        worst = b.value;
                        worst_k = k;
                    }
                    rows.push_back({{"k", k}, {"exponent", b.exponent}, {"floor_root", b.floor_root.get_str()},
                                    {"value", b.value}, {"variant_value", b.variant_value}});
                }
                report.extremal = {{"max_value", worst}, {"argmax_k", worst_k}, {"values", rows}};
            } else if (*growth) {
                report.query = "growth";
                report.params = {{"k", gk}, {"v0", v0}};
                report.extremal = {{"holds", ghl::growth_inequality(gk, v0)}, {"lhs", ghl::growth_lhs(v0)},
                                   {"rhs", ghl::growth_rhs(gk, v0)}};
            } else if (*l43) {
                report.query = "lemma43";
                report.params = {{"n", ln}, {"d", ld}, {"k", lk}};
                report.extremal = {{"holds", ghl::lemma43_predicate(ln, ld, lk)}};
            } else if (*count) {
                report.query = "count";
                report.params = {{"x", cx}, {"mod", modulus}, {"l", cl}};
                report.extremal = {{"count", ghl::residue_prime_count(cx, modulus, cl)}};
            }
            if (report.elapsed_ms == 0.0)
                report.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            emit(report.to_json(timing).dump(2) + "\n", out_path);
            return 0;
        }
    } catch (const ghl::Error& e) {
        std::cerr << "error [" << ghl::to_string(e.code()) << "]: " << e.what() << "\n";
        return e.code() == ghl::Errc::consistency ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
