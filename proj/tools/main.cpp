#include "sum.hpp"
#include "verify.hpp"

#include "qcrystal/errors.hpp"
#include "qcrystal/hardhex.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <thread>

using namespace qcrystal;
using namespace qcrystal::cli;

namespace {

enum Exit { ok = 0, disagreement = 1, parse_error = 2, unsupported = 3, cap_exceeded = 4, internal = 5 };

struct Global {
    std::string format = "json";
    std::size_t jobs = 1;
    std::size_t cap = kDefaultVertexCap;
    bool timing = false;
};

void print_poly(const QLaurent& p, const std::string& format) {
    if (format == "csv") {
        std::cout << "exponent,coefficient\n";
        for (const auto& [e, c] : p.terms())
            std::cout << e << ',' << c.get_str() << '\n';
    } else {
        std::cout << p.to_json() << '\n';
    }
}

struct SumArgs {
    std::string shape, weight, restrict, method = "direct", stat = "coenergy";
    int level = 0;
};

int run_sum(const Global& g, const SumArgs& a) {
    const TensorShape shape = parse_shape(a.shape);
    const Weight Lambda = parse_weight(a.weight, shape);
    std::string restrict = a.restrict;
    if (restrict.empty())
        restrict = a.level > 0 ? "level" : "classical";
    const Restriction r = parse_restriction(restrict, a.level);
    Tensor B(shape);
    print_poly(compute_sum(B, Lambda, r, parse_statistic(a.stat), parse_sum_method(a.method), g.cap), g.format);
    return ok;
}

struct RRArgs {
    int L = -1;
    int series = 0;
    long N = 50;
    bool primed = false;
    std::string method = "recurrence";
};

int run_rr(const Global& g, const RRArgs& a) {
    if ((a.L >= 0) == (a.series != 0))
        throw ParseError("rr needs exactly one of --L and --series");
    if (a.L >= 0) {
        print_poly(hh_X(a.L, parse_hh_method(a.method), a.primed), g.format);
        return ok;
    }
    const auto rep = rr_series_check(a.series, a.N);
    if (g.format == "csv") {
        std::cout << "series,N,ok,stable_length\n"
                  << a.series << ',' << a.N << ',' << (rep.ok() ? "true" : "false") << ',' << rep.stable_length
                  << '\n';
    } else {
        std::cout << rep.to_json() << '\n';
    }
    return rep.ok() ? ok : disagreement;
}

int run_verify(const Global& g, VerifyOptions opt) {
    opt.cap = g.cap;
    const auto reports = run_jobs(expand_suite(opt), g.jobs);
    bool all = true;
    if (g.format == "csv")
        std::cout << VerifyReport::csv_header() << '\n';
    for (const auto& r : reports) {
        all = all && r.agree;
        if (g.format == "csv")
            std::cout << r.to_csv(g.timing) << '\n';
        else
            std::cout << r.to_json(g.timing).dump() << '\n';
    }
    return all ? ok : disagreement;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Configuration sums of crystal paths: direct, bosonic and fermionic"};
    app.set_config("--config", "", "TOML/INI file with option defaults; flags win");
    app.require_subcommand(1);

    Global g;
    const std::vector<std::string> formats{"json", "csv"};
    app.add_option("--format", g.format, "Output format")->check(CLI::IsMember(formats));
    app.add_option("--jobs", g.jobs, "Worker threads for verify")->check(CLI::Range(1, 256));
    app.add_option("--cap", g.cap, "Search cap for enumerations")->capture_default_str();
    app.add_flag("--timing", g.timing, "Include timings in verify reports");

    SumArgs sa;
    auto* sum = app.add_subcommand("sum", "One configuration sum");
    sum->add_option("shape", sa.shape, "Tensor product, e.g. A:1;1,1*2")->required();
    sum->add_option("--weight", sa.weight, "Weight, comma separated")->required();
    sum->add_option("--level", sa.level, "Level for --restrict level")->check(CLI::PositiveNumber);
    sum->add_option("--restrict", sa.restrict, "none, classical or level (default classical, or level with --level)")
        ->check(CLI::IsMember({"none", "classical", "level"}));
    sum->add_option("--method", sa.method, "direct, bosonic, fermionic or rc")
        ->check(CLI::IsMember({"direct", "bosonic", "fermionic", "rc"}))
        ->capture_default_str();
    sum->add_option("--stat", sa.stat, "energy or coenergy")
        ->check(CLI::IsMember({"energy", "coenergy"}))
        ->capture_default_str();

    VerifyOptions vo;
    std::string kind = "A";
    auto* verify = app.add_subcommand("verify", "Cross-check methods on a family of instances");
    verify->add_option("suite", vo.suite, "rr, typeA, typeC, level or involution")
        ->required()
        ->check(CLI::IsMember({"rr", "typeA", "typeC", "level", "involution"}));
    verify->add_option("--n", vo.n, "Rank")->capture_default_str();
    verify->add_option("--max-L", vo.max_L, "Largest tensor length")->capture_default_str();
    verify->add_option("--level", vo.level, "Level (suites level and involution)");
    verify->add_option("--kind", kind, "Cartan type for the level suite")->check(CLI::IsMember({"A", "C"}));
    verify->add_option("--N", vo.N, "Series order for suite rr")->capture_default_str();

    RRArgs ra;
    auto* rr = app.add_subcommand("rr", "Hard hexagon configuration sums and Rogers-Ramanujan series");
    auto* opt_L = rr->add_option("--L", ra.L, "Path length")->check(CLI::NonNegativeNumber);
    auto* opt_series = rr->add_option("--series", ra.series, "Identity 1 or 2")->check(CLI::IsMember({1, 2}));
    opt_L->excludes(opt_series);
    rr->add_option("--N", ra.N, "Series order")->capture_default_str();
    rr->add_flag("--primed", ra.primed, "Use D'_L (sigma_0 = 1)");
    rr->add_option("--method", ra.method, "enumerate, recurrence, fermionic or bosonic")
        ->check(CLI::IsMember({"enumerate", "recurrence", "fermionic", "bosonic"}))
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return parse_error;
    }

    try {
        if (*sum)
            return run_sum(g, sa);
        if (*rr)
            return run_rr(g, ra);
        vo.kind = kind.front();
        return run_verify(g, vo);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return parse_error;
    } catch (const UnsupportedError& e) {
        std::cerr << "unsupported: " << e.what() << '\n';
        return unsupported;
    } catch (const CapError& e) {
        std::cerr << "cap exceeded: " << e.what() << '\n';
        return cap_exceeded;
    } catch (const ConsistencyError& e) {
        std::cerr << "internal consistency failure: " << e.what() << '\n';
        return internal;
    }
}
