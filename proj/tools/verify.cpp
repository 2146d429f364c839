#include "verify.hpp"

#include "sum.hpp"

#include "qcrystal/bosonic.hpp"
#include "qcrystal/errors.hpp"
#include "qcrystal/hardhex.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <mutex>
#include <sstream>
#include <thread>

namespace qcrystal::cli {

namespace {

using ojson = nlohmann::ordered_json;

std::vector<Weight> partitions(int total, int parts, int max_spread) {
    std::vector<Weight> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int left, int bound) -> void {
        if (static_cast<int>(cur.size()) == parts) {
            if (left == 0 && cur.front() - cur.back() <= max_spread)
                out.emplace_back(cur);
            return;
        }
        for (int x = std::min(left, bound); x >= 0; --x) {
            cur.push_back(x);
            self(self, left - x, x);
            cur.pop_back();
        }
    };
    if (parts > 0)
        rec(rec, total, total);
    return out;
}

std::string box_shape(char kind, int n, int L) {
    std::string s = std::string(1, kind) + ":" + std::to_string(n);
    if (L > 0)
        s += ";1,1*" + std::to_string(L);
    return s;
}

std::size_t effective_cap(const VerifyOptions& opt) { return opt.cap ? opt.cap : kDefaultVertexCap; }

// Evaluates every method, records the polynomials and whether they coincide.
VerifyReport compare(std::string suite, ojson instance,
                     const std::vector<std::pair<std::string, std::function<QLaurent()>>>& methods) {
    VerifyReport r;
    r.suite = std::move(suite);
    r.instance = std::move(instance);
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<QLaurent> values;
    for (const auto& [name, f] : methods) {
        values.push_back(f());
        r.methods[name] = ojson::parse(values.back().to_json());
    }
    r.agree = true;
    for (const auto& v : values)
        r.agree = r.agree && v == values.front();
    r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

ojson weight_json(const Weight& w) { return w.coords; }

void check_bounds(const VerifyOptions& opt, int max_n, int max_L) {
    if (opt.n < 1 || opt.n > max_n)
        throw DomainError("--n must lie in [1, " + std::to_string(max_n) + "] for suite " + opt.suite);
    if (opt.max_L < 0 || opt.max_L > max_L)
        throw DomainError("--max-L must lie in [0, " + std::to_string(max_L) + "] for suite " + opt.suite);
}

std::vector<VerifyJob> rr_jobs(const VerifyOptions& opt) {
    if (opt.max_L < 0 || opt.max_L > 60)
        throw DomainError("--max-L must lie in [0, 60] for suite rr");
    if (opt.N < 0 || opt.N > kMaxSeriesOrder)
        throw DomainError("--N must lie in [0, " + std::to_string(kMaxSeriesOrder) + "]");
    std::vector<VerifyJob> jobs;
    for (bool primed : {false, true})
        for (int L = 0; L <= opt.max_L; ++L)
            jobs.push_back([L, primed] {
                std::vector<std::pair<std::string, std::function<QLaurent()>>> methods;
                for (auto m : {HHMethod::enumerate, HHMethod::recurrence, HHMethod::fermionic, HHMethod::bosonic}) {
                    if (m == HHMethod::enumerate && L > kMaxEnumerateLength)
                        continue;
                    methods.emplace_back(to_string(m), [=] { return hh_X(L, m, primed); });
                }
                return compare("rr", ojson{{"L", L}, {"primed", primed}}, methods);
            });
    for (int which : {1, 2})
        jobs.push_back([which, N = opt.N] {
            const auto t0 = std::chrono::steady_clock::now();
            const auto s = rr_series_check(which, N);
            VerifyReport r;
            r.suite = "rr";
            r.instance = ojson{{"series", which}, {"N", N}};
            r.details = ojson{{"sum_matches_product", s.fermionic_matches_product},
                              {"alternating_matches_product", s.alternating_matches_product},
                              {"path_limit_matches", s.path_limit_matches},
                              {"stable_length", s.stable_length},
                              {"findings", s.findings}};
            r.agree = s.ok();
            r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            return r;
        });
    return jobs;
}

std::vector<VerifyJob> typeA_jobs(const VerifyOptions& opt) {
    check_bounds(opt, 3, 8);
    std::vector<VerifyJob> jobs;
    const std::size_t cap = effective_cap(opt);
    for (int L = 0; L <= opt.max_L; ++L)
        for (const auto& lam : partitions(L, opt.n + 1, L)) {
            const std::string shape = box_shape('A', opt.n, L);
            jobs.push_back([=] {
                Tensor B(parse_shape(shape));
                std::vector<std::pair<std::string, std::function<QLaurent()>>> methods;
                for (auto m : {SumMethod::direct, SumMethod::bosonic, SumMethod::fermionic, SumMethod::rc})
                    methods.emplace_back(to_string(m), [&, m] {
                        return compute_sum(B, lam, Restriction::classical(), Statistic::coenergy, m, cap);
                    });
                return compare("typeA", ojson{{"shape", shape}, {"weight", weight_json(lam)}}, methods);
            });
        }
    return jobs;
}

std::vector<VerifyJob> typeC_jobs(const VerifyOptions& opt) {
    check_bounds(opt, 3, 6);
    std::vector<VerifyJob> jobs;
    const std::size_t cap = effective_cap(opt);
    for (int L = 0; L <= opt.max_L; ++L)
        for (int top = L % 2; top <= L; top += 2)
            for (const auto& lam : partitions(top, opt.n, top)) {
                const std::string shape = box_shape('C', opt.n, L);
                jobs.push_back([=] {
                    Tensor B(parse_shape(shape));
                    std::vector<std::pair<std::string, std::function<QLaurent()>>> methods;
                    for (auto m : {SumMethod::bosonic, SumMethod::fermionic, SumMethod::rc})
                        methods.emplace_back(to_string(m), [&, m] {
                            return compute_sum(B, lam, Restriction::classical(), Statistic::coenergy, m, cap);
                        });
                    return compare("typeC", ojson{{"shape", shape}, {"weight", weight_json(lam)}}, methods);
                });
            }
    return jobs;
}

std::vector<VerifyJob> level_jobs(const VerifyOptions& opt) {
    check_bounds(opt, 3, 8);
    if (opt.level < 1)
        throw DomainError("suite level needs --level >= 1");
    std::vector<VerifyJob> jobs;
    const std::size_t cap = effective_cap(opt);
    const bool typeA = opt.kind == 'A';
    for (int L = 0; L <= opt.max_L; ++L) {
        const std::string shape = box_shape(opt.kind, opt.n, L);
        std::vector<Weight> weights;
        if (typeA)
            weights = partitions(L, opt.n + 1, opt.level);
        else
            for (int top = L % 2; top <= L; top += 2)
                for (const auto& w : partitions(top, opt.n, top))
                    if (w[0] <= opt.level)
                        weights.push_back(w);
        for (const auto& lam : weights)
            jobs.push_back([=, level = opt.level] {
                Tensor B(parse_shape(shape));
                std::vector<std::pair<std::string, std::function<QLaurent()>>> methods;
                for (auto m : {SumMethod::direct, SumMethod::bosonic, SumMethod::fermionic, SumMethod::rc}) {
                    if (m == SumMethod::direct && !typeA)
                        continue;
                    methods.emplace_back(to_string(m), [&, m] {
                        return compute_sum(B, lam, Restriction::at_level(level), Statistic::coenergy, m, cap);
                    });
                }
                return compare("level",
                               ojson{{"shape", shape}, {"weight", weight_json(lam)}, {"level", level}}, methods);
            });
    }
    return jobs;
}

std::vector<VerifyJob> involution_jobs(const VerifyOptions& opt) {
    check_bounds(opt, 3, 6);
    std::vector<VerifyJob> jobs;
    const std::size_t cap = effective_cap(opt);
    auto add = [&](char kind, int L, const Weight& lam, Restriction mode) {
        const std::string shape = box_shape(kind, opt.n, L);
        jobs.push_back([=] {
            const auto t0 = std::chrono::steady_clock::now();
            Tensor B(parse_shape(shape));
            const auto rep = involution_phi(B, lam, mode, cap);
            VerifyReport r;
            r.suite = "involution";
            r.instance = ojson{{"shape", shape}, {"weight", weight_json(lam)}};
            if (mode.kind == RestrictionKind::level)
                r.instance["level"] = mode.level;
            r.details = ojson{{"set_size", rep.set_size},
                              {"fixed_points", rep.fixed_points},
                              {"expected_fixed", rep.expected_fixed},
                              {"involution", rep.involution},
                              {"sign_reversing", rep.sign_reversing},
                              {"stays_in_set", rep.stays_in_set},
                              {"v_property", rep.v_property},
                              {"weight_preserving", rep.weight_preserving},
                              {"findings", rep.findings}};
            r.agree = rep.ok();
            r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            return r;
        });
    };
    for (int L = 0; L <= opt.max_L; ++L) {
        for (const auto& lam : partitions(L, opt.n + 1, L))
            add('A', L, lam, Restriction::classical());
        for (int top = L % 2; top <= L; top += 2)
            for (const auto& lam : partitions(top, opt.n, top))
                add('C', L, lam, Restriction::classical());
        if (opt.level >= 1)
            for (const auto& lam : partitions(L, opt.n + 1, opt.level))
                add('A', L, lam, Restriction::at_level(opt.level));
    }
    return jobs;
}

std::string csv_quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

ojson VerifyReport::to_json(bool with_timing) const {
    ojson j;
    j["suite"] = suite;
    j["instance"] = instance;
    if (!methods.empty())
        j["methods"] = methods;
    if (!details.empty())
        j["details"] = details;
    j["agree"] = agree;
    if (with_timing)
        j["ms"] = static_cast<long>(millis + 0.5);
    return j;
}

std::string VerifyReport::csv_header() { return "suite,instance,agree,methods,details,ms"; }

std::string VerifyReport::to_csv(bool with_timing) const {
    std::ostringstream os;
    os << suite << ',' << csv_quote(instance.dump()) << ',' << (agree ? "true" : "false") << ','
       << csv_quote(methods.dump()) << ',' << csv_quote(details.dump()) << ',';
    if (with_timing)
        os << static_cast<long>(millis + 0.5);
    return os.str();
}

std::vector<VerifyJob> expand_suite(const VerifyOptions& opt) {
    if (opt.kind != 'A' && opt.kind != 'C')
        throw ParseError("--kind must be A or C");
    if (opt.suite == "rr")
        return rr_jobs(opt);
    if (opt.suite == "typeA")
        return typeA_jobs(opt);
    if (opt.suite == "typeC")
        return typeC_jobs(opt);
    if (opt.suite == "level")
        return level_jobs(opt);
    if (opt.suite == "involution")
        return involution_jobs(opt);
    throw ParseError("unknown suite '" + opt.suite + "'");
}

std::vector<VerifyReport> run_jobs(const std::vector<VerifyJob>& jobs, std::size_t workers) {
    std::vector<VerifyReport> out(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= jobs.size())
                return;
            try {
                out[k] = jobs[k]();
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure)
                    failure = std::current_exception();
                next = jobs.size();
                return;
            }
        }
    };
    workers = std::max<std::size_t>(1, std::min(workers, jobs.size()));
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

} // namespace qcrystal::cli
