#pragma once

// Verification suites for the command line: each suite expands into a list
// of instances, every instance computes its sum by several methods and
// reports whether they agree.

#include <json.hpp>

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace qcrystal::cli {

struct VerifyReport {
    std::string suite;
    nlohmann::ordered_json instance;
    nlohmann::ordered_json methods = nlohmann::ordered_json::object(); // method -> polynomial
    nlohmann::ordered_json details = nlohmann::ordered_json::object();
    bool agree = false;
    double millis = 0;

    nlohmann::ordered_json to_json(bool with_timing) const;
    static std::string csv_header();
    std::string to_csv(bool with_timing) const;
};

struct VerifyOptions {
    std::string suite;
    int n = 1;
    int max_L = 4;
    int level = 0; // 0: not given
    char kind = 'A';
    long N = 50;
    std::size_t cap = 0; // 0: library default
};

using VerifyJob = std::function<VerifyReport()>;

// Throws ParseError on an unknown suite and DomainError on bad bounds.
std::vector<VerifyJob> expand_suite(const VerifyOptions& opt);

// Runs the jobs on `workers` threads; the result order is the job order.
// The first exception thrown by a job is rethrown after all workers stop.
std::vector<VerifyReport> run_jobs(const std::vector<VerifyJob>& jobs, std::size_t workers);

} // namespace qcrystal::cli
