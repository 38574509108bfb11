// Named self-check suites covering every documented invariant, with a quick
// mode for capped budgets.  Each suite reports pass/fail, timing, and a
// counterexample description on failure.
#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace halfspace {

struct VerifyOptions {
    bool quick = false;        // cap budgets for a fast smoke run
    std::uint64_t seed = 1;
};

struct SuiteResult {
    std::string name;
    bool passed = false;
    std::size_t checks = 0;    // individual assertions exercised
    double millis = 0.0;
    std::string detail;        // counterexample / failure description
};

struct Suite {
    std::string name;
    // runs the suite; on failure returns a counterexample description,
    // on success an empty string.  `checks` counts assertions performed.
    std::function<std::string(const VerifyOptions&, std::size_t& checks)> run;
};

// every built-in invariant suite, in deterministic order
std::vector<Suite> builtin_suites();

// runs the given suites (builtin + any extras), timing each
std::vector<SuiteResult> run_suites(const VerifyOptions& opts,
                                    const std::vector<Suite>& extra = {});

bool all_passed(const std::vector<SuiteResult>& results);
std::string format_report(const std::vector<SuiteResult>& results);

// FNV-1a 64-bit hash, used for byte-identity reproducibility checks
std::uint64_t fnv1a64(const std::string& bytes);

}  // namespace halfspace
