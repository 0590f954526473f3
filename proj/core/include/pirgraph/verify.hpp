#ifndef PIRGRAPH_VERIFY_HPP
#define PIRGRAPH_VERIFY_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pirgraph/rational.hpp"
#include "pirgraph/schemes.hpp"

namespace pir {

enum class Verdict { ExactPass, SampledPass, Fail };
std::string verdict_name(Verdict v);

struct VerifyOptions {
    // exhaustive modes refuse spaces larger than this
    std::uint64_t max_space = 2'000'000;
    // residual-randomness seeds per transcript in exhaustive reliability
    int extension_seeds = 50;
    // extra random file assignments checked besides zero + basis
    int random_assignments = 3;
    std::uint64_t trials = 10'000;  // sampled modes
    double eps = 0.05;              // sampled TV threshold
};

struct ReliabilityFailure {
    int theta = 0;
    std::uint64_t transcript = 0;
    std::uint64_t ext_seed = 0;
    std::string assignment;
    std::string what;  // "mismatch" or the reconstruction error message
};

// Zero failures required: decoding must be correct with zero error
// probability, so a single counterexample is a verdict.
struct ReliabilityReport {
    bool exhaustive = false;
    std::uint64_t cases = 0;
    std::vector<ReliabilityFailure> failures;
    Verdict verdict = Verdict::Fail;

    std::string to_json(const std::string& scheme, const std::string& graph) const;
};

enum class ReliabilityMode { Exhaustive, Sampled };

// Exhaustive mode walks every theta, every core transcript (times
// extension_seeds residual draws where the scheme has them) and, relying
// on answer linearity, the zero + standard-basis file assignments plus a
// few random ones.
ReliabilityReport verify_reliability(const Scheme& scheme, ReliabilityMode mode,
                                     const VerifyOptions& opts = {},
                                     std::uint64_t seed = 1);

enum class PrivacyMode { Exact, Sampled };

// Exact mode enumerates the randomness space visible to one server and
// demands identical per-theta query distributions (TV exactly 0) -- a
// decision procedure. Sampled mode compares hash-bucketed empirical query
// distributions against the eps threshold.
struct PrivacyReport {
    int server = 0;
    bool exact = false;
    double tv_max = 0.0;
    // per theta, distribution over serialized queries (exact mode) or hash
    // buckets (sampled mode)
    std::vector<std::map<std::string, double>> per_theta;
    Verdict verdict = Verdict::Fail;

    std::string to_json(const std::string& scheme, const std::string& graph,
                        bool include_distributions = false) const;
};

PrivacyReport verify_privacy(const Scheme& scheme, int server, PrivacyMode mode,
                             const VerifyOptions& opts = {}, std::uint64_t seed = 1);

// L over the total fixed answer length, as an exact fraction.
Rational measure_rate(const Scheme& scheme);

} // namespace pir

#endif
