#include "pirgraph/verify.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "pirgraph/wire.hpp"

namespace pir {

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ExactPass: return "exact-pass";
        case Verdict::SampledPass: return "sampled-pass";
        case Verdict::Fail: return "fail";
    }
    return "?";
}

namespace {

struct NamedAssignment {
    std::string name;
    FileAssignment files;
};

std::vector<NamedAssignment> reliability_assignments(const Scheme& scheme, int extra_random,
                                                     std::uint64_t seed) {
    const int K = scheme.num_files();
    const int L = scheme.file_length();
    std::vector<NamedAssignment> out;
    out.push_back({"zero", FileAssignment::zero(K, L)});
    for (int k = 1; k <= K; ++k)
        for (int b = 0; b < L; ++b)
            out.push_back({"basis(" + std::to_string(k) + "," + std::to_string(b) + ")",
                           FileAssignment::basis(K, L, k, b)});
    Rng rng(seed);
    for (int r = 0; r < extra_random; ++r)
        out.push_back({"random#" + std::to_string(r), FileAssignment::random(K, L, rng)});
    return out;
}

bool residual_randomness(const Scheme& scheme) {
    for (int s = 1; s <= scheme.num_servers(); ++s)
        if (scheme.extension_count(s) != 1) return true;
    return false;
}

} // namespace

ReliabilityReport verify_reliability(const Scheme& scheme, ReliabilityMode mode,
                                     const VerifyOptions& opts, std::uint64_t seed) {
    ReliabilityReport report;
    const int K = scheme.num_files();
    const auto assignments = reliability_assignments(scheme, opts.random_assignments, seed ^ 0x5eed);

    auto run_case = [&](int theta, const QuerySet& qs, std::uint64_t transcript,
                        std::uint64_t ext_seed, const NamedAssignment& na) {
        ++report.cases;
        try {
            const AnswerSet as = scheme.answer_all(qs, na.files);
            const BitVec got = scheme.reconstruct(qs, as);
            if (got != na.files.contents[static_cast<std::size_t>(theta) - 1])
                report.failures.push_back({theta, transcript, ext_seed, na.name, "mismatch"});
        } catch (const std::exception& e) {
            report.failures.push_back({theta, transcript, ext_seed, na.name, e.what()});
        }
    };

    if (mode == ReliabilityMode::Exhaustive) {
        report.exhaustive = true;
        const std::uint64_t transcripts = scheme.transcript_count();
        if (transcripts == 0)
            throw std::invalid_argument("randomness space is not enumerable at this size");
        const int ext_runs = residual_randomness(scheme) ? opts.extension_seeds : 1;
        const std::uint64_t space = transcripts * static_cast<std::uint64_t>(ext_runs) *
                                    static_cast<std::uint64_t>(K);
        if (space > opts.max_space)
            throw std::invalid_argument("randomness space too large for exhaustive mode");

        for (int theta = 1; theta <= K; ++theta) {
            for (std::uint64_t t = 0; t < transcripts; ++t) {
                for (int e = 0; e < ext_runs; ++e) {
                    const std::uint64_t ext_seed = seed + static_cast<std::uint64_t>(e);
                    const QuerySet qs = scheme.make_queries_at(theta, t, ext_seed);
                    for (const auto& na : assignments) run_case(theta, qs, t, ext_seed, na);
                }
            }
        }
        report.verdict = report.failures.empty() ? Verdict::ExactPass : Verdict::Fail;
        return report;
    }

    Rng rng(seed);
    for (std::uint64_t i = 0; i < opts.trials; ++i) {
        const int theta = static_cast<int>(rng.below(static_cast<std::uint64_t>(K))) + 1;
        const QuerySet qs = scheme.make_queries(theta, rng);
        FileAssignment files =
            FileAssignment::random(K, scheme.file_length(), rng);
        run_case(theta, qs, 0, 0, {"sampled#" + std::to_string(i), std::move(files)});
    }
    report.verdict = report.failures.empty() ? Verdict::SampledPass : Verdict::Fail;
    return report;
}

namespace {

std::string query_key(const Query& q) {
    const auto bytes = wire::encode_query(q);
    return std::string(bytes.begin(), bytes.end());
}

// sampled mode compresses queries into a fixed number of hash buckets so
// the empirical TV concentrates at the 10^4-trial scale even when the raw
// query space is enormous
std::string bucket_key(const Query& q) {
    const auto bytes = wire::encode_query(q);
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return "b" + std::to_string(h % 16);
}

double tv_distance(const std::map<std::string, double>& p,
                   const std::map<std::string, double>& q) {
    double sum = 0.0;
    for (const auto& [k, v] : p) {
        const auto it = q.find(k);
        sum += std::abs(v - (it == q.end() ? 0.0 : it->second));
    }
    for (const auto& [k, v] : q)
        if (p.find(k) == p.end()) sum += v;
    return sum / 2.0;
}

} // namespace

PrivacyReport verify_privacy(const Scheme& scheme, int server, PrivacyMode mode,
                             const VerifyOptions& opts, std::uint64_t seed) {
    if (server < 1 || server > scheme.num_servers())
        throw std::out_of_range("server index out of range");
    PrivacyReport report;
    report.server = server;
    const int K = scheme.num_files();

    std::vector<std::map<std::string, std::uint64_t>> counts(static_cast<std::size_t>(K));
    std::uint64_t per_theta_total = 0;

    if (mode == PrivacyMode::Exact) {
        report.exact = true;
        const std::uint64_t transcripts = scheme.transcript_count();
        const std::uint64_t extensions = scheme.extension_count(server);
        if (transcripts == 0 || extensions == 0)
            throw std::invalid_argument("randomness space is not enumerable at this size");
        if (transcripts > opts.max_space / extensions)
            throw std::invalid_argument("randomness space too large for exact mode");
        per_theta_total = transcripts * extensions;

        for (int theta = 1; theta <= K; ++theta) {
            auto& c = counts[static_cast<std::size_t>(theta) - 1];
            for (std::uint64_t t = 0; t < transcripts; ++t) {
                for (std::uint64_t e = 0; e < extensions; ++e) {
                    ++c[query_key(scheme.query_at(theta, t, server, e))];
                }
            }
        }
        // exact verdict: the integer count maps must be identical
        bool identical = true;
        for (int theta = 2; theta <= K; ++theta)
            if (counts[static_cast<std::size_t>(theta) - 1] != counts[0]) identical = false;
        report.verdict = identical ? Verdict::ExactPass : Verdict::Fail;
    } else {
        per_theta_total = opts.trials;
        Rng rng(seed);
        for (int theta = 1; theta <= K; ++theta) {
            auto& c = counts[static_cast<std::size_t>(theta) - 1];
            for (std::uint64_t i = 0; i < opts.trials; ++i) {
                const QuerySet qs = scheme.make_queries(theta, rng);
                ++c[bucket_key(qs.per_server[static_cast<std::size_t>(server) - 1])];
            }
        }
    }

    for (const auto& c : counts) {
        std::map<std::string, double> dist;
        for (const auto& [k, v] : c)
            dist[k] = static_cast<double>(v) / static_cast<double>(per_theta_total);
        report.per_theta.push_back(std::move(dist));
    }
    for (int a = 0; a < K; ++a)
        for (int b = a + 1; b < K; ++b)
            report.tv_max = std::max(
                report.tv_max, tv_distance(report.per_theta[static_cast<std::size_t>(a)],
                                           report.per_theta[static_cast<std::size_t>(b)]));

    if (mode == PrivacyMode::Sampled)
        report.verdict = report.tv_max <= opts.eps ? Verdict::SampledPass : Verdict::Fail;
    return report;
}

Rational measure_rate(const Scheme& scheme) {
    return Rational(scheme.file_length(), scheme.total_answer_bits());
}

std::string ReliabilityReport::to_json(const std::string& scheme,
                                       const std::string& graph) const {
    nlohmann::json j;
    j["scheme"] = scheme;
    j["graph"] = graph;
    j["mode"] = exhaustive ? "exhaustive" : "sampled";
    j["cases"] = cases;
    j["verdict"] = verdict_name(verdict);
    j["failures"] = nlohmann::json::array();
    for (const auto& f : failures) {
        j["failures"].push_back({{"theta", f.theta},
                                 {"transcript", f.transcript},
                                 {"ext_seed", f.ext_seed},
                                 {"assignment", f.assignment},
                                 {"what", f.what}});
    }
    return j.dump();
}

std::string PrivacyReport::to_json(const std::string& scheme, const std::string& graph,
                                   bool include_distributions) const {
    nlohmann::json j;
    j["scheme"] = scheme;
    j["graph"] = graph;
    j["mode"] = exact ? "exact" : "sampled";
    j["server"] = server;
    j["tv_max"] = tv_max;
    j["verdict"] = verdict_name(verdict);
    if (include_distributions) {
        nlohmann::json dists = nlohmann::json::array();
        for (const auto& d : per_theta) {
            nlohmann::json dj = nlohmann::json::object();
            for (const auto& [k, v] : d) {
                // keys are raw bytes in exact mode; hex-encode for JSON
                std::string hex;
                for (unsigned char ch : k) {
                    static const char* digits = "0123456789abcdef";
                    hex.push_back(digits[ch >> 4]);
                    hex.push_back(digits[ch & 0xF]);
                }
                dj[hex] = v;
            }
            dists.push_back(std::move(dj));
        }
        j["per_theta_distributions"] = std::move(dists);
    }
    return j.dump();
}

} // namespace pir
