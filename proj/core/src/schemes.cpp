#include "pirgraph/schemes.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace pir {

// ---- file views ------------------------------------------------------

IncidentFiles::IncidentFiles(const Graph& g, int server, const FileAssignment& fa) {
    for (int k : g.incident_files(server))
        files_.emplace(k, fa.contents.at(static_cast<std::size_t>(k) - 1));
}

const BitVec& IncidentFiles::file(int file_id) const {
    const auto it = files_.find(file_id);
    if (it == files_.end())
        throw std::logic_error("server asked for a file it does not store");
    return it->second;
}

// ---- canonical orderings ---------------------------------------------

std::vector<std::pair<int, int>> lexicographic_pairs(int K) {
    std::vector<std::pair<int, int>> out;
    for (int m = 1; m <= K; ++m)
        for (int n = m + 1; n <= K; ++n) out.push_back({m, n});
    return out;
}

int pair_position(int m, int n, int K) {
    if (m > n) std::swap(m, n);
    if (m < 1 || n > K || m == n) throw std::out_of_range("bad pair");
    return (m - 1) * K - m * (m - 1) / 2 + (n - m - 1);
}

std::uint32_t vertex_mask(const std::vector<int>& vertices) {
    std::uint32_t mask = 0;
    for (int v : vertices) mask |= 1u << (v - 1);
    return mask;
}

std::vector<int> mask_vertices(std::uint32_t mask) {
    std::vector<int> out;
    for (int v = 1; mask != 0; ++v, mask >>= 1)
        if (mask & 1u) out.push_back(v);
    return out;
}

std::vector<std::uint32_t> canonical_subsets(const std::vector<int>& members,
                                             bool include_empty) {
    const std::size_t d = members.size();
    std::vector<std::uint32_t> masks;
    for (std::uint32_t bits = include_empty ? 0 : 1; bits < (1u << d); ++bits) {
        std::uint32_t mask = 0;
        for (std::size_t t = 0; t < d; ++t)
            if (bits & (1u << t)) mask |= 1u << (members[t] - 1);
        masks.push_back(mask);
    }
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return mask_vertices(a) < mask_vertices(b);
    });
    return masks;
}

// ---- scheme base -----------------------------------------------------

std::int64_t Scheme::total_answer_bits() const {
    std::int64_t total = 0;
    for (int s = 1; s <= num_servers(); ++s) total += answer_length(s);
    return total;
}

Rational Scheme::rate() const {
    return Rational(file_length(), total_answer_bits());
}

std::uint64_t Scheme::extension_count(int) const { return 1; }

Query Scheme::query_at(int theta, std::uint64_t transcript, int server,
                       std::uint64_t ext_rank) const {
    return make_queries_at(theta, transcript, ext_rank)
        .per_server.at(static_cast<std::size_t>(server) - 1);
}

BitVec Scheme::answer(int server, const Query& q, const FileAssignment& fa) const {
    FullFiles view(fa);
    return answer(server, q, view);
}

AnswerSet Scheme::answer_all(const QuerySet& qs, const FileAssignment& fa) const {
    AnswerSet as;
    for (int s = 1; s <= num_servers(); ++s)
        as.per_server.push_back(
            answer(s, qs.per_server.at(static_cast<std::size_t>(s) - 1), fa));
    return as;
}

void Scheme::check_files(const FileAssignment& fa) const {
    if (fa.num_files() != num_files() || fa.file_length_bits != file_length())
        throw std::invalid_argument("file assignment does not match scheme shape");
}

void Scheme::check_theta(int theta) const {
    if (theta < 1 || theta > num_files())
        throw std::out_of_range("theta out of range");
}

namespace {

// capped factorial; 0 signals "space too large to enumerate"
std::uint64_t factorial_or_zero(int n) {
    if (n > 20) return 0;
    return factorial(n);
}

Graph validated_star(Graph g) {
    const int n = g.num_vertices();
    if (n < 2 || g.num_edges() != n - 1)
        throw std::invalid_argument("graph is not a star with center N");
    for (int i = 1; i < n; ++i)
        if (g.edge(i) != std::make_pair(i, n))
            throw std::invalid_argument("graph is not a star with center N");
    return g;
}

const ColorQuery& as_color(const Query& q) {
    if (const auto* c = std::get_if<ColorQuery>(&q.v)) return *c;
    throw std::invalid_argument("wrong query shape for this server");
}

const PermQuery& as_perm(const Query& q, int expected_len) {
    const auto* p = std::get_if<PermQuery>(&q.v);
    if (p == nullptr || static_cast<int>(p->perm.size()) != expected_len)
        throw std::invalid_argument("wrong query shape for this server");
    std::vector<bool> seen(p->perm.size() + 1, false);
    for (int v : p->perm) {
        if (v < 1 || v > expected_len || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("query is not a permutation");
        seen[static_cast<std::size_t>(v)] = true;
    }
    return *p;
}

} // namespace

// ---- star simple -----------------------------------------------------

StarSimpleScheme::StarSimpleScheme(Graph star)
    : graph_(validated_star(std::move(star))),
      k_(graph_.num_vertices() - 1),
      coloring_(loop_edge_coloring(k_)) {}

int StarSimpleScheme::answer_length(int server) const {
    if (server < 1 || server > num_servers()) throw std::out_of_range("bad server");
    return server == num_servers() ? k_ * (k_ - 1) / 2 : 1;
}

std::uint64_t StarSimpleScheme::transcript_count() const { return factorial_or_zero(k_); }

QuerySet StarSimpleScheme::queries_from_sigma(int theta, std::vector<int> sigma) const {
    check_theta(theta);
    QuerySet qs;
    qs.theta = theta;
    for (int i = 1; i < num_servers(); ++i) {
        const int color = coloring_.color(i, theta);
        qs.per_server.push_back(
            Query{ColorQuery{sigma[static_cast<std::size_t>(color) - 1]}});
    }
    qs.per_server.push_back(Query{PermQuery{std::move(sigma)}});
    return qs;
}

QuerySet StarSimpleScheme::make_queries(int theta, Rng& rng) const {
    return queries_from_sigma(theta, rng.permutation(k_));
}

QuerySet StarSimpleScheme::make_queries_at(int theta, std::uint64_t transcript,
                                           std::uint64_t) const {
    return queries_from_sigma(theta, nth_permutation(k_, transcript));
}

BitVec StarSimpleScheme::answer(int server, const Query& q, const FileView& files) const {
    const int n = num_servers();
    if (server < 1 || server > n) throw std::out_of_range("bad server");
    if (server < n) {
        const auto& cq = as_color(q);
        if (cq.value < 1 || cq.value > k_)
            throw std::invalid_argument("query index out of range");
        BitVec bit(1);
        bit.set(0, files.file(server).get(static_cast<std::size_t>(cq.value) - 1));
        return bit;
    }
    const auto& sigma = as_perm(q, k_).perm;
    BitVec bits(static_cast<std::size_t>(k_) * (k_ - 1) / 2);
    std::size_t pos = 0;
    for (const auto& [m, nn] : lexicographic_pairs(k_)) {
        const std::size_t at =
            static_cast<std::size_t>(sigma[static_cast<std::size_t>(coloring_.color(m, nn)) - 1]) - 1;
        bits.set(pos++, files.file(m).get(at) ^ files.file(nn).get(at));
    }
    return bits;
}

BitVec StarSimpleScheme::reconstruct(const QuerySet& qs, const AnswerSet& as) const {
    const int n = num_servers();
    const int theta = qs.theta;
    check_theta(theta);
    const auto& sigma = as_perm(qs.per_server.at(static_cast<std::size_t>(n) - 1), k_).perm;

    BitVec w(static_cast<std::size_t>(k_));
    std::vector<bool> covered(static_cast<std::size_t>(k_), false);
    for (int i = 1; i <= k_; ++i) {
        const int pos = sigma[static_cast<std::size_t>(coloring_.color(i, theta)) - 1];
        if (covered[static_cast<std::size_t>(pos) - 1])
            throw ReconstructionError("coverage failure: coloring is not proper at theta");
        covered[static_cast<std::size_t>(pos) - 1] = true;
        bool value = as.per_server.at(static_cast<std::size_t>(i) - 1).get(0);
        if (i != theta) {
            const int pp = pair_position(std::min(i, theta), std::max(i, theta), k_);
            value = value ^ as.per_server.at(static_cast<std::size_t>(n) - 1)
                                .get(static_cast<std::size_t>(pp));
        }
        w.set(static_cast<std::size_t>(pos) - 1, value);
    }
    return w;
}

// ---- star steiner ----------------------------------------------------

StarSteinerScheme::StarSteinerScheme(Graph star)
    : graph_(validated_star(std::move(star))),
      k_(graph_.num_vertices() - 1),
      q_(bertrand_prime(k_)),
      steiner_(affine_steiner(q_)),
      coloring_(slope_coloring(steiner_)) {}

int StarSteinerScheme::answer_length(int server) const {
    if (server < 1 || server > num_servers()) throw std::out_of_range("bad server");
    return server == num_servers() ? q_ * (q_ + 1) : 1;
}

std::uint64_t StarSteinerScheme::transcript_count() const {
    const std::uint64_t perms = factorial_or_zero(q_ + 1);
    return perms == 0 ? 0 : perms * static_cast<std::uint64_t>(q_ + 1);
}

QuerySet StarSteinerScheme::queries_from(int theta, std::vector<int> sigma, int gamma) const {
    check_theta(theta);
    QuerySet qs;
    qs.theta = theta;
    for (int i = 1; i < num_servers(); ++i) {
        if (i == theta) {
            qs.per_server.push_back(Query{ColorQuery{gamma}});
        } else {
            const int color = coloring_.of(block_through(steiner_, i, theta));
            qs.per_server.push_back(
                Query{ColorQuery{sigma[static_cast<std::size_t>(color) - 1]}});
        }
    }
    qs.per_server.push_back(Query{PermQuery{std::move(sigma)}});
    return qs;
}

QuerySet StarSteinerScheme::make_queries(int theta, Rng& rng) const {
    auto sigma = rng.permutation(q_ + 1);
    const int gamma = static_cast<int>(rng.below(static_cast<std::uint64_t>(q_ + 1))) + 1;
    return queries_from(theta, std::move(sigma), gamma);
}

QuerySet StarSteinerScheme::make_queries_at(int theta, std::uint64_t transcript,
                                            std::uint64_t) const {
    const auto colors = static_cast<std::uint64_t>(q_ + 1);
    auto sigma = nth_permutation(q_ + 1, transcript / colors);
    const int gamma = static_cast<int>(transcript % colors) + 1;
    return queries_from(theta, std::move(sigma), gamma);
}

BitVec StarSteinerScheme::answer(int server, const Query& q, const FileView& files) const {
    const int n = num_servers();
    if (server < 1 || server > n) throw std::out_of_range("bad server");
    if (server < n) {
        const auto& cq = as_color(q);
        if (cq.value < 1 || cq.value > q_ + 1)
            throw std::invalid_argument("query index out of range");
        BitVec bit(1);
        bit.set(0, files.file(server).get(static_cast<std::size_t>(cq.value) - 1));
        return bit;
    }
    const auto& sigma = as_perm(q, q_ + 1).perm;
    BitVec bits(static_cast<std::size_t>(steiner_.num_blocks()));
    for (int b = 1; b <= steiner_.num_blocks(); ++b) {
        const std::size_t at =
            static_cast<std::size_t>(sigma[static_cast<std::size_t>(coloring_.of(b)) - 1]) - 1;
        bool value = false;
        for (int j : steiner_.blocks[static_cast<std::size_t>(b) - 1].points) {
            if (j <= k_) value ^= files.file(j).get(at);  // points beyond K are dummy zeros
        }
        bits.set(static_cast<std::size_t>(b) - 1, value);
    }
    return bits;
}

BitVec StarSteinerScheme::reconstruct(const QuerySet& qs, const AnswerSet& as) const {
    const int n = num_servers();
    const int theta = qs.theta;
    check_theta(theta);
    const auto& sigma = as_perm(qs.per_server.at(static_cast<std::size_t>(n) - 1), q_ + 1).perm;
    const auto& hub = as.per_server.at(static_cast<std::size_t>(n) - 1);

    // server theta's own bit W_theta(gamma) is deliberately unused
    BitVec w(static_cast<std::size_t>(q_) + 1);
    std::vector<bool> covered(static_cast<std::size_t>(q_) + 1, false);
    for (int b : steiner_.blocks_through(theta)) {
        const int pos = sigma[static_cast<std::size_t>(coloring_.of(b)) - 1];
        if (covered[static_cast<std::size_t>(pos) - 1])
            throw ReconstructionError("coverage failure: block coloring is not proper at theta");
        covered[static_cast<std::size_t>(pos) - 1] = true;
        bool value = hub.get(static_cast<std::size_t>(b) - 1);
        for (int j : steiner_.blocks[static_cast<std::size_t>(b) - 1].points) {
            if (j != theta && j <= k_)
                value ^= as.per_server.at(static_cast<std::size_t>(j) - 1).get(0);
        }
        w.set(static_cast<std::size_t>(pos) - 1, value);
    }
    for (bool c : covered)
        if (!c) throw ReconstructionError("coverage failure: colors through theta incomplete");
    return w;
}

// ---- complete subset -------------------------------------------------

namespace {

Graph complete_on(int n) { return build_family("complete:" + std::to_string(n)); }

} // namespace

CompleteSubsetScheme::CompleteSubsetScheme(Graph g)
    : CompleteSubsetScheme(std::move(g), true) {}

CompleteSubsetScheme::CompleteSubsetScheme(Graph instance, bool require_complete)
    : graph_(std::move(instance)),
      complete_(complete_on(graph_.num_vertices())),
      n_(graph_.num_vertices()) {
    if (n_ < 2 || n_ > 16)
        throw std::invalid_argument("subset scheme supports 2..16 servers");
    if (require_complete && graph_.num_edges() != n_ * (n_ - 1) / 2)
        throw std::invalid_argument("graph is not complete");
    if (graph_.num_edges() < 1)
        throw std::invalid_argument("subset scheme needs at least one file");
    length_ = 1 << (n_ - 1);
    for (int j = 1; j <= n_; ++j) {
        const auto nb = complete_.neighbors(j);
        subsets_.push_back(canonical_subsets(nb, false));
        std::map<std::uint32_t, int> pos;
        for (std::size_t p = 0; p < subsets_.back().size(); ++p)
            pos[subsets_.back()[p]] = static_cast<int>(p);
        subset_pos_.push_back(std::move(pos));
    }
}

std::uint64_t CompleteSubsetScheme::transcript_count() const {
    return factorial_or_zero(length_);
}

std::uint64_t CompleteSubsetScheme::extension_count(int) const {
    return factorial_or_zero(length_ / 2);
}

std::vector<std::uint32_t> CompleteSubsetScheme::omega(int i, int iprime) const {
    std::vector<std::uint32_t> masks;
    const std::uint32_t pair = (1u << (i - 1)) | (1u << (iprime - 1));
    for (std::uint32_t m = 0; m < (1u << n_); ++m)
        if (std::popcount(m & pair) == 1) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
        const int pa = std::popcount(a), pb = std::popcount(b);
        if (pa != pb) return pa < pb;
        return mask_vertices(a) < mask_vertices(b);
    });
    return masks;
}

const std::vector<std::uint32_t>& CompleteSubsetScheme::answer_subsets(int server) const {
    return subsets_.at(static_cast<std::size_t>(server) - 1);
}

std::vector<int> CompleteSubsetScheme::extension_assignment(
    int, int, const std::vector<std::uint32_t>&, std::vector<int> free_values,
    std::optional<std::uint64_t> ext_rank, Rng* rng) const {
    if (ext_rank.has_value()) {
        const auto perm = nth_permutation(static_cast<int>(free_values.size()), *ext_rank);
        std::vector<int> out(free_values.size());
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = free_values[static_cast<std::size_t>(perm[i]) - 1];
        return out;
    }
    rng->shuffle(free_values);
    return free_values;
}

int CompleteSubsetScheme::pair_file(int u, int v) const {
    return graph_.edge_index(u, v);
}

QuerySet CompleteSubsetScheme::assemble_queries(int theta, const std::vector<int>& pi,
                                                std::optional<std::uint64_t> single_server,
                                                std::optional<std::uint64_t> ext_rank,
                                                Rng* rng, Query* single_out) const {
    check_theta(theta);
    const auto [i, iprime] = graph_.edge(theta);
    const auto om = omega(i, iprime);

    QuerySet qs;
    qs.theta = theta;
    qs.user_pi = pi;

    for (int j = 1; j <= n_; ++j) {
        if (single_server.has_value() && static_cast<int>(*single_server) != j) continue;

        BijectionQuery bq;
        bq.n_vertices = n_;
        bq.sigma.assign(1u << n_, 0);
        std::vector<bool> value_used(static_cast<std::size_t>(length_) + 1, false);

        const std::uint32_t jbit = 1u << (j - 1);
        for (std::size_t idx = 0; idx < om.size(); ++idx) {
            const std::uint32_t p = om[idx];
            const int value = pi[idx];
            if (j != i && j != iprime) {
                if (p & jbit) {
                    bq.sigma[p & ~jbit] = static_cast<std::uint16_t>(value);
                    value_used[static_cast<std::size_t>(value)] = true;
                }
            } else if (p & jbit) {
                const int abar = (j == i) ? iprime : i;
                const std::uint32_t dom = (p & ~jbit) | (1u << (abar - 1));
                bq.sigma[dom] = static_cast<std::uint16_t>(value);
                value_used[static_cast<std::size_t>(value)] = true;
            }
        }

        std::vector<std::uint32_t> free_masks;
        for (std::uint32_t m = 0; m < (1u << n_); ++m) {
            if (m & jbit) continue;  // not a subset of N(j)
            if (bq.sigma[m] == 0) free_masks.push_back(m);
        }
        std::vector<int> free_values;
        for (int v = 1; v <= length_; ++v)
            if (!value_used[static_cast<std::size_t>(v)]) free_values.push_back(v);

        const auto assigned = extension_assignment(theta, j, free_masks,
                                                   std::move(free_values), ext_rank, rng);
        for (std::size_t t = 0; t < free_masks.size(); ++t)
            bq.sigma[free_masks[t]] = static_cast<std::uint16_t>(assigned[t]);

        // the empty set maps to a value like any other subset; a sigma[0]
        // of 0 would mean we failed to produce a bijection
        if (single_out != nullptr && single_server.has_value()) {
            *single_out = Query{std::move(bq)};
            return qs;
        }
        qs.per_server.push_back(Query{std::move(bq)});
    }
    return qs;
}

QuerySet CompleteSubsetScheme::make_queries(int theta, Rng& rng) const {
    const auto pi = rng.permutation(length_);
    return assemble_queries(theta, pi, std::nullopt, std::nullopt, &rng, nullptr);
}

QuerySet CompleteSubsetScheme::make_queries_at(int theta, std::uint64_t transcript,
                                               std::uint64_t ext_seed) const {
    const auto pi = nth_permutation(length_, transcript);
    Rng ext(ext_seed);
    return assemble_queries(theta, pi, std::nullopt, std::nullopt, &ext, nullptr);
}

Query CompleteSubsetScheme::query_at(int theta, std::uint64_t transcript, int server,
                                     std::uint64_t ext_rank) const {
    const auto pi = nth_permutation(length_, transcript);
    Query out;
    assemble_queries(theta, pi, static_cast<std::uint64_t>(server), ext_rank, nullptr, &out);
    return out;
}

BitVec CompleteSubsetScheme::answer(int server, const Query& q, const FileView& files) const {
    if (server < 1 || server > n_) throw std::out_of_range("bad server");
    const auto* bq = std::get_if<BijectionQuery>(&q.v);
    if (bq == nullptr || bq->n_vertices != n_ ||
        bq->sigma.size() != (1u << n_))
        throw std::invalid_argument("wrong query shape for this server");

    // sigma must be a bijection from the neighborhood subsets onto [L]
    const std::uint32_t jbit = 1u << (server - 1);
    std::vector<bool> seen(static_cast<std::size_t>(length_) + 1, false);
    for (std::uint32_t m = 0; m < (1u << n_); ++m) {
        const int v = bq->sigma[m];
        if (m & jbit) {
            if (v != 0) throw std::invalid_argument("sigma assigns a non-subset of N(j)");
            continue;
        }
        if (v < 1 || v > length_ || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("sigma is not a bijection");
        seen[static_cast<std::size_t>(v)] = true;
    }

    const auto& order = answer_subsets(server);
    BitVec bits(order.size());
    for (std::size_t p = 0; p < order.size(); ++p) {
        const std::size_t at = static_cast<std::size_t>(bq->sigma[order[p]]) - 1;
        bool value = false;
        for (int v : mask_vertices(order[p])) {
            const int fid = pair_file(server, v);
            if (fid != 0) value ^= files.file(fid).get(at);
        }
        bits.set(p, value);
    }
    return bits;
}

BitVec CompleteSubsetScheme::reconstruct(const QuerySet& qs, const AnswerSet& as) const {
    const int theta = qs.theta;
    check_theta(theta);
    const auto [i, iprime] = graph_.edge(theta);
    const auto om = omega(i, iprime);
    if (static_cast<int>(qs.user_pi.size()) != length_)
        throw std::invalid_argument("query set is missing the user bijection");

    BitVec w(static_cast<std::size_t>(length_));
    for (int l = 1; l <= length_; ++l) {
        const auto it = std::find(qs.user_pi.begin(), qs.user_pi.end(), l);
        const std::uint32_t p = om[static_cast<std::size_t>(it - qs.user_pi.begin())];
        const int a = (p & (1u << (i - 1))) ? i : iprime;
        const int abar = (a == i) ? iprime : i;
        const std::uint32_t abit = 1u << (a - 1);

        bool value = false;
        for (int j : mask_vertices(p)) {
            if (j == a) continue;
            const std::uint32_t sub = p & ~(1u << (j - 1));
            value ^= as.per_server.at(static_cast<std::size_t>(j) - 1)
                         .get(static_cast<std::size_t>(
                             subset_pos_[static_cast<std::size_t>(j) - 1].at(sub)));
        }
        const std::uint32_t suba = (p & ~abit) | (1u << (abar - 1));
        value ^= as.per_server.at(static_cast<std::size_t>(a) - 1)
                     .get(static_cast<std::size_t>(
                         subset_pos_[static_cast<std::size_t>(a) - 1].at(suba)));
        w.set(static_cast<std::size_t>(l) - 1, value);
    }
    return w;
}

SubgraphAdapterScheme::SubgraphAdapterScheme(Graph g)
    : CompleteSubsetScheme(std::move(g), false) {}

int SubgraphAdapterScheme::pair_file(int u, int v) const {
    return graph_.edge_index(u, v);  // 0 = dummy zero file shared by u and v
}

// ---- symmetrized -----------------------------------------------------

namespace {

std::vector<int> inverse_perm(const std::vector<int>& f) {
    std::vector<int> inv(f.size());
    for (std::size_t i = 0; i < f.size(); ++i)
        inv[static_cast<std::size_t>(f[i]) - 1] = static_cast<int>(i) + 1;
    return inv;
}

// file ids relabeled through the inverse automorphism
class PermutedFiles final : public FileView {
public:
    PermutedFiles(const Graph& g, const std::vector<int>& f, const FileView& inner)
        : g_(&g), finv_(inverse_perm(f)), inner_(&inner) {}

    const BitVec& file(int file_id) const override {
        const auto [s, t] = g_->edge(file_id);
        const int actual = g_->edge_index(finv_[static_cast<std::size_t>(s) - 1],
                                          finv_[static_cast<std::size_t>(t) - 1]);
        if (actual == 0) throw std::logic_error("automorphism does not preserve edges");
        return inner_->file(actual);
    }

private:
    const Graph* g_;
    std::vector<int> finv_;
    const FileView* inner_;
};

} // namespace

SymmetrizedScheme::SymmetrizedScheme(std::shared_ptr<const Scheme> base,
                                     PermutationGroup group)
    : base_(std::move(base)), group_(std::move(group)) {
    if (group_.elements.empty())
        throw std::invalid_argument("empty automorphism group");
    const Graph& g = base_->graph();
    bool has_identity = false;
    for (const auto& f : group_.elements) {
        if (static_cast<int>(f.size()) != g.num_vertices())
            throw std::invalid_argument("permutation size mismatch");
        bool ident = true;
        for (std::size_t i = 0; i < f.size(); ++i) {
            if (f[i] != static_cast<int>(i) + 1) ident = false;
        }
        has_identity = has_identity || ident;
        for (const auto& [u, v] : g.edges()) {
            if (!g.has_edge(f[static_cast<std::size_t>(u) - 1],
                            f[static_cast<std::size_t>(v) - 1]))
                throw std::invalid_argument("group element is not an automorphism");
        }
    }
    if (!has_identity) throw std::invalid_argument("group lacks the identity");
}

int SymmetrizedScheme::answer_length(int server) const {
    const int len = base_->answer_length(server);
    for (int s = 1; s <= num_servers(); ++s) {
        if (base_->answer_length(s) != len)
            throw std::logic_error(
                "per-server answer length undefined: base scheme is not uniform");
    }
    return len;
}

std::uint64_t SymmetrizedScheme::transcript_count() const {
    return group_.elements.size();
}

std::uint64_t SymmetrizedScheme::extension_count(int) const {
    return 0;  // the residual randomness is the whole base scheme transcript
}

int SymmetrizedScheme::mapped_theta(const std::vector<int>& f, int theta) const {
    const Graph& g = base_->graph();
    const auto [u, v] = g.edge(theta);
    const int mapped = g.edge_index(f[static_cast<std::size_t>(u) - 1],
                                    f[static_cast<std::size_t>(v) - 1]);
    if (mapped == 0) throw std::logic_error("automorphism does not preserve edges");
    return mapped;
}

QuerySet SymmetrizedScheme::assemble(int theta, std::size_t f_index,
                                     std::uint64_t ext_seed) const {
    check_theta(theta);
    const auto& f = group_.elements.at(f_index);
    Rng ext(ext_seed);
    auto base_qs = std::make_shared<QuerySet>(
        base_->make_queries(mapped_theta(f, theta), ext));

    QuerySet qs;
    qs.theta = theta;
    qs.automorphism = f;
    qs.base = base_qs;
    for (int i = 1; i <= num_servers(); ++i) {
        const int fi = f[static_cast<std::size_t>(i) - 1];
        qs.per_server.push_back(Query{SymQuery{
            f, std::make_shared<const Query>(
                   base_qs->per_server.at(static_cast<std::size_t>(fi) - 1))}});
    }
    return qs;
}

QuerySet SymmetrizedScheme::make_queries(int theta, Rng& rng) const {
    const std::size_t f_index = rng.below(group_.elements.size());
    return assemble(theta, f_index, rng.next());
}

QuerySet SymmetrizedScheme::make_queries_at(int theta, std::uint64_t transcript,
                                            std::uint64_t ext_seed) const {
    return assemble(theta, transcript, ext_seed);
}

BitVec SymmetrizedScheme::answer(int server, const Query& q, const FileView& files) const {
    const auto* sq = std::get_if<SymQuery>(&q.v);
    if (sq == nullptr || sq->inner == nullptr ||
        static_cast<int>(sq->automorphism.size()) != num_servers())
        throw std::invalid_argument("wrong query shape for this server");
    const int fi = sq->automorphism.at(static_cast<std::size_t>(server) - 1);
    PermutedFiles view(base_->graph(), sq->automorphism, files);
    return base_->answer(fi, *sq->inner, view);
}

BitVec SymmetrizedScheme::reconstruct(const QuerySet& qs, const AnswerSet& as) const {
    if (qs.base == nullptr ||
        static_cast<int>(qs.automorphism.size()) != num_servers())
        throw std::invalid_argument("query set is missing the automorphism transcript");
    const auto finv = inverse_perm(qs.automorphism);
    AnswerSet base_as;
    for (int s = 1; s <= num_servers(); ++s)
        base_as.per_server.push_back(
            as.per_server.at(static_cast<std::size_t>(finv[static_cast<std::size_t>(s) - 1]) - 1));
    return base_->reconstruct(*qs.base, base_as);
}

// ---- factory ---------------------------------------------------------

std::shared_ptr<const Scheme> make_scheme(const std::string& name, const Graph& g) {
    if (name == "star-simple") return std::make_shared<StarSimpleScheme>(g);
    if (name == "star-steiner") return std::make_shared<StarSteinerScheme>(g);
    if (name == "complete-subset") return std::make_shared<CompleteSubsetScheme>(g);
    if (name == "subgraph-adapter") return std::make_shared<SubgraphAdapterScheme>(g);
    if (name == "symmetrized") {
        auto base = std::make_shared<SubgraphAdapterScheme>(g);
        return std::make_shared<SymmetrizedScheme>(base, automorphism_group(g));
    }
    throw std::invalid_argument("unknown scheme: " + name);
}

} // namespace pir
