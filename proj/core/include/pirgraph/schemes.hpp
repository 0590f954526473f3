#ifndef PIRGRAPH_SCHEMES_HPP
#define PIRGRAPH_SCHEMES_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pirgraph/bitvec.hpp"
#include "pirgraph/combinatorics.hpp"
#include "pirgraph/graph.hpp"
#include "pirgraph/rational.hpp"
#include "pirgraph/rng.hpp"

namespace pir {

// ---- queries ---------------------------------------------------------

struct Query;

// single index in [T] (star leaf queries)
struct ColorQuery {
    int value = 0;
};

// permutation sent to a star hub (1-based images)
struct PermQuery {
    std::vector<int> perm;
};

// bijection sigma_j from the subsets of a server's neighborhood to [L],
// stored as an array indexed by subset bitmask over [N] (bit v-1 = vertex
// v); entries for masks outside the neighborhood are 0
struct BijectionQuery {
    int n_vertices = 0;
    std::vector<std::uint16_t> sigma;

    int at(std::uint32_t mask) const { return sigma[mask]; }
};

// automorphism plus the base-scheme query for the relabeled server
struct SymQuery {
    std::vector<int> automorphism;
    std::shared_ptr<const Query> inner;
};

struct Query {
    std::variant<ColorQuery, PermQuery, BijectionQuery, SymQuery> v;
};

struct QuerySet {
    int theta = 0;
    std::vector<Query> per_server;  // index 0 = server 1
    // user-retained randomness, never sent to any server:
    std::vector<int> user_pi;              // subset scheme: Omega order -> [L]
    std::vector<int> automorphism;         // symmetrized: the drawn f
    std::shared_ptr<const QuerySet> base;  // symmetrized: wrapped query set
};

struct AnswerSet {
    std::vector<BitVec> per_server;
};

// ---- file access -----------------------------------------------------

// Answer computation reads files through this interface so a server can be
// handed exactly its incident files and nothing else.
class FileView {
public:
    virtual ~FileView() = default;
    virtual const BitVec& file(int file_id) const = 0;
};

class FullFiles final : public FileView {
public:
    explicit FullFiles(const FileAssignment& fa) : fa_(&fa) {}
    const BitVec& file(int file_id) const override {
        return fa_->contents.at(static_cast<std::size_t>(file_id) - 1);
    }

private:
    const FileAssignment* fa_;
};

// Holds only the files stored on one server; any other lookup throws.
class IncidentFiles final : public FileView {
public:
    IncidentFiles(const Graph& g, int server, const FileAssignment& fa);
    const BitVec& file(int file_id) const override;

private:
    std::map<int, BitVec> files_;
};

// ---- canonical orderings ---------------------------------------------

// all unordered pairs (m,n), m<n in [K], in lexicographic order
std::vector<std::pair<int, int>> lexicographic_pairs(int K);
int pair_position(int m, int n, int K);

std::uint32_t vertex_mask(const std::vector<int>& vertices);
std::vector<int> mask_vertices(std::uint32_t mask);

// subsets of `members` (a sorted vertex list) as bitmasks, ordered by
// cardinality then lexicographically by ascending vertex sequence
std::vector<std::uint32_t> canonical_subsets(const std::vector<int>& members,
                                             bool include_empty);

// ---- schemes ---------------------------------------------------------

enum class SchemeKind { StarSimple, StarSteiner, CompleteSubset, SubgraphAdapter, Symmetrized };

struct ReconstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class Scheme {
public:
    virtual ~Scheme() = default;

    virtual SchemeKind kind() const = 0;
    virtual std::string name() const = 0;
    virtual const Graph& graph() const = 0;
    virtual int file_length() const = 0;  // L in bits
    virtual int num_servers() const = 0;
    int num_files() const { return graph().num_edges(); }
    virtual int answer_length(int server) const = 0;  // bits, fixed per server
    virtual std::int64_t total_answer_bits() const;
    virtual Rational rate() const;  // L / total download, exact

    // Sampled transcript.
    virtual QuerySet make_queries(int theta, Rng& rng) const = 0;

    // Size of the enumerable core randomness space (permutations /
    // bijections / automorphisms); 0 when not enumerable at this size.
    virtual std::uint64_t transcript_count() const = 0;

    // Transcript by rank; residual randomness (bijection extensions, the
    // base scheme inside a symmetrization) is drawn from ext_seed.
    virtual QuerySet make_queries_at(int theta, std::uint64_t transcript,
                                     std::uint64_t ext_seed) const = 0;

    // Exact per-server privacy enumeration: the part of the residual
    // randomness visible to `server` has this many outcomes (1 = none,
    // 0 = not enumerable).
    virtual std::uint64_t extension_count(int server) const;
    virtual Query query_at(int theta, std::uint64_t transcript, int server,
                           std::uint64_t ext_rank) const;

    virtual BitVec answer(int server, const Query& q, const FileView& files) const = 0;
    BitVec answer(int server, const Query& q, const FileAssignment& fa) const;
    AnswerSet answer_all(const QuerySet& qs, const FileAssignment& fa) const;

    // Recovers W_theta; throws ReconstructionError on coverage failure.
    virtual BitVec reconstruct(const QuerySet& qs, const AnswerSet& as) const = 0;

    void check_files(const FileAssignment& fa) const;
    void check_theta(int theta) const;
};

// Rate 2/N star scheme: L = K = N-1, hub answers one XOR bit per pair of
// leaf files under a loop edge coloring of the complete graph on [K].
class StarSimpleScheme final : public Scheme {
public:
    explicit StarSimpleScheme(Graph star);

    SchemeKind kind() const override { return SchemeKind::StarSimple; }
    std::string name() const override { return "star-simple"; }
    const Graph& graph() const override { return graph_; }
    int file_length() const override { return k_; }
    int num_servers() const override { return graph_.num_vertices(); }
    int answer_length(int server) const override;
    std::uint64_t transcript_count() const override;
    QuerySet make_queries(int theta, Rng& rng) const override;
    QuerySet make_queries_at(int theta, std::uint64_t transcript,
                             std::uint64_t ext_seed) const override;
    BitVec answer(int server, const Query& q, const FileView& files) const override;
    BitVec reconstruct(const QuerySet& qs, const AnswerSet& as) const override;

    const LoopColoring& coloring() const { return coloring_; }
    // test hook: replace the coloring (mutation analysis)
    void set_coloring(LoopColoring c) { coloring_ = std::move(c); }

private:
    QuerySet queries_from_sigma(int theta, std::vector<int> sigma) const;
    Graph graph_;
    int k_;
    LoopColoring coloring_;
};

// Theta(N^{-1/2}) star scheme: files padded to q^2 points of an affine
// plane, hub answers one XOR bit per line under the slope coloring.
class StarSteinerScheme final : public Scheme {
public:
    explicit StarSteinerScheme(Graph star);

    SchemeKind kind() const override { return SchemeKind::StarSteiner; }
    std::string name() const override { return "star-steiner"; }
    const Graph& graph() const override { return graph_; }
    int file_length() const override { return q_ + 1; }
    int num_servers() const override { return graph_.num_vertices(); }
    int answer_length(int server) const override;
    std::uint64_t transcript_count() const override;
    QuerySet make_queries(int theta, Rng& rng) const override;
    QuerySet make_queries_at(int theta, std::uint64_t transcript,
                             std::uint64_t ext_seed) const override;
    BitVec answer(int server, const Query& q, const FileView& files) const override;
    BitVec reconstruct(const QuerySet& qs, const AnswerSet& as) const override;

    int q() const { return q_; }
    const SteinerSystem& steiner() const { return steiner_; }
    const BlockColoring& coloring() const { return coloring_; }

private:
    QuerySet queries_from(int theta, std::vector<int> sigma, int gamma) const;
    Graph graph_;
    int k_;
    int q_;
    SteinerSystem steiner_;
    BlockColoring coloring_;
};

// Rate 2^{N-1}/((2^{N-1}-1)N) scheme for the complete graph: every server
// receives a bijection from its neighborhood subsets to [L] and answers
// one XOR bit per nonempty subset.
class CompleteSubsetScheme : public Scheme {
public:
    explicit CompleteSubsetScheme(Graph g);

    SchemeKind kind() const override { return SchemeKind::CompleteSubset; }
    std::string name() const override { return "complete-subset"; }
    const Graph& graph() const override { return graph_; }
    int file_length() const override { return length_; }
    int num_servers() const override { return n_; }
    int answer_length(int) const override { return length_ - 1; }
    std::uint64_t transcript_count() const override;
    std::uint64_t extension_count(int server) const override;
    QuerySet make_queries(int theta, Rng& rng) const override;
    QuerySet make_queries_at(int theta, std::uint64_t transcript,
                             std::uint64_t ext_seed) const override;
    Query query_at(int theta, std::uint64_t transcript, int server,
                   std::uint64_t ext_rank) const override;
    BitVec answer(int server, const Query& q, const FileView& files) const override;
    BitVec reconstruct(const QuerySet& qs, const AnswerSet& as) const override;

    // Omega for a target pair: subsets containing exactly one endpoint,
    // in canonical order.
    std::vector<std::uint32_t> omega(int i, int iprime) const;
    const std::vector<std::uint32_t>& answer_subsets(int server) const;

protected:
    CompleteSubsetScheme(Graph instance, bool require_complete);

    // assignment of the unconstrained half of sigma_j; free_values arrives
    // sorted ascending and the default draws a uniform bijection (by rank
    // when ext_rank is set, from rng otherwise)
    virtual std::vector<int> extension_assignment(
        int theta, int server, const std::vector<std::uint32_t>& free_masks,
        std::vector<int> free_values, std::optional<std::uint64_t> ext_rank,
        Rng* rng) const;

    // pair -> file id in the instance graph; 0 means a dummy zero file
    virtual int pair_file(int u, int v) const;

    QuerySet assemble_queries(int theta, const std::vector<int>& pi,
                              std::optional<std::uint64_t> single_server,
                              std::optional<std::uint64_t> ext_rank, Rng* rng,
                              Query* single_out) const;

    Graph graph_;       // the instance graph (complete, or arbitrary for adapter)
    Graph complete_;    // complete graph on the same vertices
    int n_;
    int length_;        // L = 2^{N-1}
    std::vector<std::vector<std::uint32_t>> subsets_;  // per server, nonempty canonical
    std::vector<std::map<std::uint32_t, int>> subset_pos_;
};

// Runs the complete-graph subset scheme on an arbitrary graph by treating
// the missing edges as shared all-zero dummy files.
class SubgraphAdapterScheme final : public CompleteSubsetScheme {
public:
    explicit SubgraphAdapterScheme(Graph g);

    SchemeKind kind() const override { return SchemeKind::SubgraphAdapter; }
    std::string name() const override { return "subgraph-adapter"; }

protected:
    int pair_file(int u, int v) const override;
};

// Appendix-style wrapper: draw an automorphism f uniformly, run the base
// scheme for f(theta) with every server i playing the role of f(i).
class SymmetrizedScheme final : public Scheme {
public:
    SymmetrizedScheme(std::shared_ptr<const Scheme> base, PermutationGroup group);

    SchemeKind kind() const override { return SchemeKind::Symmetrized; }
    std::string name() const override { return "symmetrized"; }
    const Graph& graph() const override { return base_->graph(); }
    int file_length() const override { return base_->file_length(); }
    int num_servers() const override { return base_->num_servers(); }
    int answer_length(int server) const override;
    std::int64_t total_answer_bits() const override { return base_->total_answer_bits(); }
    Rational rate() const override { return base_->rate(); }
    std::uint64_t transcript_count() const override;
    std::uint64_t extension_count(int server) const override;
    QuerySet make_queries(int theta, Rng& rng) const override;
    QuerySet make_queries_at(int theta, std::uint64_t transcript,
                             std::uint64_t ext_seed) const override;
    BitVec answer(int server, const Query& q, const FileView& files) const override;
    BitVec reconstruct(const QuerySet& qs, const AnswerSet& as) const override;

    const Scheme& base() const { return *base_; }
    const PermutationGroup& group() const { return group_; }

private:
    QuerySet assemble(int theta, std::size_t f_index, std::uint64_t ext_seed) const;
    int mapped_theta(const std::vector<int>& f, int theta) const;

    std::shared_ptr<const Scheme> base_;
    PermutationGroup group_;
};

// Factory for the CLI and verifiers. "symmetrized" wraps the subgraph
// adapter with the graph's automorphism group.
std::shared_ptr<const Scheme> make_scheme(const std::string& name, const Graph& g);

} // namespace pir

#endif
