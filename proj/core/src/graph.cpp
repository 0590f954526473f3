#include "pirgraph/graph.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pir {

Graph::Graph(int n_vertices, std::vector<std::pair<int, int>> edges)
    : n_(n_vertices), edges_(std::move(edges)) {
    if (n_ < 1) throw std::invalid_argument("graph needs at least one vertex");
    std::set<std::pair<int, int>> seen;
    for (auto& [u, v] : edges_) {
        if (u == v) throw std::invalid_argument("self-loop not allowed");
        if (u < 1 || u > n_ || v < 1 || v > n_)
            throw std::invalid_argument("edge endpoint out of range");
        if (u > v) std::swap(u, v);
        if (!seen.insert({u, v}).second)
            throw std::invalid_argument("duplicate edge");
    }
    incident_.assign(static_cast<std::size_t>(n_) + 1, {});
    for (int k = 1; k <= num_edges(); ++k) {
        const auto [u, v] = edges_[static_cast<std::size_t>(k) - 1];
        incident_[static_cast<std::size_t>(u)].push_back(k);
        incident_[static_cast<std::size_t>(v)].push_back(k);
    }
}

std::pair<int, int> Graph::edge(int file_id) const {
    if (file_id < 1 || file_id > num_edges())
        throw std::out_of_range("file index out of range");
    return edges_[static_cast<std::size_t>(file_id) - 1];
}

int Graph::edge_index(int u, int v) const {
    if (u > v) std::swap(u, v);
    for (int k : incident_files(u)) {
        if (edges_[static_cast<std::size_t>(k) - 1] == std::make_pair(u, v)) return k;
    }
    return 0;
}

const std::vector<int>& Graph::incident_files(int v) const {
    if (v < 1 || v > n_) throw std::out_of_range("vertex out of range");
    return incident_[static_cast<std::size_t>(v)];
}

std::vector<int> Graph::neighbors(int v) const {
    std::vector<int> out;
    for (int k : incident_files(v)) {
        const auto [a, b] = edge(k);
        out.push_back(a == v ? b : a);
    }
    std::sort(out.begin(), out.end());
    return out;
}

int Graph::degree(int v) const {
    return static_cast<int>(incident_files(v).size());
}

int Graph::max_degree() const {
    int d = 0;
    for (int v = 1; v <= n_; ++v) d = std::max(d, degree(v));
    return d;
}

namespace {

std::pair<std::string, std::string> split_spec(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos) return {spec, ""};
    return {spec.substr(0, colon), spec.substr(colon + 1)};
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    int v = 0;
    try {
        v = std::stoi(s, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("malformed graph parameter: " + s);
    }
    if (pos != s.size()) throw std::invalid_argument("malformed graph parameter: " + s);
    return v;
}

} // namespace

Graph build_family(const std::string& spec) {
    const auto [family, arg] = split_spec(spec);
    std::vector<std::pair<int, int>> edges;

    if (family == "star") {
        const int n = parse_int(arg);
        if (n < 2) throw std::invalid_argument("star:N requires N >= 2");
        for (int i = 1; i < n; ++i) edges.push_back({i, n});
        Graph g(n, edges);
        g.set_spec_name(spec);
        return g;
    }
    if (family == "cycle") {
        const int n = parse_int(arg);
        if (n < 3) throw std::invalid_argument("cycle:N requires N >= 3");
        for (int i = 1; i < n; ++i) edges.push_back({i, i + 1});
        edges.push_back({1, n});
        Graph g(n, edges);
        g.set_spec_name(spec);
        return g;
    }
    if (family == "complete") {
        const int n = parse_int(arg);
        if (n < 2) throw std::invalid_argument("complete:N requires N >= 2");
        for (int u = 1; u <= n; ++u)
            for (int v = u + 1; v <= n; ++v) edges.push_back({u, v});
        Graph g(n, edges);
        g.set_spec_name(spec);
        return g;
    }
    if (family == "kbipartite") {
        const auto comma = arg.find(',');
        if (comma == std::string::npos)
            throw std::invalid_argument("kbipartite needs N,M");
        const int n = parse_int(arg.substr(0, comma));
        const int m = parse_int(arg.substr(comma + 1));
        if (n < 1 || m < 1) throw std::invalid_argument("kbipartite:N,M requires N,M >= 1");
        for (int u = 1; u <= n; ++u)
            for (int v = 1; v <= m; ++v) edges.push_back({u, n + v});
        Graph g(n + m, edges);
        g.set_spec_name(spec);
        return g;
    }
    if (family == "wheel") {
        // hub = vertex N joined to every vertex of the cycle 1..N-1,
        // so the total vertex count N is even and the rim has odd length
        const int n = parse_int(arg);
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("wheel:N requires even N >= 4");
        for (int i = 1; i < n - 1; ++i) edges.push_back({i, i + 1});
        edges.push_back({1, n - 1});
        for (int i = 1; i < n; ++i) edges.push_back({i, n});
        Graph g(n, edges);
        g.set_spec_name(spec);
        return g;
    }
    throw std::invalid_argument("unknown graph family: " + spec);
}

Graph read_edge_list(std::istream& in) {
    std::vector<std::pair<int, int>> edges;
    int declared_n = 0;
    int max_seen = 0;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "n") {
            if (!(ls >> declared_n) || declared_n < 1)
                throw std::invalid_argument("malformed vertex-count header");
            continue;
        }
        int u = 0, v = 0;
        try {
            u = parse_int(tok);
        } catch (const std::exception&) {
            throw std::invalid_argument("malformed edge line: " + line);
        }
        if (!(ls >> v)) throw std::invalid_argument("malformed edge line: " + line);
        edges.push_back({u, v});
        max_seen = std::max({max_seen, u, v});
    }
    if (edges.empty() && declared_n == 0)
        throw std::invalid_argument("empty edge list");
    const int n = declared_n > 0 ? declared_n : max_seen;
    return Graph(n, edges);
}

void write_edge_list(std::ostream& out, const Graph& g) {
    out << "n " << g.num_vertices() << "\n";
    for (const auto& [u, v] : g.edges()) out << u << " " << v << "\n";
}

namespace {

// branch and bound over edges in order: take (if both ends free) or skip
void matching_search(const Graph& g, std::size_t pos, int taken,
                     std::vector<bool>& used, int& best) {
    best = std::max(best, taken);
    const int m = g.num_edges();
    int free_vertices = 0;
    for (int v = 1; v <= g.num_vertices(); ++v)
        if (!used[static_cast<std::size_t>(v)]) ++free_vertices;
    const int remaining = m - static_cast<int>(pos);
    if (taken + std::min(remaining, free_vertices / 2) <= best) return;
    if (pos == static_cast<std::size_t>(m)) return;

    const auto [u, v] = g.edges()[pos];
    if (!used[static_cast<std::size_t>(u)] && !used[static_cast<std::size_t>(v)]) {
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = true;
        matching_search(g, pos + 1, taken + 1, used, best);
        used[static_cast<std::size_t>(u)] = used[static_cast<std::size_t>(v)] = false;
    }
    matching_search(g, pos + 1, taken, used, best);
}

} // namespace

int matching_number(const Graph& g, int max_edges) {
    if (g.num_edges() > max_edges)
        throw std::invalid_argument("matching_number: too many edges for exhaustive search");
    std::vector<bool> used(static_cast<std::size_t>(g.num_vertices()) + 1, false);
    int best = 0;
    matching_search(g, 0, 0, used, best);
    return best;
}

namespace {

bool is_automorphism(const Graph& g, const std::vector<int>& perm) {
    for (const auto& [u, v] : g.edges()) {
        if (!g.has_edge(perm[static_cast<std::size_t>(u) - 1],
                        perm[static_cast<std::size_t>(v) - 1]))
            return false;
    }
    return true;
}

} // namespace

PermutationGroup automorphism_group(const Graph& g, int max_vertices) {
    const int n = g.num_vertices();
    if (n > max_vertices)
        throw std::invalid_argument("automorphism_group: graph too large for brute force");
    PermutationGroup group;
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    do {
        if (is_automorphism(g, perm)) group.elements.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));

    // transitive iff the orbit of vertex 1 is everything
    std::vector<bool> orbit(static_cast<std::size_t>(n) + 1, false);
    for (const auto& f : group.elements) orbit[static_cast<std::size_t>(f[0])] = true;
    group.vertex_transitive = true;
    for (int v = 1; v <= n; ++v)
        if (!orbit[static_cast<std::size_t>(v)]) group.vertex_transitive = false;
    return group;
}

namespace {

bool hamilton_extend(const Graph& g, std::vector<int>& path, std::vector<bool>& visited) {
    const int n = g.num_vertices();
    if (static_cast<int>(path.size()) == n)
        return g.has_edge(path.back(), path.front());
    for (int v : g.neighbors(path.back())) {
        if (visited[static_cast<std::size_t>(v)]) continue;
        visited[static_cast<std::size_t>(v)] = true;
        path.push_back(v);
        if (hamilton_extend(g, path, visited)) return true;
        path.pop_back();
        visited[static_cast<std::size_t>(v)] = false;
    }
    return false;
}

} // namespace

std::optional<std::vector<int>> find_hamiltonian_cycle(const Graph& g, int max_vertices) {
    const int n = g.num_vertices();
    if (n > max_vertices)
        throw std::invalid_argument("find_hamiltonian_cycle: graph too large for search");
    if (n < 3) return std::nullopt;
    std::vector<int> path{1};
    std::vector<bool> visited(static_cast<std::size_t>(n) + 1, false);
    visited[1] = true;
    if (hamilton_extend(g, path, visited)) return path;
    return std::nullopt;
}

FileAssignment FileAssignment::zero(int num_files, int file_length) {
    if (num_files < 0 || file_length < 1)
        throw std::invalid_argument("bad file assignment shape");
    FileAssignment fa;
    fa.file_length_bits = file_length;
    fa.contents.assign(static_cast<std::size_t>(num_files),
                       BitVec(static_cast<std::size_t>(file_length)));
    return fa;
}

FileAssignment FileAssignment::random(int num_files, int file_length, Rng& rng) {
    FileAssignment fa = zero(num_files, file_length);
    for (auto& w : fa.contents)
        w = BitVec::random(static_cast<std::size_t>(file_length), rng);
    return fa;
}

FileAssignment FileAssignment::basis(int num_files, int file_length, int file_id, int bit) {
    FileAssignment fa = zero(num_files, file_length);
    fa.contents[static_cast<std::size_t>(file_id) - 1].set(static_cast<std::size_t>(bit), true);
    return fa;
}

FileAssignment FileAssignment::xored(const FileAssignment& other) const {
    if (other.file_length_bits != file_length_bits ||
        other.contents.size() != contents.size())
        throw std::invalid_argument("file assignment shape mismatch");
    FileAssignment out = *this;
    for (std::size_t i = 0; i < contents.size(); ++i) out.contents[i] ^= other.contents[i];
    return out;
}

} // namespace pir
