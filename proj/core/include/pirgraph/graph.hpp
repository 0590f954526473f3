#ifndef PIRGRAPH_GRAPH_HPP
#define PIRGRAPH_GRAPH_HPP

#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pirgraph/bitvec.hpp"

namespace pir {

// A 2-replication retrieval instance: vertices are servers (1-indexed),
// edges are files identified by their position in the edge list. Both
// views (file k, endpoint pair {u,v}) are exposed. Immutable once built.
class Graph {
public:
    Graph(int n_vertices, std::vector<std::pair<int, int>> edges);

    int num_vertices() const { return n_; }
    int num_edges() const { return static_cast<int>(edges_.size()); }

    // Endpoints of file k (1-indexed), normalized u < v.
    std::pair<int, int> edge(int file_id) const;

    // File stored on servers u and v, or 0 if they share none.
    int edge_index(int u, int v) const;
    bool has_edge(int u, int v) const { return edge_index(u, v) != 0; }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& incident_files(int v) const;
    std::vector<int> neighbors(int v) const;
    int degree(int v) const;
    int max_degree() const;

    std::string spec_name() const { return spec_name_; }
    void set_spec_name(std::string name) { spec_name_ = std::move(name); }

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> incident_;  // per vertex, file ids
    std::string spec_name_;
};

// Named families: "star:N", "cycle:N", "complete:N", "kbipartite:N,M",
// "wheel:N" (N even: hub N joined to a cycle on 1..N-1).
// Star convention: center is vertex N and file i = {i, N}.
Graph build_family(const std::string& spec);

// "u v" per line, 1-indexed, '#' comments, optional "n <N>" header.
Graph read_edge_list(std::istream& in);
void write_edge_list(std::ostream& out, const Graph& g);

// Exact maximum matching size by branch and bound; exhaustive and cheap at
// desk scale. Throws if the edge count exceeds `max_edges`.
int matching_number(const Graph& g, int max_edges = 28);

// Vertex permutations preserving the edge set. elements[k][i-1] is the
// image of vertex i (1-based values).
struct PermutationGroup {
    std::vector<std::vector<int>> elements;
    bool vertex_transitive = false;

    std::size_t size() const { return elements.size(); }
};

PermutationGroup automorphism_group(const Graph& g, int max_vertices = 8);

// A Hamiltonian cycle as a vertex sequence (closing edge implied), or
// nullopt if none exists. Backtracking search.
std::optional<std::vector<int>> find_hamiltonian_cycle(const Graph& g, int max_vertices = 14);

// File contents: K binary vectors of length L.
struct FileAssignment {
    int file_length_bits = 0;
    std::vector<BitVec> contents;

    static FileAssignment zero(int num_files, int file_length);
    static FileAssignment random(int num_files, int file_length, Rng& rng);
    // All zero except bit `bit` of file `file_id` (1-indexed file).
    static FileAssignment basis(int num_files, int file_length, int file_id, int bit);

    int num_files() const { return static_cast<int>(contents.size()); }
    FileAssignment xored(const FileAssignment& other) const;
};

} // namespace pir

#endif
