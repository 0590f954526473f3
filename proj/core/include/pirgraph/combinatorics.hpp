#ifndef PIRGRAPH_COMBINATORICS_HPP
#define PIRGRAPH_COMBINATORICS_HPP

#include <utility>
#include <vector>

namespace pir {

bool is_prime(int n);

// Smallest prime q with q >= ceil(sqrt(K)); Bertrand-Chebyshev guarantees
// q <= 2*sqrt(K), and q*q >= K so K files fit in a q x q point grid.
int bertrand_prime(int K);

// The n-1 perfect matchings partitioning the edges of the complete graph
// on [n], n even, by the circle method (vertex n fixed, 1..n-1 rotating).
std::vector<std::vector<std::pair<int, int>>> round_robin_factorization(int n);

// Proper edge coloring of the complete graph on [n] augmented with a
// self-loop at every vertex, using exactly n colors: the n items incident
// to any vertex (n-1 pairs plus its loop) carry n distinct colors.
class LoopColoring {
public:
    explicit LoopColoring(int n);

    int n() const { return n_; }
    int num_colors() const { return n_; }
    // color of the pair {i,j}; i == j addresses the loop at i
    int color(int i, int j) const;
    void set_color(int i, int j, int c);

private:
    std::size_t slot(int i, int j) const;
    int n_;
    std::vector<int> color_;
};

LoopColoring loop_edge_coloring(int n);

// Lines of the affine plane over F_q as a 2-design: q^2 points indexed
// (x,y) -> x*q + y + 1, q(q+1) blocks of size q in slope-major order
// (slope m lines by intercept, then the q vertical lines).
struct SteinerSystem {
    struct Block {
        std::vector<int> points;  // sorted point indices
        int slope;                // 0..q-1, or q meaning infinity (vertical)
    };

    int q = 0;
    std::vector<Block> blocks;
    std::vector<std::vector<int>> through;  // per point, sorted block ids

    int num_points() const { return q * q; }
    int num_blocks() const { return static_cast<int>(blocks.size()); }
    int point_index(int x, int y) const { return x * q + y + 1; }
    std::pair<int, int> point_coords(int idx) const {
        return {(idx - 1) / q, (idx - 1) % q};
    }
    const std::vector<int>& blocks_through(int point) const;
};

SteinerSystem affine_steiner(int q);

// The unique block containing two distinct points.
int block_through(const SteinerSystem& s, int p1, int p2);

// Blocks colored by slope under the fixed bijection m -> m+1, infinity ->
// q+1. Blocks sharing a point get distinct colors, and the q+1 blocks
// through any point carry all q+1 colors.
struct BlockColoring {
    std::vector<int> color;  // per block id (1-based), values in [q+1]
    int num_colors = 0;

    int of(int block_id) const { return color[static_cast<std::size_t>(block_id) - 1]; }
};

BlockColoring slope_coloring(const SteinerSystem& s);

} // namespace pir

#endif
