#include "pirgraph/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace pir {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int bertrand_prime(int K) {
    if (K < 2) throw std::invalid_argument("bertrand_prime: K >= 2 required");
    int root = 1;
    while (root * root < K) ++root;  // ceil(sqrt(K)) without FP
    int q = root;
    while (!is_prime(q)) ++q;
    return q;
}

std::vector<std::vector<std::pair<int, int>>> round_robin_factorization(int n) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("round_robin_factorization: n must be even and >= 2");
    const int m = n - 1;  // rotating labels 0..m-1 are vertices 1..n-1
    std::vector<std::vector<std::pair<int, int>>> rounds;
    for (int r = 0; r < m; ++r) {
        std::vector<std::pair<int, int>> matching;
        matching.push_back({std::min(r + 1, n), std::max(r + 1, n)});
        for (int i = 1; i <= (n - 2) / 2; ++i) {
            const int a = ((r + i) % m) + 1;
            const int b = ((r - i + m) % m) + 1;
            matching.push_back({std::min(a, b), std::max(a, b)});
        }
        rounds.push_back(std::move(matching));
    }
    return rounds;
}

LoopColoring::LoopColoring(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("LoopColoring: n >= 1 required");
    color_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0);
}

std::size_t LoopColoring::slot(int i, int j) const {
    if (i < 1 || j < 1 || i > n_ || j > n_)
        throw std::out_of_range("LoopColoring: vertex out of range");
    if (i > j) std::swap(i, j);
    // row-major over pairs 1<=i<=j<=n
    const std::size_t row_start =
        static_cast<std::size_t>(i - 1) * n_ - static_cast<std::size_t>(i - 1) * (i - 2) / 2;
    return row_start + static_cast<std::size_t>(j - i);
}

int LoopColoring::color(int i, int j) const { return color_[slot(i, j)]; }
void LoopColoring::set_color(int i, int j, int c) { color_[slot(i, j)] = c; }

LoopColoring loop_edge_coloring(int n) {
    LoopColoring c(n);
    if (n % 2 == 0) {
        const auto rounds = round_robin_factorization(n);
        for (int l = 1; l <= static_cast<int>(rounds.size()); ++l)
            for (const auto& [a, b] : rounds[static_cast<std::size_t>(l) - 1])
                c.set_color(a, b, l);
        for (int i = 1; i <= n; ++i) c.set_color(i, i, n);
    } else {
        // factorize K_{n+1}; the loop at i inherits the color of (i, n+1)
        const auto rounds = round_robin_factorization(n + 1);
        for (int l = 1; l <= static_cast<int>(rounds.size()); ++l) {
            for (const auto& [a, b] : rounds[static_cast<std::size_t>(l) - 1]) {
                if (b == n + 1) c.set_color(a, a, l);
                else c.set_color(a, b, l);
            }
        }
    }
    return c;
}

SteinerSystem affine_steiner(int q) {
    if (!is_prime(q)) throw std::invalid_argument("affine_steiner: q must be prime");
    SteinerSystem s;
    s.q = q;
    for (int m = 0; m < q; ++m) {
        for (int b = 0; b < q; ++b) {
            SteinerSystem::Block blk;
            blk.slope = m;
            for (int x = 0; x < q; ++x) blk.points.push_back(s.point_index(x, (m * x + b) % q));
            std::sort(blk.points.begin(), blk.points.end());
            s.blocks.push_back(std::move(blk));
        }
    }
    for (int a = 0; a < q; ++a) {
        SteinerSystem::Block blk;
        blk.slope = q;  // vertical
        for (int y = 0; y < q; ++y) blk.points.push_back(s.point_index(a, y));
        std::sort(blk.points.begin(), blk.points.end());
        s.blocks.push_back(std::move(blk));
    }
    s.through.assign(static_cast<std::size_t>(s.num_points()) + 1, {});
    for (int b = 1; b <= s.num_blocks(); ++b)
        for (int p : s.blocks[static_cast<std::size_t>(b) - 1].points)
            s.through[static_cast<std::size_t>(p)].push_back(b);
    return s;
}

const std::vector<int>& SteinerSystem::blocks_through(int point) const {
    if (point < 1 || point > num_points())
        throw std::out_of_range("SteinerSystem: point out of range");
    return through[static_cast<std::size_t>(point)];
}

int block_through(const SteinerSystem& s, int p1, int p2) {
    if (p1 == p2) throw std::invalid_argument("block_through: points must be distinct");
    const auto& t1 = s.blocks_through(p1);
    const auto& t2 = s.blocks_through(p2);
    for (int b : t1) {
        if (std::find(t2.begin(), t2.end(), b) != t2.end()) return b;
    }
    throw std::logic_error("block_through: pair not covered");  // cannot happen in a 2-design
}

BlockColoring slope_coloring(const SteinerSystem& s) {
    BlockColoring c;
    c.num_colors = s.q + 1;
    c.color.reserve(s.blocks.size());
    for (const auto& blk : s.blocks) c.color.push_back(blk.slope + 1);
    return c;
}

} // namespace pir
