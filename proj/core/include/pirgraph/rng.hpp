#ifndef PIRGRAPH_RNG_HPP
#define PIRGRAPH_RNG_HPP

#include <cstdint>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace pir {

// Deterministic randomness source. mt19937_64 output is fixed by the
// standard, and bounded draws use rejection sampling rather than
// std::uniform_int_distribution (whose mapping is implementation-defined),
// so a seed reproduces the same transcript on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }

    // Uniform value in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: empty range");
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t v;
        do {
            v = eng_();
        } while (v >= limit);
        return v % n;
    }

    bool bit() { return (eng_() >> 63) != 0; }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (std::size_t i = v.size(); i > 1; --i) {
            std::swap(v[i - 1], v[below(i)]);
        }
    }

    // Uniform permutation of [1, n] (1-based values).
    std::vector<int> permutation(int n) {
        std::vector<int> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 1);
        shuffle(p);
        return p;
    }

private:
    std::mt19937_64 eng_;
};

inline std::uint64_t factorial(int n) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) f *= static_cast<std::uint64_t>(i);
    return f;
}

// Lexicographic unranking: rank 0 is the identity, rank n!-1 the reverse.
// Values are 1-based. Used to enumerate permutation randomness spaces.
inline std::vector<int> nth_permutation(int n, std::uint64_t rank) {
    std::vector<int> pool(static_cast<std::size_t>(n));
    std::iota(pool.begin(), pool.end(), 1);
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = n; i >= 1; --i) {
        const std::uint64_t f = factorial(i - 1);
        const std::size_t idx = static_cast<std::size_t>(rank / f);
        rank %= f;
        out.push_back(pool[idx]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(idx));
    }
    return out;
}

} // namespace pir

#endif
