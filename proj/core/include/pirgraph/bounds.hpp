#ifndef PIRGRAPH_BOUNDS_HPP
#define PIRGRAPH_BOUNDS_HPP

#include <string>
#include <vector>

#include "pirgraph/graph.hpp"
#include "pirgraph/rational.hpp"

namespace pir {

// Non-negative edge weights eta; feasible when every vertex's incident sum
// is at most 1. A feasible objective v > 0 certifies capacity <= 1/v.
struct DualCertificate {
    std::vector<Rational> eta;
};

struct DualCheckResult {
    bool feasible = false;
    Rational objective{0};
};

DualCheckResult check_dual_feasible(const Graph& g, const DualCertificate& cert);

struct GeneralUpperBound {
    Rational value;           // min of the two
    Rational degree_bound;    // Delta / K, certified by eta = (1/Delta) * ones
    Rational matching_bound;  // 1 / nu(G), certified by a maximum-matching indicator
    DualCertificate s1;
    DualCertificate s2;
    std::vector<int> matching_files;  // the matching behind s2
};

GeneralUpperBound upper_bound_general(const Graph& g);

// A bound that is an exact rational or the closed form 1/(sqrt(t)-2).
// Comparisons against rationals square out the radical and stay exact.
class BoundValue {
public:
    static BoundValue exact(Rational r) { return BoundValue(true, r, 0); }
    static BoundValue inv_sqrt_minus2(int t);  // 1/(sqrt(t)-2), requires t > 9

    bool is_exact() const { return exact_; }
    Rational rational() const;
    double approx() const;
    int radicand() const { return two_n_; }

    bool leq(const Rational& r) const;
    bool geq(const Rational& r) const;
    bool less_than(const BoundValue& other) const;
    std::string str() const;

private:
    BoundValue(bool e, Rational r, int t) : exact_(e), rat_(r), two_n_(t) {}
    bool exact_;
    Rational rat_;
    int two_n_;
};

// min(1, 1/(sqrt(2N)-2)) for the star on N >= 3 vertices.
BoundValue star_upper_bound(int N);

enum class Applicability { Applicable, Inapplicable, Unverified };

struct HvtBound {
    Rational value;  // 2/(N+1)
    Applicability applicability = Applicability::Unverified;
    bool vertex_transitive = false;
    bool hamiltonian = false;
};

// 2/(N+1) for Hamiltonian vertex-transitive graphs; both properties are
// established by brute force below the limits, otherwise the bound is
// reported unverified.
HvtBound hvt_upper_bound(const Graph& g, int aut_limit = 8, int ham_limit = 14);

// 2^{N-1}/((2^{N-1}-1) N): the subset scheme's rate on the complete graph,
// a lower bound for every graph on N vertices.
Rational complete_lower_bound(int N);

struct NeighborCheckResult {
    bool feasible = false;
    std::vector<Rational> slack;  // x_S minus the evaluated right-hand side
};

// Per-server constraint x_S >= sum_k max{0, 1 - suffix sums} with the
// neighbor values sorted descending; L normalized to 1.
NeighborCheckResult check_neighbor_feasible(const Graph& g, const std::vector<Rational>& x);

enum class SolveMode { Exact, Heuristic };

struct NeighborSolution {
    std::vector<Rational> x;
    Rational total{0};   // X = sum of x
    bool certified = false;
    Rational bound() const { return Rational(1) / total; }  // L/X with L = 1
};

// Exact mode minimizes sum x over the constraint region, which equals the
// polyhedron cut out by x_S + sum_i coef(u_i) x_{u_i} >= t over every
// server, every t-subset of its neighbors and every coefficient
// assignment; the optimum is certified by exact LP duality plus an
// independent feasibility re-check. Heuristic mode is damped fixed-point
// iteration plus greedy descent and is never certified.
NeighborSolution solve_neighbor_system(const Graph& g, SolveMode mode,
                                       int exact_vertex_limit = 5);

enum class BoundKind { Upper, Lower };

struct BoundEntry {
    std::string name;
    BoundValue value;
    BoundKind kind = BoundKind::Upper;
    bool certified = false;
    std::string certificate;  // JSON payload, may be empty
};

struct BoundReportOptions {
    int neighbor_exact_limit = 5;
    int aut_limit = 8;
    int ham_limit = 14;
    bool include_heuristic = true;
};

struct BoundReport {
    std::string graph;
    std::vector<BoundEntry> entries;
    Rational best_lower{0};
    BoundValue best_upper = BoundValue::exact(Rational(1));

    std::string to_json() const;
};

// Assembles every applicable bound with its certificate and verifies
// max(lower) <= min(certified upper); a violation throws, since it can
// only mean an implementation bug.
BoundReport bound_report(const Graph& g, const BoundReportOptions& opts = {});

} // namespace pir

#endif
