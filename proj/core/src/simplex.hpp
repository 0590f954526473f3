#ifndef PIRGRAPH_SIMPLEX_HPP
#define PIRGRAPH_SIMPLEX_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>
#include <vector>

namespace pir::detail {

// Arbitrary-precision rationals keep simplex pivoting exact regardless of
// intermediate growth; results are converted back to int64 rationals by
// the caller once they are known to be small.
using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::rational<BigInt>;

struct LpResult {
    bool optimal = false;
    BigRational objective;           // min value of c^T x
    std::vector<BigRational> x;      // primal minimizer
    std::vector<BigRational> y;      // dual maximizer, one per constraint
};

// Solves  min c^T x  subject to  A x >= b, x >= 0  (A given row-wise)
// by running primal simplex with Bland's rule on the dual
//   max b^T y  subject to  A^T y <= c, y >= 0,
// which has the immediate basic feasible solution y = 0 when c >= 0.
// The primal minimizer is read off the optimal reduced costs.
LpResult solve_min_lp(const std::vector<std::vector<BigRational>>& A,
                      const std::vector<BigRational>& b,
                      const std::vector<BigRational>& c);

} // namespace pir::detail

#endif
