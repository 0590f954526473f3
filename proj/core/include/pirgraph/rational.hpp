#ifndef PIRGRAPH_RATIONAL_HPP
#define PIRGRAPH_RATIONAL_HPP

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace pir {

// All rates and certified bounds are exact fractions; doubles appear only
// for display and for the one closed-form bound with an irrational value.
using Rational = boost::rational<std::int64_t>;

inline double to_double(const Rational& r) {
    return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline std::string to_string(const Rational& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

} // namespace pir

#endif
