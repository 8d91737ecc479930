#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "rig/subgraphs.hpp"

namespace rig {

// Exact-rational evaluation path for p = num/den with small integers and
// m <= 1e4; the test suites use it as an oracle for the double-double path.
using Rational = boost::multiprecision::cpp_rational;

Rational rational_pow(Rational base, std::uint64_t e);

Rational pi_subgraph_rational(const SmallGraph& H, std::int64_t m,
                              std::int64_t p_num, std::int64_t p_den);

Rational pi_cover_exact_rational(const SmallGraph& H, const CoverSpec& spec, std::int64_t m,
                                 std::int64_t p_num, std::int64_t p_den);

}  // namespace rig
