#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace redmax {

// All weight/density/bound arithmetic is exact. Ties at values like 11/6
// must compare exactly, so no floating point is allowed in those paths.
using Rat = boost::rational<long long>;

std::string to_string(const Rat& r);
Rat parse_rational(const std::string& s);
double to_double(const Rat& r);

long long floor_rat(const Rat& r);
long long ceil_rat(const Rat& r);

// ceil(a/b) for integers, b > 0.
long long ceil_div(long long a, long long b);

}  // namespace redmax
