#include "redmax/rational.hpp"

#include <cstdlib>

#include "redmax/errors.hpp"

namespace redmax {

std::string to_string(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(std::stoll(s));
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw InvalidInputError("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::invalid_argument&) {
    throw InvalidInputError("cannot parse rational: " + s);
  } catch (const std::out_of_range&) {
    throw InvalidInputError("rational out of range: " + s);
  }
}

double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

long long floor_rat(const Rat& r) {
  long long q = r.numerator() / r.denominator();
  if (r.numerator() % r.denominator() != 0 && r.numerator() < 0) --q;
  return q;
}

long long ceil_rat(const Rat& r) { return -floor_rat(-r); }

long long ceil_div(long long a, long long b) { return ceil_rat(Rat(a, b)); }

}  // namespace redmax
