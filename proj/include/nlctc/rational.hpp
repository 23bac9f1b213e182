#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Boost 1.74 recurses forever on rational == integer under C++20 rewritten
// comparisons; these exact matches win overload resolution.
#define NLCTC_RATIONAL_EQ(I)                                                                  \
  inline bool operator==(const rational<std::int64_t>& a, I b) { return a == rational<std::int64_t>(b); } \
  inline bool operator==(I a, const rational<std::int64_t>& b) { return b == rational<std::int64_t>(a); } \
  inline bool operator!=(const rational<std::int64_t>& a, I b) { return !(a == b); }           \
  inline bool operator!=(I a, const rational<std::int64_t>& b) { return !(b == a); }
NLCTC_RATIONAL_EQ(int)
NLCTC_RATIONAL_EQ(long)
NLCTC_RATIONAL_EQ(long long)
#undef NLCTC_RATIONAL_EQ

}  // namespace boost

namespace nlctc {

using Rational = boost::rational<std::int64_t>;

// "num/den" always, so that integers read back unambiguously ("1/1").
std::string to_fraction_string(const Rational& r);

// Short form for tables: "1", "0", "1/4".
std::string to_display_string(const Rational& r);

// Accepts "num/den" or a bare integer. Throws Error(kParse) on anything else.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

}  // namespace nlctc
