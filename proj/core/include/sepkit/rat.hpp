#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace sepkit {

// Exact rational; gmp keeps it canonical after every arithmetic op.
using Rat = mpq_class;

Rat make_rat(long num, long den = 1);

// Accepts "-12", "3.25", "1e-3", "-2.5E+2" and "p/q".
Rat parse_rat(std::string_view text);
bool try_parse_rat(std::string_view text, Rat& out);

// Exact text: "7", "-1/3".
std::string rat_str(const Rat& r);

// Decimal rendering with `digits` significant digits, round-half-even.
std::string decimal_str(const Rat& r, int digits = 12);
// Same for sqrt(r), r >= 0.
std::string sqrt_decimal_str(const Rat& r, int digits = 12);

double to_double(const Rat& r);
Rat from_double(double v);  // exact binary value of v

int sign(const Rat& r);
Rat abs_rat(const Rat& r);

// Smallest e >= 0 with 2^e >= v (v >= 1), 0 for v <= 1.
int ceil_log2(std::uint64_t v);

}  // namespace sepkit
