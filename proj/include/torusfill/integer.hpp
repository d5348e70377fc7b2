#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusfill {

using Int = std::int64_t;

/// Ordered integer sequence (monodromy strings, weights, blowup sequences).
using Seq = std::vector<Int>;

class OverflowError : public std::overflow_error {
public:
    using std::overflow_error::overflow_error;
};

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// An enumeration or construction would exceed a configured size limit.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace checked {

inline Int add(Int a, Int b)
{
    Int r;
    if (__builtin_add_overflow(a, b, &r))
        throw OverflowError("integer overflow in addition");
    return r;
}

inline Int sub(Int a, Int b)
{
    Int r;
    if (__builtin_sub_overflow(a, b, &r))
        throw OverflowError("integer overflow in subtraction");
    return r;
}

inline Int mul(Int a, Int b)
{
    Int r;
    if (__builtin_mul_overflow(a, b, &r))
        throw OverflowError("integer overflow in multiplication");
    return r;
}

inline Int neg(Int a)
{
    if (a == std::numeric_limits<Int>::min())
        throw OverflowError("integer overflow in negation");
    return -a;
}

inline Int abs(Int a) { return a < 0 ? neg(a) : a; }

/// a*b + c*d, with the products formed in 128 bits.
inline Int dot2(Int a, Int b, Int c, Int d)
{
    __int128 r = static_cast<__int128>(a) * b + static_cast<__int128>(c) * d;
    if (r > std::numeric_limits<Int>::max() || r < std::numeric_limits<Int>::min())
        throw OverflowError("integer overflow in product sum");
    return static_cast<Int>(r);
}

inline Int narrow(__int128 v)
{
    if (v > std::numeric_limits<Int>::max() || v < std::numeric_limits<Int>::min())
        throw OverflowError("integer overflow narrowing 128-bit value");
    return static_cast<Int>(v);
}

} // namespace checked

/// Floor division, b != 0.
inline Int floor_div(Int a, Int b)
{
    Int q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0)))
        --q;
    return q;
}

/// Largest r with r*r <= n, n >= 0.
Int isqrt(Int n);

std::string to_string(const Seq& s, const char* sep = ",");

} // namespace torusfill
