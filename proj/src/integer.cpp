#include "torusfill/integer.hpp"

#include <cmath>
#include <sstream>

namespace torusfill {

Int isqrt(Int n)
{
    if (n < 0)
        throw DomainError("isqrt: negative argument");
    auto r = static_cast<Int>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<__int128>(r) * r > n)
        --r;
    while (static_cast<__int128>(r + 1) * (r + 1) <= n)
        ++r;
    return r;
}

std::string to_string(const Seq& s, const char* sep)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i)
            os << sep;
        os << s[i];
    }
    return os.str();
}

} // namespace torusfill
