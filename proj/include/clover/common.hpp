#ifndef CLOVER_COMMON_HPP
#define CLOVER_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace clover {

using BigInt = boost::multiprecision::mpz_int;

// All recoverable failures of the library are reported with this type. The
// message is the stable, user-facing part (the CLI prints it verbatim).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline BigInt pow_big(std::uint64_t base, std::uint64_t exp)
{
    return boost::multiprecision::pow(BigInt(base), static_cast<unsigned>(exp));
}

// Exact integer floor division for possibly negative numerators.
inline BigInt floor_div(const BigInt &a, const BigInt &b)
{
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

inline std::string to_string(const BigInt &x)
{
    return x.str();
}

} // namespace clover

#endif
