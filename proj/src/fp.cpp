#include <clover/fp.hpp>

#include <clover/common.hpp>

namespace clover {

bool is_prime(std::uint64_t n) noexcept
{
    if (n < 2) {
        return false;
    }
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            return false;
        }
    }
    return true;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p)
{
    if (!is_prime(p) || p > (1u << 30)) {
        throw Error("p must be a prime below 2^30, got " + std::to_string(p));
    }
}

std::uint32_t PrimeField::pow(std::uint32_t a, std::uint64_t e) const noexcept
{
    std::uint32_t r = 1 % p_;
    while (e) {
        if (e & 1) {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint32_t PrimeField::inv(std::uint32_t a) const
{
    if (a % p_ == 0) {
        throw Error("division by zero in F_p");
    }
    return pow(a, p_ - 2);
}

std::uint32_t PrimeField::binom(std::uint64_t n, std::uint64_t k) const noexcept
{
    if (k > n) {
        return 0;
    }
    std::uint32_t r = 1;
    while (k > 0 || n > 0) {
        const std::uint32_t nd = static_cast<std::uint32_t>(n % p_);
        const std::uint32_t kd = static_cast<std::uint32_t>(k % p_);
        if (kd > nd) {
            return 0;
        }
        // small binomial C(nd, kd) mod p with nd < p
        std::uint32_t num = 1, den = 1;
        for (std::uint32_t i = 0; i < kd; ++i) {
            num = mul(num, nd - i);
            den = mul(den, i + 1);
        }
        r = mul(r, mul(num, pow(den, p_ - 2)));
        n /= p_;
        k /= p_;
    }
    return r;
}

} // namespace clover
