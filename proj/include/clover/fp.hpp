#ifndef CLOVER_FP_HPP
#define CLOVER_FP_HPP

#include <cstdint>

namespace clover {

// Arithmetic in the prime field F_p. Residues are kept in [0, p).
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p);

    std::uint32_t p() const noexcept { return p_; }

    std::uint32_t reduce(std::int64_t x) const noexcept
    {
        std::int64_t r = x % static_cast<std::int64_t>(p_);
        return static_cast<std::uint32_t>(r < 0 ? r + p_ : r);
    }
    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept
    {
        std::uint32_t s = a + b;
        return s >= p_ ? s - p_ : s;
    }
    std::uint32_t sub(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return a >= b ? a - b : a + p_ - b;
    }
    std::uint32_t neg(std::uint32_t a) const noexcept { return a == 0 ? 0 : p_ - a; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const noexcept
    {
        return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % p_);
    }
    std::uint32_t pow(std::uint32_t a, std::uint64_t e) const noexcept;
    std::uint32_t inv(std::uint32_t a) const;

    // C(n, k) mod p via Lucas' theorem: the product of digit binomials in base p.
    std::uint32_t binom(std::uint64_t n, std::uint64_t k) const noexcept;

private:
    std::uint32_t p_;
};

bool is_prime(std::uint64_t n) noexcept;

} // namespace clover

#endif
