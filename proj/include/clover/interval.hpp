#ifndef CLOVER_INTERVAL_HPP
#define CLOVER_INTERVAL_HPP

#include <optional>
#include <string>

#include <mpfr.h>

#include <clover/common.hpp>

namespace clover {

// Closed real interval [lo, hi] with MPFR endpoints. Every operation rounds
// the lower endpoint down and the upper endpoint up, so the true value of any
// expression built from exact inputs is contained in the result.
class Interval {
public:
    static constexpr mpfr_prec_t default_precision = 256;

    Interval();
    static Interval zero(mpfr_prec_t prec);
    Interval(const BigInt &x, mpfr_prec_t prec = default_precision);
    Interval(long x, mpfr_prec_t prec = default_precision);
    ~Interval();
    Interval(const Interval &other);
    Interval(Interval &&other) noexcept;
    Interval &operator=(const Interval &other);
    Interval &operator=(Interval &&other) noexcept;

    static Interval rational(const BigInt &num, const BigInt &den, mpfr_prec_t prec = default_precision);

    mpfr_prec_t precision() const noexcept { return prec_; }

    friend Interval operator+(const Interval &a, const Interval &b);
    friend Interval operator-(const Interval &a, const Interval &b);
    friend Interval operator*(const Interval &a, const Interval &b);
    friend Interval operator/(const Interval &a, const Interval &b);
    Interval operator-() const;

    friend Interval log(const Interval &a);
    friend Interval exp(const Interval &a);
    // a^b for a > 0, evaluated as exp(b log a).
    friend Interval pow(const Interval &a, const Interval &b);

    bool certainly_less(const Interval &b) const;       // hi < b.lo
    bool certainly_less_equal(const Interval &b) const; // hi <= b.lo
    bool contains_zero() const;
    bool is_positive() const;

    // floor(x) when every point of the interval has the same floor.
    std::optional<BigInt> certified_floor() const;

    double lower() const;
    double upper() const;
    double mid() const;
    // Decimal rendering of the midpoint with the given number of digits.
    std::string str(int digits = 10) const;

    const mpfr_t &lo() const noexcept { return lo_; }
    const mpfr_t &hi() const noexcept { return hi_; }

private:
    struct PrecisionTag {};
    Interval(PrecisionTag, mpfr_prec_t prec);

    mpfr_prec_t prec_;
    mpfr_t lo_;
    mpfr_t hi_;
};

} // namespace clover

#endif
