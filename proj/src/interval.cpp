#include <clover/interval.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

namespace clover {

namespace {

mpfr_prec_t join_prec(const Interval &a, const Interval &b)
{
    return std::max(a.precision(), b.precision());
}

} // namespace

Interval::Interval() : Interval(PrecisionTag{}, default_precision) {}

Interval Interval::zero(mpfr_prec_t prec)
{
    return Interval(PrecisionTag{}, prec);
}

Interval::Interval(PrecisionTag, mpfr_prec_t prec) : prec_(prec)
{
    mpfr_init2(lo_, prec_);
    mpfr_init2(hi_, prec_);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

Interval::Interval(const BigInt &x, mpfr_prec_t prec) : Interval(PrecisionTag{}, prec)
{
    mpfr_set_z(lo_, x.backend().data(), MPFR_RNDD);
    mpfr_set_z(hi_, x.backend().data(), MPFR_RNDU);
}

Interval::Interval(long x, mpfr_prec_t prec) : Interval(PrecisionTag{}, prec)
{
    mpfr_set_si(lo_, x, MPFR_RNDD);
    mpfr_set_si(hi_, x, MPFR_RNDU);
}

Interval::~Interval()
{
    if (prec_ != 0) {
        mpfr_clear(lo_);
        mpfr_clear(hi_);
    }
}

Interval::Interval(const Interval &other) : Interval(PrecisionTag{}, other.prec_)
{
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Interval::Interval(Interval &&other) noexcept : Interval(PrecisionTag{}, other.prec_)
{
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
}

Interval &Interval::operator=(const Interval &other)
{
    if (this != &other) {
        prec_ = other.prec_;
        mpfr_set_prec(lo_, prec_);
        mpfr_set_prec(hi_, prec_);
        mpfr_set(lo_, other.lo_, MPFR_RNDD);
        mpfr_set(hi_, other.hi_, MPFR_RNDU);
    }
    return *this;
}

Interval &Interval::operator=(Interval &&other) noexcept
{
    std::swap(prec_, other.prec_);
    mpfr_swap(lo_, other.lo_);
    mpfr_swap(hi_, other.hi_);
    return *this;
}

Interval Interval::rational(const BigInt &num, const BigInt &den, mpfr_prec_t prec)
{
    return Interval(num, prec) / Interval(den, prec);
}

Interval operator+(const Interval &a, const Interval &b)
{
    Interval r = Interval::zero(join_prec(a, b));
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

Interval operator-(const Interval &a, const Interval &b)
{
    Interval r = Interval::zero(join_prec(a, b));
    mpfr_sub(r.lo_, a.lo_, b.hi_, MPFR_RNDD);
    mpfr_sub(r.hi_, a.hi_, b.lo_, MPFR_RNDU);
    return r;
}

Interval Interval::operator-() const
{
    Interval r = Interval::zero(prec_);
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

Interval operator*(const Interval &a, const Interval &b)
{
    const mpfr_prec_t prec = join_prec(a, b);
    Interval r = Interval::zero(prec);
    const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    mpfr_t t;
    mpfr_init2(t, prec);
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) {
                mpfr_set(r.lo_, t, MPFR_RNDD);
            }
            mpfr_mul(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) {
                mpfr_set(r.hi_, t, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Interval operator/(const Interval &a, const Interval &b)
{
    if (b.contains_zero()) {
        throw Error("interval division by an interval containing zero");
    }
    const mpfr_prec_t prec = join_prec(a, b);
    Interval r = Interval::zero(prec);
    const mpfr_srcptr xs[2] = {a.lo_, a.hi_};
    const mpfr_srcptr ys[2] = {b.lo_, b.hi_};
    mpfr_t t;
    mpfr_init2(t, prec);
    bool first = true;
    for (auto x : xs) {
        for (auto y : ys) {
            mpfr_div(t, x, y, MPFR_RNDD);
            if (first || mpfr_less_p(t, r.lo_)) {
                mpfr_set(r.lo_, t, MPFR_RNDD);
            }
            mpfr_div(t, x, y, MPFR_RNDU);
            if (first || mpfr_greater_p(t, r.hi_)) {
                mpfr_set(r.hi_, t, MPFR_RNDU);
            }
            first = false;
        }
    }
    mpfr_clear(t);
    return r;
}

Interval log(const Interval &a)
{
    if (!a.is_positive()) {
        throw Error("logarithm of a non-positive interval");
    }
    Interval r = Interval::zero(a.prec_);
    mpfr_log(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_log(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval exp(const Interval &a)
{
    Interval r = Interval::zero(a.prec_);
    mpfr_exp(r.lo_, a.lo_, MPFR_RNDD);
    mpfr_exp(r.hi_, a.hi_, MPFR_RNDU);
    return r;
}

Interval pow(const Interval &a, const Interval &b)
{
    return exp(b * log(a));
}

bool Interval::certainly_less(const Interval &b) const
{
    return mpfr_less_p(hi_, b.lo_) != 0;
}

bool Interval::certainly_less_equal(const Interval &b) const
{
    return mpfr_lessequal_p(hi_, b.lo_) != 0;
}

bool Interval::contains_zero() const
{
    return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0;
}

bool Interval::is_positive() const
{
    return mpfr_sgn(lo_) > 0;
}

std::optional<BigInt> Interval::certified_floor() const
{
    BigInt a, b;
    mpfr_get_z(a.backend().data(), lo_, MPFR_RNDD);
    mpfr_get_z(b.backend().data(), hi_, MPFR_RNDD);
    if (a != b) {
        return std::nullopt;
    }
    return a;
}

double Interval::lower() const
{
    return mpfr_get_d(lo_, MPFR_RNDD);
}

double Interval::upper() const
{
    return mpfr_get_d(hi_, MPFR_RNDU);
}

double Interval::mid() const
{
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    const double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

std::string Interval::str(int digits) const
{
    mpfr_t m;
    mpfr_init2(m, prec_ + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    std::vector<char> buf(static_cast<std::size_t>(digits) + 64);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, m);
    mpfr_clear(m);
    return std::string(buf.data());
}

} // namespace clover
