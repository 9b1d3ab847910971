#ifndef CLOVER_DPALGEBRA_HPP
#define CLOVER_DPALGEBRA_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <clover/fp.hpp>
#include <clover/params.hpp>

namespace clover {

enum class Letter : std::uint32_t { x = 0, y = 1, z = 2 };

// Variable id = 3 * generation + letter.
using Var = std::uint32_t;

constexpr Var make_var(std::size_t generation, Letter letter)
{
    return static_cast<Var>(3 * generation + static_cast<std::uint32_t>(letter));
}
constexpr std::size_t var_generation(Var v) { return v / 3; }
constexpr Letter var_letter(Var v) { return static_cast<Letter>(v % 3); }

std::string var_name(Var v);

// Bound data of the depth-N truncation R_N: variables of generation < N with
// heights p^{S_i} (x_i) and p^{R_i} (y_i, z_i).
class ContextData {
public:
    ContextData(ParameterTuple tuple, std::size_t depth);

    const ParameterTuple &tuple() const noexcept { return tuple_; }
    std::size_t depth() const noexcept { return depth_; }
    std::uint32_t p() const noexcept { return field_.p(); }
    const PrimeField &field() const noexcept { return field_; }
    std::size_t var_count() const noexcept { return bounds_.size(); }

    // Exponents of variable v range over [0, bound(v)), bound = p^level.
    std::uint64_t bound(Var v) const { return bounds_.at(v); }
    std::uint32_t level(Var v) const { return levels_.at(v); }
    // p^j as a machine integer (j < 64 / log2 p).
    std::uint64_t p_pow(std::uint32_t j) const { return p_pows_.at(j); }

    // Multidegree of d/dv, i.e. of the pivot whose leading term is d/dv.
    const WeightVector &var_weight(Var v) const { return var_weights_.at(v); }

    // W(N); throws for depth < 2.
    const BigInt &trusted_bound() const;

    bool same_as(const ContextData &other) const;

private:
    ParameterTuple tuple_;
    std::size_t depth_;
    PrimeField field_;
    std::vector<std::uint64_t> bounds_;
    std::vector<std::uint32_t> levels_;
    std::vector<std::uint64_t> p_pows_;
    std::vector<WeightVector> var_weights_;
    std::optional<BigInt> trusted_;
};

using Context = std::shared_ptr<const ContextData>;

Context make_context(const ParameterTuple &tuple, std::size_t depth);

void require_same_context(const Context &a, const Context &b);

// A divided power monomial, stored sparsely as (variable, exponent) pairs
// sorted by variable with no zero exponents.
class DpMonomial {
public:
    using Entry = std::pair<Var, std::uint64_t>;

    DpMonomial() = default;
    // Entries need not be sorted; zero exponents are dropped. Bounds are not
    // checked here (see AlgebraElement::monomial).
    explicit DpMonomial(std::vector<Entry> entries);

    const std::vector<Entry> &entries() const noexcept { return entries_; }
    std::uint64_t exponent(Var v) const;
    bool is_unit() const noexcept { return entries_.empty(); }
    DpMonomial with_exponent(Var v, std::uint64_t e) const;

    // Multidegree deficiency sum_v e_v * Gr(d/dv).
    WeightVector weight(const ContextData &ctx) const;

    // "x0^(1).y0^(1)"; the unit monomial renders as "1".
    std::string str() const;

    friend bool operator==(const DpMonomial &, const DpMonomial &) = default;
    // Canonical order: lexicographic on the sorted entry list.
    friend bool operator<(const DpMonomial &a, const DpMonomial &b) { return a.entries_ < b.entries_; }

private:
    std::vector<Entry> entries_;
};

// F_p-linear combination of monomials with nonzero coefficients.
class AlgebraElement {
public:
    using Terms = std::map<DpMonomial, std::uint32_t>;

    explicit AlgebraElement(Context ctx);
    static AlgebraElement unit(Context ctx);
    // c * m; throws "exponent out of bounds" when m violates the truncation.
    static AlgebraElement monomial(Context ctx, DpMonomial m, std::uint32_t c = 1);

    const Context &context() const noexcept { return ctx_; }
    const Terms &terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::uint32_t coeff(const DpMonomial &m) const;

    // Adds c * m (c is reduced mod p).
    void add_term(const DpMonomial &m, std::uint32_t c);
    AlgebraElement &operator+=(const AlgebraElement &o);
    AlgebraElement &operator-=(const AlgebraElement &o);
    AlgebraElement operator+(const AlgebraElement &o) const;
    AlgebraElement operator-(const AlgebraElement &o) const;
    AlgebraElement operator-() const;
    AlgebraElement scaled(std::uint32_t c) const;

    friend bool operator==(const AlgebraElement &a, const AlgebraElement &b) { return a.terms_ == b.terms_; }

    std::string str() const;

private:
    Context ctx_;
    Terms terms_;
};

// Product of two monomials: coefficient prod_v C(i_v + j_v, i_v) mod p and the
// merged monomial; the coefficient is 0 when a sum reaches its bound.
std::pair<std::uint32_t, DpMonomial> dp_mul_monomials(const ContextData &ctx, const DpMonomial &a, const DpMonomial &b);

AlgebraElement dp_mul(const AlgebraElement &a, const AlgebraElement &b);

// d^{p^m}/dv applied termwise.
AlgebraElement dp_derive(Var v, std::uint32_t m, const AlgebraElement &a);

BigInt dp_basis_dim(const ContextData &ctx);

// All monomials of R_N in canonical order (odometer over variables with the
// last variable fastest). Throws when the dimension exceeds the cap.
std::vector<DpMonomial> dp_basis(const ContextData &ctx, std::size_t cap = std::size_t(1) << 22);

} // namespace clover

#endif
