#ifndef CLOVER_DERIVATIONS_HPP
#define CLOVER_DERIVATIONS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <clover/dpalgebra.hpp>

namespace clover {

// The operator d^{p^level}/dvar. These commute pairwise and each one is a
// derivation of R_N, so Der(R_N) is a free R_N-module on them.
struct DerivKey {
    Var var = 0;
    std::uint32_t level = 0;
    friend auto operator<=>(const DerivKey &, const DerivKey &) = default;
};

// sum_k f_k * key_k with no zero coefficients.
class Derivation {
public:
    using Coeffs = std::map<DerivKey, AlgebraElement>;

    explicit Derivation(Context ctx);
    // d/dv (level 0) or d^{p^level}/dv; zero when p^level reaches the bound.
    static Derivation partial(Context ctx, Var v, std::uint32_t level = 0);

    const Context &context() const noexcept { return ctx_; }
    const Coeffs &coeffs() const noexcept { return coeffs_; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const AlgebraElement *coeff(DerivKey k) const;

    void add_term(DerivKey k, const AlgebraElement &f);

    Derivation &operator+=(const Derivation &o);
    Derivation &operator-=(const Derivation &o);
    Derivation operator+(const Derivation &o) const;
    Derivation operator-(const Derivation &o) const;
    Derivation operator-() const;
    Derivation scaled(std::uint32_t c) const;
    // f * D
    Derivation times(const AlgebraElement &f) const;

    friend bool operator==(const Derivation &a, const Derivation &b) { return a.coeffs_ == b.coeffs_; }

    std::size_t term_count() const;
    // Highest generation touched by a key or a coefficient variable, or -1 for 0.
    long max_generation() const;

    // Common multidegree of all terms, nullopt when inhomogeneous or zero.
    std::optional<WeightVector> multidegree() const;

    // "x0^(1).y0^(1)*d_x1 + d_x0"; key d^{p^j}/dv with j > 0 renders as d_v^[p^j].
    std::string str() const;

private:
    Context ctx_;
    Coeffs coeffs_;
};

// Truncation of v_i, w_i or u_i to variables of generation < N; zero for i = N.
Derivation pivot(PivotKind kind, std::size_t i, const Context &ctx);

// Corner monomial multiplying the next generation in the expansion of the
// pivot: x^(p^S-1) y^(p^R-1) for v and w, z^(p^R-1) x^(p^S-1) for u.
DpMonomial pivot_corner(PivotKind kind, std::size_t i, const ContextData &ctx);

AlgebraElement apply(const Derivation &D, const AlgebraElement &f);

Derivation bracket(const Derivation &D, const Derivation &E);

// D^p. The result is read off from D^p on the generators x^(p^j) of R_N.
// With verify = true it is also compared against p-fold application on the
// whole monomial basis (throws "p-power reconstruction failed").
Derivation p_power(const Derivation &D, bool verify = false);
Derivation p_power_iter(const Derivation &D, std::uint32_t m);

// ad(D)^k (E)
Derivation ad_power(const Derivation &D, std::uint32_t k, const Derivation &E);

// Applies D k times to f.
AlgebraElement apply_power(const Derivation &D, std::uint32_t k, const AlgebraElement &f);

// Checks D(fg) = D(f)g + fD(g).
bool satisfies_leibniz(const Derivation &D, const AlgebraElement &f, const AlgebraElement &g);

} // namespace clover

#endif
