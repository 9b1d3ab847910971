#include <clover/derivations.hpp>

namespace clover {

Derivation::Derivation(Context ctx) : ctx_(std::move(ctx)) {}

Derivation Derivation::partial(Context ctx, Var v, std::uint32_t level)
{
    Derivation D(ctx);
    if (v >= ctx->var_count()) {
        throw Error("variable beyond truncation: " + var_name(v));
    }
    if (level < ctx->level(v)) {
        D.coeffs_.emplace(DerivKey{v, level}, AlgebraElement::unit(ctx));
    }
    return D;
}

const AlgebraElement *Derivation::coeff(DerivKey k) const
{
    auto it = coeffs_.find(k);
    return it == coeffs_.end() ? nullptr : &it->second;
}

void Derivation::add_term(DerivKey k, const AlgebraElement &f)
{
    if (f.is_zero()) {
        return;
    }
    require_same_context(ctx_, f.context());
    if (k.var >= ctx_->var_count() || k.level >= ctx_->level(k.var)) {
        return;
    }
    auto it = coeffs_.find(k);
    if (it == coeffs_.end()) {
        coeffs_.emplace(k, f);
        return;
    }
    it->second += f;
    if (it->second.is_zero()) {
        coeffs_.erase(it);
    }
}

Derivation &Derivation::operator+=(const Derivation &o)
{
    require_same_context(ctx_, o.ctx_);
    for (const auto &[k, f] : o.coeffs_) {
        add_term(k, f);
    }
    return *this;
}

Derivation &Derivation::operator-=(const Derivation &o)
{
    require_same_context(ctx_, o.ctx_);
    for (const auto &[k, f] : o.coeffs_) {
        add_term(k, -f);
    }
    return *this;
}

Derivation Derivation::operator+(const Derivation &o) const
{
    Derivation r = *this;
    r += o;
    return r;
}

Derivation Derivation::operator-(const Derivation &o) const
{
    Derivation r = *this;
    r -= o;
    return r;
}

Derivation Derivation::operator-() const
{
    return scaled(ctx_->p() - 1);
}

Derivation Derivation::scaled(std::uint32_t c) const
{
    Derivation r(ctx_);
    if (ctx_->field().reduce(c) == 0) {
        return r;
    }
    for (const auto &[k, f] : coeffs_) {
        r.coeffs_.emplace_hint(r.coeffs_.end(), k, f.scaled(c));
    }
    return r;
}

Derivation Derivation::times(const AlgebraElement &f) const
{
    Derivation r(ctx_);
    for (const auto &[k, g] : coeffs_) {
        r.add_term(k, dp_mul(f, g));
    }
    return r;
}

std::size_t Derivation::term_count() const
{
    std::size_t n = 0;
    for (const auto &[k, f] : coeffs_) {
        n += f.terms().size();
    }
    return n;
}

long Derivation::max_generation() const
{
    long g = -1;
    for (const auto &[k, f] : coeffs_) {
        g = std::max(g, static_cast<long>(var_generation(k.var)));
        for (const auto &[m, c] : f.terms()) {
            if (!m.entries().empty()) {
                g = std::max(g, static_cast<long>(var_generation(m.entries().back().first)));
            }
        }
    }
    return g;
}

std::optional<WeightVector> Derivation::multidegree() const
{
    std::optional<WeightVector> w;
    for (const auto &[k, f] : coeffs_) {
        const WeightVector head = ctx_->var_weight(k.var).scaled(BigInt(ctx_->p_pow(k.level)));
        for (const auto &[m, c] : f.terms()) {
            WeightVector t = head - m.weight(*ctx_);
            if (!w) {
                w = t;
            } else if (!(*w == t)) {
                return std::nullopt;
            }
        }
    }
    return w;
}

std::string Derivation::str() const
{
    if (coeffs_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[k, f] : coeffs_) {
        std::string key = "d_" + var_name(k.var);
        if (k.level > 0) {
            key += "^[" + std::to_string(ctx_->p_pow(k.level)) + "]";
        }
        for (const auto &[m, c] : f.terms()) {
            if (!s.empty()) {
                s += " + ";
            }
            if (c != 1) {
                s += std::to_string(c) + "*";
            }
            if (!m.is_unit()) {
                s += m.str() + "*";
            }
            s += key;
        }
    }
    return s;
}

DpMonomial pivot_corner(PivotKind kind, std::size_t i, const ContextData &ctx)
{
    const Var x = make_var(i, Letter::x);
    const Var y = make_var(i, Letter::y);
    const Var z = make_var(i, Letter::z);
    const Var other = kind == PivotKind::u ? z : y;
    return DpMonomial({{x, ctx.bound(x) - 1}, {other, ctx.bound(other) - 1}});
}

Derivation pivot(PivotKind kind, std::size_t i, const Context &ctx)
{
    const std::size_t N = ctx->depth();
    if (i > N) {
        throw Error("generation beyond truncation");
    }
    Derivation D(ctx);
    const Letter letter = kind == PivotKind::v ? Letter::x : (kind == PivotKind::w ? Letter::y : Letter::z);
    DpMonomial prefix;
    for (std::size_t j = i; j < N; ++j) {
        D.add_term({make_var(j, letter), 0}, AlgebraElement::monomial(ctx, prefix));
        prefix = dp_mul_monomials(*ctx, prefix, pivot_corner(kind, j, *ctx)).second;
    }
    return D;
}

AlgebraElement apply(const Derivation &D, const AlgebraElement &f)
{
    require_same_context(D.context(), f.context());
    AlgebraElement r(f.context());
    for (const auto &[k, g] : D.coeffs()) {
        auto df = dp_derive(k.var, k.level, f);
        if (!df.is_zero()) {
            r += dp_mul(g, df);
        }
    }
    return r;
}

Derivation bracket(const Derivation &D, const Derivation &E)
{
    require_same_context(D.context(), E.context());
    // [f X, g Y] = f X(g) Y - g Y(f) X for commuting X, Y.
    Derivation r(D.context());
    for (const auto &[ky, g] : E.coeffs()) {
        r.add_term(ky, apply(D, g));
    }
    for (const auto &[kx, f] : D.coeffs()) {
        r.add_term(kx, -apply(E, f));
    }
    return r;
}

AlgebraElement apply_power(const Derivation &D, std::uint32_t k, const AlgebraElement &f)
{
    AlgebraElement r = f;
    for (std::uint32_t i = 0; i < k && !r.is_zero(); ++i) {
        r = apply(D, r);
    }
    return r;
}

Derivation ad_power(const Derivation &D, std::uint32_t k, const Derivation &E)
{
    Derivation r = E;
    for (std::uint32_t i = 0; i < k && !r.is_zero(); ++i) {
        r = bracket(D, r);
    }
    return r;
}

Derivation p_power(const Derivation &D, bool verify)
{
    const Context &ctx = D.context();
    const std::uint32_t p = ctx->p();
    Derivation r(ctx);
    std::vector<Var> vars;
    for (const auto &[k, f] : D.coeffs()) {
        if (vars.empty() || vars.back() != k.var) {
            vars.push_back(k.var);
        }
    }
    for (Var v : vars) {
        // D^p(v^(p^i)) = sum_{j<=i} f_j v^(p^i - p^j)
        std::vector<AlgebraElement> f;
        for (std::uint32_t i = 0; i < ctx->level(v); ++i) {
            const std::uint64_t e = ctx->p_pow(i);
            AlgebraElement g = apply_power(D, p, AlgebraElement::monomial(ctx, DpMonomial({{v, e}})));
            for (std::uint32_t j = 0; j < i; ++j) {
                g -= dp_mul(f[j], AlgebraElement::monomial(ctx, DpMonomial({{v, e - ctx->p_pow(j)}})));
            }
            r.add_term({v, i}, g);
            f.push_back(std::move(g));
        }
    }
    if (verify) {
        for (const auto &m : dp_basis(*ctx)) {
            const auto f = AlgebraElement::monomial(ctx, m);
            if (!(apply(r, f) == apply_power(D, p, f))) {
                throw Error("p-power reconstruction failed");
            }
        }
    }
    return r;
}

Derivation p_power_iter(const Derivation &D, std::uint32_t m)
{
    Derivation r = D;
    for (std::uint32_t i = 0; i < m && !r.is_zero(); ++i) {
        r = p_power(r);
    }
    return r;
}

bool satisfies_leibniz(const Derivation &D, const AlgebraElement &f, const AlgebraElement &g)
{
    return apply(D, dp_mul(f, g)) == dp_mul(apply(D, f), g) + dp_mul(f, apply(D, g));
}

} // namespace clover
