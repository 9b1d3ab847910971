#ifndef CLOVER_TESTS_SUPPORT_HPP
#define CLOVER_TESTS_SUPPORT_HPP

#include <random>

#include <clover/derivations.hpp>

namespace testing_support {

using namespace clover;

inline DpMonomial random_monomial(std::mt19937_64 &rng, const ContextData &ctx, double density = 0.4)
{
    std::bernoulli_distribution use(density);
    std::vector<DpMonomial::Entry> e;
    for (Var v = 0; v < ctx.var_count(); ++v) {
        if (use(rng)) {
            e.emplace_back(v, std::uniform_int_distribution<std::uint64_t>(0, ctx.bound(v) - 1)(rng));
        }
    }
    return DpMonomial(std::move(e));
}

inline AlgebraElement random_element(std::mt19937_64 &rng, const Context &ctx, int terms = 4)
{
    AlgebraElement a(ctx);
    std::uniform_int_distribution<std::uint32_t> c(1, ctx->p() - 1);
    for (int i = 0; i < terms; ++i) {
        a.add_term(random_monomial(rng, *ctx), c(rng));
    }
    return a;
}

inline Derivation random_derivation(std::mt19937_64 &rng, const Context &ctx, int terms = 3)
{
    Derivation D(ctx);
    std::uniform_int_distribution<Var> var(0, static_cast<Var>(ctx->var_count() - 1));
    for (int i = 0; i < terms; ++i) {
        const Var v = var(rng);
        const auto level = std::uniform_int_distribution<std::uint32_t>(0, ctx->level(v) - 1)(rng);
        D.add_term({v, level}, random_element(rng, ctx, 2));
    }
    return D;
}

inline AlgebraElement mono(const Context &ctx, std::vector<DpMonomial::Entry> e, std::uint32_t c = 1)
{
    return AlgebraElement::monomial(ctx, DpMonomial(std::move(e)), c);
}

constexpr Var X(std::size_t i) { return make_var(i, Letter::x); }
constexpr Var Y(std::size_t i) { return make_var(i, Letter::y); }
constexpr Var Z(std::size_t i) { return make_var(i, Letter::z); }

} // namespace testing_support

#endif
