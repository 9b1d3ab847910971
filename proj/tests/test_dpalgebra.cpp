#include <doctest.h>

#include "support.hpp"

using namespace clover;
using namespace testing_support;

namespace {

// Coefficient of the product read off from t^(i) = t^i / i! in characteristic 0.
AlgebraElement naive_mul(const AlgebraElement &a, const AlgebraElement &b)
{
    const auto &ctx = *a.context();
    AlgebraElement r(a.context());
    for (const auto &[ma, ca] : a.terms()) {
        for (const auto &[mb, cb] : b.terms()) {
            BigInt c = BigInt(ca) * cb;
            std::vector<DpMonomial::Entry> e;
            bool zero = false;
            for (Var v = 0; v < ctx.var_count(); ++v) {
                const auto i = ma.exponent(v), j = mb.exponent(v);
                if (i + j >= ctx.bound(v)) {
                    zero = true;
                    break;
                }
                BigInt num = 1, den = 1;
                for (std::uint64_t k = 1; k <= j; ++k) {
                    num *= i + k;
                    den *= k;
                }
                c *= num / den;
                e.emplace_back(v, i + j);
            }
            if (!zero) {
                r.add_term(DpMonomial(e), static_cast<std::uint32_t>(BigInt(c % ctx.p()).convert_to<unsigned long>()));
            }
        }
    }
    return r;
}

} // namespace

TEST_CASE("product examples")
{
    auto c2 = make_context(ParameterTuple::constant(2, 1, 1), 1);
    CHECK(dp_mul(mono(c2, {{X(0), 1}}), mono(c2, {{X(0), 1}})).is_zero());
    CHECK(dp_mul(mono(c2, {{X(0), 1}}), mono(c2, {{Y(0), 1}})) == mono(c2, {{X(0), 1}, {Y(0), 1}}));

    auto c3 = make_context(ParameterTuple::constant(3, 1, 1), 1);
    CHECK(dp_mul(mono(c3, {{X(0), 1}}), mono(c3, {{X(0), 1}})) == mono(c3, {{X(0), 2}}, 2));
    CHECK_THROWS_AS(mono(c3, {{X(0), 3}}), Error);
}

TEST_CASE("product agrees with the factorial formula")
{
    std::mt19937_64 rng(11);
    for (auto [p, S, R] : {std::tuple{2u, 2u, 1u}, {3u, 2u, 1u}, {5u, 1u, 2u}, {2u, 3u, 2u}}) {
        auto ctx = make_context(ParameterTuple::constant(p, S, R), 2);
        for (int i = 0; i < 100; ++i) {
            auto a = random_element(rng, ctx), b = random_element(rng, ctx);
            CHECK(dp_mul(a, b) == naive_mul(a, b));
        }
    }
}

TEST_CASE("ring axioms on random triples")
{
    std::mt19937_64 rng(12);
    auto ctx = make_context(ParameterTuple::periodic(3, {{1, 1}, {2, 1}}), 3);
    const auto one = AlgebraElement::unit(ctx);
    for (int i = 0; i < 500; ++i) {
        auto a = random_element(rng, ctx), b = random_element(rng, ctx), c = random_element(rng, ctx);
        CHECK(dp_mul(a, b) == dp_mul(b, a));
        CHECK(dp_mul(dp_mul(a, b), c) == dp_mul(a, dp_mul(b, c)));
        CHECK(dp_mul(a, b + c) == dp_mul(a, b) + dp_mul(a, c));
        CHECK(dp_mul(one, a) == a);
        CHECK(dp_mul(a, one) == a);
    }
}

TEST_CASE("divided derivatives")
{
    auto c3 = make_context(ParameterTuple::constant(3, 1, 1), 2);
    CHECK(dp_derive(X(0), 0, mono(c3, {{X(0), 2}})) == mono(c3, {{X(0), 1}}));
    CHECK(dp_derive(X(0), 0, mono(c3, {{Y(0), 1}})).is_zero());
    CHECK(dp_derive(X(0), 1, mono(c3, {{X(0), 2}, {Y(1), 2}})).is_zero());

    std::mt19937_64 rng(13);
    auto ctx = make_context(ParameterTuple::constant(2, 3, 2), 2);
    for (int i = 0; i < 200; ++i) {
        auto f = random_element(rng, ctx), g = random_element(rng, ctx);
        const Var v = static_cast<Var>(i % ctx->var_count());
        CHECK(dp_derive(v, 0, dp_mul(f, g)) == dp_mul(dp_derive(v, 0, f), g) + dp_mul(f, dp_derive(v, 0, g)));
        for (std::uint32_t m = 0; m <= ctx->level(v); ++m) {
            AlgebraElement h = f;
            for (std::uint64_t k = 0; k < ctx->p_pow(m); ++k) {
                h = dp_derive(v, 0, h);
            }
            CHECK(dp_derive(v, m, f) == h);
        }
    }
}

TEST_CASE("monomial basis")
{
    auto c = make_context(ParameterTuple::constant(2, 1, 1), 1);
    CHECK(dp_basis(*c).size() == 8);
    auto c3 = make_context(ParameterTuple::constant(2, 1, 1), 3);
    auto b = dp_basis(*c3);
    CHECK(b.size() == 512);
    CHECK(std::is_sorted(b.begin(), b.end()));
    CHECK(std::adjacent_find(b.begin(), b.end()) == b.end());
    CHECK(dp_basis(*make_context(ParameterTuple::constant(3, 1, 1), 2)).size() == 729);
    CHECK_THROWS_WITH_AS(dp_basis(*c3, 100), "truncation too large to enumerate", Error);
}

TEST_CASE("rendering")
{
    auto c3 = make_context(ParameterTuple::constant(3, 1, 1), 2);
    auto a = mono(c3, {{X(0), 2}, {Y(1), 1}}, 2) + AlgebraElement::unit(c3);
    CHECK(a.str() == "1 + 2*x0^(2).y1^(1)");
    CHECK(AlgebraElement(c3).str() == "0");
}
