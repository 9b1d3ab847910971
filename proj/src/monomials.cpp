#include <clover/monomials.hpp>

#include <algorithm>

namespace clover {

namespace {

[[noreturn]] void out_of_bounds()
{
    throw Error("descriptor out of bounds");
}

Letter head_letter(Family f)
{
    switch (f) {
    case Family::power_w:
        return Letter::y;
    case Family::power_u:
        return Letter::z;
    default:
        return Letter::x;
    }
}

PivotKind power_kind(Family f)
{
    return f == Family::power_v ? PivotKind::v : (f == Family::power_w ? PivotKind::w : PivotKind::u);
}

// Tail monomial of generations 0..n-2.
DpMonomial tail_monomial(const MonomialDescriptor &d)
{
    std::vector<DpMonomial::Entry> e;
    for (std::size_t i = 0; i < d.tail.size(); ++i) {
        for (std::uint32_t l = 0; l < 3; ++l) {
            e.emplace_back(make_var(i, static_cast<Letter>(l)), d.tail[i][l]);
        }
    }
    return DpMonomial(std::move(e));
}

Derivation monomial_times(const Context &ctx, const DpMonomial &m, const Derivation &D)
{
    return D.times(AlgebraElement::monomial(ctx, m));
}

} // namespace

std::string_view family_name(Family f)
{
    switch (f) {
    case Family::first:
        return "first";
    case Family::second:
        return "second";
    case Family::power_v:
        return "power_v";
    case Family::power_w:
        return "power_w";
    case Family::power_u:
        return "power_u";
    }
    return "?";
}

bool FamilyFilter::accepts(Family f) const
{
    switch (f) {
    case Family::first:
        return first;
    case Family::second:
        return second;
    default:
        return powers;
    }
}

std::string MonomialDescriptor::str() const
{
    std::string s = std::string(family_name(family)) + "(n=" + std::to_string(length);
    if (family == Family::first || family == Family::second) {
        s += ",head=" + std::to_string(a) + "," + std::to_string(b);
    } else {
        s += ",m=" + std::to_string(a);
    }
    if (!tail.empty()) {
        s += ",tail=";
        for (std::size_t i = 0; i < tail.size(); ++i) {
            s += (i ? ";" : "") + std::to_string(tail[i][0]) + "," + std::to_string(tail[i][1]);
            if (family == Family::second) {
                s += "," + std::to_string(tail[i][2]);
            }
        }
    }
    return s + ")";
}

void validate(const MonomialDescriptor &d, const ParameterTuple &tuple)
{
    const std::uint32_t p = tuple.p();
    if (d.length == 0) {
        const bool ok = d.tail.empty() && d.b == 0 &&
                        ((d.family == Family::first && d.a <= 1) || (d.family == Family::second && d.a == 0));
        if (!ok) {
            out_of_bounds();
        }
        return;
    }
    const std::size_t g = d.length - 1;
    const auto G = tuple.at(g);
    const bool powers = d.family != Family::first && d.family != Family::second;
    if (powers) {
        const std::uint64_t top = d.family == Family::power_v ? G.S : G.R;
        if (!d.tail.empty() || d.b != 0 || d.a < 1 || d.a > top) {
            out_of_bounds();
        }
        return;
    }
    if (d.tail.size() != g) {
        out_of_bounds();
    }
    for (std::size_t i = 0; i < g; ++i) {
        const auto Gi = tuple.at(i);
        const auto &t = d.tail[i];
        if (t[0] >= checked_pow(p, Gi.S) || t[1] >= checked_pow(p, Gi.R) || t[2] >= checked_pow(p, Gi.R)) {
            out_of_bounds();
        }
        if (d.family == Family::first && t[2] != 0) {
            out_of_bounds();
        }
    }
    const BigInt X = checked_pow(p, G.S), Y = checked_pow(p, G.R);
    if (d.family == Family::first) {
        if (d.a >= X || d.b >= Y || (d.a == X - 1 && d.b == Y - 1)) {
            out_of_bounds();
        }
    } else if (d.a > X - 2 || d.b >= Y) {
        out_of_bounds();
    }
}

WeightVector monomial_weight(const MonomialDescriptor &d, const ParameterTuple &tuple)
{
    validate(d, tuple);
    if (d.length == 0) {
        if (d.family == Family::second) {
            return {0, 0, 1};
        }
        return d.a == 0 ? WeightVector(1, 0, 0) : WeightVector(0, 1, 0);
    }
    const std::size_t g = d.length - 1;
    const std::uint32_t p = tuple.p();
    if (d.family != Family::first && d.family != Family::second) {
        return pivot_multidegree(tuple, g, power_kind(d.family)).scaled(checked_pow(p, d.a));
    }
    const auto gx = pivot_multidegree(tuple, g, PivotKind::v);
    const auto gy = pivot_multidegree(tuple, g, PivotKind::w);
    const auto gz = pivot_multidegree(tuple, g, PivotKind::u);
    // Head weight: the pivot of generation n minus the neck exponents.
    const BigInt X = checked_pow(p, tuple.at(g).S), Y = checked_pow(p, tuple.at(g).R);
    WeightVector w;
    if (d.family == Family::first) {
        if (d.b + 2 <= Y) {
            w = pivot_multidegree(tuple, d.length, PivotKind::v) - gx.scaled(X - 1 - d.a) - gy.scaled(Y - 2 - d.b);
        } else {
            w = pivot_multidegree(tuple, d.length, PivotKind::w) - gx.scaled(X - 2 - d.a) - gy.scaled(Y - 1 - d.b);
        }
    } else {
        w = pivot_multidegree(tuple, d.length, PivotKind::u) - gx.scaled(X - 2 - d.a) - gz.scaled(Y - 1 - d.b);
    }
    for (std::size_t i = 0; i < d.tail.size(); ++i) {
        w = w - pivot_multidegree(tuple, i, PivotKind::v).scaled(d.tail[i][0]) -
            pivot_multidegree(tuple, i, PivotKind::w).scaled(d.tail[i][1]) -
            pivot_multidegree(tuple, i, PivotKind::u).scaled(d.tail[i][2]);
    }
    return w;
}

Derivation realize(const MonomialDescriptor &d, const Context &ctx)
{
    validate(d, ctx->tuple());
    if (d.length + 1 > ctx->depth()) {
        throw Error("generation beyond truncation");
    }
    if (d.length == 0) {
        return pivot(d.family == Family::second ? PivotKind::u : (d.a == 0 ? PivotKind::v : PivotKind::w), 0, ctx);
    }
    const std::size_t g = d.length - 1;
    const std::size_t n = d.length;
    const Var x = make_var(g, Letter::x), y = make_var(g, Letter::y), z = make_var(g, Letter::z);
    const std::uint64_t X = ctx->bound(x), Y = ctx->bound(y);

    if (d.family == Family::first) {
        const DpMonomial tail = tail_monomial(d);
        Derivation r(ctx);
        if (d.b + 2 <= Y) {
            r += monomial_times(ctx, tail.with_exponent(x, X - 1 - d.a).with_exponent(y, Y - 2 - d.b),
                                pivot(PivotKind::v, n, ctx));
        }
        if (d.a + 2 <= X) {
            r -= monomial_times(ctx, tail.with_exponent(x, X - 2 - d.a).with_exponent(y, Y - 1 - d.b),
                                pivot(PivotKind::w, n, ctx));
        }
        return r;
    }
    if (d.family == Family::second) {
        const DpMonomial m = tail_monomial(d).with_exponent(x, X - 2 - d.a).with_exponent(z, Y - 1 - d.b);
        return monomial_times(ctx, m, pivot(PivotKind::u, n, ctx));
    }
    // Power of the generation-g pivot: d^{p^a} + (neck letters) * next pivot.
    const Letter lead = head_letter(d.family);
    const Var v = make_var(g, lead);
    const std::uint64_t shift = ctx->p_pow(static_cast<std::uint32_t>(d.a));
    const Var other = lead == Letter::x ? y : x;
    const std::uint64_t other_exp = ctx->bound(other) - 1;
    DpMonomial m = DpMonomial().with_exponent(v, ctx->bound(v) - shift).with_exponent(other, other_exp);
    Derivation r = Derivation::partial(ctx, v, static_cast<std::uint32_t>(d.a));
    r += monomial_times(ctx, m, pivot(power_kind(d.family), n, ctx));
    return r;
}

std::optional<Derivation> realize_by_brackets(const MonomialDescriptor &d, const Context &ctx)
{
    validate(d, ctx->tuple());
    for (const auto &t : d.tail) {
        if (t[0] != 0 || t[1] != 0 || t[2] != 0) {
            return std::nullopt;
        }
    }
    if (d.length == 0) {
        return pivot(d.family == Family::second ? PivotKind::u : (d.a == 0 ? PivotKind::v : PivotKind::w), 0, ctx);
    }
    const std::size_t g = d.length - 1;
    const auto v = pivot(PivotKind::v, g, ctx);
    const auto w = pivot(PivotKind::w, g, ctx);
    const auto u = pivot(PivotKind::u, g, ctx);
    const auto k = [](std::uint64_t e) { return static_cast<std::uint32_t>(e); };
    switch (d.family) {
    case Family::first:
        return ad_power(v, k(d.a), ad_power(w, k(d.b), bracket(w, v)));
    case Family::second:
        return ad_power(v, k(d.a), ad_power(u, k(d.b), bracket(v, u)));
    case Family::power_v:
        return p_power_iter(v, k(d.a));
    case Family::power_w:
        return p_power_iter(w, k(d.a));
    case Family::power_u:
        return p_power_iter(u, k(d.a));
    }
    return std::nullopt;
}

std::vector<MonomialDescriptor> enumerate(const ParameterTuple &tuple, FamilyFilter filter, const BigInt &max_weight)
{
    struct Item {
        BigInt weight;
        MonomialDescriptor d;
    };
    std::vector<Item> items;
    if (max_weight < 1) {
        return {};
    }
    GrowthCounter counter(tuple);
    const std::uint32_t p = tuple.p();
    const auto add = [&](MonomialDescriptor d, BigInt w) {
        if (filter.accepts(d.family) && w <= max_weight) {
            items.push_back({std::move(w), std::move(d)});
        }
    };
    add({Family::first, 0, 0, 0, {}}, 1);
    add({Family::first, 0, 1, 0, {}}, 1);
    add({Family::second, 0, 0, 0, {}}, 1);

    const std::size_t top = counter.max_length(max_weight);
    for (std::size_t n = 1; n <= top; ++n) {
        const std::size_t g = n - 1;
        const auto G = tuple.at(g);
        const BigInt &W = counter.W(g);
        if (filter.powers) {
            for (Family f : {Family::power_v, Family::power_w, Family::power_u}) {
                const std::uint64_t mtop = f == Family::power_v ? G.S : G.R;
                for (std::uint64_t m = 1; m <= mtop; ++m) {
                    const BigInt w = checked_pow(p, m) * W;
                    if (w > max_weight) {
                        break;
                    }
                    add({f, n, m, 0, {}}, w);
                }
            }
        }
        for (Family f : {Family::first, Family::second}) {
            if (!filter.accepts(f)) {
                continue;
            }
            const BigInt Xb = checked_pow(p, G.S), Yb = checked_pow(p, G.R);
            if (Xb > (1u << 20) || Yb > (1u << 20)) {
                throw Error("tuple too large to enumerate");
            }
            const std::uint64_t X = Xb.convert_to<std::uint64_t>(), Y = Yb.convert_to<std::uint64_t>();
            const bool second = f == Family::second;
            // Largest tail deficiency over generations < i (as a suffix bound).
            std::vector<BigInt> dmax(g + 1, 0);
            for (std::size_t i = 0; i < g; ++i) {
                const auto Gi = tuple.at(i);
                const BigInt span = checked_pow(p, Gi.S) - 1 + (checked_pow(p, Gi.R) - 1) * (second ? 2 : 1);
                dmax[i + 1] = dmax[i] + span * counter.W(i);
            }
            for (std::uint64_t a = 0; a < X; ++a) {
                for (std::uint64_t b = 0; b < Y; ++b) {
                    if (second ? a + 2 > X : (a == X - 1 && b == Y - 1)) {
                        continue;
                    }
                    const BigInt head = BigInt(a + b + 2) * W;
                    const BigInt need = head - max_weight; // required deficiency
                    if (need > dmax[g]) {
                        continue;
                    }
                    MonomialDescriptor d{f, n, a, b, std::vector<std::array<std::uint64_t, 3>>(g)};
                    // Fill tail generations from the top down with pruning.
                    auto rec = [&](auto &&self, std::size_t i, const BigInt &deficiency) -> void {
                        if (i == 0) {
                            if (deficiency >= need) {
                                add(d, head - deficiency);
                            }
                            return;
                        }
                        const std::size_t j = i - 1;
                        const auto Gj = tuple.at(j);
                        const std::uint64_t Xj = checked_pow(p, Gj.S).convert_to<std::uint64_t>();
                        const std::uint64_t Yj = checked_pow(p, Gj.R).convert_to<std::uint64_t>();
                        const BigInt &Wj = counter.W(j);
                        for (std::uint64_t e0 = 0; e0 < Xj; ++e0) {
                            for (std::uint64_t e1 = 0; e1 < Yj; ++e1) {
                                for (std::uint64_t e2 = 0; e2 < (second ? Yj : 1); ++e2) {
                                    const BigInt def = deficiency + BigInt(e0 + e1 + e2) * Wj;
                                    if (def + dmax[j] < need) {
                                        continue;
                                    }
                                    d.tail[j] = {e0, e1, e2};
                                    self(self, j, def);
                                }
                            }
                        }
                    };
                    rec(rec, g, BigInt(0));
                }
            }
        }
    }
    std::sort(items.begin(), items.end(), [](const Item &l, const Item &r) {
        return l.weight != r.weight ? l.weight < r.weight : l.d < r.d;
    });
    std::vector<MonomialDescriptor> out;
    out.reserve(items.size());
    for (auto &it : items) {
        out.push_back(std::move(it.d));
    }
    return out;
}

} // namespace clover
