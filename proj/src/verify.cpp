#include <clover/closure.hpp>

#include <functional>

namespace clover {

namespace {

std::string witness_eq(const Derivation &lhs, const Derivation &rhs)
{
    return "lhs = " + lhs.str() + " ; rhs = " + rhs.str();
}

// Per-component echelons of a family of vectors.
struct Span {
    std::uint32_t p;
    std::map<WeightVector, Echelon> parts;

    void insert(const Derivation &D)
    {
        for (const auto &[gr, part] : homogeneous_parts(D)) {
            parts.try_emplace(gr, p).first->second.insert(flatten(part));
        }
    }
    bool contains(const Derivation &D) const
    {
        for (const auto &[gr, part] : homogeneous_parts(D)) {
            auto it = parts.find(gr);
            if (it == parts.end() || !it->second.contains(flatten(part))) {
                return false;
            }
        }
        return true;
    }
};

struct Realized {
    MonomialDescriptor d;
    WeightVector gr;
    Derivation D;
};

bool first_kind(Family f)
{
    return f == Family::first || f == Family::power_v || f == Family::power_w;
}

// Accumulates pass/fail per key and keeps the first failing witness.
class Tally {
public:
    void record(const std::string &key, nlohmann::json params, bool ok, const std::function<std::string()> &witness)
    {
        auto [it, fresh] = entries_.try_emplace(key);
        if (fresh) {
            order_.push_back(key);
            it->second.params = std::move(params);
        }
        ++it->second.checked;
        if (!ok) {
            ++it->second.failed;
            if (it->second.witness.empty()) {
                it->second.witness = witness();
            }
        }
    }
    void flush(VerificationReport &report, const std::string &check)
    {
        for (const auto &key : order_) {
            auto &e = entries_[key];
            e.params["checked"] = e.checked;
            e.params["failed"] = e.failed;
            report.add(check, e.params, e.failed == 0 ? Status::pass : Status::fail, e.witness);
        }
        entries_.clear();
        order_.clear();
    }

private:
    struct Entry {
        nlohmann::json params;
        std::size_t checked = 0, failed = 0;
        std::string witness;
    };
    std::map<std::string, Entry> entries_;
    std::vector<std::string> order_;
};

} // namespace

VerificationReport verify_basis_theorem(const ParameterTuple &tuple, std::size_t depth)
{
    VerificationReport report("basis");
    if (depth < 3) {
        throw Error("basis theorem check needs depth >= 3");
    }
    const Context ctx = make_context(tuple, depth);
    const BigInt W = ctx->trusted_bound();
    const GradedBasis B = clover_closure(ctx);
    const std::uint32_t p = tuple.p();

    std::vector<Realized> all;
    for (const auto &d : enumerate(tuple, FamilyFilter::all(), W)) {
        all.push_back({d, monomial_weight(d, tuple), realize(d, ctx)});
    }

    std::map<BigInt, std::size_t> counted;
    for (const auto &r : all) {
        ++counted[r.gr.wt()];
    }
    for (BigInt w = 1; w <= W; ++w) {
        const std::size_t c = B.dim_at(w);
        const std::size_t e = counted.count(w) ? counted[w] : 0;
        report.add("dimension", {{"weight", to_string(w)}, {"closure", c}, {"descriptors", e}},
                   c == e ? Status::pass : Status::fail,
                   c == e ? "" : "closure " + std::to_string(c) + " vs descriptors " + std::to_string(e));
    }

    Span first{p, {}}, second{p, {}};
    std::map<WeightVector, Echelon> spans;
    std::map<WeightVector, std::size_t> per_component;
    for (const auto &r : all) {
        const auto md = r.D.multidegree();
        const bool graded = md && *md == r.gr;
        const bool member = B.contains(r.D);
        nlohmann::json params = {{"descriptor", r.d.str()}, {"degree", r.gr.str()}};
        std::string witness;
        if (!graded || !member) {
            witness = r.d.str() + " -> " + r.D.str() + (graded ? "" : " (degree mismatch)");
        }
        report.add("membership", params, graded && member ? Status::pass : Status::fail, witness);
        if (const auto alt = realize_by_brackets(r.d, ctx)) {
            report.add("bracket-form", params, *alt == r.D ? Status::pass : Status::fail,
                       *alt == r.D ? "" : witness_eq(*alt, r.D));
        }
        spans.try_emplace(r.gr, p).first->second.insert(flatten(r.D));
        ++per_component[r.gr];
        (first_kind(r.d.family) ? first : second).insert(r.D);
    }
    for (const auto &[gr, comp] : B.components()) {
        const std::size_t n = per_component.count(gr) ? per_component[gr] : 0;
        const std::size_t rank = spans.count(gr) ? spans.at(gr).rank() : 0;
        const bool ok = n == comp.vectors.size() && rank == n;
        report.add("independence", {{"degree", gr.str()}, {"closure", comp.vectors.size()}, {"descriptors", n}, {"rank", rank}},
                   ok ? Status::pass : Status::fail, ok ? "" : "rank deficit in component " + gr.str());
    }

    Tally sub, ideal;
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            const auto &a = all[i];
            const auto &b = all[j];
            const BigInt w = a.gr.wt() + b.gr.wt();
            if (w > W) {
                continue;
            }
            const bool fa = first_kind(a.d.family), fb = first_kind(b.d.family);
            const Derivation c = bracket(a.D, b.D);
            const std::string key = to_string(w);
            const auto wit = [&] { return "[" + a.d.str() + ", " + b.d.str() + "] = " + c.str(); };
            if (fa && fb) {
                sub.record(key, {{"weight", key}}, first.contains(c), wit);
            } else {
                ideal.record(key, {{"weight", key}}, second.contains(c), wit);
            }
        }
        const auto &a = all[i];
        if (a.gr.wt() * p <= W) {
            const Derivation c = p_power(a.D);
            const std::string key = to_string(a.gr.wt() * p);
            const auto wit = [&] { return "(" + a.d.str() + ")^[p] = " + c.str(); };
            if (first_kind(a.d.family)) {
                sub.record("p" + key, {{"weight", key}, {"p_power", true}}, first.contains(c), wit);
            } else {
                ideal.record("p" + key, {{"weight", key}, {"p_power", true}}, second.contains(c), wit);
            }
        }
    }
    sub.flush(report, "subalgebra");
    ideal.flush(report, "ideal");
    return report;
}

VerificationReport verify_grading(const ParameterTuple &tuple, std::size_t depth)
{
    VerificationReport report("grading");
    if (depth < 2) {
        throw Error("grading check needs depth >= 2");
    }
    const Context ctx = make_context(tuple, depth);
    const BigInt W = ctx->trusted_bound();
    const GradedBasis B = clover_closure(ctx);
    const std::uint32_t p = tuple.p();

    struct Item {
        const WeightVector *gr;
        const BasisVector *v;
    };
    std::vector<Item> items;
    for (const auto &[gr, comp] : B.components()) {
        for (const auto &v : comp.vectors) {
            items.push_back({&gr, &v});
        }
    }
    const auto lands = [&](const Derivation &c, const WeightVector &expect) {
        if (c.is_zero()) {
            return true;
        }
        const auto md = c.multidegree();
        if (!md || !(*md == expect)) {
            return false;
        }
        const auto *comp = B.component(expect);
        return comp != nullptr && comp->echelon.contains(flatten(c));
    };

    Tally brackets, powers;
    for (std::size_t i = 0; i < items.size(); ++i) {
        for (std::size_t j = i + 1; j < items.size(); ++j) {
            const WeightVector expect = *items[i].gr + *items[j].gr;
            if (expect.wt() > W) {
                continue;
            }
            const Derivation c = bracket(items[i].v->element, items[j].v->element);
            const std::string key = items[i].gr->str() + "+" + items[j].gr->str();
            brackets.record(key, {{"left", items[i].gr->str()}, {"right", items[j].gr->str()}, {"sum", expect.str()}},
                            lands(c, expect), [&] {
                                return "[" + items[i].v->provenance + ", " + items[j].v->provenance + "] = " + c.str();
                            });
        }
        const WeightVector expect = items[i].gr->scaled(BigInt(p));
        if (expect.wt() <= W) {
            const Derivation c = p_power(items[i].v->element);
            powers.record(items[i].gr->str(), {{"degree", items[i].gr->str()}, {"target", expect.str()}},
                          lands(c, expect), [&] { return "(" + items[i].v->provenance + ")^[p] = " + c.str(); });
        }
    }
    brackets.flush(report, "bracket");
    powers.flush(report, "p-power");
    return report;
}

namespace {

struct RelationFrame {
    Context ctx;
    BigInt zone;          // trusted bound of the frame
    std::size_t shift = 0; // generation offset of the frame inside ctx
    std::string prefix;
};

Derivation mono_times(const Context &ctx, std::vector<DpMonomial::Entry> e, const Derivation &D, bool negate = false)
{
    const Derivation r = D.times(AlgebraElement::monomial(ctx, DpMonomial(std::move(e))));
    return negate ? -r : r;
}

void relations_at(VerificationReport &report, const RelationFrame &fr, std::size_t gi)
{
    const Context &ctx = fr.ctx;
    const ParameterTuple &tuple = ctx->tuple();
    const std::size_t label = gi - fr.shift;
    const BigInt Wi = pivot_weight(tuple, label);
    const Var x = make_var(gi, Letter::x), y = make_var(gi, Letter::y), z = make_var(gi, Letter::z);
    const std::uint64_t X = ctx->bound(x), Y = ctx->bound(y);
    const auto G = tuple.at(gi);
    const Derivation v = pivot(PivotKind::v, gi, ctx), w = pivot(PivotKind::w, gi, ctx), u = pivot(PivotKind::u, gi, ctx);
    const Derivation vn = pivot(PivotKind::v, gi + 1, ctx), wn = pivot(PivotKind::w, gi + 1, ctx),
                     un = pivot(PivotKind::u, gi + 1, ctx);
    const auto k32 = [](std::uint64_t e) { return static_cast<std::uint32_t>(e); };

    const auto check = [&](const std::string &name, nlohmann::json extra, const Derivation &lhs, const Derivation &rhs,
                           const BigInt &weight) {
        nlohmann::json params = {{"i", label}, {"weight", to_string(weight)}};
        for (auto &[k, val] : extra.items()) {
            params[k] = val;
        }
        Status st = Status::fail;
        std::string wit;
        if (lhs == rhs) {
            st = weight <= fr.zone ? Status::pass : Status::outside_zone;
        } else {
            wit = witness_eq(lhs, rhs);
        }
        report.add(fr.prefix + name, std::move(params), st, std::move(wit));
    };

    for (std::uint64_t m = 0; m <= G.S; ++m) {
        const std::uint64_t pm = ctx->p_pow(k32(m));
        check("power_v", {{"m", m}}, p_power_iter(v, k32(m)),
              Derivation::partial(ctx, x, k32(m)) + mono_times(ctx, {{x, X - pm}, {y, Y - 1}}, vn), Wi * pm);
    }
    for (std::uint64_t m = 0; m <= G.R; ++m) {
        const std::uint64_t pm = ctx->p_pow(k32(m));
        check("power_w", {{"m", m}}, p_power_iter(w, k32(m)),
              Derivation::partial(ctx, y, k32(m)) + mono_times(ctx, {{y, Y - pm}, {x, X - 1}}, wn), Wi * pm);
        check("power_u", {{"m", m}}, p_power_iter(u, k32(m)),
              Derivation::partial(ctx, z, k32(m)) + mono_times(ctx, {{z, Y - pm}, {x, X - 1}}, un), Wi * pm);
    }

    const Derivation vX = p_power_iter(v, k32(G.S)), wY = p_power_iter(w, k32(G.R)), uY = p_power_iter(u, k32(G.R));
    check("top_power_v", {}, vX, mono_times(ctx, {{y, Y - 1}}, vn), Wi * X);
    check("top_power_w", {}, wY, mono_times(ctx, {{x, X - 1}}, wn), Wi * Y);
    check("top_power_u", {}, uY, mono_times(ctx, {{x, X - 1}}, un), Wi * Y);
    check("lift_v", {}, ad_power(w, k32(Y - 1), vX), vn, Wi * (X + Y - 1));
    check("lift_w", {}, ad_power(v, k32(X - 1), wY), wn, Wi * (X + Y - 1));
    check("lift_u", {}, ad_power(v, k32(X - 1), uY), un, Wi * (X + Y - 1));

    check("commute_wu", {}, bracket(w, u), Derivation(ctx), Wi * 2);

    // h^{a,b} = x^(X-1-a) y^(Y-2-b) v' - x^(X-2-a) y^(Y-1-b) w'
    const auto h_closed = [&](std::uint64_t a, std::uint64_t b) {
        Derivation r(ctx);
        if (b + 2 <= Y) {
            r += mono_times(ctx, {{x, X - 1 - a}, {y, Y - 2 - b}}, vn);
        }
        if (a + 2 <= X) {
            r -= mono_times(ctx, {{x, X - 2 - a}, {y, Y - 1 - b}}, wn);
        }
        return r;
    };
    const Derivation h = bracket(w, v), g = bracket(v, u);
    check("head_h", {}, h, h_closed(0, 0), Wi * 2);
    check("head_g", {}, g, mono_times(ctx, {{x, X - 2}, {z, Y - 1}}, un), Wi * 2);
    for (std::uint64_t a = 0; a < X; ++a) {
        for (std::uint64_t b = 0; b < Y; ++b) {
            if (a == X - 1 && b == Y - 1) {
                continue;
            }
            const BigInt wt = Wi * (a + b + 2);
            const Derivation lhs = ad_power(v, k32(a), ad_power(w, k32(b), h));
            check("head_h_ab", {{"a", a}, {"b", b}}, lhs, h_closed(a, b), wt);
            check("head_h_order", {{"a", a}, {"b", b}}, ad_power(w, k32(b), ad_power(v, k32(a), h)), lhs, wt);
            if (a == X - 1) {
                check("head_h_last_row", {{"b", b}}, lhs, mono_times(ctx, {{y, Y - 2 - b}}, vn), wt);
            }
            if (b == Y - 1) {
                check("head_h_last_col", {{"a", a}}, lhs, mono_times(ctx, {{x, X - 2 - a}}, wn, true), wt);
            }
        }
    }
    check("head_h_to_v", {}, ad_power(v, k32(X - 1), ad_power(w, k32(Y - 2), h)), vn, Wi * (X + Y - 1));
    check("head_h_to_w", {}, ad_power(v, k32(X - 2), ad_power(w, k32(Y - 1), h)), -wn, Wi * (X + Y - 1));
    for (std::uint64_t a = 0; a + 2 <= X; ++a) {
        for (std::uint64_t b = 0; b < Y; ++b) {
            check("head_g_ab", {{"a", a}, {"b", b}}, ad_power(v, k32(a), ad_power(u, k32(b), g)),
                  mono_times(ctx, {{x, X - 2 - a}, {z, Y - 1 - b}}, un), Wi * (a + b + 2));
        }
    }
}

} // namespace

VerificationReport relation_suite(const ParameterTuple &tuple, std::size_t depth)
{
    VerificationReport report("relations");
    const Context ctx = make_context(tuple, depth);
    const RelationFrame fr{ctx, ctx->trusted_bound(), 0, ""};
    for (std::size_t i = 0; i + 1 < depth; ++i) {
        relations_at(report, fr, i);
    }
    return report;
}

std::string relation_lines(const VerificationReport &report)
{
    std::string out;
    for (const auto &r : report.records()) {
        std::string name = r.check;
        std::string args;
        for (const char *k : {"m", "a", "b"}) {
            if (r.params.contains(k)) {
                args += (args.empty() ? "" : ",") + std::string(k) + "=" + r.params[k].dump();
            }
        }
        if (!args.empty()) {
            name += "(" + args + ")";
        }
        const std::string i = r.params.contains("i") ? r.params["i"].dump() : "-";
        out += name + " " + i + " " + std::string(status_name(r.status)) + "\n";
    }
    return out;
}

Derivation jacobson_remainder(const Derivation &D, const Derivation &E)
{
    require_same_context(D.context(), E.context());
    const Context &ctx = D.context();
    const PrimeField &F = ctx->field();
    const std::uint32_t p = ctx->p();
    // coefficients of t^k in ad(tD + E)^j (D)
    std::vector<Derivation> P(p, Derivation(ctx));
    P[0] = D;
    for (std::uint32_t j = 0; j + 1 < p; ++j) {
        std::vector<Derivation> Q(p, Derivation(ctx));
        for (std::uint32_t k = 0; k < p; ++k) {
            if (P[k].is_zero()) {
                continue;
            }
            Q[k] += bracket(E, P[k]);
            if (k + 1 < p) {
                Q[k + 1] += bracket(D, P[k]);
            }
        }
        P = std::move(Q);
    }
    Derivation s(ctx);
    for (std::uint32_t i = 1; i < p; ++i) {
        s += P[i - 1].scaled(F.inv(i));
    }
    return s;
}

VerificationReport restricted_axiom_suite(const ParameterTuple &tuple, std::size_t depth, std::size_t pairs,
                                          std::uint64_t seed)
{
    VerificationReport report("axioms");
    const Context ctx = make_context(tuple, depth);
    const GradedBasis B = clover_closure(ctx);
    const BigInt W = ctx->trusted_bound();
    const std::uint32_t p = tuple.p();
    const PrimeField &F = ctx->field();
    const auto basis = B.vectors();
    std::mt19937_64 rng(seed);

    for (std::size_t s = 0; s < pairs; ++s) {
        const Derivation D = random_element(B, rng, 5, W);
        const Derivation E = random_element(B, rng, 5, W);
        const std::uint32_t lambda = static_cast<std::uint32_t>(1 + rng() % (p - 1));
        const nlohmann::json params = {{"pair", s}, {"seed", seed}};
        const std::string inputs = "D = " + D.str() + " ; E = " + E.str();

        const Derivation Dp = p_power(D, true);
        std::string wit;
        for (const BasisVector *b : basis) {
            const Derivation lhs = bracket(Dp, b->element);
            const Derivation rhs = ad_power(D, p, b->element);
            if (!(lhs == rhs)) {
                wit = inputs + " ; b = " + b->provenance + " ; " + witness_eq(lhs, rhs);
                break;
            }
        }
        report.add("ad-power", params, wit.empty() ? Status::pass : Status::fail, wit);

        const Derivation lhs = p_power(D + E);
        const Derivation rest = jacobson_remainder(D, E);
        const Derivation rhs = Dp + p_power(E) + rest;
        report.add("jacobson", params, lhs == rhs ? Status::pass : Status::fail,
                   lhs == rhs ? "" : inputs + " ; " + witness_eq(lhs, rhs));

        // The top term of the sum is (ad D)^{p-1}(E); what is left vanishes at p = 2.
        const Derivation lower = rest - ad_power(D, p - 1, E);
        const bool lower_ok = p != 2 || lower.is_zero();
        report.add("jacobson-lower", params, lower_ok ? Status::pass : Status::fail,
                   lower_ok ? "" : inputs + " ; remainder = " + lower.str());

        const Derivation scaled = p_power(D.scaled(lambda));
        const Derivation expect = Dp.scaled(F.pow(lambda, p));
        report.add("scaling", {{"pair", s}, {"seed", seed}, {"lambda", lambda}}, scaled == expect ? Status::pass : Status::fail,
                   scaled == expect ? "" : inputs + " ; " + witness_eq(scaled, expect));
    }
    return report;
}

VerificationReport self_similarity_decompose(const ParameterTuple &tuple, std::size_t depth)
{
    const auto period = tuple.period();
    if (!period) {
        throw Error("self-similarity requires periodic tuple");
    }
    const std::size_t Np = *period;
    if (depth < 2 * Np) {
        throw Error("self-similarity requires depth >= 2 * period");
    }
    VerificationReport report("self-similarity");
    const Context ctx = make_context(tuple, depth);
    const Context local = make_context(tuple, Np);
    const Context lower = make_context(tuple, depth - Np);

    for (PivotKind kind : {PivotKind::v, PivotKind::w, PivotKind::u}) {
        const std::string kn = kind == PivotKind::v ? "v" : (kind == PivotKind::w ? "w" : "u");
        AlgebraElement P = AlgebraElement::unit(ctx);
        for (std::size_t k = 0; k < Np; ++k) {
            P = dp_mul(P, AlgebraElement::monomial(ctx, pivot_corner(kind, k, *ctx)));
        }
        const Derivation g = pivot(kind, 0, ctx);
        const Derivation rest = g - pivot(kind, Np, ctx).times(P);
        bool only_low = true;
        for (const auto &[key, f] : rest.coeffs()) {
            only_low = only_low && var_generation(key.var) < Np;
            for (const auto &[m, c] : f.terms()) {
                for (const auto &[v, e] : m.entries()) {
                    only_low = only_low && var_generation(v) < Np;
                }
            }
        }
        const Derivation d = shift_generations(pivot(kind, 0, local), 0, ctx);
        const bool ok = only_low && rest == d;
        report.add("decomposition", {{"kind", kn}, {"corner", P.str()}, {"local", rest.str()}},
                   ok ? Status::pass : Status::fail, ok ? "" : "g = " + g.str() + " ; local part = " + rest.str());

        for (std::size_t i = 0; i + Np < depth; ++i) {
            const Derivation a = shift_generations(pivot(kind, i, lower), Np, ctx);
            const Derivation b = pivot(kind, i + Np, ctx);
            report.add("shifted-pivot", {{"kind", kn}, {"i", i}}, a == b ? Status::pass : Status::fail,
                       a == b ? "" : witness_eq(a, b));
        }
    }

    // The generation >= Np pivots of ctx are a copy of the depth - Np algebra.
    const BigInt zone = depth - Np >= 2 ? lower->trusted_bound() : BigInt(0);
    const RelationFrame fr{ctx, zone, Np, "shifted."};
    for (std::size_t i = Np; i + 1 < depth; ++i) {
        relations_at(report, fr, i);
    }
    return report;
}

} // namespace clover
