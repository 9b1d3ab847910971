#include <clover/closure.hpp>

#include <algorithm>

namespace clover {

SparseVec flatten(const Derivation &D)
{
    SparseVec v;
    for (const auto &[key, f] : D.coeffs()) {
        for (const auto &[m, c] : f.terms()) {
            v.emplace_hint(v.end(), TermKey{key, m}, c);
        }
    }
    return v;
}

Derivation unflatten(const SparseVec &v, const Context &ctx)
{
    std::map<DerivKey, AlgebraElement> parts;
    for (const auto &[k, c] : v) {
        auto it = parts.try_emplace(k.first, ctx).first;
        it->second.add_term(k.second, c);
    }
    Derivation D(ctx);
    for (const auto &[key, f] : parts) {
        D.add_term(key, f);
    }
    return D;
}

SparseVec Echelon::reduce(SparseVec v) const
{
    // Subtracting a row only touches keys above its pivot, so a single
    // ascending sweep suffices.
    auto it = v.begin();
    while (it != v.end()) {
        auto row = rows_.find(it->first);
        if (row == rows_.end()) {
            ++it;
            continue;
        }
        const TermKey at = it->first;
        const std::uint32_t c = it->second;
        for (const auto &[k, x] : row->second) {
            auto [slot, fresh] = v.try_emplace(k, 0);
            slot->second = field_.sub(slot->second, field_.mul(c, x));
            if (slot->second == 0) {
                v.erase(slot);
            }
        }
        it = v.upper_bound(at);
    }
    return v;
}

bool Echelon::insert(const SparseVec &v)
{
    SparseVec r = reduce(v);
    if (r.empty()) {
        return false;
    }
    const TermKey pivot = r.begin()->first;
    const std::uint32_t inv = field_.inv(r.begin()->second);
    for (auto &[k, x] : r) {
        x = field_.mul(x, inv);
    }
    for (auto &[pk, row] : rows_) {
        auto hit = row.find(pivot);
        if (hit == row.end()) {
            continue;
        }
        const std::uint32_t c = hit->second;
        for (const auto &[k, x] : r) {
            auto [slot, fresh] = row.try_emplace(k, 0);
            slot->second = field_.sub(slot->second, field_.mul(c, x));
            if (slot->second == 0) {
                row.erase(slot);
            }
        }
    }
    rows_.emplace(pivot, std::move(r));
    return true;
}

std::map<WeightVector, Derivation> homogeneous_parts(const Derivation &D)
{
    std::map<WeightVector, Derivation> out;
    const Context &ctx = D.context();
    for (const auto &[key, f] : D.coeffs()) {
        const WeightVector top = ctx->var_weight(key.var).scaled(BigInt(ctx->p_pow(key.level)));
        for (const auto &[m, c] : f.terms()) {
            auto it = out.try_emplace(top - m.weight(*ctx), ctx).first;
            it->second.add_term(key, AlgebraElement::monomial(ctx, m, c));
        }
    }
    return out;
}

const GradedComponent *GradedBasis::component(const WeightVector &gr) const
{
    auto it = components_.find(gr);
    return it == components_.end() ? nullptr : &it->second;
}

std::size_t GradedBasis::dim_at(const BigInt &w) const
{
    std::size_t d = 0;
    for (const auto &[gr, c] : components_) {
        if (gr.wt() == w) {
            d += c.vectors.size();
        }
    }
    return d;
}

std::map<BigInt, std::size_t> GradedBasis::dims_by_weight() const
{
    std::map<BigInt, std::size_t> out;
    for (const auto &[gr, c] : components_) {
        out[gr.wt()] += c.vectors.size();
    }
    return out;
}

std::size_t GradedBasis::total_dim() const
{
    std::size_t d = 0;
    for (const auto &[gr, c] : components_) {
        d += c.vectors.size();
    }
    return d;
}

std::vector<const BasisVector *> GradedBasis::vectors() const
{
    std::vector<const BasisVector *> out;
    for (const auto &[gr, c] : components_) {
        for (const auto &v : c.vectors) {
            out.push_back(&v);
        }
    }
    return out;
}

bool GradedBasis::contains(const Derivation &D) const
{
    require_same_context(ctx_, D.context());
    for (const auto &[gr, part] : homogeneous_parts(D)) {
        const auto *c = component(gr);
        if (c == nullptr || !c->echelon.contains(flatten(part))) {
            return false;
        }
    }
    return true;
}

bool GradedBasis::insert(const WeightVector &gr, BasisVector v)
{
    auto it = components_.find(gr);
    if (it == components_.end()) {
        it = components_.emplace(gr, GradedComponent{gr, {}, Echelon(ctx_->p())}).first;
    }
    if (!it->second.echelon.insert(flatten(v.element))) {
        return false;
    }
    it->second.vectors.push_back(std::move(v));
    return true;
}

GradedBasis restricted_closure(const std::vector<Derivation> &generators, const BigInt &cap,
                               std::vector<std::string> names)
{
    if (generators.empty()) {
        throw Error("no generators");
    }
    const Context ctx = generators.front().context();
    if (cap > ctx->trusted_bound()) {
        throw Error("outside trusted zone");
    }
    if (cap > BigInt(std::uint64_t(1) << 32)) {
        throw Error("weight cap too large to enumerate");
    }
    names.resize(generators.size());
    struct Gen {
        Derivation d;
        WeightVector gr;
        std::string name;
    };
    std::vector<Gen> gens;
    for (std::size_t i = 0; i < generators.size(); ++i) {
        require_same_context(ctx, generators[i].context());
        if (generators[i].is_zero()) {
            continue;
        }
        const auto md = generators[i].multidegree();
        if (!md) {
            throw Error("generator not homogeneous");
        }
        if (md->wt() < 1) {
            throw Error("generator weight must be positive");
        }
        gens.push_back({generators[i], *md, names[i].empty() ? "g" + std::to_string(i) : names[i]});
    }

    GradedBasis B(ctx, cap);
    const auto add = [&](const Derivation &D, std::string provenance) {
        if (D.is_zero()) {
            return;
        }
        const auto md = D.multidegree();
        if (!md) {
            throw Error("closure element not homogeneous: " + provenance);
        }
        B.insert(*md, {D, std::move(provenance)});
    };
    const auto at_weight = [&](const BigInt &w) {
        std::vector<const BasisVector *> out;
        for (const auto &[gr, c] : B.components()) {
            if (gr.wt() == w) {
                for (const auto &v : c.vectors) {
                    out.push_back(&v);
                }
            }
        }
        return out;
    };

    const std::uint32_t p = ctx->p();
    for (BigInt w = 1; w <= cap; ++w) {
        std::vector<std::pair<Derivation, std::string>> found;
        for (const auto &g : gens) {
            if (g.gr.wt() == w) {
                found.emplace_back(g.d, g.name);
            } else if (g.gr.wt() < w) {
                for (const BasisVector *b : at_weight(w - g.gr.wt())) {
                    found.emplace_back(bracket(g.d, b->element), "[" + g.name + "," + b->provenance + "]");
                }
            }
        }
        if (w % p == 0) {
            for (const BasisVector *b : at_weight(w / p)) {
                found.emplace_back(p_power(b->element), "(" + b->provenance + ")^[p]");
            }
        }
        for (auto &[D, prov] : found) {
            add(D, std::move(prov));
        }
    }
    return B;
}

GradedBasis clover_closure(const Context &ctx)
{
    return restricted_closure({pivot(PivotKind::v, 0, ctx), pivot(PivotKind::w, 0, ctx), pivot(PivotKind::u, 0, ctx)},
                              ctx->trusted_bound(), {"v0", "w0", "u0"});
}

NilResult nil_index(const Derivation &e, const GradedBasis &basis)
{
    if (!basis.contains(e)) {
        throw Error("element outside algebra");
    }
    const Context &ctx = basis.context();
    const BigInt &W = ctx->trusted_bound();
    const std::uint32_t p = ctx->p();
    NilResult r;
    if (e.is_zero()) {
        r.conclusive = true;
        r.index = 1;
        return r;
    }
    const auto top_weight = [](const Derivation &D) {
        BigInt m = 0;
        for (const auto &[gr, part] : homogeneous_parts(D)) {
            m = std::max(m, gr.wt());
        }
        return m;
    };
    // While every step stays inside the trusted zone the computed chain is
    // faithful, so its observed top weight bounds the next step exactly.
    Derivation cur = e;
    BigInt top = top_weight(e);
    BigInt scale = 1;
    for (std::uint32_t k = 1;; ++k) {
        scale *= p;
        if (top * p > W) {
            r.steps = k - 1;
            r.reason = "chain leaves trusted zone at step " + std::to_string(k);
            return r;
        }
        cur = p_power(cur);
        if (cur.is_zero()) {
            r.conclusive = true;
            r.k = k;
            r.index = scale;
            r.steps = k;
            return r;
        }
        top = top_weight(cur);
    }
}

Derivation random_element(const GradedBasis &basis, std::mt19937_64 &rng, std::size_t max_terms,
                          const BigInt &max_weight)
{
    std::vector<const BasisVector *> pool;
    for (const auto &[gr, c] : basis.components()) {
        if (gr.wt() <= max_weight) {
            for (const auto &v : c.vectors) {
                pool.push_back(&v);
            }
        }
    }
    if (pool.empty() || max_terms == 0) {
        throw Error("no basis vectors to sample");
    }
    const std::uint32_t p = basis.context()->p();
    const std::size_t terms = 1 + rng() % max_terms;
    Derivation e(basis.context());
    for (std::size_t t = 0; t < terms; ++t) {
        const auto *b = pool[rng() % pool.size()];
        e += b->element.scaled(static_cast<std::uint32_t>(1 + rng() % (p - 1)));
    }
    return e;
}

VerificationReport nil_sampling(const ParameterTuple &tuple, std::size_t depth, NilSampling options)
{
    const Context ctx = make_context(tuple, depth);
    const GradedBasis B = clover_closure(ctx);
    const BigInt cap = ctx->trusted_bound() / tuple.p();
    std::mt19937_64 rng(options.seed);
    VerificationReport report("nil");
    std::size_t conclusive = 0, zero = 0;
    std::map<std::uint32_t, std::size_t> by_k;
    for (std::size_t s = 0; s < options.samples; ++s) {
        const Derivation e = random_element(B, rng, options.max_terms, cap);
        const NilResult r = nil_index(e, B);
        nlohmann::json params = {{"sample", s}, {"seed", options.seed}, {"terms", e.term_count()}};
        if (r.conclusive) {
            ++conclusive;
            ++by_k[r.k];
            zero += e.is_zero();
            params["index"] = to_string(r.index);
            report.add("nil-chain", params, Status::pass);
        } else {
            params["steps"] = r.steps;
            params["reason"] = r.reason;
            report.add("nil-chain", params, Status::outside_zone);
        }
    }
    auto &s = report.summary();
    s["samples"] = options.samples;
    s["conclusive"] = conclusive;
    s["zero_samples"] = zero;
    s["fraction"] = options.samples == 0 ? 0.0 : double(conclusive) / double(options.samples);
    s["sample_weight_cap"] = to_string(cap);
    s["trusted_bound"] = to_string(ctx->trusted_bound());
    nlohmann::json hist = nlohmann::json::object();
    for (const auto &[k, n] : by_k) {
        hist["p^" + std::to_string(k)] = n;
    }
    s["index_histogram"] = hist;
    return report;
}

Derivation shift_generations(const Derivation &D, std::size_t k, const Context &ctx)
{
    const Var dv = static_cast<Var>(3 * k);
    Derivation out(ctx);
    for (const auto &[key, f] : D.coeffs()) {
        if (key.var + dv >= ctx->var_count()) {
            throw Error("shift beyond truncation");
        }
        AlgebraElement g(ctx);
        for (const auto &[m, c] : f.terms()) {
            std::vector<DpMonomial::Entry> e;
            for (const auto &[v, x] : m.entries()) {
                e.emplace_back(v + dv, x);
            }
            g.add_term(DpMonomial(std::move(e)), c);
        }
        out.add_term({key.var + dv, key.level}, g);
    }
    return out;
}

} // namespace clover
