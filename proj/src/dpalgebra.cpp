#include <clover/dpalgebra.hpp>

#include <algorithm>

namespace clover {

std::string var_name(Var v)
{
    static constexpr char letters[] = {'x', 'y', 'z'};
    return letters[v % 3] + std::to_string(var_generation(v));
}

ContextData::ContextData(ParameterTuple tuple, std::size_t depth)
    : tuple_(std::move(tuple)), depth_(depth), field_(tuple_.p())
{
    if (depth_ < 1) {
        throw Error("truncation depth must be at least 1");
    }
    const std::uint32_t p = field_.p();
    p_pows_.push_back(1);
    while (p_pows_.back() <= (std::uint64_t(1) << 62) / p) {
        p_pows_.push_back(p_pows_.back() * p);
    }
    for (std::size_t n = 0; n < depth_; ++n) {
        const auto g = tuple_.at(n);
        for (std::uint64_t level : {g.S, g.R, g.R}) {
            if (level >= p_pows_.size()) {
                throw Error("truncation too large: p^" + std::to_string(level) + " exceeds 2^62");
            }
            levels_.push_back(static_cast<std::uint32_t>(level));
            bounds_.push_back(p_pows_[level]);
        }
        var_weights_.push_back(pivot_multidegree(tuple_, n, PivotKind::v));
        var_weights_.push_back(pivot_multidegree(tuple_, n, PivotKind::w));
        var_weights_.push_back(pivot_multidegree(tuple_, n, PivotKind::u));
    }
    if (depth_ >= 2) {
        trusted_ = trusted_weight_bound(tuple_, depth_);
    }
}

const BigInt &ContextData::trusted_bound() const
{
    if (!trusted_) {
        throw Error("truncation too shallow");
    }
    return *trusted_;
}

bool ContextData::same_as(const ContextData &other) const
{
    return this == &other || (p() == other.p() && bounds_ == other.bounds_ && tuple_.spec() == other.tuple_.spec());
}

Context make_context(const ParameterTuple &tuple, std::size_t depth)
{
    return std::make_shared<const ContextData>(tuple, depth);
}

void require_same_context(const Context &a, const Context &b)
{
    if (a != b && !a->same_as(*b)) {
        throw Error("context mismatch");
    }
}

DpMonomial::DpMonomial(std::vector<Entry> entries)
{
    std::sort(entries.begin(), entries.end());
    for (const auto &e : entries) {
        if (e.second == 0) {
            continue;
        }
        if (!entries_.empty() && entries_.back().first == e.first) {
            throw Error("duplicate variable in monomial");
        }
        entries_.push_back(e);
    }
}

std::uint64_t DpMonomial::exponent(Var v) const
{
    auto it = std::lower_bound(entries_.begin(), entries_.end(), Entry{v, 0});
    return it != entries_.end() && it->first == v ? it->second : 0;
}

DpMonomial DpMonomial::with_exponent(Var v, std::uint64_t e) const
{
    DpMonomial r = *this;
    auto it = std::lower_bound(r.entries_.begin(), r.entries_.end(), Entry{v, 0});
    if (it != r.entries_.end() && it->first == v) {
        if (e == 0) {
            r.entries_.erase(it);
        } else {
            it->second = e;
        }
    } else if (e != 0) {
        r.entries_.insert(it, Entry{v, e});
    }
    return r;
}

WeightVector DpMonomial::weight(const ContextData &ctx) const
{
    WeightVector w(0, 0, 0);
    for (const auto &[v, e] : entries_) {
        w = w + ctx.var_weight(v).scaled(BigInt(e));
    }
    return w;
}

std::string DpMonomial::str() const
{
    if (entries_.empty()) {
        return "1";
    }
    std::string s;
    for (const auto &[v, e] : entries_) {
        if (!s.empty()) {
            s += '.';
        }
        s += var_name(v) + "^(" + std::to_string(e) + ")";
    }
    return s;
}

AlgebraElement::AlgebraElement(Context ctx) : ctx_(std::move(ctx)) {}

AlgebraElement AlgebraElement::unit(Context ctx)
{
    AlgebraElement a(std::move(ctx));
    a.add_term(DpMonomial(), 1);
    return a;
}

AlgebraElement AlgebraElement::monomial(Context ctx, DpMonomial m, std::uint32_t c)
{
    for (const auto &[v, e] : m.entries()) {
        if (v >= ctx->var_count() || e >= ctx->bound(v)) {
            throw Error("exponent out of bounds: " + m.str());
        }
    }
    AlgebraElement a(std::move(ctx));
    a.add_term(m, c);
    return a;
}

std::uint32_t AlgebraElement::coeff(const DpMonomial &m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

void AlgebraElement::add_term(const DpMonomial &m, std::uint32_t c)
{
    const auto &F = ctx_->field();
    c = F.reduce(c);
    if (c == 0) {
        return;
    }
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
        it->second = F.add(it->second, c);
        if (it->second == 0) {
            terms_.erase(it);
        }
    }
}

AlgebraElement &AlgebraElement::operator+=(const AlgebraElement &o)
{
    require_same_context(ctx_, o.ctx_);
    for (const auto &[m, c] : o.terms_) {
        add_term(m, c);
    }
    return *this;
}

AlgebraElement &AlgebraElement::operator-=(const AlgebraElement &o)
{
    require_same_context(ctx_, o.ctx_);
    const auto &F = ctx_->field();
    for (const auto &[m, c] : o.terms_) {
        add_term(m, F.neg(c));
    }
    return *this;
}

AlgebraElement AlgebraElement::operator+(const AlgebraElement &o) const
{
    AlgebraElement r = *this;
    r += o;
    return r;
}

AlgebraElement AlgebraElement::operator-(const AlgebraElement &o) const
{
    AlgebraElement r = *this;
    r -= o;
    return r;
}

AlgebraElement AlgebraElement::operator-() const
{
    return scaled(ctx_->p() - 1);
}

AlgebraElement AlgebraElement::scaled(std::uint32_t c) const
{
    const auto &F = ctx_->field();
    c = F.reduce(c);
    AlgebraElement r(ctx_);
    if (c == 0) {
        return r;
    }
    for (const auto &[m, a] : terms_) {
        r.terms_.emplace_hint(r.terms_.end(), m, F.mul(a, c));
    }
    return r;
}

std::string AlgebraElement::str() const
{
    if (terms_.empty()) {
        return "0";
    }
    std::string s;
    for (const auto &[m, c] : terms_) {
        if (!s.empty()) {
            s += " + ";
        }
        if (c != 1) {
            s += std::to_string(c) + "*";
        }
        s += m.str();
    }
    return s;
}

std::pair<std::uint32_t, DpMonomial> dp_mul_monomials(const ContextData &ctx, const DpMonomial &a, const DpMonomial &b)
{
    const auto &F = ctx.field();
    const auto &ea = a.entries();
    const auto &eb = b.entries();
    std::vector<DpMonomial::Entry> out;
    out.reserve(ea.size() + eb.size());
    std::uint32_t coeff = 1;
    std::size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
        if (j == eb.size() || (i < ea.size() && ea[i].first < eb[j].first)) {
            out.push_back(ea[i++]);
        } else if (i == ea.size() || eb[j].first < ea[i].first) {
            out.push_back(eb[j++]);
        } else {
            const Var v = ea[i].first;
            const std::uint64_t s = ea[i].second + eb[j].second;
            if (s >= ctx.bound(v)) {
                return {0, {}};
            }
            coeff = F.mul(coeff, F.binom(s, ea[i].second));
            if (coeff == 0) {
                return {0, {}};
            }
            out.emplace_back(v, s);
            ++i;
            ++j;
        }
    }
    return {coeff, DpMonomial(std::move(out))};
}

AlgebraElement dp_mul(const AlgebraElement &a, const AlgebraElement &b)
{
    require_same_context(a.context(), b.context());
    const auto &ctx = *a.context();
    const auto &F = ctx.field();
    AlgebraElement r(a.context());
    for (const auto &[ma, ca] : a.terms()) {
        for (const auto &[mb, cb] : b.terms()) {
            auto [c, m] = dp_mul_monomials(ctx, ma, mb);
            if (c != 0) {
                r.add_term(m, F.mul(c, F.mul(ca, cb)));
            }
        }
    }
    return r;
}

AlgebraElement dp_derive(Var v, std::uint32_t m, const AlgebraElement &a)
{
    const auto &ctx = *a.context();
    AlgebraElement r(a.context());
    if (v >= ctx.var_count() || m >= ctx.level(v)) {
        return r;
    }
    const std::uint64_t shift = ctx.p_pow(m);
    for (const auto &[mono, c] : a.terms()) {
        const std::uint64_t e = mono.exponent(v);
        if (e >= shift) {
            r.add_term(mono.with_exponent(v, e - shift), c);
        }
    }
    return r;
}

BigInt dp_basis_dim(const ContextData &ctx)
{
    BigInt d = 1;
    for (Var v = 0; v < ctx.var_count(); ++v) {
        d *= ctx.bound(v);
    }
    return d;
}

std::vector<DpMonomial> dp_basis(const ContextData &ctx, std::size_t cap)
{
    if (dp_basis_dim(ctx) > cap) {
        throw Error("truncation too large to enumerate");
    }
    const std::size_t nv = ctx.var_count();
    std::vector<std::uint64_t> e(nv, 0);
    std::vector<DpMonomial> out;
    while (true) {
        std::vector<DpMonomial::Entry> entries;
        for (Var v = 0; v < nv; ++v) {
            if (e[v] != 0) {
                entries.emplace_back(v, e[v]);
            }
        }
        out.emplace_back(std::move(entries));
        std::size_t k = nv;
        while (k > 0) {
            --k;
            if (++e[k] < ctx.bound(static_cast<Var>(k))) {
                break;
            }
            e[k] = 0;
            if (k == 0) {
                std::sort(out.begin(), out.end());
                return out;
            }
        }
        if (nv == 0) {
            return out;
        }
    }
}

} // namespace clover
