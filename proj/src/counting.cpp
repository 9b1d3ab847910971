#include <clover/monomials.hpp>

#include <set>
#include <sstream>

#include <clover/interval.hpp>

namespace clover {

namespace {

// #{t >= 0 lattice points of the simplex x1 + x2 <= t}
BigInt simplex2(const BigInt &t)
{
    return t < 0 ? BigInt(0) : BigInt((t + 1) * (t + 2) / 2);
}

BigInt simplex3(const BigInt &t)
{
    return t < 0 ? BigInt(0) : BigInt((t + 1) * (t + 2) * (t + 3) / 6);
}

// #{0 <= e_i < bound_i : e_1 + e_2 <= s}
BigInt box2_le(const BigInt &s, const BigInt &A, const BigInt &B)
{
    return simplex2(s) - simplex2(s - A) - simplex2(s - B) + simplex2(s - A - B);
}

BigInt box2_eq(const BigInt &s, const BigInt &A, const BigInt &B)
{
    return box2_le(s, A, B) - box2_le(s - 1, A, B);
}

BigInt box3_le(const BigInt &s, const BigInt &A, const BigInt &B, const BigInt &C)
{
    return simplex3(s) - simplex3(s - A) - simplex3(s - B) - simplex3(s - C) + simplex3(s - A - B) +
           simplex3(s - A - C) + simplex3(s - B - C) - simplex3(s - A - B - C);
}

BigInt box3_eq(const BigInt &s, const BigInt &A, const BigInt &B, const BigInt &C)
{
    return box3_le(s, A, B, C) - box3_le(s - 1, A, B, C);
}

// Largest t with p^t <= q, capped at cap (q >= 1).
std::uint64_t log_floor(std::uint32_t p, BigInt q, std::uint64_t cap)
{
    std::uint64_t t = 0;
    while (t < cap && q >= p) {
        q /= p;
        ++t;
    }
    return t;
}

} // namespace

GrowthCounter::GrowthCounter(ParameterTuple tuple) : tuple_(std::move(tuple)) {}

const GrowthCounter::Gen &GrowthCounter::gen(std::size_t i)
{
    while (gens_.size() <= i) {
        const std::size_t j = gens_.size();
        const auto G = tuple_.at(j);
        Gen g;
        g.X = checked_pow(tuple_.p(), G.S);
        g.Y = checked_pow(tuple_.p(), G.R);
        if (j == 0) {
            g.W = 1;
            g.tails_first = 1;
            g.tails_second = 1;
            g.dmax_second = 0;
        } else {
            const Gen &q = gens_[j - 1];
            g.W = q.W * (q.X + q.Y - 1);
            g.tails_first = q.tails_first * q.X * q.Y;
            g.tails_second = q.tails_second * q.X * q.Y * q.Y;
            g.dmax_second = q.dmax_second + (q.X + 2 * q.Y - 3) * q.W;
        }
        gens_.push_back(std::move(g));
    }
    return gens_[i];
}

const BigInt &GrowthCounter::W(std::size_t i)
{
    return gen(i).W;
}

BigInt GrowthCounter::tails_first_le(std::size_t k, const BigInt &b)
{
    if (b < 0) {
        return 0;
    }
    if (k == 0) {
        return 1;
    }
    const Gen &top = gen(k);
    if (b >= top.W - 1) {
        return top.tails_first;
    }
    const Gen &g = gen(k - 1);
    const BigInt inner_max = g.W - 1;
    const BigInt smax = g.X + g.Y - 2;
    BigInt s_full = b >= inner_max ? BigInt((b - inner_max) / g.W) : BigInt(-1);
    if (s_full > smax) {
        s_full = smax;
    }
    BigInt r = s_full >= 0 ? BigInt(g.tails_first * box2_le(s_full, g.X, g.Y)) : BigInt(0);
    for (BigInt s = s_full + 1; s <= smax && s * g.W <= b; ++s) {
        r += box2_eq(s, g.X, g.Y) * tails_first_le(k - 1, b - s * g.W);
    }
    return r;
}

BigInt GrowthCounter::tails_second_le(std::size_t k, const BigInt &b)
{
    if (b < 0) {
        return 0;
    }
    if (k == 0) {
        return 1;
    }
    const Gen &top = gen(k);
    if (b >= top.dmax_second) {
        return top.tails_second;
    }
    auto key = std::make_pair(k, b);
    if (auto it = memo_second_.find(key); it != memo_second_.end()) {
        return it->second;
    }
    const Gen &g = gen(k - 1);
    const BigInt smax = g.X + 2 * g.Y - 3;
    BigInt s_full = b >= g.dmax_second ? BigInt((b - g.dmax_second) / g.W) : BigInt(-1);
    if (s_full > smax) {
        s_full = smax;
    }
    BigInt r = s_full >= 0 ? BigInt(g.tails_second * box3_le(s_full, g.X, g.Y, g.Y)) : BigInt(0);
    for (BigInt s = s_full + 1; s <= smax && s * g.W <= b; ++s) {
        r += box3_eq(s, g.X, g.Y, g.Y) * tails_second_le(k - 1, b - s * g.W);
    }
    memo_second_.emplace(std::move(key), r);
    return r;
}

BigInt GrowthCounter::count_first(std::size_t length, const BigInt &m)
{
    if (length == 0) {
        return m >= 1 ? 2 : 0;
    }
    const std::size_t g = length - 1;
    const Gen G = gen(g);
    const BigInt dmax = G.W - 1;
    const BigInt hmax = G.X + G.Y - 3;
    // weight = (h + 2) W - D with 0 <= D <= W - 1, h = head row + column.
    BigInt h_full = m / G.W - 2;
    if (h_full > hmax) {
        h_full = hmax;
    }
    BigInt r = h_full >= 0 ? BigInt(G.tails_first * box2_le(h_full, G.X, G.Y)) : BigInt(0);
    for (BigInt h = h_full < -1 ? BigInt(0) : BigInt(h_full + 1); h <= hmax; ++h) {
        const BigInt need = (h + 2) * G.W - m;
        if (need > dmax) {
            break;
        }
        r += box2_eq(h, G.X, G.Y) * (G.tails_first - tails_first_le(g, need - 1));
    }
    return r;
}

BigInt GrowthCounter::count_second(std::size_t length, const BigInt &m)
{
    if (length == 0) {
        return m >= 1 ? 1 : 0;
    }
    memo_second_.clear();
    const std::size_t g = length - 1;
    const Gen G = gen(g);
    const BigInt A = G.X - 1;
    const BigInt hmax = G.X + G.Y - 3;
    BigInt h_full = m / G.W - 2;
    if (h_full > hmax) {
        h_full = hmax;
    }
    BigInt r = h_full >= 0 ? BigInt(G.tails_second * box2_le(h_full, A, G.Y)) : BigInt(0);
    for (BigInt h = h_full < -1 ? BigInt(0) : BigInt(h_full + 1); h <= hmax; ++h) {
        const BigInt need = (h + 2) * G.W - m;
        if (need > G.dmax_second) {
            break;
        }
        r += box2_eq(h, A, G.Y) * (G.tails_second - tails_second_le(g, need - 1));
    }
    return r;
}

BigInt GrowthCounter::count_power_first(std::size_t length, const BigInt &m)
{
    if (length == 0) {
        return 0;
    }
    const auto G = tuple_.at(length - 1);
    const BigInt q = m / W(length - 1);
    if (q < tuple_.p()) {
        return 0;
    }
    return log_floor(tuple_.p(), q, G.S) + log_floor(tuple_.p(), q, G.R);
}

BigInt GrowthCounter::count_power_second(std::size_t length, const BigInt &m)
{
    if (length == 0) {
        return 0;
    }
    const auto G = tuple_.at(length - 1);
    const BigInt q = m / W(length - 1);
    if (q < tuple_.p()) {
        return 0;
    }
    return log_floor(tuple_.p(), q, G.R);
}

std::size_t GrowthCounter::max_length(const BigInt &m)
{
    // First type and powers of length n weigh more than wt(v_{n-1}); second
    // type of length n >= 2 more than (p^{S_{n-2}} - 1) wt(v_{n-2}).
    if (m < 2) {
        return 0;
    }
    std::size_t n = 1;
    while (true) {
        const std::size_t next = n + 1;
        const bool first = W(next - 1) + 1 <= m;
        const bool second = (gen(next - 2).X - 1) * W(next - 2) + 1 <= m;
        if (!first && !second) {
            return n;
        }
        n = next;
    }
}

FamilyCounts GrowthCounter::count(const BigInt &m)
{
    FamilyCounts c;
    if (m < 1) {
        return c;
    }
    const std::size_t top = max_length(m);
    for (std::size_t n = 0; n <= top; ++n) {
        c.first += count_first(n, m);
        c.second += count_second(n, m);
        c.power_first += count_power_first(n, m);
        c.power_second += count_power_second(n, m);
    }
    return c;
}

std::vector<BigInt> sampled_weights(GrowthCounter &counter, const BigInt &max_weight)
{
    std::set<BigInt> s;
    for (long m = 1; m <= 64 && m <= max_weight; ++m) {
        s.insert(m);
    }
    for (std::uint64_t k = 0;; ++k) {
        const BigInt r = boost::multiprecision::sqrt(boost::multiprecision::sqrt(pow_big(2, k)));
        if (r > max_weight) {
            break;
        }
        s.insert(r);
    }
    for (std::size_t n = 0; counter.W(n) <= max_weight; ++n) {
        const BigInt &w = counter.W(n);
        s.insert(w);
        if (w > 1) {
            s.insert(w - 1);
        }
        if (w + 1 <= max_weight) {
            s.insert(w + 1);
        }
    }
    if (max_weight >= 1) {
        s.insert(max_weight);
    }
    return {s.begin(), s.end()};
}

GrowthTable growth_table(const ParameterTuple &tuple, const BigInt &max_weight, GrowthOptions options)
{
    if (max_weight < 1) {
        throw Error("max weight must be at least 1");
    }
    GrowthCounter counter(tuple);
    GrowthTable t;
    t.tuple_spec = tuple.spec();
    t.p = tuple.p();
    t.dense = max_weight <= options.row_cap;
    if (!t.dense && options.force_dense) {
        throw Error("table too large");
    }
    if (t.dense) {
        const auto M = max_weight.convert_to<std::uint64_t>();
        t.rows.reserve(M);
        for (std::uint64_t m = 1; m <= M; ++m) {
            t.rows.push_back({BigInt(m), counter.count(BigInt(m))});
        }
    } else {
        for (const auto &m : sampled_weights(counter, max_weight)) {
            t.rows.push_back({m, counter.count(m)});
        }
    }
    return t;
}

const GrowthRow *GrowthTable::row_at(const BigInt &m) const
{
    auto it = std::lower_bound(rows.begin(), rows.end(), m, [](const GrowthRow &r, const BigInt &x) { return r.m < x; });
    return it != rows.end() && it->m == m ? &*it : nullptr;
}

std::string log_ratio_string(const BigInt &gamma, const BigInt &m)
{
    if (m <= 1) {
        return "inf";
    }
    if (gamma < 1) {
        return "-inf";
    }
    return (log(Interval(gamma)) / log(Interval(m))).str(10);
}

std::string GrowthTable::to_csv() const
{
    std::ostringstream os;
    os << "m,gamma_total,first,second,power_first,power_second,log_gamma_over_log_m\n";
    for (const auto &r : rows) {
        const BigInt total = r.counts.total();
        os << r.m << ',' << total << ',' << r.counts.first << ',' << r.counts.second << ',' << r.counts.power_first
           << ',' << r.counts.power_second << ',' << log_ratio_string(total, r.m) << '\n';
    }
    return os.str();
}

nlohmann::json GrowthTable::to_json() const
{
    nlohmann::json rs = nlohmann::json::array();
    for (const auto &r : rows) {
        const BigInt total = r.counts.total();
        rs.push_back({{"m", r.m.str()},
                      {"gamma_total", total.str()},
                      {"first", r.counts.first.str()},
                      {"second", r.counts.second.str()},
                      {"power_first", r.counts.power_first.str()},
                      {"power_second", r.counts.power_second.str()},
                      {"log_gamma_over_log_m", log_ratio_string(total, r.m)}});
    }
    return {{"tuple", tuple_spec}, {"p", p}, {"dense", dense}, {"rows", rs}};
}

GrowthTable GrowthTable::from_csv(const std::string &text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) {
        throw Error("empty table");
    }
    std::vector<std::string> header;
    {
        std::istringstream hs(line);
        std::string cell;
        while (std::getline(hs, cell, ',')) {
            header.push_back(cell);
        }
    }
    auto column = [&](const std::string &name) -> long {
        auto it = std::find(header.begin(), header.end(), name);
        return it == header.end() ? -1 : static_cast<long>(it - header.begin());
    };
    const long cm = column("m"), ct = column("gamma_total");
    if (cm < 0 || ct < 0) {
        throw Error("table needs columns m and gamma_total");
    }
    const long cf = column("first"), cs = column("second"), cpf = column("power_first"), cps = column("power_second");
    GrowthTable t;
    t.dense = false;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            cells.push_back(cell);
        }
        auto get = [&](long c) { return c >= 0 && c < static_cast<long>(cells.size()) ? BigInt(cells[c]) : BigInt(0); };
        try {
            GrowthRow r;
            r.m = get(cm);
            if (cf >= 0 && cs >= 0 && cpf >= 0 && cps >= 0) {
                r.counts = {get(cf), get(cs), get(cpf), get(cps)};
            } else {
                r.counts.first = get(ct);
            }
            if (r.counts.total() != get(ct)) {
                throw Error("inconsistent totals at m = " + r.m.str());
            }
            t.rows.push_back(std::move(r));
        } catch (const std::runtime_error &e) {
            if (dynamic_cast<const Error *>(&e)) {
                throw;
            }
            throw Error("malformed table row: " + line);
        }
    }
    std::sort(t.rows.begin(), t.rows.end(), [](const GrowthRow &a, const GrowthRow &b) { return a.m < b.m; });
    return t;
}

} // namespace clover
