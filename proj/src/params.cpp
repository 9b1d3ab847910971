#include <clover/params.hpp>

#include <charconv>
#include <mutex>
#include <sstream>

#include <clover/fp.hpp>
#include <clover/interval.hpp>

namespace clover {

namespace {

constexpr std::uint64_t max_height = std::uint64_t(1) << 40;
constexpr mpfr_prec_t max_precision = 1 << 16;
// Exact integer power comparisons are attempted only below this exponent size.
constexpr unsigned long max_exact_exponent = 1u << 14;

std::uint64_t parse_u64(std::string_view s, std::string_view what)
{
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw Error("invalid " + std::string(what) + " '" + std::string(s) + "'");
    }
    return v;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return out;
}

std::vector<Generation> parse_pairs(std::string_view s)
{
    std::vector<Generation> out;
    for (auto item : split(s, ';')) {
        // "(1,2)" and "1,2" are both accepted.
        while (!item.empty() && (item.front() == '(' || item.front() == ' ')) {
            item.remove_prefix(1);
        }
        while (!item.empty() && (item.back() == ')' || item.back() == ' ')) {
            item.remove_suffix(1);
        }
        if (item.empty()) {
            continue;
        }
        auto sr = split(item, ',');
        if (sr.size() != 2) {
            throw Error("expected S,R pair, got '" + std::string(item) + "'");
        }
        out.push_back({parse_u64(sr[0], "S"), parse_u64(sr[1], "R")});
    }
    if (out.empty()) {
        throw Error("empty (S,R) list");
    }
    return out;
}

void validate_generation(const Generation &g)
{
    if (g.S < 1 || g.R < 1) {
        throw Error("tuple entries must satisfy S_i >= 1 and R_i >= 1");
    }
    if (g.S > max_height || g.R > max_height) {
        throw Error("tuple entry too large");
    }
}

std::string pairs_str(const std::vector<Generation> &v)
{
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i ? ";" : "") << v[i].S << "," << v[i].R;
    }
    return os.str();
}

// floor(x) for a real x enclosed by `eval(prec)`. When the enclosure straddles
// an integer k, `compare(k)` (if given) decides x <=> k exactly: it returns
// -1, 0, +1 or nullopt when the exact comparison is not available.
template <typename Eval, typename Compare>
BigInt certified_floor(Eval eval, Compare compare, std::size_t index)
{
    mpfr_prec_t prec = 128;
    while (true) {
        Interval x = eval(prec);
        const long bits = static_cast<long>(mpfr_get_exp(x.hi()));
        if (bits > 1L << 40) {
            throw Error("tuple value too large at index " + std::to_string(index));
        }
        if (bits + 64 > prec) {
            prec = bits + 128;
            continue;
        }
        if (auto f = x.certified_floor()) {
            return *f;
        }
        BigInt k;
        mpfr_get_z(k.backend().data(), x.hi(), MPFR_RNDD);
        if (auto c = compare(k)) {
            return *c >= 0 ? k : BigInt(k - 1);
        }
        prec *= 2;
        if (prec > max_precision) {
            throw Error("rounding ambiguous at index " + std::to_string(index));
        }
    }
}

std::optional<unsigned long> small_exponent(const BigInt &e)
{
    if (e < 0 || e > max_exact_exponent) {
        return std::nullopt;
    }
    return e.convert_to<unsigned long>();
}

} // namespace

Rational Rational::parse(std::string_view text)
{
    text = trim(text);
    Rational r;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        r.num = BigInt(std::string(trim(text.substr(0, slash))));
        r.den = BigInt(std::string(trim(text.substr(slash + 1))));
    } else {
        auto dot = text.find('.');
        std::string digits(text.substr(0, dot));
        BigInt den = 1;
        if (dot != std::string_view::npos) {
            auto frac = text.substr(dot + 1);
            for (char c : frac) {
                digits.push_back(c);
                den *= 10;
            }
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw Error("invalid rational '" + std::string(text) + "'");
        }
        r.num = BigInt(digits);
        r.den = den;
    }
    if (r.den <= 0 || r.num < 0) {
        throw Error("invalid rational '" + std::string(text) + "'");
    }
    const BigInt g = boost::multiprecision::gcd(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

std::string Rational::str() const
{
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

std::string_view kind_name(TupleKind kind)
{
    switch (kind) {
    case TupleKind::constant:
        return "constant";
    case TupleKind::periodic:
        return "periodic";
    case TupleKind::kappa:
        return "kappa";
    case TupleKind::qkappa:
        return "qkappa";
    case TupleKind::explicit_list:
        return "explicit";
    }
    return "?";
}

struct ParameterTuple::Cache {
    std::mutex mutex;
    std::vector<Generation> values;
    BigInt qkappa_sum{0};
};

ParameterTuple::ParameterTuple(std::uint32_t p, TupleRule rule)
    : p_(p), rule_(std::move(rule)), cache_(std::make_shared<Cache>())
{
    if (!is_prime(p)) {
        throw Error("p must be prime, got " + std::to_string(p));
    }
    switch (rule_.kind) {
    case TupleKind::constant:
        if (rule_.values.size() != 1) {
            throw Error("constant tuple needs exactly one (S,R) pair");
        }
        break;
    case TupleKind::periodic:
    case TupleKind::explicit_list:
        if (rule_.values.empty()) {
            throw Error("empty (S,R) list");
        }
        break;
    case TupleKind::kappa:
        if (rule_.kappa.num <= 0 || rule_.kappa.num >= rule_.kappa.den) {
            throw Error("kappa must lie in (0,1)");
        }
        break;
    case TupleKind::qkappa:
        if (rule_.q < 1) {
            throw Error("qkappa needs q >= 1");
        }
        if (rule_.kappa.num <= 0) {
            throw Error("qkappa needs kappa > 0");
        }
        break;
    }
    for (const auto &g : rule_.values) {
        validate_generation(g);
    }
}

ParameterTuple ParameterTuple::constant(std::uint32_t p, std::uint64_t S, std::uint64_t R)
{
    return ParameterTuple(p, TupleRule{TupleKind::constant, {{S, R}}, {}, 0});
}

ParameterTuple ParameterTuple::periodic(std::uint32_t p, std::vector<Generation> pattern)
{
    return ParameterTuple(p, TupleRule{TupleKind::periodic, std::move(pattern), {}, 0});
}

ParameterTuple ParameterTuple::explicit_values(std::uint32_t p, std::vector<Generation> values)
{
    return ParameterTuple(p, TupleRule{TupleKind::explicit_list, std::move(values), {}, 0});
}

ParameterTuple ParameterTuple::kappa(std::uint32_t p, Rational kappa)
{
    return ParameterTuple(p, TupleRule{TupleKind::kappa, {}, std::move(kappa), 0});
}

ParameterTuple ParameterTuple::qkappa(std::uint32_t p, unsigned q, Rational kappa)
{
    return ParameterTuple(p, TupleRule{TupleKind::qkappa, {}, std::move(kappa), q});
}

ParameterTuple ParameterTuple::parse(std::uint32_t p, std::string_view spec)
{
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw Error("tuple spec must look like kind:params, got '" + std::string(spec) + "'");
    }
    const auto kind = trim(spec.substr(0, colon));
    const auto body = trim(spec.substr(colon + 1));
    if (kind == "constant") {
        auto v = parse_pairs(body);
        if (v.size() != 1) {
            throw Error("constant tuple needs exactly one S,R pair");
        }
        return constant(p, v[0].S, v[0].R);
    }
    if (kind == "periodic") {
        return periodic(p, parse_pairs(body));
    }
    if (kind == "explicit") {
        return explicit_values(p, parse_pairs(body));
    }
    if (kind == "kappa") {
        return kappa(p, Rational::parse(body));
    }
    if (kind == "qkappa") {
        auto parts = split(body, ',');
        if (parts.size() != 2) {
            throw Error("qkappa spec must be qkappa:q,kappa");
        }
        return qkappa(p, static_cast<unsigned>(parse_u64(parts[0], "q")), Rational::parse(parts[1]));
    }
    throw Error("unknown tuple kind '" + std::string(kind) + "'");
}

ParameterTuple ParameterTuple::from_json(const nlohmann::json &j)
{
    try {
        const auto p = j.at("p").get<std::uint32_t>();
        const auto kind = j.at("kind").get<std::string>();
        const auto &params = j.at("params");
        auto read_pairs = [](const nlohmann::json &arr) {
            std::vector<Generation> v;
            for (const auto &e : arr) {
                v.push_back({e.at(0).get<std::uint64_t>(), e.at(1).get<std::uint64_t>()});
            }
            return v;
        };
        auto read_rational = [](const nlohmann::json &x) {
            return x.is_string() ? Rational::parse(x.get<std::string>()) : Rational::parse(x.dump());
        };
        std::optional<ParameterTuple> t;
        if (kind == "constant") {
            t = constant(p, params.at("S").get<std::uint64_t>(), params.at("R").get<std::uint64_t>());
        } else if (kind == "periodic") {
            t = periodic(p, read_pairs(params.at("pattern")));
        } else if (kind == "explicit") {
            t = explicit_values(p, read_pairs(params.at("values")));
        } else if (kind == "kappa") {
            t = kappa(p, read_rational(params.at("kappa")));
        } else if (kind == "qkappa") {
            t = qkappa(p, params.at("q").get<unsigned>(), read_rational(params.at("kappa")));
        } else {
            throw Error("unknown tuple kind '" + kind + "'");
        }
        const auto length = j.value("length", std::size_t(0));
        if (length > 0) {
            t->at(length - 1);
        }
        return *t;
    } catch (const nlohmann::json::exception &e) {
        throw Error(std::string("malformed tuple JSON: ") + e.what());
    }
}

nlohmann::json ParameterTuple::to_json() const
{
    nlohmann::json params = nlohmann::json::object();
    auto pairs = [](const std::vector<Generation> &v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto &g : v) {
            arr.push_back({g.S, g.R});
        }
        return arr;
    };
    switch (rule_.kind) {
    case TupleKind::constant:
        params["S"] = rule_.values[0].S;
        params["R"] = rule_.values[0].R;
        break;
    case TupleKind::periodic:
        params["pattern"] = pairs(rule_.values);
        break;
    case TupleKind::explicit_list:
        params["values"] = pairs(rule_.values);
        break;
    case TupleKind::kappa:
        params["kappa"] = rule_.kappa.str();
        break;
    case TupleKind::qkappa:
        params["q"] = rule_.q;
        params["kappa"] = rule_.kappa.str();
        break;
    }
    return {{"p", p_}, {"kind", std::string(kind_name(rule_.kind))}, {"params", params},
            {"length", materialized_length()}};
}

std::string ParameterTuple::spec() const
{
    switch (rule_.kind) {
    case TupleKind::constant:
        return "constant:" + pairs_str(rule_.values);
    case TupleKind::periodic:
        return "periodic:" + pairs_str(rule_.values);
    case TupleKind::explicit_list:
        return "explicit:" + pairs_str(rule_.values);
    case TupleKind::kappa:
        return "kappa:" + rule_.kappa.str();
    case TupleKind::qkappa:
        return "qkappa:" + std::to_string(rule_.q) + "," + rule_.kappa.str();
    }
    return {};
}

std::optional<std::size_t> ParameterTuple::period() const
{
    if (rule_.kind == TupleKind::constant) {
        return 1;
    }
    if (rule_.kind == TupleKind::periodic) {
        return rule_.values.size();
    }
    return std::nullopt;
}

std::optional<std::size_t> ParameterTuple::finite_length() const
{
    if (rule_.kind == TupleKind::explicit_list) {
        return rule_.values.size();
    }
    return std::nullopt;
}

std::size_t ParameterTuple::materialized_length() const
{
    std::lock_guard lock(cache_->mutex);
    return cache_->values.size();
}

Generation ParameterTuple::at(std::size_t n) const
{
    switch (rule_.kind) {
    case TupleKind::constant:
        return rule_.values[0];
    case TupleKind::periodic:
        return rule_.values[n % rule_.values.size()];
    case TupleKind::explicit_list:
        if (n >= rule_.values.size()) {
            throw Error("explicit tuple exhausted at index " + std::to_string(n));
        }
        return rule_.values[n];
    default:
        break;
    }
    std::lock_guard lock(cache_->mutex);
    auto &values = cache_->values;
    while (values.size() <= n) {
        values.push_back(generate(values.size(), values, cache_->qkappa_sum));
    }
    return values[n];
}

Generation ParameterTuple::generate(std::size_t n, const std::vector<Generation> &prefix, BigInt &qkappa_sum) const
{
    const Rational &k = rule_.kappa;
    if (rule_.kind == TupleKind::kappa) {
        // S_n = floor((n+1)^{1/kappa - 1}), clamped to >= 1; R_n = 1.
        const BigInt base = n + 1;
        const BigInt e_num = k.den - k.num;
        const BigInt e_den = k.num;
        BigInt s = 1;
        if (base > 1) {
            s = certified_floor(
                [&](mpfr_prec_t prec) {
                    return pow(Interval(base, prec), Interval::rational(e_num, e_den, prec));
                },
                [&](const BigInt &cand) -> std::optional<int> {
                    auto a = small_exponent(e_num);
                    auto b = small_exponent(e_den);
                    if (!a || !b || cand <= 0) {
                        return std::nullopt;
                    }
                    // (n+1)^{e_num/e_den} <=> cand  iff  (n+1)^{e_num} <=> cand^{e_den}
                    const BigInt lhs = boost::multiprecision::pow(base, static_cast<unsigned>(*a));
                    const BigInt rhs = boost::multiprecision::pow(cand, static_cast<unsigned>(*b));
                    return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
                },
                n);
        }
        if (s < 1) {
            s = 1;
        }
        if (s > max_height) {
            throw Error("tuple value too large at index " + std::to_string(n));
        }
        return {s.convert_to<std::uint64_t>(), 1};
    }

    // qkappa: R_n = 1, S_0 = 1, S_n = floor(exp^(q)(lambda (n+2))) + 1 - (S_0 + ... + S_{n-1}),
    // lambda = ln(p^2)/kappa.
    if (n == 0) {
        qkappa_sum = 1;
        return {1, 1};
    }
    const unsigned q = rule_.q;
    const BigInt floor_e = certified_floor(
        [&](mpfr_prec_t prec) {
            Interval lambda = Interval(2L, prec) * log(Interval(static_cast<long>(p_), prec)) *
                              Interval::rational(k.den, k.num, prec);
            Interval x = lambda * Interval(static_cast<long>(n + 2), prec);
            for (unsigned i = 0; i < q; ++i) {
                x = exp(x);
            }
            return x;
        },
        [&](const BigInt &cand) -> std::optional<int> {
            if (q != 1 || cand <= 0) {
                return std::nullopt;
            }
            // exp(lambda (n+2)) = p^{2 (n+2) den / num}
            auto a = small_exponent(BigInt(2 * (n + 2)) * k.den);
            auto b = small_exponent(k.num);
            if (!a || !b) {
                return std::nullopt;
            }
            const BigInt lhs = boost::multiprecision::pow(BigInt(p_), static_cast<unsigned>(*a));
            const BigInt rhs = boost::multiprecision::pow(cand, static_cast<unsigned>(*b));
            return lhs < rhs ? -1 : (lhs == rhs ? 0 : 1);
        },
        n);
    (void)prefix;
    const BigInt s = floor_e + 1 - qkappa_sum;
    if (s < 1) {
        throw Error("tuple rule degenerate at index " + std::to_string(n));
    }
    if (s > max_height) {
        throw Error("tuple value too large at index " + std::to_string(n));
    }
    qkappa_sum += s;
    return {s.convert_to<std::uint64_t>(), 1};
}

WeightVector::WeightVector(BigInt a, BigInt b, BigInt c) : gr_{std::move(a), std::move(b), std::move(c)}
{
    wt_ = gr_[0] + gr_[1] + gr_[2];
}

WeightVector WeightVector::operator+(const WeightVector &o) const
{
    return {gr_[0] + o.gr_[0], gr_[1] + o.gr_[1], gr_[2] + o.gr_[2]};
}

WeightVector WeightVector::operator-(const WeightVector &o) const
{
    return {gr_[0] - o.gr_[0], gr_[1] - o.gr_[1], gr_[2] - o.gr_[2]};
}

WeightVector WeightVector::scaled(const BigInt &k) const
{
    return {gr_[0] * k, gr_[1] * k, gr_[2] * k};
}

bool WeightVector::non_negative() const
{
    return gr_[0] >= 0 && gr_[1] >= 0 && gr_[2] >= 0;
}

std::string WeightVector::str() const
{
    return "(" + gr_[0].str() + "," + gr_[1].str() + "," + gr_[2].str() + ")";
}

BigInt checked_pow(std::uint32_t p, std::uint64_t e)
{
    if (e > (std::uint64_t(1) << 24)) {
        throw Error("exponent too large: p^" + std::to_string(e));
    }
    return pow_big(p, e);
}

BigInt pivot_weight(const ParameterTuple &tuple, std::size_t n)
{
    BigInt w = 1;
    for (std::size_t i = 0; i < n; ++i) {
        const auto g = tuple.at(i);
        w *= checked_pow(tuple.p(), g.S) + checked_pow(tuple.p(), g.R) - 1;
    }
    return w;
}

WeightVector pivot_multidegree(const ParameterTuple &tuple, std::size_t n, PivotKind kind)
{
    // alpha, beta, gamma: multidegrees of v_i, w_i, u_i.
    std::array<BigInt, 3> alpha{1, 0, 0}, beta{0, 1, 0}, gamma{0, 0, 1};
    for (std::size_t i = 0; i < n; ++i) {
        const auto g = tuple.at(i);
        const BigInt X = checked_pow(tuple.p(), g.S);
        const BigInt Y = checked_pow(tuple.p(), g.R);
        std::array<BigInt, 3> a, b, c;
        for (int j = 0; j < 3; ++j) {
            a[j] = X * alpha[j] + (Y - 1) * beta[j];
            b[j] = (X - 1) * alpha[j] + Y * beta[j];
            c[j] = (X - 1) * alpha[j] + Y * gamma[j];
        }
        alpha = std::move(a);
        beta = std::move(b);
        gamma = std::move(c);
    }
    const auto &r = kind == PivotKind::v ? alpha : (kind == PivotKind::w ? beta : gamma);
    return {r[0], r[1], r[2]};
}

BigInt trusted_weight_bound(const ParameterTuple &tuple, std::size_t depth)
{
    if (depth < 2) {
        throw Error("truncation too shallow");
    }
    const auto g = tuple.at(depth - 2);
    return (checked_pow(tuple.p(), g.S) - 1) * pivot_weight(tuple, depth - 2);
}

} // namespace clover
