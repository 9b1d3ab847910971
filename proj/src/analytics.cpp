#include <clover/analytics.hpp>

#include <algorithm>
#include <cmath>
#include <functional>

namespace clover {

namespace {

constexpr mpfr_prec_t max_precision = 4096;

std::uint64_t to_u64(const BigInt &x)
{
    if (x < 0 || x > BigInt(std::numeric_limits<std::uint64_t>::max())) {
        throw Error("exponent too large");
    }
    return static_cast<std::uint64_t>(x);
}

// c, e with x = c^e and e maximal.
std::pair<BigInt, std::uint64_t> perfect_power(const BigInt &x)
{
    BigInt best = x;
    std::uint64_t best_e = 1;
    const std::size_t bits = mpz_sizeinbase(x.backend().data(), 2);
    for (std::uint64_t e = 2; e <= bits; ++e) {
        BigInt r;
        if (mpz_root(r.backend().data(), x.backend().data(), e) != 0) {
            best = r;
            best_e = e;
        }
    }
    return {best, best_e};
}

// (a, b) with log_mu m = a / b when m and mu are powers of a common base.
std::optional<std::pair<std::uint64_t, std::uint64_t>> rational_log(const BigInt &m, const BigInt &mu)
{
    if (m == 1) {
        return std::pair<std::uint64_t, std::uint64_t>{0, 1};
    }
    const auto [c, b] = perfect_power(mu);
    BigInt x = m;
    std::uint64_t a = 0;
    while (x % c == 0) {
        x /= c;
        ++a;
    }
    if (x != 1) {
        return std::nullopt;
    }
    return std::pair<std::uint64_t, std::uint64_t>{a, b};
}

double ln_big(const BigInt &x)
{
    return log(Interval(x, 128)).mid();
}

struct RowTally {
    std::size_t rows = 0, failed = 0;
    nlohmann::json first_failure;
};

void flush(VerificationReport &report, const std::string &check, const RowTally &t, nlohmann::json extra = {})
{
    nlohmann::json params = {{"rows", t.rows}, {"failed", t.failed}};
    for (auto &[k, v] : extra.items()) {
        params[k] = v;
    }
    report.add(check, params, t.failed == 0 ? Status::pass : Status::fail,
               t.failed == 0 ? "" : t.first_failure.dump());
}

void tally(RowTally &t, bool ok, const std::function<nlohmann::json()> &witness)
{
    ++t.rows;
    if (!ok) {
        if (t.failed++ == 0) {
            t.first_failure = witness();
        }
    }
}

// Number of second-type monomials of each length <= top, and powers.
struct SecondSplit {
    std::vector<BigInt> by_length;
    BigInt powers = 0;
};

SecondSplit second_split(GrowthCounter &c, const BigInt &m, std::size_t top)
{
    SecondSplit s;
    for (std::size_t l = 0; l <= top; ++l) {
        s.by_length.push_back(c.count_second(l, m));
        s.powers += c.count_power_second(l, m);
    }
    return s;
}

} // namespace

nlohmann::json GKReport::to_json(int digits) const
{
    return {{"tuple", tuple_spec},
            {"p", p},
            {"mu", to_string(mu)},
            {"sigma", to_string(sigma)},
            {"lambda", lambda.str(digits)},
            {"lambda_lo", lambda.lower()},
            {"lambda_hi", lambda.upper()}};
}

GKReport gk_periodic(const ParameterTuple &tuple, mpfr_prec_t prec)
{
    const auto period = tuple.period();
    if (!period) {
        throw Error("GK formula requires periodic tuple");
    }
    GKReport r;
    r.tuple_spec = tuple.spec();
    r.p = tuple.p();
    r.mu = 1;
    r.sigma = 0;
    for (std::size_t i = 0; i < *period; ++i) {
        const auto g = tuple.at(i);
        r.mu *= checked_pow(r.p, g.S) + checked_pow(r.p, g.R) - 1;
        r.sigma += g.S + 2 * g.R;
    }
    r.lambda = Interval(r.sigma, prec) * log(Interval(long(r.p), prec)) / log(Interval(r.mu, prec));
    return r;
}

Interval gk_constant(std::uint32_t p, std::uint64_t S, std::uint64_t R, mpfr_prec_t prec)
{
    return gk_periodic(ParameterTuple::constant(p, S, R), prec).lambda;
}

nlohmann::json DensityScan::to_json() const
{
    nlohmann::json pts = nlohmann::json::array();
    for (const auto &pt : points) {
        pts.push_back({{"S", pt.S}, {"R", pt.R}, {"lambda", pt.lambda.str(12)}});
    }
    return {{"p", p},
            {"count", points.size()},
            {"min", points.empty() ? "" : points.front().lambda.str(12)},
            {"max", points.empty() ? "" : points.back().lambda.str(12)},
            {"all_in_unit_range", all_in_unit_range},
            {"window", {lo, hi}},
            {"points_in_window", points_in_window},
            {"max_gap_upper", max_gap.upper()},
            {"points", pts}};
}

DensityScan gk_density_scan(std::uint32_t p, std::uint64_t S_max, std::uint64_t R_max, double lo, double hi)
{
    if (S_max < 1 || R_max < 1) {
        throw Error("scan bounds must be at least 1");
    }
    if (!(lo < hi)) {
        throw Error("empty scan interval");
    }
    DensityScan scan;
    scan.p = p;
    scan.lo = lo;
    scan.hi = hi;
    for (std::uint64_t S = 1; S <= S_max; ++S) {
        for (std::uint64_t R = 1; R <= R_max; ++R) {
            // 1 <= lambda <= 3  <=>  q <= p^{S+2R} <= q^3 with q = p^S + p^R - 1
            const BigInt q = checked_pow(p, S) + checked_pow(p, R) - 1;
            const BigInt top = checked_pow(p, S + 2 * R);
            scan.all_in_unit_range = scan.all_in_unit_range && q <= top && top <= q * q * q;
            scan.points.push_back({S, R, gk_constant(p, S, R)});
        }
    }
    std::stable_sort(scan.points.begin(), scan.points.end(),
                     [](const DensityPoint &a, const DensityPoint &b) { return a.lambda.mid() < b.lambda.mid(); });

    // Decimal window ends as exact rationals.
    const auto exact = [](double x) {
        const long k = std::lround(x * 1e9);
        return Interval::rational(BigInt(k), BigInt(1000000000));
    };
    const Interval a = exact(lo), b = exact(hi);
    Interval prev = a;
    Interval gap = Interval::zero(Interval::default_precision);
    const auto widen = [&](const Interval &next) {
        const Interval g = next - prev;
        if (gap.upper() < g.upper()) {
            gap = g;
        }
        prev = next;
    };
    for (const auto &pt : scan.points) {
        if (a.certainly_less(pt.lambda) && pt.lambda.certainly_less(b)) {
            ++scan.points_in_window;
            widen(pt.lambda);
        }
    }
    widen(b);
    scan.max_gap = gap;
    return scan;
}

std::size_t weight_level(GrowthCounter &counter, const BigInt &m)
{
    std::size_t n = 0;
    while (counter.W(n) < m) {
        ++n;
    }
    return n;
}

VerificationReport check_growth_sandwich(const ParameterTuple &tuple, const GrowthTable &table)
{
    if (table.p != tuple.p() || table.tuple_spec != tuple.spec()) {
        throw Error("table was computed for a different tuple");
    }
    const GKReport gk = gk_periodic(tuple);
    const std::uint32_t p = tuple.p();
    const std::uint64_t sigma = to_u64(gk.sigma);
    VerificationReport report("sandwich");
    RowTally lower, upper;
    std::size_t exact_rows = 0, escalated = 0;
    double c1 = INFINITY, c2 = 0;

    for (const auto &row : table.rows) {
        const BigInt &m = row.m;
        const BigInt g = row.counts.total();
        const auto ratio = rational_log(m, gk.mu);

        bool lower_ok = false, upper_ok = false, lower_done = false, upper_done = false;
        if (ratio) {
            // gamma^b p^{3 sigma b} >= p^{sigma a}
            const auto [a, b] = *ratio;
            BigInt lhs = checked_pow(p, 3 * sigma * b);
            for (std::uint64_t i = 0; i < b; ++i) {
                lhs *= g;
            }
            lower_ok = lhs >= checked_pow(p, sigma * a);
            lower_done = true;
            ++exact_rows;
        }
        for (mpfr_prec_t prec = 128; prec <= max_precision && !(lower_done && upper_done); prec *= 2) {
            const Interval lnp = log(Interval(long(p), prec));
            const Interval L = log(Interval(m, prec)) / log(Interval(gk.mu, prec));
            const Interval s(long(sigma), prec);
            const Interval G(g, prec);
            if (!lower_done) {
                const Interval bound = exp(s * lnp * (L - Interval(3L, prec)));
                if (bound.certainly_less_equal(G) || G.certainly_less(bound)) {
                    lower_ok = bound.certainly_less_equal(G);
                    lower_done = true;
                }
            }
            const Interval mlambda = exp(s * lnp * L);
            if (!upper_done) {
                const Interval bound = (Interval(checked_pow(p, 2 * sigma), prec) + Interval(checked_pow(p, sigma), prec)) *
                                           mlambda +
                                       s * (L + Interval(1L, prec));
                if (G.certainly_less_equal(bound) || bound.certainly_less(G)) {
                    upper_ok = G.certainly_less_equal(bound);
                    upper_done = true;
                }
            }
            if (prec == 128) {
                const double r = (G / mlambda).mid();
                c1 = std::min(c1, r);
                c2 = std::max(c2, r);
            } else {
                ++escalated;
            }
        }
        const auto witness = [&](const char *side) {
            return nlohmann::json{{"m", to_string(m)}, {"gamma", to_string(g)}, {"side", side},
                                  {"resolved", std::string(side) == "lower" ? lower_done : upper_done}};
        };
        tally(lower, lower_done && lower_ok, [&] { return witness("lower"); });
        tally(upper, upper_done && upper_ok, [&] { return witness("upper"); });
    }
    flush(report, "lower", lower, {{"exact_rows", exact_rows}});
    flush(report, "upper", upper);
    auto &s = report.summary();
    s["mu"] = to_string(gk.mu);
    s["sigma"] = sigma;
    s["lambda"] = gk.lambda.str(12);
    s["min_gamma_over_m_lambda"] = c1;
    s["max_gamma_over_m_lambda"] = c2;
    s["lower_constant"] = std::pow(double(p), -3.0 * double(sigma));
    s["precision_escalations"] = escalated;
    return report;
}

VerificationReport check_quasilinear_bounds(const ParameterTuple &tuple, const GrowthTable &table)
{
    if (table.p != tuple.p() || table.tuple_spec != tuple.spec()) {
        throw Error("table was computed for a different tuple");
    }
    const std::uint32_t p = tuple.p();
    GrowthCounter counter(tuple);
    VerificationReport report("quasilinear");
    RowTally consistent, upper, f1, f2, f3, f4, beyond, lower;
    std::size_t skipped = 0;
    std::string theta_used;

    for (const auto &row : table.rows) {
        const BigInt &m = row.m;
        if (m < 2) {
            ++skipped;
            continue;
        }
        const std::size_t n = weight_level(counter, m);
        for (std::size_t i = 0; i <= n + 1; ++i) {
            if (tuple.at(i).R != 1) {
                throw Error("bounds require R≡1");
            }
        }
        const BigInt m0 = counter.W(n - 1);
        const BigInt m1 = m / m0;
        const BigInt p2n = checked_pow(p, 2 * n);
        const SecondSplit split = second_split(counter, m, n + 2);
        BigInt total = split.powers, low = 0;
        for (std::size_t l = 0; l <= n + 2; ++l) {
            total += split.by_length[l];
            if (l + 1 <= n) {
                low += split.by_length[l];
            }
        }
        const auto witness = [&](const BigInt &count, const BigInt &bound) {
            return [&, count, bound] {
                return nlohmann::json{{"m", to_string(m)}, {"n", n}, {"count", to_string(count)}, {"bound", to_string(bound)}};
            };
        };
        const BigInt listed = row.counts.second + row.counts.power_second;
        tally(consistent, listed == total, witness(listed, total));
        const BigInt up = BigInt(p * p + 2 * p + 2) * m * p2n + n;
        tally(upper, listed <= up, witness(listed, up));
        const BigInt b1 = BigInt(p) * p * m1 * m0 * p2n;
        tally(f1, split.by_length[n + 1] <= b1, witness(split.by_length[n + 1], b1));
        const BigInt b2 = BigInt(p) * (m1 + 1) * m0 * p2n;
        tally(f2, split.by_length[n] <= b2, witness(split.by_length[n], b2));
        const BigInt b3 = 2 * m * p2n;
        tally(f3, low <= b3, witness(low, b3));
        tally(f4, split.powers <= n, witness(split.powers, BigInt(n)));
        tally(beyond, split.by_length[n + 2] == 0, witness(split.by_length[n + 2], BigInt(0)));

        // count * prod (p^S_i + p) >= (m1 - p + 1) m0 p^{2(n-1)} prod p^S_i over i <= n - 2
        BigInt num = 1, den = 1;
        for (std::size_t i = 0; i + 2 <= n; ++i) {
            const BigInt ps = checked_pow(p, tuple.at(i).S);
            num *= ps + p;
            den *= ps;
        }
        const BigInt rhs = (m1 - p + 1) * m0 * checked_pow(p, 2 * (n - 1)) * den;
        const BigInt count_n = split.by_length[n];
        tally(lower, count_n * num >= rhs, [&] {
            return nlohmann::json{{"m", to_string(m)}, {"n", n}, {"count", to_string(count_n)},
                                  {"theta_num", to_string(num)}, {"theta_den", to_string(den)}};
        });
        theta_used = Interval::rational(num, den).str(12);
    }
    flush(report, "table-split", consistent);
    flush(report, "upper", upper);
    flush(report, "upper-length-n+1", f1);
    flush(report, "upper-length-n", f2);
    flush(report, "upper-shorter", f3);
    flush(report, "upper-powers", f4);
    flush(report, "length-limit", beyond);
    flush(report, "lower", lower);
    report.summary()["skipped_rows"] = skipped;
    report.summary()["last_theta_partial"] = theta_used;
    return report;
}

VerificationReport check_cubic_bounds(const ParameterTuple &tuple, const BigInt &max_weight)
{
    GrowthCounter counter(tuple);
    VerificationReport report("cubic");
    RowTally f1, f2, f3, beyond;
    for (const BigInt &m : sampled_weights(counter, max_weight)) {
        if (m < 2) {
            continue;
        }
        const std::size_t n = weight_level(counter, m);
        const SecondSplit s = second_split(counter, m, n + 2);
        BigInt low = 0;
        for (std::size_t l = 0; l + 1 <= n; ++l) {
            low += s.by_length[l];
        }
        const BigInt m3 = m * m * m;
        const auto witness = [&](const BigInt &count) {
            return [&, count] { return nlohmann::json{{"m", to_string(m)}, {"n", n}, {"count", to_string(count)}}; };
        };
        tally(f1, s.by_length[n + 1] < m3, witness(s.by_length[n + 1]));
        tally(f2, s.by_length[n] <= 3 * m3, witness(s.by_length[n]));
        tally(f3, low <= 2 * m3, witness(low));
        tally(beyond, s.by_length[n + 2] == 0, witness(s.by_length[n + 2]));
    }
    const nlohmann::json t = {{"tuple", tuple.spec()}};
    flush(report, "length-n+1", f1, t);
    flush(report, "length-n", f2, t);
    flush(report, "shorter", f3, t);
    flush(report, "length-limit", beyond, t);
    return report;
}

nlohmann::json AsymptoticFit::to_json() const
{
    nlohmann::json j = {{"level", level},
                        {"beta", beta},
                        {"offset", offset},
                        {"window", {to_string(window_lo), to_string(window_hi)}},
                        {"rows", rows},
                        {"rms_residual", rms_residual},
                        {"max_residual", max_residual}};
    if (level == "0") {
        j["C"] = coefficient;
    }
    return j;
}

namespace {

struct LineFit {
    double a = 0, b = 0, rss = 0;
};

LineFit least_squares(const std::vector<double> &x, const std::vector<double> &y)
{
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.b = sxx > 0 ? sxy / sxx : 0;
    f.a = my - f.b * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.a - f.b * x[i];
        f.rss += r * r;
    }
    return f;
}

} // namespace

AsymptoticFit estimate_exponent(const GrowthTable &table, const std::string &level)
{
    long q = -1;
    if (level != "gk") {
        try {
            std::size_t used = 0;
            q = std::stol(level, &used);
            if (used != level.size() || q < 0) {
                throw Error("");
            }
        } catch (...) {
            throw Error("level must be 'gk' or a non-negative integer");
        }
    }
    // Rows where gamma grows; a finite-dimensional tail adds nothing.
    std::vector<const GrowthRow *> rows;
    BigInt prev = 0;
    for (const auto &r : table.rows) {
        const BigInt g = r.counts.total();
        if (r.m >= 2 && g > prev) {
            rows.push_back(&r);
        }
        prev = g;
    }
    if (rows.size() < 8 || rows.back()->m < 100 * rows.front()->m) {
        throw Error("window too small");
    }
    const BigInt top = rows.back()->m;
    std::size_t start = rows.size();
    while (start > 0 && 10 * rows[start - 1]->m >= top) {
        --start;
    }
    start = std::min(start, rows.size() - 8);

    std::vector<double> x, y, lnm;
    AsymptoticFit fit;
    fit.level = level;
    for (std::size_t i = start; i < rows.size(); ++i) {
        const double lm = ln_big(rows[i]->m);
        const double lg = ln_big(rows[i]->counts.total());
        if (q < 0) {
            x.push_back(lm);
            y.push_back(lg);
        } else if (q == 0) {
            x.push_back(lm);
            y.push_back(lg - lm);
        } else {
            double t = lm;
            bool ok = t > 0;
            for (long k = 1; k < q && ok; ++k) {
                t = std::log(t);
                ok = t > 0;
            }
            if (!ok) {
                continue;
            }
            x.push_back(std::log(t));
            y.push_back(lg - lm);
        }
        if (fit.rows++ == 0) {
            fit.window_lo = rows[i]->m;
        }
        fit.window_hi = rows[i]->m;
    }
    if (x.size() < 3) {
        throw Error("window too small");
    }

    std::vector<double> pred(x.size());
    if (q != 0) {
        const LineFit f = least_squares(x, y);
        fit.beta = f.b;
        fit.offset = f.a;
        for (std::size_t i = 0; i < x.size(); ++i) {
            pred[i] = f.a + f.b * x[i];
        }
    } else {
        // y = a + C x^beta: linear in (a, C) for fixed beta.
        const auto solve = [&](double beta) {
            std::vector<double> u(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) {
                u[i] = std::pow(x[i], beta);
            }
            return least_squares(u, y);
        };
        double best = 0.01, best_rss = INFINITY;
        for (int k = 1; k <= 300; ++k) {
            const double beta = 0.01 * k;
            const double r = solve(beta).rss;
            if (r < best_rss) {
                best_rss = r;
                best = beta;
            }
        }
        double lo = std::max(0.001, best - 0.01), hi = best + 0.01;
        const double phi = (std::sqrt(5.0) - 1) / 2;
        for (int it = 0; it < 60; ++it) {
            const double c = hi - phi * (hi - lo), d = lo + phi * (hi - lo);
            if (solve(c).rss < solve(d).rss) {
                hi = d;
            } else {
                lo = c;
            }
        }
        fit.beta = (lo + hi) / 2;
        const LineFit f = solve(fit.beta);
        fit.offset = f.a;
        fit.coefficient = f.b;
        for (std::size_t i = 0; i < x.size(); ++i) {
            pred[i] = f.a + f.b * std::pow(x[i], fit.beta);
        }
    }
    double ss = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = std::abs(y[i] - pred[i]);
        ss += r * r;
        fit.max_residual = std::max(fit.max_residual, r);
    }
    fit.rms_residual = std::sqrt(ss / static_cast<double>(x.size()));
    return fit;
}

} // namespace clover
