// One line per acceptance criterion; exit status 1 if any fails.
#include <clover/analytics.hpp>
#include <clover/closure.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>

using namespace clover;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

ParameterTuple random_tuple(std::mt19937_64 &rng, std::size_t length)
{
    const std::uint32_t primes[] = {2, 3, 5};
    const std::uint32_t p = primes[rng() % 3];
    std::vector<Generation> g;
    for (std::size_t i = 0; i < length; ++i) {
        g.push_back({1 + rng() % 3, 1 + rng() % 3});
    }
    return ParameterTuple::explicit_values(p, g);
}

std::string counts(const VerificationReport &r)
{
    std::ostringstream os;
    os << r.count(Status::pass) << "/" << r.count(Status::fail) << "/" << r.count(Status::outside_zone);
    return os.str();
}

Outcome relations()
{
    Outcome o;
    for (std::uint32_t p : {2u, 3u}) {
        const auto r = relation_suite(ParameterTuple::constant(p, 1, 1), 4);
        o.ok = o.ok && !r.any_fail();
        o.detail += "p=" + std::to_string(p) + " pass/fail/outside " + counts(r) + "; ";
    }
    return o;
}

Outcome basis()
{
    Outcome o;
    for (auto [p, N] : {std::pair{2u, std::size_t(4)}, std::pair{3u, std::size_t(3)}}) {
        const auto r = verify_basis_theorem(ParameterTuple::constant(p, 1, 1), N);
        o.ok = o.ok && !r.any_fail() && r.count(Status::outside_zone) == 0;
        o.detail += "p=" + std::to_string(p) + " N=" + std::to_string(N) + " " + counts(r) + "; ";
    }
    return o;
}

Outcome grading()
{
    const auto r = verify_grading(ParameterTuple::constant(2, 1, 1), 4);
    return {!r.any_fail() && r.count(Status::outside_zone) == 0, "pass/fail/outside " + counts(r)};
}

Outcome weights()
{
    std::mt19937_64 rng(20240601);
    std::size_t checked = 0, bad = 0;
    for (int t = 0; t < 100; ++t) {
        const auto tuple = random_tuple(rng, 8);
        const std::uint32_t p = tuple.p();
        BigInt prod = 1, pr = 1;
        for (std::size_t n = 0; n <= 6; ++n) {
            const auto v = pivot_multidegree(tuple, n, PivotKind::v);
            const auto w = pivot_multidegree(tuple, n, PivotKind::w);
            const auto u = pivot_multidegree(tuple, n, PivotKind::u);
            bool ok = pivot_weight(tuple, n) == prod;
            ok = ok && v[2] == 0 && w[2] == 0 && u[2] == pr;
            ok = ok && v[0] + v[1] == prod && w[0] + w[1] == prod && u[0] + u[1] == prod - pr;
            ok = ok && v.wt() == v[0] + v[1] + v[2] && v.wt() == prod && w.wt() == prod && u.wt() == prod;
            ++checked;
            bad += !ok;
            const auto g = tuple.at(n);
            BigInt ps = 1, pR = 1;
            for (std::uint64_t i = 0; i < g.S; ++i) {
                ps *= p;
            }
            for (std::uint64_t i = 0; i < g.R; ++i) {
                pR *= p;
            }
            prod *= ps + pR - 1;
            pr *= pR;
        }
        // Realized pivots carry the predicted multidegree.
        for (std::size_t n = 0; n <= 2; ++n) {
            const auto ctx = make_context(tuple, n + 2);
            for (PivotKind k : {PivotKind::v, PivotKind::w, PivotKind::u}) {
                const auto md = pivot(k, n, ctx).multidegree();
                ++checked;
                bad += !(md && *md == pivot_multidegree(tuple, n, k));
            }
        }
    }
    return {bad == 0, std::to_string(checked) + " checks over 100 tuples, " + std::to_string(bad) + " mismatches"};
}

Outcome growth()
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    const auto table = growth_table(t, 59049);
    const auto sandwich = check_growth_sandwich(t, table);
    const auto fit = estimate_exponent(table, "gk");
    const Interval lambda = gk_constant(2, 1, 1);
    const double tol = 0.10;
    const bool close = lambda.upper() - tol <= fit.beta && fit.beta <= lambda.lower() + tol;
    char buf[256];
    std::snprintf(buf, sizeof buf, "gamma(59049)=%s; sandwich %s; slope %.4f over [%s,%s] vs lambda %s (tol %.2f)",
                  to_string(table.rows.back().counts.total()).c_str(), counts(sandwich).c_str(), fit.beta,
                  to_string(fit.window_lo).c_str(), to_string(fit.window_hi).c_str(), lambda.str(6).c_str(), tol);
    return {!sandwich.any_fail() && close && table.dense && table.rows.size() == 59049, buf};
}

Outcome cubic()
{
    std::mt19937_64 rng(777);
    Outcome o;
    std::size_t rows = 0;
    for (int i = 0; i < 20; ++i) {
        const auto t = random_tuple(rng, 8);
        GrowthCounter c(t);
        const auto r = check_cubic_bounds(t, c.W(5));
        o.ok = o.ok && !r.any_fail();
        rows += r.records().at(0).params["rows"].get<std::size_t>();
        if (r.any_fail()) {
            o.detail += "fail at " + t.spec() + "; ";
        }
    }
    o.detail += "20 tuples, " + std::to_string(rows) + " rows up to wt(v_5)";
    return o;
}

Outcome density()
{
    const auto s = gk_density_scan(2, 64, 64, 1.1, 2.9);
    char buf[200];
    std::snprintf(buf, sizeof buf, "%zu values in [%s, %s], all in [1,3]: %s; max gap on [1.1,2.9] <= %.5f (limit 0.1)",
                  s.points.size(), s.points.front().lambda.str(6).c_str(), s.points.back().lambda.str(6).c_str(),
                  s.all_in_unit_range ? "yes" : "no", s.max_gap.upper());
    return {s.all_in_unit_range && s.max_gap.upper() <= 0.1, buf};
}

Outcome nil()
{
    const auto r = nil_sampling(ParameterTuple::constant(2, 1, 1), 5, {200, 1, 5});
    const double f = r.summary()["fraction"].get<double>();
    char buf[200];
    std::snprintf(buf, sizeof buf, "200 samples (seed 1): %zu conclusive (%.1f%%, need >= 60%%), %zu failures, histogram %s",
                  r.count(Status::pass), 100 * f, r.count(Status::fail), r.summary()["index_histogram"].dump().c_str());
    return {!r.any_fail() && r.records().size() == 200 && f >= 0.60, buf};
}

Outcome quasilinear()
{
    Outcome o;
    const auto k = ParameterTuple::kappa(2, Rational::parse("1/2"));
    GrowthCounter ck(k);
    const auto rk = check_quasilinear_bounds(k, growth_table(k, ck.W(4)));
    const auto q = ParameterTuple::qkappa(2, 1, Rational::parse("1"));
    GrowthCounter cq(q);
    const auto rq = check_quasilinear_bounds(q, growth_table(q, cq.W(3)));
    o.ok = !rk.any_fail() && !rq.any_fail();
    o.detail = "kappa 1/2 to wt(v_4)=" + to_string(ck.W(4)) + ": " + counts(rk) + "; qkappa 1,1 to wt(v_3) (" +
               std::to_string(mpz_sizeinbase(cq.W(3).backend().data(), 2)) + " bits): " + counts(rq);
    return o;
}

Outcome axioms()
{
    Outcome o;
    for (auto [p, N] : {std::pair{2u, std::size_t(4)}, std::pair{3u, std::size_t(3)}}) {
        const auto r = restricted_axiom_suite(ParameterTuple::constant(p, 1, 1), N, 50, 99);
        o.ok = o.ok && !r.any_fail() && r.records().size() == 200;
        o.detail += "axioms p=" + std::to_string(p) + " " + counts(r) + "; ";
    }
    for (std::uint32_t p : {2u, 3u}) {
        for (const char *spec : {"constant:1,1", "periodic:(1,1);(2,1)"}) {
            const auto t = ParameterTuple::parse(p, spec);
            const auto r = self_similarity_decompose(t, 2 * *t.period() + 1);
            o.ok = o.ok && !r.any_fail();
            o.detail += "self-similar p=" + std::to_string(p) + " " + spec + " " + counts(r) + "; ";
        }
    }
    return o;
}

} // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"relation suite", relations},      {"basis theorem", basis},
        {"grading", grading},               {"weight formulas", weights},
        {"growth vs GK", growth},           {"cubic growth bounds", cubic},
        {"density scan", density},          {"nil sampling", nil},
        {"quasi-linear bounds", quasilinear}, {"restricted axioms", axioms},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("%s %2zu %-20s %6.2fs  %s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), s,
                    o.detail.c_str());
        std::fflush(stdout);
        failed += !o.ok;
    }
    return failed == 0 ? 0 : 1;
}
