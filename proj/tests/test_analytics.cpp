#include <doctest.h>

#include <clover/analytics.hpp>

#include <cmath>
#include <random>

using namespace clover;

namespace {

bool encloses(const Interval &x, double v, double tol = 1e-12)
{
    return x.lower() - tol <= v && v <= x.upper() + tol;
}

ParameterTuple random_tuple(std::mt19937_64 &rng)
{
    const std::uint32_t primes[] = {2, 3, 5};
    const std::uint32_t p = primes[rng() % 3];
    std::vector<Generation> g;
    for (int i = 0; i < 8; ++i) {
        g.push_back({1 + rng() % 3, 1 + rng() % 3});
    }
    return ParameterTuple::explicit_values(p, g);
}

} // namespace

TEST_CASE("gk formula values")
{
    CHECK(encloses(gk_constant(2, 1, 1), 3 * std::log(2.0) / std::log(3.0)));
    CHECK(gk_constant(2, 1, 1).str(5) == "1.8928");
    CHECK(encloses(gk_constant(2, 5, 1), 7 * std::log(2.0) / std::log(33.0)));
    CHECK(gk_constant(2, 5, 1).str(5) == "1.3877");
    const auto r = gk_periodic(ParameterTuple::parse(2, "periodic:(1,1);(5,1)"));
    CHECK(r.mu == 99);
    CHECK(r.sigma == 10);
    CHECK(encloses(r.lambda, 10 * std::log(2.0) / std::log(99.0)));
    CHECK_THROWS_WITH_AS(gk_periodic(ParameterTuple::kappa(2, Rational::parse("1/2"))),
                         "GK formula requires periodic tuple", Error);
}

TEST_CASE("gk values stay in [1,3] and fall with S")
{
    for (std::uint32_t p : {2u, 3u}) {
        for (std::uint64_t R = 1; R <= 12; ++R) {
            Interval prev = gk_constant(p, 1, R);
            for (std::uint64_t S = 1; S <= 24; ++S) {
                const Interval l = gk_constant(p, S, R);
                CHECK(Interval(1L).certainly_less(l));
                CHECK(l.certainly_less(Interval(3L)));
                if (S > 1 && R == 1) {
                    CHECK(l.certainly_less(prev));
                }
                prev = l;
            }
        }
    }
}

TEST_CASE("density scan")
{
    const auto one = gk_density_scan(2, 1, 1);
    REQUIRE(one.points.size() == 1);
    CHECK(one.points[0].lambda.str(8) == gk_constant(2, 1, 1).str(8));
    const auto s = gk_density_scan(2, 64, 64);
    CHECK(s.points.size() == 4096);
    CHECK(s.all_in_unit_range);
    // The top of the grid is (63,64), just above (64,64).
    CHECK(s.points.back().S == 63);
    CHECK(s.points.back().R == 64);
    CHECK(encloses(s.points.back().lambda, 191 / std::log2(std::ldexp(1.0, 63) + std::ldexp(1.0, 64) - 1), 1e-9));
    CHECK(gk_constant(2, 64, 64).certainly_less(s.points.back().lambda));
    CHECK(std::abs(gk_constant(2, 64, 64).mid() - 2.95) < 0.01);
    CHECK(s.points.front().S == 64);
    CHECK(s.points.front().R == 1);
    CHECK(std::abs(s.points.front().lambda.mid() - 1.031) < 0.01);
    CHECK(s.max_gap.upper() <= 0.1);
    CHECK(s.points_in_window > 1000);
}

TEST_CASE("growth sandwich")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    auto table = growth_table(t, 729);
    CHECK(table.rows.front().counts.total() == 3);
    auto rep = check_growth_sandwich(t, table);
    CHECK(rep.count(Status::fail) == 0);
    CHECK(rep.records().at(0).params["exact_rows"] == 7);

    const auto t3 = ParameterTuple::constant(3, 1, 1);
    CHECK(check_growth_sandwich(t3, growth_table(t3, 625)).count(Status::fail) == 0);
    const auto t2 = ParameterTuple::parse(2, "periodic:(1,1);(2,1)");
    CHECK(check_growth_sandwich(t2, growth_table(t2, 2000)).count(Status::fail) == 0);

    // Perturbed tables must be caught on the right side.
    auto big = table;
    big.rows[700].counts.first += BigInt(1) << 40;
    rep = check_growth_sandwich(t, big);
    CHECK(rep.records().at(0).status == Status::pass);
    CHECK(rep.records().at(1).status == Status::fail);
    CHECK(rep.records().at(1).witness.find("\"m\":\"701\"") != std::string::npos);
    auto small = table;
    small.rows[728].counts = FamilyCounts{};
    rep = check_growth_sandwich(t, small);
    CHECK(rep.records().at(0).status == Status::fail);

    CHECK_THROWS_WITH_AS(check_growth_sandwich(t3, table), "table was computed for a different tuple", Error);
}

TEST_CASE("quasilinear bound chains")
{
    const auto k = ParameterTuple::kappa(2, Rational::parse("1/2"));
    GrowthCounter ck(k);
    CHECK(ck.W(4) == 2295);
    const auto rk = check_quasilinear_bounds(k, growth_table(k, ck.W(4)));
    CHECK(rk.count(Status::fail) == 0);
    CHECK(rk.summary()["skipped_rows"] == 1);

    const auto q = ParameterTuple::qkappa(2, 1, Rational::parse("1"));
    GrowthCounter cq(q);
    const auto rq = check_quasilinear_bounds(q, growth_table(q, cq.W(3)));
    CHECK(rq.count(Status::fail) == 0);

    const auto bad = ParameterTuple::constant(2, 1, 2);
    CHECK_THROWS_WITH_AS(check_quasilinear_bounds(bad, growth_table(bad, 50)), "bounds require R≡1", Error);

    auto table = growth_table(k, 500);
    table.rows[400].counts.second = 0;
    const auto broken = check_quasilinear_bounds(k, table);
    CHECK(broken.records().at(0).check == "table-split");
    CHECK(broken.records().at(0).status == Status::fail);
}

TEST_CASE("cubic bounds on random tuples")
{
    std::mt19937_64 rng(31);
    for (int i = 0; i < 5; ++i) {
        const auto t = random_tuple(rng);
        GrowthCounter c(t);
        CAPTURE(t.spec());
        CHECK(check_cubic_bounds(t, c.W(4)).count(Status::fail) == 0);
    }
}

TEST_CASE("weight level")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    GrowthCounter c(t);
    CHECK(weight_level(c, 1) == 0);
    CHECK(weight_level(c, 2) == 1);
    CHECK(weight_level(c, 3) == 1);
    CHECK(weight_level(c, 4) == 2);
    CHECK(weight_level(c, 9) == 2);
    CHECK(weight_level(c, 10) == 3);
}

TEST_CASE("exponent fits")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    const auto table = growth_table(t, 6561);
    const auto gk = estimate_exponent(table, "gk");
    CHECK(gk.window_hi == 6561);
    CHECK(gk.window_lo == 657);
    CHECK(std::abs(gk.beta - gk_constant(2, 1, 1).mid()) < 0.15);

    // Scaling every count moves the offset only.
    auto scaled = table;
    for (auto &r : scaled.rows) {
        r.counts.first *= 7;
        r.counts.second *= 7;
        r.counts.power_first *= 7;
        r.counts.power_second *= 7;
    }
    for (const char *level : {"gk", "0", "1"}) {
        const auto a = estimate_exponent(table, level), b = estimate_exponent(scaled, level);
        CHECK(std::abs(a.beta - b.beta) < 1e-6);
        CHECK(std::abs(b.offset - a.offset - std::log(7.0)) < 1e-6);
    }

    GrowthTable few = growth_table(t, 30);
    CHECK_THROWS_WITH_AS(estimate_exponent(few, "gk"), "window too small", Error);
    CHECK_THROWS_WITH_AS(estimate_exponent(table, "x"), "level must be 'gk' or a non-negative integer", Error);
}
