#include <doctest.h>

#include <clover/closure.hpp>

#include "support.hpp"

using namespace clover;
using namespace testing_support;

namespace {

// Dense Gaussian elimination over F_p, used as the rank oracle.
std::size_t dense_rank(std::vector<SparseVec> rows, std::uint32_t p)
{
    std::vector<TermKey> keys;
    for (const auto &r : rows) {
        for (const auto &[k, c] : r) {
            keys.push_back(k);
        }
    }
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    std::vector<std::vector<std::uint32_t>> M;
    for (const auto &r : rows) {
        std::vector<std::uint32_t> row(keys.size(), 0);
        for (const auto &[k, c] : r) {
            row[std::lower_bound(keys.begin(), keys.end(), k) - keys.begin()] = c;
        }
        M.push_back(row);
    }
    const PrimeField F(p);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < keys.size() && rank < M.size(); ++col) {
        std::size_t piv = rank;
        while (piv < M.size() && M[piv][col] == 0) {
            ++piv;
        }
        if (piv == M.size()) {
            continue;
        }
        std::swap(M[piv], M[rank]);
        const auto inv = F.inv(M[rank][col]);
        for (std::size_t r = 0; r < M.size(); ++r) {
            if (r != rank && M[r][col] != 0) {
                const auto c = F.mul(M[r][col], inv);
                for (std::size_t j = 0; j < keys.size(); ++j) {
                    M[r][j] = F.sub(M[r][j], F.mul(c, M[rank][j]));
                }
            }
        }
        ++rank;
    }
    return rank;
}

std::map<BigInt, BigInt> counted_dims(const ParameterTuple &t, const BigInt &W, FamilyFilter f = FamilyFilter::all())
{
    std::map<BigInt, BigInt> out;
    for (const auto &d : enumerate(t, f, W)) {
        out[monomial_weight(d, t).wt()] += 1;
    }
    return out;
}

} // namespace

TEST_CASE("echelon rank agrees with dense elimination")
{
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        auto ctx = make_context(ParameterTuple::constant(p, 1, 1), 2);
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<SparseVec> rows;
            Echelon E(p);
            const int n = 1 + static_cast<int>(rng() % 8);
            std::vector<Derivation> ds;
            for (int i = 0; i < n; ++i) {
                Derivation D = random_derivation(rng, ctx, 2);
                if (i > 1 && rng() % 3 == 0) {
                    D = ds[0].scaled(2 % p == 0 ? 1 : 2) + ds[1];
                }
                ds.push_back(D);
                rows.push_back(flatten(D));
                E.insert(rows.back());
            }
            CHECK(E.rank() == dense_rank(rows, p));
            for (const auto &D : ds) {
                CHECK(E.contains(flatten(D)));
                CHECK(unflatten(flatten(D), ctx) == D);
            }
            Derivation combo(ctx);
            for (const auto &D : ds) {
                combo += D.scaled(static_cast<std::uint32_t>(rng() % p));
            }
            CHECK(E.contains(flatten(combo)));
            CHECK_FALSE(E.insert(flatten(combo)));
            for (const auto &[pivot, row] : E.rows()) {
                CHECK(row.begin()->first == pivot);
                CHECK(row.begin()->second == 1);
                for (const auto &[other, r2] : E.rows()) {
                    CHECK((other == pivot || r2.count(pivot) == 0));
                }
            }
        }
    }
}

TEST_CASE("homogeneous parts recombine and are homogeneous")
{
    auto ctx = make_context(ParameterTuple::constant(2, 1, 1), 3);
    std::mt19937_64 rng(5);
    for (int i = 0; i < 100; ++i) {
        const auto D = random_derivation(rng, ctx, 4);
        Derivation sum(ctx);
        for (const auto &[gr, part] : homogeneous_parts(D)) {
            REQUIRE(part.multidegree().has_value());
            CHECK(*part.multidegree() == gr);
            sum += part;
        }
        CHECK(sum == D);
    }
}

TEST_CASE("closure of the generators alone")
{
    auto ctx = make_context(ParameterTuple::constant(2, 1, 1), 4);
    const auto B = restricted_closure({pivot(PivotKind::v, 0, ctx), pivot(PivotKind::w, 0, ctx), pivot(PivotKind::u, 0, ctx)},
                                      1, {"v0", "w0", "u0"});
    REQUIRE(B.components().size() == 3);
    for (const auto &gr : {WeightVector(1, 0, 0), WeightVector(0, 1, 0), WeightVector(0, 0, 1)}) {
        REQUIRE(B.component(gr) != nullptr);
        CHECK(B.component(gr)->vectors.size() == 1);
    }
    CHECK(B.component(WeightVector(1, 0, 0))->vectors[0].provenance == "v0");
}

TEST_CASE("closure dimensions match descriptor counts")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    auto ctx = make_context(t, 4);
    const auto B = restricted_closure({pivot(PivotKind::v, 0, ctx), pivot(PivotKind::w, 0, ctx), pivot(PivotKind::u, 0, ctx)},
                                      3);
    const auto dims = B.dims_by_weight();
    CHECK(dims.size() == 3);
    GrowthCounter gc(t);
    for (int m = 1; m <= 3; ++m) {
        CHECK(BigInt(dims.at(m)) == gc.count(m).total() - gc.count(m - 1).total());
    }
    const auto table = growth_table(t, 3);
    CHECK(table.rows.back().counts.total() == BigInt(B.total_dim()));

    // The full trusted zone at depth 4.
    const auto full = clover_closure(ctx);
    const auto expect = counted_dims(t, 9);
    for (const auto &[w, d] : full.dims_by_weight()) {
        CHECK(BigInt(d) == expect.at(w));
    }
    CHECK(full.total_dim() == 53);
}

TEST_CASE("the v,w closure is the first-type subalgebra")
{
    for (auto [p, depth] : {std::pair{2u, std::size_t(4)}, std::pair{3u, std::size_t(3)}}) {
        const auto t = ParameterTuple::constant(p, 1, 1);
        auto ctx = make_context(t, depth);
        const BigInt W = ctx->trusted_bound();
        const auto B = restricted_closure({pivot(PivotKind::v, 0, ctx), pivot(PivotKind::w, 0, ctx)}, W);
        std::map<BigInt, BigInt> expect;
        for (const auto &d : enumerate(t, FamilyFilter::all(), W)) {
            if (d.family == Family::first || d.family == Family::power_v || d.family == Family::power_w) {
                expect[monomial_weight(d, t).wt()] += 1;
            }
        }
        for (BigInt w = 1; w <= W; ++w) {
            CHECK(BigInt(B.dim_at(w)) == (expect.count(w) ? expect[w] : BigInt(0)));
        }
    }
}

TEST_CASE("closure invariants")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    auto ctx = make_context(t, 4);
    const auto v = pivot(PivotKind::v, 0, ctx), w = pivot(PivotKind::w, 0, ctx), u = pivot(PivotKind::u, 0, ctx);
    const auto a = restricted_closure({v, w, u}, 9).dims_by_weight();
    const auto b = restricted_closure({u, v, w}, 9).dims_by_weight();
    const auto c = restricted_closure({w, u, v}, 9).dims_by_weight();
    CHECK(a == b);
    CHECK(a == c);
    const auto small = restricted_closure({v, w, u}, 5).dims_by_weight();
    for (const auto &[wt, d] : small) {
        CHECK(a.at(wt) == d);
    }
    CHECK_THROWS_WITH_AS(restricted_closure({v, w, u}, 10), "outside trusted zone", Error);
    CHECK_THROWS_WITH_AS(restricted_closure({v + pivot(PivotKind::v, 1, ctx)}, 3), "generator not homogeneous", Error);

    const auto B = clover_closure(ctx);
    for (const auto *bv : B.vectors()) {
        CHECK(B.contains(bv->element));
        CHECK(bv->element.multidegree().has_value());
    }
    CHECK(B.contains(v + bracket(w, u) + bracket(v, u)));
    CHECK_FALSE(B.contains(Derivation::partial(ctx, X(0)).times(mono(ctx, {{X(0), 1}}))));
}

TEST_CASE("basis theorem suites")
{
    for (auto [p, S, R, N] : {std::array<unsigned, 4>{2, 1, 1, 4}, {3, 1, 1, 3}, {2, 2, 1, 3}}) {
        CAPTURE(p);
        CAPTURE(S);
        const auto rep = verify_basis_theorem(ParameterTuple::constant(p, S, R), N);
        CHECK(rep.count(Status::fail) == 0);
        CHECK(rep.count(Status::pass) > 0);
    }
}

TEST_CASE("grading suite")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    const auto rep = verify_grading(t, 4);
    CHECK(rep.count(Status::fail) == 0);
    auto ctx = make_context(t, 4);
    const auto vu = bracket(pivot(PivotKind::v, 0, ctx), pivot(PivotKind::u, 0, ctx));
    CHECK(*vu.multidegree() == WeightVector(1, 0, 1));
    const auto B = clover_closure(ctx);
    CHECK(B.component(WeightVector(1, 0, 1))->echelon.contains(flatten(vu)));
    const auto w2 = p_power(pivot(PivotKind::w, 0, ctx));
    CHECK(*w2.multidegree() == WeightVector(0, 2, 0));
    CHECK(B.component(WeightVector(0, 2, 0))->echelon.contains(flatten(w2)));
}

TEST_CASE("relation suite")
{
    for (std::uint32_t p : {2u, 3u}) {
        const auto rep = relation_suite(ParameterTuple::constant(p, 1, 1), 4);
        CHECK(rep.count(Status::fail) == 0);
        CHECK(rep.count(Status::pass) > 30);
        const auto lines = relation_lines(rep);
        CHECK(lines.find("power_v(m=0) 0 pass\n") == 0);
        CHECK(lines == relation_lines(relation_suite(ParameterTuple::constant(p, 1, 1), 4)));
    }
    // i = 2 identities live above W(4) = 9 at p = 2.
    const auto rep = relation_suite(ParameterTuple::constant(2, 1, 1), 4);
    CHECK(relation_lines(rep).find("lift_v 2 outside-trusted-zone") != std::string::npos);
    CHECK(relation_suite(ParameterTuple::constant(2, 2, 1), 3).count(Status::fail) == 0);
}

TEST_CASE("jacobson remainder against operator expansion")
{
    std::mt19937_64 rng(23);
    {
        auto ctx = make_context(ParameterTuple::constant(2, 1, 1), 3);
        for (int i = 0; i < 30; ++i) {
            const auto D = random_derivation(rng, ctx), E = random_derivation(rng, ctx);
            CHECK(jacobson_remainder(D, E) == bracket(D, E));
        }
    }
    auto ctx = make_context(ParameterTuple::constant(3, 1, 1), 2);
    const auto basis = dp_basis(*ctx);
    for (int i = 0; i < 10; ++i) {
        const auto D = random_derivation(rng, ctx), E = random_derivation(rng, ctx);
        const auto s = jacobson_remainder(D, E);
        for (const auto &m : basis) {
            const auto f = AlgebraElement::monomial(ctx, m);
            CHECK(apply(s, f) == apply_power(D + E, 3, f) - apply_power(D, 3, f) - apply_power(E, 3, f));
        }
    }
}

TEST_CASE("restricted axiom suite")
{
    const auto a = restricted_axiom_suite(ParameterTuple::constant(2, 1, 1), 4, 8, 3);
    CHECK(a.count(Status::fail) == 0);
    CHECK(a.records().size() == 32);
    CHECK(a.json_lines() == restricted_axiom_suite(ParameterTuple::constant(2, 1, 1), 4, 8, 3).json_lines());
    CHECK(restricted_axiom_suite(ParameterTuple::constant(3, 1, 1), 3, 4, 3).count(Status::fail) == 0);
}

TEST_CASE("nil index")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    auto ctx4 = make_context(t, 4);
    const auto B4 = clover_closure(ctx4);
    const auto v = pivot(PivotKind::v, 0, ctx4);
    // oracle: v^[2] = y0 v1 and v^[4] = 0 by direct four-fold application
    CHECK(p_power(v, true) == pivot(PivotKind::v, 1, ctx4).times(mono(ctx4, {{Y(0), 1}})));
    for (const auto &m : dp_basis(*ctx4)) {
        CHECK(apply_power(v, 4, AlgebraElement::monomial(ctx4, m)).is_zero());
    }
    auto r = nil_index(v, B4);
    CHECK(r.conclusive);
    CHECK(r.index == 4);
    CHECK(r.k == 2);

    // W(3) = 3 < wt(v^[4]) = 4
    auto ctx3 = make_context(t, 3);
    r = nil_index(pivot(PivotKind::v, 0, ctx3), clover_closure(ctx3));
    CHECK_FALSE(r.conclusive);
    CHECK(r.steps == 1);

    r = nil_index(Derivation(ctx4), B4);
    CHECK(r.conclusive);
    CHECK(r.index == 1);

    CHECK_THROWS_WITH_AS(nil_index(Derivation::partial(ctx4, X(1)).times(mono(ctx4, {{X(0), 1}})), B4),
                         "element outside algebra", Error);

    auto ctx5 = make_context(t, 5);
    const auto B5 = clover_closure(ctx5);
    r = nil_index(pivot(PivotKind::v, 0, ctx5) + pivot(PivotKind::w, 0, ctx5) + pivot(PivotKind::u, 0, ctx5), B5);
    CHECK((!r.conclusive || r.k <= 4));
}

TEST_CASE("nil sampling is seeded and never fails")
{
    const auto t = ParameterTuple::constant(2, 1, 1);
    const auto a = nil_sampling(t, 5, {40, 9, 5});
    CHECK(a.count(Status::fail) == 0);
    CHECK(a.records().size() == 40);
    CHECK(a.json_lines() == nil_sampling(t, 5, {40, 9, 5}).json_lines());
    CHECK(a.summary()["conclusive"].get<std::size_t>() == a.count(Status::pass));
}

TEST_CASE("self-similarity")
{
    const auto r = self_similarity_decompose(ParameterTuple::constant(2, 1, 1), 3);
    CHECK(r.count(Status::fail) == 0);
    bool seen_v = false, seen_u = false;
    for (const auto &rec : r.records()) {
        if (rec.check == "decomposition" && rec.params["kind"] == "v") {
            seen_v = true;
            CHECK(rec.params["local"] == "d_x0");
            CHECK(rec.params["corner"] == "x0^(1).y0^(1)");
        }
        if (rec.check == "decomposition" && rec.params["kind"] == "u") {
            seen_u = true;
            CHECK(rec.params["corner"] == "x0^(1).z0^(1)");
        }
    }
    CHECK(seen_v);
    CHECK(seen_u);
    CHECK(self_similarity_decompose(ParameterTuple::parse(3, "periodic:(1,1);(2,1)"), 4).count(Status::fail) == 0);
    CHECK_THROWS_WITH_AS(self_similarity_decompose(ParameterTuple::kappa(2, Rational::parse("1/2")), 4),
                         "self-similarity requires periodic tuple", Error);

    auto ctx = make_context(ParameterTuple::constant(2, 1, 1), 3);
    CHECK(shift_generations(pivot(PivotKind::w, 0, make_context(ParameterTuple::constant(2, 1, 1), 2)), 1, ctx) ==
          pivot(PivotKind::w, 1, ctx));
}

TEST_CASE("report rendering")
{
    VerificationReport r("demo");
    r.add("alpha", {{"i", 0}}, Status::pass);
    r.add("alpha", {{"i", 1}}, Status::fail, "x != y");
    r.add("beta", {}, Status::outside_zone);
    CHECK(r.any_fail());
    const auto lines = r.json_lines();
    CHECK(lines.find(R"({"check":"alpha","params":{"i":1},"status":"fail","suite":"demo","witness":"x != y"})") !=
          std::string::npos);
    CHECK(r.summary_table().find("alpha        1      1        0") != std::string::npos);
}
