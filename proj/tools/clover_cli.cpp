#include <CLI11.hpp>

#include <clover/analytics.hpp>
#include <clover/closure.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace clover;

namespace {

struct UsageError : Error {
    using Error::Error;
};

struct Sink {
    std::string path;

    void write(const std::string &text) const
    {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream out(path);
        if (!out) {
            throw UsageError("cannot write " + path);
        }
        out << text;
    }
};

BigInt parse_weight(const std::string &text, const ParameterTuple &tuple)
{
    // "wt(v_N)" or a decimal integer
    if (text.rfind("wt(v_", 0) == 0 && text.back() == ')') {
        GrowthCounter c(tuple);
        return c.W(std::stoul(text.substr(5, text.size() - 6)));
    }
    if (text.empty() || text.find_first_not_of("0123456789") != std::string::npos) {
        throw UsageError("weight must be a positive integer or wt(v_N), got '" + text + "'");
    }
    return BigInt(text);
}

int emit(const std::vector<VerificationReport> &reports, const Sink &sink, bool quiet)
{
    std::string lines;
    bool fail = false;
    for (const auto &r : reports) {
        lines += r.json_lines();
        fail = fail || r.any_fail();
        if (!quiet) {
            std::cerr << "[" << r.suite() << "]\n" << r.summary_table();
        }
    }
    sink.write(lines);
    return fail ? 1 : 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Restricted Lie algebras of clover type: counting, verification and growth analytics"};
    app.require_subcommand(1);

    std::uint32_t p = 2;
    std::string spec, out, format = "csv", in, level = "gk", suite = "period", weight = "0", interval = "1.1,2.9";
    std::size_t depth = 4, samples = 200, max_terms = 5, pairs = 50;
    std::uint64_t S = 0, R = 0, gmax = 64;
    bool check = false, dense = false, scan = false, quiet = false;
    std::optional<std::uint64_t> seed_given;

    const auto common = [&](CLI::App *c, bool tuple_required) {
        c->add_option("--p", p, "characteristic")->required()->check(CLI::Range(2u, 1u << 20));
        auto *t = c->add_option("--tuple", spec, "constant:S,R | periodic:(S,R);... | explicit:... | kappa:k | qkappa:q,k");
        if (tuple_required) {
            t->required();
        }
        c->add_option("--out", out, "write output to a file");
        c->add_flag("--quiet", quiet, "no summary table on stderr");
    };

    auto *growth = app.add_subcommand("growth", "growth table by counting standard monomials");
    common(growth, true);
    growth->add_option("--max-weight", weight, "largest weight m (integer or wt(v_N))")->required();
    growth->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    growth->add_flag("--dense", dense, "every m up to the cap (refuses above 2^20 rows)");

    auto *basis = app.add_subcommand("basis", "closure dimensions; --check runs basis, grading and relation suites");
    common(basis, true);
    basis->add_option("--depth", depth, "truncation depth N")->required();
    basis->add_flag("--check", check);

    auto *gk = app.add_subcommand("gk", "GK dimension of periodic tuples");
    gk->add_option("--p", p)->required();
    gk->add_option("--S", S);
    gk->add_option("--R", R);
    gk->add_option("--tuple", spec);
    gk->add_flag("--scan", scan, "lambda over 1 <= S,R <= --max");
    gk->add_option("--max", gmax);
    gk->add_option("--interval", interval, "gap window a,b");
    gk->add_option("--out", out);

    auto *nil = app.add_subcommand("nil", "nil-index sampling of random closure elements");
    common(nil, true);
    nil->add_option("--depth", depth)->required();
    nil->add_option("--samples", samples);
    nil->add_option("--seed", seed_given, "required; no ambient entropy");
    nil->add_option("--max-terms", max_terms);

    auto *bounds = app.add_subcommand("bounds", "explicit finite-m growth inequalities over a growth table");
    common(bounds, true);
    bounds->add_option("--max-weight", weight)->required();
    bounds->add_option("--suite", suite)->check(CLI::IsMember({"period", "quasilinear", "cubic"}));

    auto *fit = app.add_subcommand("fit", "exponent fit over a growth table");
    fit->add_option("--in", in, "CSV produced by 'growth'")->required();
    fit->add_option("--level", level, "gk or q >= 0");

    auto *axioms = app.add_subcommand("axioms", "restricted axioms and self-similarity");
    common(axioms, true);
    axioms->add_option("--depth", depth)->required();
    axioms->add_option("--pairs", pairs);
    axioms->add_option("--seed", seed_given)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        const Sink sink{out};
        const auto tuple = [&] { return ParameterTuple::parse(p, spec); };

        if (*growth) {
            const auto t = tuple();
            GrowthOptions opt;
            opt.force_dense = dense;
            const auto table = growth_table(t, parse_weight(weight, t), opt);
            sink.write(format == "csv" ? table.to_csv() : table.to_json().dump(1) + "\n");
            return 0;
        }
        if (*basis) {
            const auto t = tuple();
            if (!check) {
                const auto ctx = make_context(t, depth);
                const auto B = clover_closure(ctx);
                std::ostringstream os;
                os << "weight,dimension\n";
                for (const auto &[w, d] : B.dims_by_weight()) {
                    os << w << "," << d << "\n";
                }
                sink.write(os.str());
                return 0;
            }
            return emit({verify_basis_theorem(t, depth), verify_grading(t, depth), relation_suite(t, depth)}, sink, quiet);
        }
        if (*gk) {
            if (scan) {
                const auto comma = interval.find(',');
                if (comma == std::string::npos) {
                    throw UsageError("--interval must be a,b");
                }
                const auto s = gk_density_scan(p, gmax, gmax, std::stod(interval.substr(0, comma)),
                                               std::stod(interval.substr(comma + 1)));
                sink.write(s.to_json().dump(1) + "\n");
                return s.all_in_unit_range ? 0 : 1;
            }
            if (spec.empty() && (S == 0 || R == 0)) {
                throw UsageError("gk needs --S and --R, or --tuple");
            }
            const auto t = spec.empty() ? ParameterTuple::constant(p, S, R) : tuple();
            sink.write(gk_periodic(t).to_json().dump() + "\n");
            return 0;
        }
        if (*nil) {
            if (!seed_given) {
                throw UsageError("nil requires --seed");
            }
            return emit({nil_sampling(tuple(), depth, {samples, *seed_given, max_terms})}, sink, quiet);
        }
        if (*bounds) {
            const auto t = tuple();
            const BigInt M = parse_weight(weight, t);
            if (suite == "cubic") {
                return emit({check_cubic_bounds(t, M)}, sink, quiet);
            }
            const auto table = growth_table(t, M);
            return emit({suite == "period" ? check_growth_sandwich(t, table) : check_quasilinear_bounds(t, table)}, sink,
                        quiet);
        }
        if (*fit) {
            std::ifstream f(in);
            if (!f) {
                throw UsageError("cannot read " + in);
            }
            std::stringstream buf;
            buf << f.rdbuf();
            sink.write(estimate_exponent(GrowthTable::from_csv(buf.str()), level).to_json().dump() + "\n");
            return 0;
        }
        if (*axioms) {
            const auto t = tuple();
            std::vector<VerificationReport> reps{restricted_axiom_suite(t, depth, pairs, *seed_given)};
            if (t.is_periodic()) {
                reps.push_back(self_similarity_decompose(t, std::max(depth, 2 * *t.period())));
            }
            return emit(reps, sink, quiet);
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
