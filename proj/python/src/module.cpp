#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <clover/analytics.hpp>
#include <clover/closure.hpp>

namespace py = pybind11;
using namespace clover;

namespace {

py::int_ to_py(const BigInt &n)
{
    const std::string s = n.str();
    return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

BigInt from_py(const py::int_ &n) { return BigInt(py::str(n).cast<std::string>()); }

py::object to_py(const nlohmann::json &j) { return py::module_::import("json").attr("loads")(j.dump()); }

PivotKind kind_of(const std::string &k)
{
    if (k == "v") {
        return PivotKind::v;
    }
    if (k == "w") {
        return PivotKind::w;
    }
    if (k == "u") {
        return PivotKind::u;
    }
    throw py::value_error("pivot kind must be 'v', 'w' or 'u'");
}

py::dict report_dict(const VerificationReport &r)
{
    py::list records;
    for (const auto &rec : r.records()) {
        py::dict d;
        d["check"] = rec.check;
        d["params"] = to_py(rec.params);
        d["status"] = std::string(status_name(rec.status));
        if (!rec.witness.empty()) {
            d["witness"] = rec.witness;
        }
        records.append(d);
    }
    py::dict out;
    out["suite"] = r.suite();
    out["records"] = records;
    out["summary"] = to_py(r.summary());
    out["passed"] = !r.any_fail();
    return out;
}

py::list table_rows(const GrowthTable &t)
{
    py::list rows;
    for (const auto &row : t.rows) {
        py::dict d;
        d["m"] = to_py(row.m);
        d["first"] = to_py(row.counts.first);
        d["second"] = to_py(row.counts.second);
        d["power_first"] = to_py(row.counts.power_first);
        d["power_second"] = to_py(row.counts.power_second);
        d["gamma"] = to_py(row.counts.total());
        rows.append(d);
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact arithmetic for the three-generated restricted Lie algebras in divided power derivations.";

    py::register_exception<Error>(m, "CloverError", PyExc_ValueError);

    py::class_<ParameterTuple>(m, "Tuple")
        .def(py::init(&ParameterTuple::parse), py::arg("p"), py::arg("spec"))
        .def_property_readonly("p", &ParameterTuple::p)
        .def_property_readonly("spec", &ParameterTuple::spec)
        .def_property_readonly("period", &ParameterTuple::period)
        .def("at", [](const ParameterTuple &t, std::size_t n) {
            const auto g = t.at(n);
            return py::make_tuple(g.S, g.R);
        })
        .def("pivot_weight", [](const ParameterTuple &t, std::size_t n) { return to_py(pivot_weight(t, n)); })
        .def("pivot_multidegree",
             [](const ParameterTuple &t, std::size_t n, const std::string &k) {
                 const auto w = pivot_multidegree(t, n, kind_of(k));
                 return py::make_tuple(to_py(w[0]), to_py(w[1]), to_py(w[2]));
             })
        .def("trusted_bound", [](const ParameterTuple &t, std::size_t depth) {
            return to_py(trusted_weight_bound(t, depth));
        })
        .def("__repr__", [](const ParameterTuple &t) {
            return "Tuple(" + std::to_string(t.p()) + ", '" + t.spec() + "')";
        });

    py::class_<ContextData, std::shared_ptr<ContextData>>(m, "Context");
    m.def(
        "context", [](const ParameterTuple &t, std::size_t depth) { return std::const_pointer_cast<ContextData>(make_context(t, depth)); },
        py::arg("tuple"), py::arg("depth"));

    py::class_<Derivation>(m, "Derivation")
        .def("__add__", &Derivation::operator+)
        .def("__sub__", py::overload_cast<const Derivation &>(&Derivation::operator-, py::const_))
        .def("__neg__", py::overload_cast<>(&Derivation::operator-, py::const_))
        .def("__mul__", &Derivation::scaled)
        .def("__rmul__", &Derivation::scaled)
        .def("__eq__", [](const Derivation &a, const Derivation &b) { return a == b; })
        .def("__str__", &Derivation::str)
        .def("__repr__", [](const Derivation &d) { return "<Derivation " + d.str() + ">"; })
        .def("is_zero", &Derivation::is_zero)
        .def("term_count", &Derivation::term_count)
        .def("multidegree", [](const Derivation &d) -> py::object {
            const auto w = d.multidegree();
            if (!w) {
                return py::none();
            }
            return py::make_tuple(to_py((*w)[0]), to_py((*w)[1]), to_py((*w)[2]));
        });

    m.def(
        "pivot",
        [](const std::string &k, std::size_t i, const std::shared_ptr<ContextData> &ctx) { return pivot(kind_of(k), i, ctx); },
        py::arg("kind"), py::arg("i"), py::arg("context"));
    m.def("bracket", &bracket);
    m.def("p_power", [](const Derivation &d) { return p_power(d); });

    m.def(
        "closure_dimensions",
        [](const std::shared_ptr<ContextData> &ctx) {
            py::dict out;
            for (const auto &[w, d] : clover_closure(ctx).dims_by_weight()) {
                out[to_py(w)] = d;
            }
            return out;
        },
        py::arg("context"));

    m.def(
        "growth_table",
        [](const ParameterTuple &t, const py::int_ &max_weight, bool dense) {
            GrowthOptions o;
            o.force_dense = dense;
            return table_rows(growth_table(t, from_py(max_weight), o));
        },
        py::arg("tuple"), py::arg("max_weight"), py::arg("dense") = false);

    m.def(
        "gk_constant",
        [](std::uint32_t p, std::uint64_t S, std::uint64_t R) {
            const auto i = gk_constant(p, S, R);
            return py::make_tuple(i.lower(), i.upper());
        },
        py::arg("p"), py::arg("S"), py::arg("R"));

    m.def("relation_suite", [](const ParameterTuple &t, std::size_t depth) { return report_dict(relation_suite(t, depth)); });
    m.def("verify_basis", [](const ParameterTuple &t, std::size_t depth) { return report_dict(verify_basis_theorem(t, depth)); });
    m.def(
        "nil_sampling",
        [](const ParameterTuple &t, std::size_t depth, std::size_t samples, std::uint64_t seed, std::size_t max_terms) {
            return report_dict(nil_sampling(t, depth, {samples, seed, max_terms}));
        },
        py::arg("tuple"), py::arg("depth"), py::arg("samples") = 200, py::arg("seed"), py::arg("max_terms") = 5);
    m.def(
        "growth_sandwich",
        [](const ParameterTuple &t, const py::int_ &max_weight) {
            GrowthOptions o;
            o.force_dense = true;
            return report_dict(check_growth_sandwich(t, growth_table(t, from_py(max_weight), o)));
        },
        py::arg("tuple"), py::arg("max_weight"));
}
