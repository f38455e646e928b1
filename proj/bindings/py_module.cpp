#include "forest_spectra/numeric.hpp"
#include "forest_spectra/oracles.hpp"
#include "forest_spectra/report.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <variant>

namespace py = pybind11;
using namespace forest_spectra;

namespace {

SquareMatrix<double> dense_from_py(const std::vector<std::vector<double>>& rows) {
    return SquareMatrix<double>::from_rows(rows);
}

// exact entries arrive as ints or "p/q" strings
SquareMatrix<Rational> exact_from_py(const py::sequence& rows) {
    std::vector<std::vector<Rational>> out;
    for (const auto& row : rows) {
        std::vector<Rational> r;
        for (const auto& cell : row.cast<py::sequence>()) {
            if (py::isinstance<py::int_>(cell))
                r.push_back(Rational(BigInt(py::str(cell).cast<std::string>())));
            else
                r.push_back(parse_rational(cell.cast<std::string>()));
        }
        out.push_back(std::move(r));
    }
    return SquareMatrix<Rational>::from_rows(std::move(out));
}

py::list rational_list(const std::vector<Rational>& v) {
    py::list out;
    for (const auto& x : v) out.append(rational_to_string(x));
    return out;
}

ExponentialMarkovInput tropical_from_py(int n, const py::sequence& arcs) {
    std::vector<ExponentialMarkovInput::Entry> entries;
    for (const auto& item : arcs) {
        py::dict d = item.cast<py::dict>();
        ExponentialMarkovInput::Entry e;
        e.from = d["from"].cast<int>() - 1;
        const py::object to = d["to"];
        if (py::isinstance<py::str>(to)) {
            if (to.cast<std::string>() != "dagger")
                throw InvalidIndex("arc target string must be 'dagger'");
            e.to = n;
        } else {
            e.to = to.cast<int>() - 1;
        }
        const py::object v = d["V"];
        if (py::isinstance<py::str>(v))
            e.order = parse_rational(v.cast<std::string>());
        else
            e.order = Rational(v.cast<long long>());
        e.prefactor = d["m"].cast<double>();
        entries.push_back(std::move(e));
    }
    return ExponentialMarkovInput(n, std::move(entries));
}

py::dict spectrum_to_py(const AsymptoticSpectrum& s) {
    py::dict out;
    py::list coeffs;
    for (std::size_t k = 0; k < s.coefficient_orders.size(); ++k) {
        const auto& c = s.coefficient_orders[k];
        py::dict e;
        e["k"] = static_cast<int>(k);
        if (c.tropically_zero()) {
            e["V"] = py::none();
            e["m"] = 0.0;
        } else {
            e["V"] = rational_to_string(c.order());
            e["m"] = c.prefactor();
        }
        coeffs.append(e);
    }
    out["coefficient_orders"] = coeffs;

    py::list hull;
    for (const auto& [k, v] : s.polygon.hull)
        hull.append(py::make_tuple(k, rational_to_string(v)));
    out["newton_polygon"] = hull;
    out["convexity_ok"] = s.polygon.convexity_ok;
    out["simple"] = s.simple;

    py::list eigs;
    for (const auto& e : s.eigenvalues) {
        py::dict d;
        d["k"] = e.k;
        d["exponent"] = rational_to_string(e.exponent);
        d["Lambda"] = e.prefactor;
        eigs.append(d);
    }
    out["eigenvalues"] = eigs;

    py::list segs;
    for (const auto& seg : s.segments) {
        py::dict d;
        d["exponent"] = rational_to_string(seg.exponent);
        d["multiplicity"] = seg.multiplicity;
        segs.append(d);
    }
    out["hull_segments"] = segs;
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "signless rooted-forest formulas for matrix analysis";
    m.attr("__version__") = "0.1.0";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ComputeError>(m, "ComputeError", PyExc_ArithmeticError);

    m.def(
        "char_poly",
        [](py::sequence rows, bool exact) -> py::object {
            if (exact) return rational_list(char_poly(exact_from_py(rows)).coefficients());
            auto coeffs = char_poly(dense_from_py(rows.cast<std::vector<std::vector<double>>>()))
                              .coefficients();
            return py::cast(coeffs);
        },
        py::arg("matrix"), py::arg("exact") = false,
        "Coefficients of det(lambda I - G), ascending; rationals as 'p/q' strings when exact.");

    m.def(
        "determinant",
        [](py::sequence rows, bool exact) -> py::object {
            if (exact) return py::cast(rational_to_string(determinant(exact_from_py(rows))));
            return py::cast(determinant(dense_from_py(rows.cast<std::vector<std::vector<double>>>())));
        },
        py::arg("matrix"), py::arg("exact") = false);

    m.def(
        "minor_det",
        [](py::sequence rows, std::vector<int> struck, bool exact) -> py::object {
            for (int& v : struck) --v;  // 1-based in, 0-based inside
            if (exact)
                return py::cast(rational_to_string(diagonal_minor_det(exact_from_py(rows), struck)));
            return py::cast(diagonal_minor_det(
                dense_from_py(rows.cast<std::vector<std::vector<double>>>()), struck));
        },
        py::arg("matrix"), py::arg("struck_roots"), py::arg("exact") = false,
        "Determinant of the diagonal minor with the given 1-based rows/columns struck out.");

    m.def(
        "cofactor",
        [](py::sequence rows, int n, int m_, bool exact) -> py::object {
            if (exact)
                return py::cast(rational_to_string(cofactor(exact_from_py(rows), n - 1, m_ - 1)));
            return py::cast(
                cofactor(dense_from_py(rows.cast<std::vector<std::vector<double>>>()), n - 1, m_ - 1));
        },
        py::arg("matrix"), py::arg("n"), py::arg("m"), py::arg("exact") = false,
        "Algebraic adjunct of entry (n, m), 1-based.");

    m.def(
        "eigenvector",
        [](std::vector<std::vector<double>> rows, std::complex<double> lam, int pivot,
           bool transpose) {
            auto g = dense_from_py(rows);
            auto r = eigenvector_components<double, std::complex<double>>(g, lam, pivot - 1,
                                                                          transpose);
            py::dict out;
            out["n"] = pivot;
            out["lambda"] = r.lambda;
            out["components"] = r.components;
            const auto host = transpose ? g.transposed() : g;
            out["residual"] = residual(host, lam, r.components);
            return out;
        },
        py::arg("matrix"), py::arg("lam"), py::arg("n") = 1, py::arg("transpose") = false,
        "Eigenvector components for a known eigenvalue, normalized to 1 at pivot n (1-based); "
        "transpose=True gives the left eigenvector.");

    m.def(
        "kirchhoff_char_poly",
        [](py::sequence rows, bool exact) -> py::object {
            if (exact)
                return rational_list(kirchhoff_char_poly(exact_from_py(rows)).coefficients());
            return py::cast(
                kirchhoff_char_poly(dense_from_py(rows.cast<std::vector<std::vector<double>>>()))
                    .coefficients());
        },
        py::arg("matrix"), py::arg("exact") = false);

    m.def(
        "forest_count",
        [](py::sequence rows, std::vector<int> required_roots, py::object trees, bool augmented) {
            auto g = dense_from_py(rows.cast<std::vector<std::vector<double>>>());
            ForestQuery q;
            q.include_zero_arcs = true;
            for (int v : required_roots) q.required_roots.push_back(v - 1);
            long long count = 0;
            auto visit = [&](const Forest&, const double&) { ++count; };
            if (augmented) {
                auto aug = build_augmented(g);
                if (!trees.is_none()) {
                    q.extra_trees = trees.cast<int>() - static_cast<int>(q.required_roots.size());
                }
                enumerate_forests(aug, q, visit);
            } else {
                if (!trees.is_none())
                    q.extra_trees = trees.cast<int>() - static_cast<int>(q.required_roots.size());
                enumerate_forests(digraph_of(g), q, visit);
            }
            return count;
        },
        py::arg("matrix"), py::arg("required_roots") = std::vector<int>{},
        py::arg("trees") = py::none(), py::arg("augmented") = false,
        "Number of rooted spanning forests (zero-weight arcs included). With augmented=True the "
        "boundary vertex counts as one more vertex and is always a root; pass 1-based roots and, "
        "for the boundary, matrix side + 1.");

    m.def(
        "tropical_spectrum",
        [](int n, py::sequence arcs) { return spectrum_to_py(analyze_spectrum(tropical_from_py(n, arcs))); },
        py::arg("n"), py::arg("arcs"),
        "Asymptotic spectrum of a sub-generator with entries m*exp(-V/eps): coefficient orders, "
        "Newton polygon and per-eigenvalue (exponent, Lambda) when orders are simple.");

    m.def(
        "validate_asymptotics",
        [](int n, py::sequence arcs, std::vector<double> eps) {
            const auto rep = validate_asymptotics(tropical_from_py(n, arcs), std::move(eps));
            py::dict out;
            out["eps"] = rep.eps;
            out["underflow"] = rep.underflow;
            py::list eigs;
            for (const auto& e : rep.eigenvalues) {
                py::dict d;
                d["k"] = e.k;
                d["exponent_predicted"] = e.exponent_predicted;
                d["Lambda_predicted"] = e.prefactor_predicted;
                d["exponent_estimate"] = e.exponent_estimate;
                d["Lambda_estimate"] = e.prefactor_estimate;
                d["exponent_rel_err"] = e.exponent_rel_err;
                d["Lambda_rel_err"] = e.prefactor_rel_err;
                eigs.append(d);
            }
            out["eigenvalues"] = eigs;
            return out;
        },
        py::arg("n"), py::arg("arcs"), py::arg("eps"),
        "Empirical finite-eps check of the predicted eigenvalue asymptotics.");

    m.def(
        "numeric_eigenpairs",
        [](std::vector<std::vector<double>> rows) {
            auto pairs = numeric_eigenpairs(dense_from_py(rows));
            py::list out;
            for (const auto& p : pairs) out.append(py::make_tuple(p.lambda, p.vector));
            return out;
        },
        py::arg("matrix"), "Dense eigensolve oracle (approximate).");

    m.def("selftest", [] { return py::module_::import("json").attr("loads")(run_selftest().dump()); },
          "Built-in oracle-equivalence sweep; returns the summary dict.");
}
