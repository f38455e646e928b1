#include "forest_spectra/report.hpp"

#include "forest_spectra/numeric.hpp"
#include "forest_spectra/oracles.hpp"

#include <chrono>
#include <cmath>
#include <random>

namespace forest_spectra {

using nlohmann::json;

Task parse_task(const std::string& text) {
    if (text == "charpoly") return Task::charpoly;
    if (text == "det") return Task::det;
    if (text == "minor") return Task::minor;
    if (text == "cofactor") return Task::cofactor;
    if (text == "eigenvector") return Task::eigenvector;
    if (text == "kirchhoff-charpoly") return Task::kirchhoff_charpoly;
    if (text == "tropical-spectrum") return Task::tropical_spectrum;
    if (text == "validate") return Task::validate;
    if (text == "selftest") return Task::selftest;
    throw ParseError("unknown task '" + text + "'");
}

std::string task_name(Task task) {
    switch (task) {
        case Task::charpoly: return "charpoly";
        case Task::det: return "det";
        case Task::minor: return "minor";
        case Task::cofactor: return "cofactor";
        case Task::eigenvector: return "eigenvector";
        case Task::kirchhoff_charpoly: return "kirchhoff-charpoly";
        case Task::tropical_spectrum: return "tropical-spectrum";
        case Task::validate: return "validate";
        case Task::selftest: return "selftest";
    }
    return "?";
}

namespace {

constexpr double kResidualWarningScale = 1e-8;

Mode default_mode(Task task) {
    switch (task) {
        case Task::tropical_spectrum:
        case Task::validate: return Mode::tropical;
        default: return Mode::exact;
    }
}

void check_task_mode(Task task, Mode mode) {
    const bool tropical_task = task == Task::tropical_spectrum || task == Task::validate;
    if (tropical_task && mode != Mode::tropical)
        throw InvalidQuery(task_name(task) + " requires --mode tropical");
    if (!tropical_task && mode == Mode::tropical && task != Task::selftest)
        throw InvalidQuery(task_name(task) + " requires --mode exact or float");
    if (task == Task::eigenvector && mode == Mode::tropical)
        throw InvalidQuery("eigenvector requires --mode exact or float");
}

json rational_array(const std::vector<Rational>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(rational_to_string(x));
    return a;
}

json double_array(const std::vector<double>& v) {
    json a = json::array();
    for (double x : v) a.push_back(x);
    return a;
}

int one_based_index(const std::optional<int>& idx, int n, const char* flag) {
    if (!idx) throw InvalidQuery(std::string("task needs --") + flag);
    if (*idx < 1 || *idx > n)
        throw InvalidIndex(std::string("--") + flag + " = " + std::to_string(*idx) +
                           " outside 1.." + std::to_string(n));
    return *idx - 1;
}

void check_forest_scale(int n, int max_n) {
    if (n > max_n)
        throw TooLarge("matrix side " + std::to_string(n) + " exceeds the --max-n guard (" +
                       std::to_string(max_n) +
                       "); forest enumeration grows combinatorially, raise --max-n only if you "
                       "accept the cost");
}

// Forest arcs with 1-based labels and the boundary printed as "dagger".
std::string forest_arcs_text(const Forest& f, int boundary) {
    std::string s;
    bool first = true;
    for (auto [a, b] : f.arcs()) {
        if (!first) s += ", ";
        first = false;
        s += std::to_string(a + 1) + "->";
        s += b == boundary ? "dagger" : std::to_string(b + 1);
    }
    return s.empty() ? "(no arcs)" : s;
}

struct EigenvectorPayload {
    json result;
    bool warn = false;
    double residual_value = 0.0;
    double warn_threshold = 0.0;
};

EigenvectorPayload eigenvector_exact(const SquareMatrix<Rational>& g, const std::string& lambda_text,
                                     int pivot, bool transpose, int threads) {
    const Rational lambda = parse_rational(lambda_text);
    auto r = eigenvector_components<Rational, Rational>(g, lambda, pivot, transpose, threads);

    // residual of the reconstructed eigenpair, computed exactly
    Rational worst(0);
    for (int i = 0; i < g.size(); ++i) {
        Rational acc = lambda * r.components[static_cast<std::size_t>(i)];
        for (int j = 0; j < g.size(); ++j) {
            const Rational& gij = transpose ? g(j, i) : g(i, j);
            acc -= gij * r.components[static_cast<std::size_t>(j)];
        }
        if (acc < 0) acc = -acc;
        if (acc > worst) worst = acc;
    }

    EigenvectorPayload p;
    p.result["n"] = pivot + 1;
    p.result["lambda"] = rational_to_string(lambda);
    json comps = json::array();
    for (const auto& c : r.components) comps.push_back(rational_to_string(c));
    p.result["components"] = std::move(comps);
    p.residual_value = rational_to_double(worst);
    p.result["residual"] = p.residual_value;
    p.warn_threshold = 0.0;
    p.warn = !worst.is_zero();
    return p;
}

EigenvectorPayload eigenvector_float(const SquareMatrix<double>& g, const std::string& lambda_text,
                                     int pivot, bool transpose, int threads) {
    const double lambda = rational_to_double(parse_rational(lambda_text));
    auto r = eigenvector_components<double, double>(g, lambda, pivot, transpose, threads);

    const auto host = transpose ? g.transposed() : g;
    EigenvectorPayload p;
    p.residual_value = residual(host, lambda, r.components);
    p.warn_threshold = kResidualWarningScale * (1.0 + inf_norm(g));
    p.warn = p.residual_value > p.warn_threshold;
    p.result["n"] = pivot + 1;
    p.result["lambda"] = lambda;
    p.result["components"] = double_array(r.components);
    p.result["residual"] = p.residual_value;
    return p;
}

json spectrum_to_json(const AsymptoticSpectrum& s) {
    json coeffs = json::array();
    for (std::size_t k = 0; k < s.coefficient_orders.size(); ++k) {
        const auto& c = s.coefficient_orders[k];
        json e;
        e["k"] = static_cast<int>(k);
        if (c.tropically_zero()) {
            e["V"] = nullptr;
            e["m"] = 0.0;
        } else {
            e["V"] = rational_to_string(c.order());
            e["m"] = c.prefactor();
        }
        coeffs.push_back(std::move(e));
    }

    json hull = json::array();
    for (const auto& [k, v] : s.polygon.hull) hull.push_back({k, rational_to_string(v)});

    json out;
    out["coefficient_orders"] = std::move(coeffs);
    out["newton_polygon"] = std::move(hull);
    out["convexity_ok"] = s.polygon.convexity_ok;
    if (s.simple) {
        json eigs = json::array();
        for (const auto& e : s.eigenvalues)
            eigs.push_back({{"k", e.k},
                            {"exponent", rational_to_string(e.exponent)},
                            {"Lambda", e.prefactor}});
        out["eigenvalues"] = std::move(eigs);
    } else {
        json segs = json::array();
        for (const auto& seg : s.segments)
            segs.push_back({{"exponent", rational_to_string(seg.exponent)},
                            {"multiplicity", seg.multiplicity}});
        out["eigenvalues"] = json::array();
        out["hull_segments"] = std::move(segs);
    }
    return out;
}

}  // namespace

json run_selftest() {
    std::mt19937 rng(12345);
    auto rand_entry = [&]() { return static_cast<int>(rng() % 11) - 5; };

    const int trials = 40;
    int charpoly_checked = 0, minor_checked = 0, laplace_checked = 0, kirchhoff_checked = 0;
    json failures = json::array();

    for (int t = 0; t < trials; ++t) {
        const int n = 1 + static_cast<int>(rng() % 5);
        SquareMatrix<Rational> g(n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) g(i, j) = Rational(rand_entry());

        const auto forest_route = char_poly(g);
        if (!(forest_route == cycle_cover_char_poly(g)))
            failures.push_back("charpoly vs cycle cover, trial " + std::to_string(t));
        if (!(forest_route == perm_expansion_char_poly(g)))
            failures.push_back("charpoly vs permutation expansion, trial " + std::to_string(t));
        ++charpoly_checked;

        if (determinant(g) != perm_expansion_det(g))
            failures.push_back("determinant vs permutation expansion, trial " + std::to_string(t));

        std::vector<int> struck;
        for (int v = 0; v < n; ++v)
            if (rng() % 2 == 0) struck.push_back(v);
        if (static_cast<int>(struck.size()) == n) struck.pop_back();
        Rational expect = struck.size() == static_cast<std::size_t>(n)
                              ? Rational(1)
                              : perm_expansion_det(g.minor_without(struck));
        if (diagonal_minor_det(g, struck) != expect)
            failures.push_back("diagonal minor, trial " + std::to_string(t));
        ++minor_checked;

        const Rational det = determinant(g);
        for (int row = 0; row < n; ++row) {
            Rational acc(0);
            for (int col = 0; col < n; ++col) acc += g(row, col) * cofactor(g, row, col);
            if (acc != det) failures.push_back("Laplace expansion, trial " + std::to_string(t));
        }
        ++laplace_checked;

        const auto kch = kirchhoff_char_poly(g);
        if (!(kch == perm_expansion_char_poly(kirchhoff_matrix(g))) ||
            !is_zero(kch.coefficients().front()))
            failures.push_back("Kirchhoff route, trial " + std::to_string(t));
        ++kirchhoff_checked;
    }

    json out;
    out["matrices"] = trials;
    out["charpoly_equivalence"] = charpoly_checked;
    out["minor_equivalence"] = minor_checked;
    out["laplace_expansion"] = laplace_checked;
    out["kirchhoff_route"] = kirchhoff_checked;
    out["failures"] = failures;
    out["ok"] = failures.empty();
    return out;
}

RunResult run_task(const TaskRequest& request) {
    RunResult out;
    json& report = out.report;
    report["task"] = task_name(request.task);
    const Mode mode = request.mode.value_or(default_mode(request.task));
    report["mode"] = mode_name(mode);

    const auto started = std::chrono::steady_clock::now();
    auto elapsed_ms = [&]() {
        return static_cast<long long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                          std::chrono::steady_clock::now() - started)
                                          .count());
    };

    try {
        check_task_mode(request.task, mode);

        if (request.task == Task::selftest) {
            report["n"] = 0;
            report["result"] = run_selftest();
            report["elapsed_ms"] = 0;
            if (!report["result"]["ok"].get<bool>()) {
                out.exit_code = 2;
                report["error"] = {{"kind", "SelftestFailure"},
                                   {"message", "oracle equivalence failed; see result.failures"}};
            }
            return out;
        }

        if (request.input_path.empty()) throw InvalidQuery("task needs --input FILE");
        ParsedInput input = parse_matrix_file(request.input_path, mode);
        json notes = json::array();

        const int n = input.tropical ? input.tropical->size()
                                     : (input.exact ? input.exact->size() : input.dense->size());
        report["n"] = n;
        check_forest_scale(n, request.max_n);
        if (input.exact)
            report["input_echo"] = matrix_to_json(*input.exact);
        else if (input.dense)
            report["input_echo"] = matrix_to_json(*input.dense);
        else
            report["input_echo"] = tropical_to_json(*input.tropical);

        json result;
        bool warn = false;

        switch (request.task) {
            case Task::charpoly: {
                if (input.exact)
                    result = rational_array(char_poly(*input.exact, request.threads).coefficients());
                else
                    result = double_array(char_poly(*input.dense, request.threads).coefficients());
                break;
            }
            case Task::det: {
                if (input.exact)
                    result = rational_to_string(determinant(*input.exact, request.threads));
                else
                    result = determinant(*input.dense, request.threads);
                break;
            }
            case Task::minor: {
                std::vector<int> struck;
                for (int r : request.roots) {
                    if (r < 1 || r > n)
                        throw InvalidIndex("--roots entry " + std::to_string(r) + " outside 1.." +
                                           std::to_string(n));
                    struck.push_back(r - 1);
                }
                if (input.exact)
                    result = rational_to_string(
                        diagonal_minor_det(*input.exact, struck, request.threads));
                else
                    result = diagonal_minor_det(*input.dense, struck, request.threads);
                break;
            }
            case Task::cofactor: {
                const int row = one_based_index(request.n, n, "n");
                const int col = one_based_index(request.m, n, "m");
                if (input.exact)
                    result = rational_to_string(
                        cofactor(*input.exact, row, col, request.threads));
                else
                    result = cofactor(*input.dense, row, col, request.threads);
                break;
            }
            case Task::eigenvector: {
                const int pivot = request.n ? one_based_index(request.n, n, "n") : 0;
                if (!request.lambda_text)
                    throw InvalidQuery("eigenvector needs --lambda (a rational or float literal)");
                EigenvectorPayload p =
                    input.exact ? eigenvector_exact(*input.exact, *request.lambda_text, pivot,
                                                    request.transpose, request.threads)
                                : eigenvector_float(*input.dense, *request.lambda_text, pivot,
                                                    request.transpose, request.threads);
                result = std::move(p.result);
                if (p.warn) {
                    warn = true;
                    notes.push_back("lambda does not annihilate the reconstructed vector "
                                    "(residual " +
                                    std::to_string(p.residual_value) +
                                    "); it is likely not an eigenvalue of the input");
                }
                break;
            }
            case Task::kirchhoff_charpoly: {
                if (input.exact)
                    result = rational_array(
                        kirchhoff_char_poly(*input.exact, request.threads).coefficients());
                else
                    result = double_array(
                        kirchhoff_char_poly(*input.dense, request.threads).coefficients());
                break;
            }
            case Task::tropical_spectrum: {
                const auto spectrum = analyze_spectrum(*input.tropical, request.threads);
                result = spectrum_to_json(spectrum);
                for (const auto& w : tropical_witnesses(*input.tropical)) {
                    if (w.value.tropically_zero()) {
                        notes.push_back("coefficient k=" + std::to_string(w.k) +
                                        ": tropically zero (no contributing forest)");
                        continue;
                    }
                    notes.push_back(
                        "coefficient k=" + std::to_string(w.k) + ": order V=" +
                        rational_to_string(w.value.order()) + ", prefactor m=" +
                        std::to_string(w.value.prefactor()) + ", attained by " +
                        std::to_string(w.minimizer_count) + " forest(s), e.g. " +
                        forest_arcs_text(*w.example, input.tropical->boundary()));
                }
                notes.push_back(
                    "orders are exact minima over enumerated boundary-rooted forests; the "
                    "witnesses above certify each coefficient independently of any published "
                    "display of this input");
                if (!spectrum.simple)
                    notes.push_back("degenerate slopes: per-eigenvalue prefactors unavailable, "
                                    "see hull_segments");
                break;
            }
            case Task::validate: {
                if (request.eps.size() < 2)
                    throw InvalidQuery("validate needs --eps with at least two values");
                const auto rep =
                    validate_asymptotics(*input.tropical, request.eps, request.threads);
                result["eps"] = double_array(rep.eps);
                json eigs = json::array();
                for (const auto& e : rep.eigenvalues)
                    eigs.push_back({{"k", e.k},
                                    {"exponent_predicted", e.exponent_predicted},
                                    {"Lambda_predicted", e.prefactor_predicted},
                                    {"exponent_estimate", e.exponent_estimate},
                                    {"Lambda_estimate", e.prefactor_estimate},
                                    {"exponent_rel_err", e.exponent_rel_err},
                                    {"Lambda_rel_err", e.prefactor_rel_err}});
                result["eigenvalues"] = std::move(eigs);
                if (rep.underflow) {
                    warn = true;
                    notes.push_back("some realized entries underflowed to zero at the smallest "
                                    "eps; estimates may be meaningless");
                }
                break;
            }
            case Task::selftest: break;  // handled above
        }

        report["result"] = std::move(result);
        if (warn) report["warning"] = true;
        if (!notes.empty()) report["notes"] = std::move(notes);
        // exact reports are byte-identical across runs; wall-clock timing
        // would break that, so it is suppressed there
        report["elapsed_ms"] = mode == Mode::exact ? 0 : elapsed_ms();
        return out;
    } catch (const InputError& e) {
        report["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        out.exit_code = 1;
    } catch (const ComputeError& e) {
        report["error"] = {{"kind", e.kind()}, {"message", e.what()}};
        out.exit_code = 2;
    } catch (const nlohmann::json::exception& e) {
        report["error"] = {{"kind", "ParseError"}, {"message", e.what()}};
        out.exit_code = 1;
    } catch (const std::exception& e) {
        report["error"] = {{"kind", "InternalError"}, {"message", e.what()}};
        out.exit_code = 2;
    }
    report["elapsed_ms"] = 0;
    return out;
}

}  // namespace forest_spectra
