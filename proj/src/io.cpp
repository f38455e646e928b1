#include "forest_spectra/io.hpp"

#include "forest_spectra/errors.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace forest_spectra {

using nlohmann::json;

Mode parse_mode(const std::string& text) {
    if (text == "exact") return Mode::exact;
    if (text == "float") return Mode::floating;
    if (text == "tropical") return Mode::tropical;
    throw ParseError("unknown mode '" + text + "' (expected exact, float or tropical)");
}

std::string mode_name(Mode mode) {
    switch (mode) {
        case Mode::exact: return "exact";
        case Mode::floating: return "float";
        case Mode::tropical: return "tropical";
    }
    return "?";
}

namespace {

Rational exact_entry(const json& v, const std::string& where) {
    if (v.is_number_integer()) return Rational(v.get<long long>());
    if (v.is_number_unsigned()) return Rational(v.get<unsigned long long>());
    if (v.is_string()) return parse_rational(v.get<std::string>());
    if (v.is_number_float())
        throw NonRationalInExactMode("non-integer number at " + where +
                                     " in exact mode; write it as a \"p/q\" or decimal string");
    throw ParseError("entry at " + where + " is not a number or string");
}

double dense_entry(const json& v, const std::string& where) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return rational_to_double(parse_rational(v.get<std::string>()));
    throw ParseError("entry at " + where + " is not a number or string");
}

template <class S, class EntryFn>
SquareMatrix<S> matrix_from_json_impl(const json& j, EntryFn entry) {
    if (!j.is_object() || !j.contains("entries"))
        throw ParseError("matrix JSON must be an object with an \"entries\" array");
    const json& rows = j["entries"];
    if (!rows.is_array() || rows.empty()) throw ParseError("\"entries\" must be a nonempty array");
    const int n = static_cast<int>(rows.size());
    if (j.contains("n") && j["n"].get<int>() != n)
        throw DimensionMismatch("\"n\" = " + j["n"].dump() + " but \"entries\" has " +
                                std::to_string(n) + " rows");
    SquareMatrix<S> m(n);
    for (int i = 0; i < n; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != n)
            throw DimensionMismatch("row " + std::to_string(i + 1) + " has " +
                                    std::to_string(row.size()) + " entries, expected " +
                                    std::to_string(n));
        for (int c = 0; c < n; ++c)
            m(i, c) = entry(row[static_cast<std::size_t>(c)],
                            "row " + std::to_string(i + 1) + ", column " + std::to_string(c + 1));
    }
    return m;
}

// CSV: one row per line, comma-separated. Cells go through the rational
// parser so exact and float modes read the same file.
template <class S>
SquareMatrix<S> matrix_from_csv(const std::string& text) {
    std::vector<std::vector<S>> rows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        if (blank) continue;
        std::vector<S> row;
        std::stringstream cells(line);
        std::string cell;
        int col = 0;
        while (std::getline(cells, cell, ',')) {
            ++col;
            try {
                Rational r = parse_rational(cell);
                if constexpr (std::is_same_v<S, Rational>)
                    row.push_back(r);
                else
                    row.push_back(rational_to_double(r));
            } catch (const ParseError& e) {
                throw ParseError(std::string("bad cell: ") + e.what(), lineno, col);
            }
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError("CSV input is empty");
    const std::size_t n = rows.size();
    for (std::size_t i = 0; i < n; ++i)
        if (rows[i].size() != n)
            throw DimensionMismatch("CSV row " + std::to_string(i + 1) + " has " +
                                    std::to_string(rows[i].size()) + " columns, expected " +
                                    std::to_string(n) + " (matrix must be square)");
    return SquareMatrix<S>::from_rows(std::move(rows));
}

json parse_json_or_rethrow(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports a byte offset; recover line/column for the message
        std::size_t offset = e.byte;
        int line = 1, col = 1;
        for (std::size_t i = 0; i < text.size() && i + 1 < offset; ++i) {
            if (text[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        throw ParseError(std::string("JSON: ") + e.what(), line, col);
    }
}

}  // namespace

SquareMatrix<Rational> exact_matrix_from_json(const json& j) {
    return matrix_from_json_impl<Rational>(j, exact_entry);
}

SquareMatrix<double> dense_matrix_from_json(const json& j) {
    return matrix_from_json_impl<double>(j, dense_entry);
}

ExponentialMarkovInput tropical_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("arcs"))
        throw ParseError("tropical JSON must be an object with \"n\" and \"arcs\"");
    const int n = j["n"].get<int>();
    if (n < 1) throw DimensionMismatch("\"n\" must be >= 1");
    if (!j["arcs"].is_array()) throw ParseError("\"arcs\" must be an array");

    std::vector<ExponentialMarkovInput::Entry> entries;
    int idx = 0;
    for (const json& a : j["arcs"]) {
        ++idx;
        const std::string where = "arc #" + std::to_string(idx);
        if (!a.is_object() || !a.contains("from") || !a.contains("to") || !a.contains("V") ||
            !a.contains("m"))
            throw ParseError(where + " must be an object with from, to, V, m");
        ExponentialMarkovInput::Entry e;
        e.from = a["from"].get<int>() - 1;
        if (a["to"].is_string()) {
            if (a["to"].get<std::string>() != "dagger")
                throw ParseError(where + ": target string must be \"dagger\"");
            e.to = n;
        } else {
            e.to = a["to"].get<int>() - 1;
        }
        const json& v = a["V"];
        if (v.is_string())
            e.order = parse_rational(v.get<std::string>());
        else if (v.is_number_integer() || v.is_number_unsigned())
            e.order = Rational(v.get<long long>());
        else
            throw ParseError(where + ": V must be an integer or a rational string");
        if (!a["m"].is_number()) throw ParseError(where + ": m must be a number");
        e.prefactor = a["m"].get<double>();
        entries.push_back(std::move(e));
    }
    return ExponentialMarkovInput(n, std::move(entries));
}

ParsedInput parse_matrix_text(const std::string& text, Mode mode) {
    ParsedInput out;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) throw ParseError("input is empty");

    if (text[first] == '{') {
        json j = parse_json_or_rethrow(text);
        if (j.contains("arcs")) {
            if (mode != Mode::tropical)
                throw InvalidQuery("tropical input requires --mode tropical");
            out.tropical = tropical_from_json(j);
            return out;
        }
        switch (mode) {
            case Mode::exact: out.exact = exact_matrix_from_json(j); return out;
            case Mode::floating: out.dense = dense_matrix_from_json(j); return out;
            case Mode::tropical:
                throw InvalidQuery("tropical mode needs an arcs file, not a dense matrix");
        }
    }
    // CSV
    switch (mode) {
        case Mode::exact: out.exact = matrix_from_csv<Rational>(text); return out;
        case Mode::floating: out.dense = matrix_from_csv<double>(text); return out;
        case Mode::tropical: throw InvalidQuery("tropical mode needs an arcs JSON file, not CSV");
    }
    throw ParseError("unreachable");
}

ParsedInput parse_matrix_file(const std::string& path, Mode mode) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_matrix_text(buf.str(), mode);
}

json matrix_to_json(const SquareMatrix<Rational>& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(rational_to_string(m(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.size()}, {"entries", std::move(rows)}};
}

json matrix_to_json(const SquareMatrix<double>& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return json{{"n", m.size()}, {"entries", std::move(rows)}};
}

json tropical_to_json(const ExponentialMarkovInput& input) {
    json arcs = json::array();
    for (const auto& e : input.entries()) {
        json a;
        a["from"] = e.from + 1;
        if (e.to == input.boundary())
            a["to"] = "dagger";
        else
            a["to"] = e.to + 1;
        a["V"] = rational_to_string(e.order);
        a["m"] = e.prefactor;
        arcs.push_back(std::move(a));
    }
    return json{{"n", input.size()}, {"arcs", std::move(arcs)}};
}

}  // namespace forest_spectra
