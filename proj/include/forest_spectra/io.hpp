#pragma once

#include "forest_spectra/matrix.hpp"
#include "forest_spectra/rational.hpp"
#include "forest_spectra/tropical.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>

namespace forest_spectra {

enum class Mode { exact, floating, tropical };

Mode parse_mode(const std::string& text);           // "exact" | "float" | "tropical"
std::string mode_name(Mode mode);

// One of the three parse results; exactly one member is set.
struct ParsedInput {
    std::optional<SquareMatrix<Rational>> exact;
    std::optional<SquareMatrix<double>> dense;
    std::optional<ExponentialMarkovInput> tropical;
};

// Accepts:
//   - JSON matrix   {"n": N, "entries": [[...]]} with numbers or "p/q" strings
//   - CSV matrix    N rows x N comma-separated columns
//   - tropical JSON {"n": N, "arcs": [{"from": i, "to": j | "dagger",
//                     "V": "p/q" | integer, "m": number}, ...]}
// Exact mode insists every entry is exactly representable: integers, "p/q"
// or decimal strings. A non-integer JSON number in exact mode raises
// NonRationalInExactMode (write it as a string instead).
ParsedInput parse_matrix_file(const std::string& path, Mode mode);
ParsedInput parse_matrix_text(const std::string& text, Mode mode);

// Canonical JSON echoes; parsing them back yields an identical input.
nlohmann::json matrix_to_json(const SquareMatrix<Rational>& m);
nlohmann::json matrix_to_json(const SquareMatrix<double>& m);
nlohmann::json tropical_to_json(const ExponentialMarkovInput& input);

SquareMatrix<Rational> exact_matrix_from_json(const nlohmann::json& j);
SquareMatrix<double> dense_matrix_from_json(const nlohmann::json& j);
ExponentialMarkovInput tropical_from_json(const nlohmann::json& j);

}  // namespace forest_spectra
