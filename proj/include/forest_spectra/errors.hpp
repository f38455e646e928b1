#pragma once

#include <stdexcept>
#include <string>

namespace forest_spectra {

// Base of every library error. `kind()` is the stable machine-readable name
// that ends up in report JSON.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg, const char* kind = "Error")
        : std::runtime_error(msg), kind_(kind) {}

    const char* kind() const { return kind_; }

private:
    const char* kind_;
};

// Malformed input: bad files, bad indices, bad queries. CLI exit code 1.
struct InputError : Error {
    explicit InputError(const std::string& msg, const char* kind = "InputError")
        : Error(msg, kind) {}
};

// Well-formed input whose computation cannot produce a result. CLI exit code 2.
struct ComputeError : Error {
    explicit ComputeError(const std::string& msg, const char* kind = "ComputeError")
        : Error(msg, kind) {}
};

struct InvalidQuery : InputError {
    explicit InvalidQuery(const std::string& msg) : InputError(msg, "InvalidQuery") {}
};

struct InvalidIndex : InputError {
    explicit InvalidIndex(const std::string& msg) : InputError(msg, "InvalidIndex") {}
};

struct MissingArc : InputError {
    explicit MissingArc(const std::string& msg) : InputError(msg, "MissingArc") {}
};

struct DimensionMismatch : InputError {
    explicit DimensionMismatch(const std::string& msg) : InputError(msg, "DimensionMismatch") {}
};

struct NonRationalInExactMode : InputError {
    explicit NonRationalInExactMode(const std::string& msg)
        : InputError(msg, "NonRationalInExactMode") {}
};

struct TooLarge : InputError {
    explicit TooLarge(const std::string& msg) : InputError(msg, "TooLarge") {}
};

struct ParseError : InputError {
    explicit ParseError(const std::string& msg, int line = -1, int column = -1)
        : InputError(format(msg, line, column), "ParseError"), line(line), column(column) {}

    int line;
    int column;

private:
    static std::string format(const std::string& msg, int line, int column) {
        std::string s = msg;
        if (line >= 0) {
            s += " (line " + std::to_string(line);
            if (column >= 0) s += ", column " + std::to_string(column);
            s += ")";
        }
        return s;
    }
};

struct ZeroDenominator : ComputeError {
    explicit ZeroDenominator(const std::string& msg) : ComputeError(msg, "ZeroDenominator") {}
};

struct NegationAttempted : ComputeError {
    explicit NegationAttempted(const std::string& msg) : ComputeError(msg, "NegationAttempted") {}
};

struct ConvergenceFailure : ComputeError {
    explicit ConvergenceFailure(const std::string& msg)
        : ComputeError(msg, "ConvergenceFailure") {}
};

struct DegenerateSlopes : ComputeError {
    explicit DegenerateSlopes(const std::string& msg) : ComputeError(msg, "DegenerateSlopes") {}
};

}  // namespace forest_spectra
