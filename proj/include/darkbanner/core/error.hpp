#pragma once

#include <stdexcept>
#include <string>

namespace darkbanner {

// Base for every error the library raises.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(const std::string& name)
        : Error("missing required column: " + name), column(name) {}
    std::string column;
};

class MissingAnnotation : public Error {
public:
    explicit MissingAnnotation(const std::string& pattern)
        : Error("missing reviewer annotation for pattern: " + pattern) {}
};

class InvalidFraction : public Error {
public:
    explicit InvalidFraction(double value)
        : Error("train fraction must lie in (0,1), got " + std::to_string(value)) {}
};

class ProviderUnavailable : public Error {
public:
    explicit ProviderUnavailable(const std::string& detail)
        : Error("text provider unavailable: " + detail) {}
};

class InvalidLexicon : public Error {
public:
    explicit InvalidLexicon(const std::string& detail)
        : Error("invalid sentiment lexicon: " + detail) {}
};

class TooFewPoints : public Error {
public:
    explicit TooFewPoints(const std::string& detail) : Error("too few points: " + detail) {}
};

class DimensionMismatch : public Error {
public:
    explicit DimensionMismatch(std::size_t expected, std::size_t got)
        : Error("dimension mismatch: expected " + std::to_string(expected) + ", got " +
                std::to_string(got)) {}
};

class EmptyData : public Error {
public:
    EmptyData() : Error("empty data") {}
};

class ShapeMismatch : public Error {
public:
    explicit ShapeMismatch(const std::string& detail) : Error("shape mismatch: " + detail) {}
};

class InvalidHyperparameter : public Error {
public:
    explicit InvalidHyperparameter(const std::string& detail)
        : Error("invalid hyperparameter: " + detail) {}
};

class UnfittedModel : public Error {
public:
    UnfittedModel() : Error("model has not been fitted") {}
};

class TooFewSamples : public Error {
public:
    explicit TooFewSamples(const std::string& detail) : Error("too few samples: " + detail) {}
};

class EmptyInput : public Error {
public:
    EmptyInput() : Error("empty input") {}
};

class SplitMismatch : public Error {
public:
    explicit SplitMismatch(const std::string& detail) : Error("split mismatch: " + detail) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& detail) : Error("parse error: " + detail) {}
};

class OverwriteRefused : public Error {
public:
    explicit OverwriteRefused(const std::string& path)
        : Error("refusing to overwrite " + path + " (pass --force to allow)") {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& detail) : Error("i/o error: " + detail) {}
};

}  // namespace darkbanner
