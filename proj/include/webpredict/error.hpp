#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace webpredict {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. `line()` is 1-based, 0 when not line-specific.
class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// Well-formed input that breaks a domain invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// A URL that is not part of the site model.
class UnknownUrlError : public Error {
public:
    explicit UnknownUrlError(const std::string& url) : Error("unknown page " + url), url_(url) {}
    const std::string& url() const { return url_; }

private:
    std::string url_;
};

class ConvergenceError : public Error {
public:
    ConvergenceError(int iterations, double residual)
        : Error("pagerank did not converge after " + std::to_string(iterations) +
                " iterations (residual " + std::to_string(residual) + ")"),
          iterations_(iterations), residual_(residual) {}
    int iterations() const { return iterations_; }
    double residual() const { return residual_; }

private:
    int iterations_;
    double residual_;
};

}  // namespace webpredict
