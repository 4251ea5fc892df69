#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace pathcur {

// Base for every failure caused by input data. The CLI maps these to exit code 1.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration (bad strategy label, missing file, broken rules table). Exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DuplicateIdError : public DataError {
public:
    DuplicateIdError(const std::string& kind, const std::string& id)
        : DataError("duplicate " + kind + " id '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

class UnknownIdError : public DataError {
public:
    UnknownIdError(const std::string& kind, const std::string& id)
        : DataError("unknown " + kind + " id '" + id + "'"), id_(id) {}
    const std::string& id() const noexcept { return id_; }

private:
    std::string id_;
};

// Parse failure with an optional source location (file label and 1-based line; 0 = unknown).
class ParseError : public DataError {
public:
    ParseError(std::string source, std::size_t line, const std::string& what)
        : DataError(format(source, line, what)), source_(std::move(source)), line_(line) {}

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& source, std::size_t line, const std::string& what) {
        std::string out = source.empty() ? std::string("<input>") : source;
        if (line > 0) out += ":" + std::to_string(line);
        return out + ": " + what;
    }

    std::string source_;
    std::size_t line_;
};

// Non-fatal messages collected by parsers and converters. Callers decide where they go.
struct Diagnostics {
    std::vector<std::string> warnings;

    void warn(std::string msg) { warnings.push_back(std::move(msg)); }
    bool empty() const noexcept { return warnings.empty(); }
};

inline void warn(Diagnostics* diag, std::string msg) {
    if (diag) diag->warn(std::move(msg));
}

}  // namespace pathcur
