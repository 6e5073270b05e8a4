#pragma once

#include <stdexcept>
#include <string>

namespace gacal {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A model parameter lies outside the domain where the constitutive law is defined.
class ParameterDomainError : public Error {
public:
    using Error::Error;
};

/// A soil state violates Tr(T) < 0 or e_d <= e <= e_i.
class AdmissibilityError : public Error {
public:
    using Error::Error;
};

/// The triaxial closure has no real solution for the current state.
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// Experimental data that cannot define a test (bad terminal values, zero normalizers).
class InputDataError : public Error {
public:
    using Error::Error;
};

/// Invalid optimizer or run configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. The message always names the file and the line.
class ParseError : public Error {
public:
    ParseError(const std::string& file, std::size_t line, const std::string& what)
        : Error(file + ":" + std::to_string(line) + ": " + what), file_(file), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string file_;
    std::size_t line_;
};

/// Failure reading or writing files on disk.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace gacal
