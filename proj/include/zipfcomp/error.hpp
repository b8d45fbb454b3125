#pragma once

#include <stdexcept>
#include <string>

namespace zipfcomp {

// Error categories double as CLI exit codes.
enum class ErrorKind : int {
    usage = 1,
    data = 2,
    numerical = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// Invalid argument or violated precondition (bad window, too-small group, ...).
class ParameterError : public Error {
public:
    explicit ParameterError(const std::string& what) : Error(ErrorKind::usage, what) {}
};

class DataError : public Error {
public:
    explicit DataError(const std::string& what) : Error(ErrorKind::data, what) {}
};

class FormatError : public DataError {
public:
    using DataError::DataError;
};

class DuplicateKeyError : public DataError {
public:
    using DataError::DataError;
};

class LookupError : public DataError {
public:
    using DataError::DataError;
};

class EmptyPanelError : public DataError {
public:
    using DataError::DataError;
};

class AlignmentError : public DataError {
public:
    using DataError::DataError;
};

/// Value outside the mathematical domain of an operation (log of a nonpositive number, ...).
class DomainError : public DataError {
public:
    using DataError::DataError;
};

class IoError : public DataError {
public:
    using DataError::DataError;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorKind::numerical, what) {}
};

class DegenerateError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class SingularDesignError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace zipfcomp
