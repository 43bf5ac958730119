#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dftstat {

/// Broad failure category. The CLI maps these onto exit codes.
enum class ErrorCategory {
    Input,      ///< bad data, bad configuration, bad lags
    Numerical,  ///< a computation produced or met a degenerate value
};

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    [[nodiscard]] ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class InvalidInputError : public Error {
public:
    explicit InvalidInputError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class InvalidLagError : public Error {
public:
    explicit InvalidLagError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class BandwidthTooSmallError : public Error {
public:
    explicit BandwidthTooSmallError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class InvalidCorrectionError : public Error {
public:
    explicit InvalidCorrectionError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

class SegmentationDepthError : public Error {
public:
    explicit SegmentationDepthError(const std::string& what) : Error(ErrorCategory::Input, what) {}
};

/// An AR polynomial has a root on or inside the unit circle.
class StabilityError : public Error {
public:
    StabilityError(const std::string& what, double root_modulus)
        : Error(ErrorCategory::Input, what), root_modulus_(root_modulus) {}

    [[nodiscard]] double root_modulus() const noexcept { return root_modulus_; }

private:
    double root_modulus_;
};

class NumericalError : public Error {
public:
    explicit NumericalError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

class DegenerateTransferError : public Error {
public:
    explicit DegenerateTransferError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

class DegenerateSpectrumError : public Error {
public:
    explicit DegenerateSpectrumError(const std::string& what) : Error(ErrorCategory::Numerical, what) {}
};

/// A Monte Carlo replication failed; wraps the original message and keeps
/// its category.
class ReplicationError : public Error {
public:
    ReplicationError(const Error& cause, std::size_t replication)
        : Error(cause.category(), "replication " + std::to_string(replication) + ": " + cause.what()),
          replication_(replication) {}

    [[nodiscard]] std::size_t replication() const noexcept { return replication_; }

private:
    std::size_t replication_;
};

}  // namespace dftstat
