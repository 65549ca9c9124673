#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace shelldecay {

/// Invalid argument or a request outside an operation's domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Base for numerical failures (exit code 4 at the command line).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A search that legitimately found nothing (exit code 3 at the command line).
class NoResultError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SolverError : public NumericalError {
public:
    SolverError(const std::string& what, std::complex<double> seed)
        : NumericalError(what), seed_(seed) {}
    std::complex<double> seed() const { return seed_; }

private:
    std::complex<double> seed_;
};

class CompletenessError : public NumericalError {
public:
    CompletenessError(const std::string& what, int certified, int found)
        : NumericalError(what), certified_(certified), found_(found) {}
    int certified() const { return certified_; }
    int found() const { return found_; }

private:
    int certified_;
    int found_;
};

class RetryExhaustedError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateNormalizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NearPoleError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class QuadratureError : public NumericalError {
public:
    QuadratureError(const std::string& what, double error_estimate, int intervals)
        : NumericalError(what), error_estimate_(error_estimate), intervals_(intervals) {}
    double error_estimate() const { return error_estimate_; }
    int intervals() const { return intervals_; }

private:
    double error_estimate_;
    int intervals_;
};

class TrajectoryLostError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class NoSingularityError : public NoResultError {
public:
    using NoResultError::NoResultError;
};

class NoTransitionError : public NoResultError {
public:
    using NoResultError::NoResultError;
};

}  // namespace shelldecay
