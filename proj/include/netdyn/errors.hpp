#pragma once

#include <stdexcept>
#include <string>

namespace netdyn {

// Base of the two error families. ValidationError covers malformed or
// contract-violating inputs (CLI exit code 2); NumericalError covers
// runtime numerical/model failures (CLI exit code 3).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

class NotConnectedError : public ValidationError {
public:
    NotConnectedError() : ValidationError("graph is not connected") {}
    explicit NotConnectedError(const std::string& what) : ValidationError(what) {}
};

class CapExceededError : public NumericalError {
public:
    CapExceededError(const std::string& count, long long cap)
        : NumericalError("spanning tree count " + count + " exceeds cap " +
                         std::to_string(cap) +
                         "; use the determinantal route instead"),
          count_(count) {}
    const std::string& count() const { return count_; }

private:
    std::string count_;
};

class NonSquareError : public ValidationError {
public:
    NonSquareError() : ValidationError("matrix is not square") {}
};

class NotSymmetricError : public ValidationError {
public:
    explicit NotSymmetricError(double asymmetry)
        : ValidationError("matrix is not symmetric (max asymmetry " +
                          std::to_string(asymmetry) + ")") {}
};

class SingularBlockError : public NumericalError {
public:
    explicit SingularBlockError(const std::string& what) : NumericalError(what) {}
};

class DerivativeUndefinedError : public ValidationError {
public:
    explicit DerivativeUndefinedError(int edge, const std::string& detail = "")
        : ValidationError("edge function derivative inconsistent with finite "
                          "difference at edge " +
                          std::to_string(edge) +
                          (detail.empty() ? "" : ": " + detail)),
          edge_(edge) {}
    int edge() const { return edge_; }

private:
    int edge_;
};

class NotAnEquilibriumError : public NumericalError {
public:
    explicit NotAnEquilibriumError(double residual)
        : NumericalError("state is not an equilibrium (||F(x)||_inf = " +
                         std::to_string(residual) + ")") {}
};

class MixedAlphaUnsupportedError : public ValidationError {
public:
    MixedAlphaUnsupportedError()
        : ValidationError("operation requires all nodes dynamic (alpha = 1)") {}
};

class GroupGraphDisconnectedError : public ValidationError {
public:
    GroupGraphDisconnectedError()
        : ValidationError("group graph must be connected for this variant") {}
};

class VariantUnsupportedError : public ValidationError {
public:
    explicit VariantUnsupportedError(const std::string& what) : ValidationError(what) {}
};

class InvariantViolationError : public NumericalError {
public:
    explicit InvariantViolationError(const std::string& what) : NumericalError(what) {}
};

class ParseError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

class ModelMismatchError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class StepUnderflowError : public NumericalError {
public:
    explicit StepUnderflowError(double step, double t)
        : NumericalError("adaptive step underflow (h = " + std::to_string(step) +
                         " at t = " + std::to_string(t) + ")") {}
};

class NonFiniteStateError : public NumericalError {
public:
    explicit NonFiniteStateError(double t)
        : NumericalError("non-finite state encountered at t = " + std::to_string(t)) {}
};

}  // namespace netdyn
