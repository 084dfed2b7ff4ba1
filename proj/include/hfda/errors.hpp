#pragma once

#include <stdexcept>
#include <string>

namespace hfda {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two sampled objects that must share a grid do not.
class GridMismatchError : public Error {
public:
    using Error::Error;
};

/// Argument outside the domain an operation is defined on.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A warp (or warp-like object) failed a strict monotonicity requirement.
class MonotonicityError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

/// All samples coincide, so proportions of variance are undefined.
class ZeroVarianceError : public DegenerateError {
public:
    using DegenerateError::DegenerateError;
};

class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// Map evaluated at a point where it is not defined (antipode, pole).
class SingularityError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

/// Rethrows the in-flight library error with `context` prepended, keeping
/// its concrete type. Call only from inside a catch block.
[[noreturn]] inline void rethrow_with_context(const std::string& context)
{
    try {
        throw;
    } catch (const ZeroVarianceError& e) {
        throw ZeroVarianceError(context + e.what());
    } catch (const GridMismatchError& e) {
        throw GridMismatchError(context + e.what());
    } catch (const DomainError& e) {
        throw DomainError(context + e.what());
    } catch (const MonotonicityError& e) {
        throw MonotonicityError(context + e.what());
    } catch (const DegenerateError& e) {
        throw DegenerateError(context + e.what());
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(context + e.what());
    } catch (const SingularityError& e) {
        throw SingularityError(context + e.what());
    } catch (const IoError& e) {
        throw IoError(context + e.what());
    } catch (const Error& e) {
        throw Error(context + e.what());
    }
}

} // namespace hfda
