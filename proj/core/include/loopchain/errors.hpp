#pragma once

#include <stdexcept>
#include <string>

namespace loopchain {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad argument: wrong dimension, non-hermitian input, non-normalized vector.
class InvalidInput : public Error {
public:
    using Error::Error;
};

/// Time outside a tabulated range.
class RangeError : public Error {
public:
    using Error::Error;
};

/// Mixing angle undefined because both P and C envelopes vanish.
class DegenerateAngle : public Error {
public:
    using Error::Error;
};

/// Dark state undefined because both effective couplings vanish.
class DegenerateDarkState : public Error {
public:
    using Error::Error;
};

/// Norm drift exceeded the accepted bound; the step is too coarse.
class AccuracyError : public Error {
public:
    using Error::Error;
};

class SynthesisError : public Error {
public:
    using Error::Error;
};

/// Config lies outside every family a prediction formula covers.
class NotApplicable : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

}  // namespace loopchain
