#pragma once

#include <stdexcept>
#include <string>

namespace curvcut {

/// Base class for all errors raised by the library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DisconnectedGraphError : public Error {
public:
    using Error::Error;
};

class NonpositiveWeightError : public Error {
public:
    using Error::Error;
};

class SelfLoopError : public Error {
public:
    using Error::Error;
};

class DuplicateEdgeError : public Error {
public:
    using Error::Error;
};

class NonpositiveMeasureError : public Error {
public:
    using Error::Error;
};

class EmptySetError : public Error {
public:
    using Error::Error;
};

class GenerationFailedError : public Error {
public:
    using Error::Error;
};

class NegativeTimeError : public Error {
public:
    using Error::Error;
};

class NoConvergenceError : public Error {
public:
    using Error::Error;
};

class InfiniteNegativeCurvatureError : public Error {
public:
    using Error::Error;
};

class NonpositiveCurvatureError : public Error {
public:
    using Error::Error;
};

class SizeMismatchError : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace curvcut
