#pragma once

#include <stdexcept>
#include <string>

namespace qif {

// Root of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GridError : public Error {
public:
    using Error::Error;
};

class GridMismatchError : public Error {
public:
    using Error::Error;
};

// A momentum shift too large for the grid (|delta| >= span/4).
class AliasingError : public Error {
public:
    using Error::Error;
};

// Moments requested of a state whose norm is below the zero-norm threshold.
class ZeroNormError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

// Wavepacket reached the edge band of the position or momentum window.
class BoundaryLeakageError : public Error {
public:
    using Error::Error;
};

}  // namespace qif
