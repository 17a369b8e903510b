#pragma once

#include <stdexcept>
#include <string>

namespace nhssh {

// Base class for every failure the library reports. The CLI maps the
// concrete subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad parameters, malformed ranges, grids that are too coarse.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

// A sampled momentum puts the real d-point on top of an exceptional point,
// so the winding integrand is singular.
class TransitionLine : public Error {
 public:
  using Error::Error;
};

// The two Bloch bands touch somewhere on the Brillouin zone.
class BandTouching : public Error {
 public:
  using Error::Error;
};

// The dense eigensolver did not converge.
class EigenFailure : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace nhssh
