#pragma once

#include <stdexcept>
#include <string>

namespace capcond {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
  using Error::Error;
};

/// Argument outside the documented domain of an operation.
class DomainError : public Error {
public:
  using Error::Error;
};

/// Point set whose Gram matrix (or span) is numerically singular.
class DegenerateSubset : public Error {
public:
  using Error::Error;
};

/// Generators of a spherical polytope span fewer than m+1 dimensions.
class DegenerateHull : public Error {
public:
  using Error::Error;
};

/// The dual of sconv(P) is empty, i.e. sconv(P) is the whole sphere.
class EmptyDual : public Error {
public:
  using Error::Error;
};

class InstanceTooLarge : public Error {
public:
  using Error::Error;
};

class SimplexCycling : public Error {
public:
  using Error::Error;
};

class ConfigError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace capcond
