#pragma once

#include <stdexcept>
#include <string>

namespace sst {

// Base of every error raised by the library. The C API maps each subclass
// onto a distinct status code.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A tag, load factor, or other argument outside its legal domain.
class DomainError : public Error {
public:
  using Error::Error;
};

// No empty slot is reachable along a probe sequence.
class CapacityError : public Error {
public:
  using Error::Error;
};

// An operation that needs at least one sample got none.
class EmptyInputError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

// The monotonic clock went backwards during a measured phase.
class TimingError : public Error {
public:
  using Error::Error;
};

} // namespace sst
