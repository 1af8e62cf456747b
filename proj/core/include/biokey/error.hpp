#pragma once

#include <stdexcept>
#include <string>

namespace biokey {

// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class FormatError : public Error {
 public:
  using Error::Error;
};

class UnsupportedDepthError : public Error {
 public:
  using Error::Error;
};

class LengthError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// A Hough search produced no candidate at all.
class NotFoundError : public Error {
 public:
  using Error::Error;
};

class LocalizationError : public Error {
 public:
  using Error::Error;
};

}  // namespace biokey
