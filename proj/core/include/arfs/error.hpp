#pragma once

#include <stdexcept>
#include <string>

namespace arfs {

// Every failure raised by the library derives from this type so callers
// (and the CLI) can catch library errors separately from std::bad_alloc etc.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
  using Error::Error;
};

class ParseError : public Error {
public:
  using Error::Error;
};

} // namespace arfs
