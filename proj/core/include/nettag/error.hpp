#ifndef NETTAG_ERROR_HPP
#define NETTAG_ERROR_HPP

#include <stdexcept>
#include <string>

namespace nettag {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input text (corpus, lexicon, model or config files).
struct ParseError : Error {
  using Error::Error;
};

// A caller violated an operation's precondition.
struct ArgumentError : Error {
  using Error::Error;
};

// Invalid or inconsistent configuration.
struct ConfigError : Error {
  using Error::Error;
};

// Unknown or unsupported file format version.
struct FormatError : Error {
  using Error::Error;
};

// Non-finite values encountered during training.
struct NumericError : Error {
  using Error::Error;
};

}  // namespace nettag

#endif
