#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace caustics
{

// Base for every error raised by the library.
class Error : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Parameter outside a curve's domain, arc length out of range, bad order.
class DomainError : public Error
{
  public:
    using Error::Error;
};

// Geometry that makes an operation undefined: flat sample, radiant on the
// mirror, focus at infinity where a finite one is required, irregular curve.
class DegenerateError : public Error
{
  public:
    using Error::Error;
};

// Malformed scene document or inconsistent scene.
class SceneError : public Error
{
  public:
    using Error::Error;
};

// Expression evaluation failure (division by zero, ln of a non-positive value, ...).
class EvalError : public Error
{
  public:
    using Error::Error;
};

class ParseError : public Error
{
  public:
    ParseError(std::size_t offset, std::string const& message)
        : Error("offset " + std::to_string(offset) + ": " + message)
        , offset_(offset)
        , message_(message)
    {
    }

    std::size_t offset() const noexcept { return offset_; }
    std::string const& message() const noexcept { return message_; }

  private:
    std::size_t offset_;
    std::string message_;
};

} // namespace caustics
