#ifndef ONERING_ERRORS_HPP
#define ONERING_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace onering {

// Root of every error the library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MalformedMesh : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    IndexOutOfRange(std::size_t element, std::size_t position, std::int64_t value);

    std::size_t element() const noexcept { return element_; }
    std::size_t position() const noexcept { return position_; }
    std::int64_t value() const noexcept { return value_; }

private:
    std::size_t element_;
    std::size_t position_;
    std::int64_t value_;
};

class DegenerateElement : public Error {
public:
    explicit DegenerateElement(std::size_t element);
    std::size_t element() const noexcept { return element_; }

private:
    std::size_t element_;
};

class ArityMismatch : public Error {
public:
    ArityMismatch(std::size_t element, std::size_t arity);
    std::size_t element() const noexcept { return element_; }
    std::size_t arity() const noexcept { return arity_; }

private:
    std::size_t element_;
    std::size_t arity_;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class CountMismatch : public Error {
public:
    using Error::Error;
};

// OBJ indices are 1-based; 0 never refers to a vertex.
class ZeroIndex : public Error {
public:
    explicit ZeroIndex(std::size_t line);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class CapacityOverflow : public Error {
public:
    using Error::Error;
};

class UnsortedInput : public Error {
public:
    explicit UnsortedInput(std::size_t position);
    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class VerificationFailed : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

} // namespace onering

#endif
