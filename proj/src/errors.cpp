#include "onering/errors.hpp"

namespace onering {

IndexOutOfRange::IndexOutOfRange(std::size_t element, std::size_t position, std::int64_t value)
    : Error("element " + std::to_string(element) + " position " + std::to_string(position) +
            ": vertex index " + std::to_string(value) + " out of range"),
      element_(element), position_(position), value_(value)
{
}

DegenerateElement::DegenerateElement(std::size_t element)
    : Error("element " + std::to_string(element) + " repeats a vertex index"), element_(element)
{
}

ArityMismatch::ArityMismatch(std::size_t element, std::size_t arity)
    : Error("element " + std::to_string(element) + " has invalid arity " + std::to_string(arity)),
      element_(element), arity_(arity)
{
}

SyntaxError::SyntaxError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line)
{
}

ZeroIndex::ZeroIndex(std::size_t line)
    : Error("line " + std::to_string(line) + ": OBJ index 0 is invalid"), line_(line)
{
}

UnsortedInput::UnsortedInput(std::size_t position)
    : Error("keys descend at position " + std::to_string(position)), position_(position)
{
}

} // namespace onering
