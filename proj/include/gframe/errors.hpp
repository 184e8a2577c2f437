#pragma once

#include <array>
#include <stdexcept>
#include <string>

namespace gframe {

// Raised by build_group_from_table when the table violates a group law.
// The witness names the offending elements (unused slots are -1).
class NotAGroupError : public std::runtime_error {
public:
    NotAGroupError(const std::string& reason, std::array<int, 3> witness)
        : std::runtime_error("not a group: " + reason), witness_(witness) {}

    const std::array<int, 3>& witness() const { return witness_; }

private:
    std::array<int, 3> witness_;
};

class EmptyOrdersError : public std::runtime_error {
public:
    EmptyOrdersError() : std::runtime_error("abelian group needs at least one cyclic factor") {}
};

class DimensionMismatchError : public std::runtime_error {
public:
    explicit DimensionMismatchError(const std::string& what) : std::runtime_error(what) {}
};

class NotInvertibleError : public std::runtime_error {
public:
    explicit NotInvertibleError(const std::string& what) : std::runtime_error(what) {}
};

class NotIsometryError : public std::runtime_error {
public:
    explicit NotIsometryError(const std::string& what) : std::runtime_error(what) {}
};

class NotInCommutantError : public std::runtime_error {
public:
    explicit NotInCommutantError(const std::string& what) : std::runtime_error(what) {}
};

class VanishingPairingError : public std::runtime_error {
public:
    explicit VanishingPairingError(const std::string& what) : std::runtime_error(what) {}
};

class NotAFrameError : public std::runtime_error {
public:
    explicit NotAFrameError(const std::string& what) : std::runtime_error(what) {}
};

class UnknownCommandError : public std::runtime_error {
public:
    explicit UnknownCommandError(const std::string& name)
        : std::runtime_error("unknown command: " + name) {}
};

// Config text that is not valid JSON. Carries the byte offset reported by the parser.
class ParseError : public std::runtime_error {
public:
    ParseError(size_t position, const std::string& message)
        : std::runtime_error("parse error at byte " + std::to_string(position) + ": " + message),
          position_(position) {}

    size_t position() const { return position_; }

private:
    size_t position_;
};

// Config that parses but names an invalid field value.
class ValidationError : public std::runtime_error {
public:
    ValidationError(const std::string& field, const std::string& reason)
        : std::runtime_error("invalid config field '" + field + "': " + reason), field_(field) {}

    const std::string& field() const { return field_; }

private:
    std::string field_;
};

}  // namespace gframe
