#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gs {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A tuple (or a byte/JSON form of one) violates the data-model rules,
/// e.g. a value node in subject, predicate or context position.
class MalformedTuple : public Error {
public:
    explicit MalformedTuple(const std::string& what) : Error(what) {}
};

enum class DecodeErrorKind {
    BadMagic,
    BadVersion,
    Truncated,
    TrailingGarbage,
    InconsistentFlags,  // flag/length/type contradictions, reserved bits set
    MalformedValue,     // payload violates the declared value type
};

/// Raised when packet bytes cannot be decoded into a tuple.
class DecodeError : public Error {
public:
    DecodeError(DecodeErrorKind kind, const std::string& what, std::size_t offset = 0)
        : Error(what), kind_(kind), offset_(offset) {}
    DecodeErrorKind kind() const { return kind_; }
    std::size_t offset() const { return offset_; }

private:
    DecodeErrorKind kind_;
    std::size_t offset_;
};

/// Raised by the query/template text parsers; carries the byte offset of
/// the offending token.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t pos)
        : Error(what + " (at offset " + std::to_string(pos) + ")"), pos_(pos) {}
    std::size_t pos() const { return pos_; }

private:
    std::size_t pos_;
};

/// Polling or feeding a session that has been unsubscribed.
class SessionClosed : public Error {
public:
    SessionClosed() : Error("session closed") {}
};

/// The simulator's livelock guard tripped: more events were processed in one
/// run call than the configured budget allows.
class SimBudgetExceeded : public Error {
public:
    explicit SimBudgetExceeded(std::size_t budget)
        : Error("event budget exceeded (" + std::to_string(budget) + " events)") {}
};

}  // namespace gs
