#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace forestacc {

enum class ErrorCode {
	OutOfRangeEndpoint,
	NonPositiveWeight,
	SelfLoop,
	EmptyGraph,
	InvalidArgument,
	SingularMatrix,
	AsymmetricResult,
	DirectedInput,
	UndirectedInput,
	SizeGuardExceeded,
	PartitionMismatch,
	ParseError,
	UnknownLabel,
};

constexpr std::string_view to_string(ErrorCode code) noexcept
{
	switch (code) {
	case ErrorCode::OutOfRangeEndpoint: return "out-of-range endpoint";
	case ErrorCode::NonPositiveWeight: return "non-positive weight";
	case ErrorCode::SelfLoop: return "self-loop";
	case ErrorCode::EmptyGraph: return "empty graph";
	case ErrorCode::InvalidArgument: return "invalid argument";
	case ErrorCode::SingularMatrix: return "singular matrix";
	case ErrorCode::AsymmetricResult: return "asymmetric result";
	case ErrorCode::DirectedInput: return "directed input";
	case ErrorCode::UndirectedInput: return "undirected input";
	case ErrorCode::SizeGuardExceeded: return "size guard exceeded";
	case ErrorCode::PartitionMismatch: return "partition mismatch";
	case ErrorCode::ParseError: return "parse error";
	case ErrorCode::UnknownLabel: return "unknown label";
	}
	return "unknown error";
}

/// Base of every error thrown by the library. The code distinguishes the
/// validation failures callers are expected to branch on.
class Error : public std::runtime_error
{
public:
	Error(ErrorCode code, const std::string& what)
	  : std::runtime_error(std::string(to_string(code)) + ": " + what)
	  , code_(code)
	{
	}

	ErrorCode code() const noexcept { return code_; }

private:
	ErrorCode code_;
};

/// Raised by the parsers; carries the 1-based position of the offending token.
class ParseError : public Error
{
public:
	ParseError(std::size_t line, std::size_t column, const std::string& what,
	           ErrorCode code = ErrorCode::ParseError)
	  : Error(code, "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what)
	  , line_(line)
	  , column_(column)
	{
	}

	std::size_t line() const noexcept { return line_; }
	std::size_t column() const noexcept { return column_; }

private:
	std::size_t line_;
	std::size_t column_;
};

} // namespace forestacc
