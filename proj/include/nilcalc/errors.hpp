#pragma once

#include <stdexcept>
#include <string>

namespace nilcalc {

enum class ErrorKind {
	malformed_input,
	domain,
	unsupported_step,
	nilpotency,
	invariant_violation,
	usage,
	parse,
	regression,
};

class Error : public std::runtime_error
{
  public:
	Error(ErrorKind kind, const std::string &what)
	    : std::runtime_error(what), kind_(kind)
	{}
	ErrorKind kind() const { return kind_; }

  private:
	ErrorKind kind_;
};

const char *error_kind_name(ErrorKind kind);

// 0 ok, 1 usage, 2 parse/validate, 3 regression mismatch, 4 invariant violation
int exit_code_for(ErrorKind kind);

[[noreturn]] inline void fail(ErrorKind kind, const std::string &what)
{
	throw Error(kind, what);
}

} // namespace nilcalc
