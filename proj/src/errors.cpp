#include "nilcalc/errors.hpp"

namespace nilcalc {

const char *error_kind_name(ErrorKind kind)
{
	switch (kind)
	{
	case ErrorKind::malformed_input: return "malformed-input";
	case ErrorKind::domain: return "domain";
	case ErrorKind::unsupported_step: return "unsupported-step";
	case ErrorKind::nilpotency: return "nilpotency";
	case ErrorKind::invariant_violation: return "invariant-violation";
	case ErrorKind::usage: return "usage";
	case ErrorKind::parse: return "parse";
	case ErrorKind::regression: return "regression-mismatch";
	}
	return "unknown";
}

int exit_code_for(ErrorKind kind)
{
	switch (kind)
	{
	case ErrorKind::usage: return 1;
	case ErrorKind::regression: return 3;
	case ErrorKind::invariant_violation: return 4;
	default: return 2;
	}
}

} // namespace nilcalc
