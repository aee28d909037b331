#pragma once
// Text form of complex arguments: "a", "a+bi", "a-bi", "bi", "-bi" (and bare
// "i" with an optional sign).  format_complex emits the canonical spelling with
// shortest round-trip digits and -0 normalized to 0, so
// format_complex(parse_complex(x)) is a fixed point.

#include <string>
#include <string_view>

#include "qmz/types.hpp"

namespace qmz {

// throws argument_error naming the offending position on malformed input
Cplx parse_complex(std::string_view text);

std::string format_complex(Cplx z);

// comma-separated list of complex components, at least one
ArgVector parse_arg_vector(std::string_view text);

// comma-joined canonical components (cache keys, CSV echo)
std::string format_arg_vector(const ArgVector& s);

// shortest round-trip decimal for a real number
std::string format_real(double x);

}  // namespace qmz
