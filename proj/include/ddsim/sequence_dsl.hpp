#pragma once

#include <string>

#include "ddsim/sequence.hpp"

namespace ddsim {

// Whitespace-separated token grammar:
//   seq   := term+
//   term  := delay | pulse | group
//   group := INT "x" "[" seq "]"     ("3x[" may be written as one token)
//   delay := "d" FLOAT               duration in us, >= 0
//   pulse := "X" | "Y" | "-X" | "-Y" | "P" FLOAT    phase in degrees
// Groups are expanded during parsing; the result carries no group structure.
// Errors carry 1-based line and column of the offending token.
PulseSequence parse_sequence(const std::string& text);

// Canonical form: one token per element, groups never emitted. Durations and
// degree values are printed with %.17g; phases matching an axis token within
// 1e-12 rad are emitted as X / Y / -X / -Y.
std::string format_sequence(const PulseSequence& s);

}  // namespace ddsim
