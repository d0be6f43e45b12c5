#pragma once

// Serialization of verification reports.

#include <string>

#include "qmexpect/suites.hpp"

namespace qmexpect {

/// JSON with a fixed field order:
/// {suite, config, checks:[{id, claim, computed:{re,im}, reference, tolerance, passed, note}], all_passed}.
/// reference is {re,im}, the string "qualitative" for checks without a numeric
/// target, or null for a check that raised an error.
/// Non-finite numbers are written as null.
std::string to_json(const VerificationReport& report, int indent = 2);

/// Fixed-width table, one row per check, failures annotated below their row.
std::string to_text(const VerificationReport& report);

}  // namespace qmexpect
