#pragma once

#include <stdexcept>
#include <string>

namespace fpsum {

// An emulated binary floating-point format: t significand bits (implicit bit
// included) and a normal exponent range [emin, emax] for values m * 2^e with
// 1 <= m < 2. Results outside the range raise RangeError; there are no
// subnormals and no silent flushing.
//
// The named formats carry the IEEE significand width and overflow threshold,
// but a much deeper emin. The analyses implemented here assume results never
// leave the normal range, and a correction term in compensated summation (or
// a near-cancelling shift) legitimately produces values far below the IEEE
// minimum normal, so the named formats exclude underflow by construction.
// Overflow stays real: binary16 still tops out near 65504, which is what caps
// the feasible n in the half-precision experiments. Use a custom format
// (e.g. "custom:p=11,emin=-14,emax=15") to study a strict IEEE range.
struct FpFormat {
    int precision_bits = 53;   // t, >= 2
    long emin = -9999;
    long emax = 1023;
    std::string name = "binary64";

    bool operator==(const FpFormat&) const = default;
};

class FormatError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

// Accepts "binary16", "binary32", "binary64", "custom:p=<bits>,emin=<e>,emax=<e>".
FpFormat parse_format(const std::string& name);

FpFormat binary16();
FpFormat binary32();
FpFormat binary64();

}  // namespace fpsum
