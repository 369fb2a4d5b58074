#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "fpsum/fpformat.hpp"
#include "fpsum/rng.hpp"
#include "fpsum/widereal.hpp"

namespace fpsum {

// Result left the format's normal range (overflow, or underflow toward the
// subnormal region). The analyses assume neither happens, so it is an error,
// never a silent flush or clamp.
class RangeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class RoundingMode { NearestEven, StochasticNearness };

// Mode plus the RNG stream identity for stochastic rounding. Two runs with
// equal (mode, seed, stream) round identically, operation by operation.
struct RoundingSpec {
    RoundingMode mode = RoundingMode::NearestEven;
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

struct RoundResult {
    WideReal value;
    WideReal delta;  // fl(x) = x (1 + delta); 0 when x is 0 or representable
};

// unit roundoff u = 2^-t
WideReal unit_roundoff(const FpFormat& fmt);
// u under NearestEven, 2u under StochasticNearness (the bound substitution)
WideReal effective_u(const FpFormat& fmt, RoundingMode mode);
// largest finite value, (2 - 2^(1-t)) * 2^emax
WideReal max_finite(const FpFormat& fmt);
bool representable(const WideReal& x, const FpFormat& fmt);

// One emulated-format rounding engine. Owns the scratch registers and the
// stochastic stream, so a run constructs one and feeds every operation
// through it. Not shareable across threads; independent runs make their own.
class Rounder {
  public:
    Rounder(const FpFormat& fmt, const RoundingSpec& spec);
    Rounder(const Rounder&) = delete;
    Rounder& operator=(const Rounder&) = delete;
    ~Rounder();

    const FpFormat& format() const { return fmt_; }
    const RoundingSpec& spec() const { return spec_; }

    // Round x into the format. delta is computed exactly in oracle precision
    // (skip it in error-only runs; it costs a division per op).
    RoundResult round(const WideReal& x, bool want_delta = true);

  private:
    FpFormat fmt_;
    RoundingSpec spec_;
    RngStream rng_;
    mpfr_t lo_, hi_;   // format-precision neighbours
    mpfr_t wide_;      // oracle-precision scratch

    void check_range(mpfr_srcptr v) const;
};

// One-shot convenience wrappers (spec'd operation surface). a and b must be
// representable in fmt; that is the caller's contract and is validated by the
// algorithm entry points rather than per operation.
RoundResult round_value(const WideReal& x, const FpFormat& fmt, const RoundingSpec& spec = {});
RoundResult fp_add(const WideReal& a, const WideReal& b, Rounder& r, bool want_delta = true);
RoundResult fp_sub(const WideReal& a, const WideReal& b, Rounder& r, bool want_delta = true);
RoundResult fp_mul(const WideReal& a, const WideReal& b, Rounder& r, bool want_delta = true);

}  // namespace fpsum
