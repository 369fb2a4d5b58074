#include "fpsum/rounding.hpp"

namespace fpsum {

WideReal unit_roundoff(const FpFormat& fmt) {
    return WideReal::pow2(-fmt.precision_bits);
}

WideReal effective_u(const FpFormat& fmt, RoundingMode mode) {
    WideReal u = unit_roundoff(fmt);
    if (mode == RoundingMode::StochasticNearness) u += u;
    return u;
}

WideReal max_finite(const FpFormat& fmt) {
    WideReal two(2L);
    return (two - WideReal::pow2(1 - fmt.precision_bits)) * WideReal::pow2(fmt.emax);
}

bool representable(const WideReal& x, const FpFormat& fmt) {
    if (x.is_zero()) return true;
    mpfr_t r;
    mpfr_init2(r, fmt.precision_bits);
    mpfr_set(r, x.raw(), MPFR_RNDN);
    bool exact = mpfr_cmp(r, x.raw()) == 0;
    mpfr_clear(r);
    if (!exact) return false;
    long e = x.exponent2();
    return e >= fmt.emin && e <= fmt.emax;
}

Rounder::Rounder(const FpFormat& fmt, const RoundingSpec& spec)
    : fmt_(fmt), spec_(spec), rng_(spec.seed, spec.stream) {
    mpfr_init2(lo_, fmt.precision_bits);
    mpfr_init2(hi_, fmt.precision_bits);
    mpfr_init2(wide_, oracle::bits());
}

Rounder::~Rounder() {
    mpfr_clear(lo_);
    mpfr_clear(hi_);
    mpfr_clear(wide_);
}

void Rounder::check_range(mpfr_srcptr v) const {
    long e = static_cast<long>(mpfr_get_exp(v)) - 1;
    if (e > fmt_.emax)
        throw RangeError("overflow in " + fmt_.name + ": result exponent " + std::to_string(e) +
                         " exceeds emax " + std::to_string(fmt_.emax));
    if (e < fmt_.emin)
        throw RangeError("underflow in " + fmt_.name + ": result exponent " + std::to_string(e) +
                         " is below emin " + std::to_string(fmt_.emin) +
                         " (subnormal range is outside the model)");
}

RoundResult Rounder::round(const WideReal& x, bool want_delta) {
    RoundResult out;
    if (x.is_zero()) return out;  // zero is exact in every format

    if (spec_.mode == RoundingMode::NearestEven) {
        mpfr_set(lo_, x.raw(), MPFR_RNDN);
        check_range(lo_);
        mpfr_set(out.value.raw(), lo_, MPFR_RNDN);
    } else {
        mpfr_set(lo_, x.raw(), MPFR_RNDD);
        mpfr_set(hi_, x.raw(), MPFR_RNDU);
        if (mpfr_cmp(lo_, hi_) == 0) {
            check_range(lo_);
            mpfr_set(out.value.raw(), lo_, MPFR_RNDN);
            return out;  // representable, delta = 0 with no draw consumed
        }
        // round up with probability (x - lo) / (hi - lo)
        mpfr_sub(wide_, x.raw(), lo_, MPFR_RNDN);
        mpfr_sub(out.delta.raw(), hi_, lo_, MPFR_RNDN);  // borrow as scratch
        mpfr_div(wide_, wide_, out.delta.raw(), MPFR_RNDN);
        double r = rng_.next_unit();
        mpfr_srcptr pick = mpfr_cmp_d(wide_, r) > 0 ? hi_ : lo_;
        check_range(pick);
        mpfr_set(out.value.raw(), pick, MPFR_RNDN);
        mpfr_set_zero(out.delta.raw(), 1);
    }

    if (want_delta && mpfr_cmp(out.value.raw(), x.raw()) != 0) {
        mpfr_div(out.delta.raw(), out.value.raw(), x.raw(), MPFR_RNDN);
        mpfr_sub_ui(out.delta.raw(), out.delta.raw(), 1, MPFR_RNDN);
    }
    return out;
}

RoundResult round_value(const WideReal& x, const FpFormat& fmt, const RoundingSpec& spec) {
    Rounder r(fmt, spec);
    return r.round(x);
}

RoundResult fp_add(const WideReal& a, const WideReal& b, Rounder& r, bool want_delta) {
    return r.round(a + b, want_delta);
}

RoundResult fp_sub(const WideReal& a, const WideReal& b, Rounder& r, bool want_delta) {
    return r.round(a - b, want_delta);
}

RoundResult fp_mul(const WideReal& a, const WideReal& b, Rounder& r, bool want_delta) {
    return r.round(a * b, want_delta);
}

}  // namespace fpsum
