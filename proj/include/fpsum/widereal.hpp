#pragma once

#include <mpfr.h>

#include <cstddef>
#include <string>
#include <utility>

#include "fpsum/fpformat.hpp"

namespace fpsum {

// Oracle precision. Everything outside the emulated format is computed in
// WideReal at oracle::bits() bits, which must satisfy
//     P >= 4*t + ceil(log2 n) + 32
// for a run of n summands in a t-bit format, so that extracted roundoffs and
// expression evaluations are accurate far below any tolerance we test
// against. The default of 320 covers every format/length this project runs;
// set FPSUM_ORACLE_BITS or call set_bits() before the first WideReal is made
// to change it.
namespace oracle {

long bits();
void set_bits(long p);
long required_bits(const FpFormat& fmt, std::size_t n);

}  // namespace oracle

// Value-semantic wrapper over an mpfr number at oracle precision. Arithmetic
// here is the "exact" reference arithmetic; it is not emulated-format
// arithmetic (that lives in rounding.hpp).
class WideReal {
  public:
    WideReal() { mpfr_init2(v_, oracle::bits()); mpfr_set_zero(v_, 1); }
    explicit WideReal(double d) { mpfr_init2(v_, oracle::bits()); mpfr_set_d(v_, d, MPFR_RNDN); }
    explicit WideReal(long i) { mpfr_init2(v_, oracle::bits()); mpfr_set_si(v_, i, MPFR_RNDN); }
    explicit WideReal(unsigned long i) { mpfr_init2(v_, oracle::bits()); mpfr_set_ui(v_, i, MPFR_RNDN); }

    WideReal(const WideReal& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    WideReal(WideReal&& o) noexcept { mpfr_init2(v_, MPFR_PREC_MIN); mpfr_swap(v_, o.v_); }
    WideReal& operator=(const WideReal& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    WideReal& operator=(WideReal&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~WideReal() { mpfr_clear(v_); }

    // Parses decimal ("1.5", "1e-3") and hex-float ("0x1.8p+3") literals.
    static WideReal parse(const std::string& text);

    static WideReal pow2(long e);  // 2^e, exact

    friend WideReal operator+(const WideReal& a, const WideReal& b) {
        WideReal r; mpfr_add(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend WideReal operator-(const WideReal& a, const WideReal& b) {
        WideReal r; mpfr_sub(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend WideReal operator*(const WideReal& a, const WideReal& b) {
        WideReal r; mpfr_mul(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    friend WideReal operator/(const WideReal& a, const WideReal& b) {
        WideReal r; mpfr_div(r.v_, a.v_, b.v_, MPFR_RNDN); return r;
    }
    WideReal operator-() const { WideReal r; mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }

    WideReal& operator+=(const WideReal& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    WideReal& operator-=(const WideReal& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    WideReal& operator*=(const WideReal& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
    WideReal& operator/=(const WideReal& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend bool operator==(const WideReal& a, const WideReal& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const WideReal& a, const WideReal& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const WideReal& a, const WideReal& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator<=(const WideReal& a, const WideReal& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>(const WideReal& a, const WideReal& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator>=(const WideReal& a, const WideReal& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }

    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    // floor(log2 |x|); only meaningful for nonzero values
    long exponent2() const { return static_cast<long>(mpfr_get_exp(v_)) - 1; }

    std::string hex_string() const;           // bit-exact, round-trips via parse()
    std::string dec_string(int digits) const; // scientific, fixed digit count

    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

  private:
    mpfr_t v_;
};

WideReal abs(const WideReal& x);
WideReal sqrt(const WideReal& x);
WideReal log(const WideReal& x);
WideReal exp(const WideReal& x);
WideReal pow_ui(const WideReal& x, unsigned long k);

}  // namespace fpsum
