#include "fpsum/widereal.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace fpsum {
namespace oracle {

namespace {

long initial_bits() {
    if (const char* env = std::getenv("FPSUM_ORACLE_BITS")) {
        long p = std::strtol(env, nullptr, 10);
        if (p >= 64) return p;
    }
    return 320;
}

std::atomic<long>& bits_holder() {
    static std::atomic<long> bits{initial_bits()};
    return bits;
}

}  // namespace

long bits() { return bits_holder().load(std::memory_order_relaxed); }

void set_bits(long p) {
    if (p < 64) throw std::invalid_argument("oracle precision must be at least 64 bits");
    bits_holder().store(p, std::memory_order_relaxed);
}

long required_bits(const FpFormat& fmt, std::size_t n) {
    long lg = 0;
    while ((std::size_t{1} << lg) < n) ++lg;
    return 4L * fmt.precision_bits + lg + 32;
}

}  // namespace oracle

WideReal WideReal::parse(const std::string& text) {
    WideReal r;
    const char* s = text.c_str();
    char* end = nullptr;
    // base 0: decimal, or hex with an 0x prefix
    int bad = mpfr_strtofr(r.v_, s, &end, 0, MPFR_RNDN);
    (void)bad;
    while (*end == ' ' || *end == '\t' || *end == '\r') ++end;
    if (end == s || *end != '\0') throw std::invalid_argument("not a numeric literal: '" + text + "'");
    return r;
}

WideReal WideReal::pow2(long e) {
    WideReal r;
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

std::string WideReal::hex_string() const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%Ra", v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

std::string WideReal::dec_string(int digits) const {
    char* s = nullptr;
    mpfr_asprintf(&s, "%.*Re", digits - 1, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

WideReal abs(const WideReal& x) {
    WideReal r;
    mpfr_abs(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

WideReal sqrt(const WideReal& x) {
    WideReal r;
    mpfr_sqrt(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

WideReal log(const WideReal& x) {
    WideReal r;
    mpfr_log(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

WideReal exp(const WideReal& x) {
    WideReal r;
    mpfr_exp(r.raw(), x.raw(), MPFR_RNDN);
    return r;
}

WideReal pow_ui(const WideReal& x, unsigned long k) {
    WideReal r;
    mpfr_pow_ui(r.raw(), x.raw(), k, MPFR_RNDN);
    return r;
}

}  // namespace fpsum
