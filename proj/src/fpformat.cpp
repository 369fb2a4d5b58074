#include "fpsum/fpformat.hpp"

#include <charconv>

namespace fpsum {

FpFormat binary16() { return {11, -9999, 15, "binary16"}; }
FpFormat binary32() { return {24, -9999, 127, "binary32"}; }
FpFormat binary64() { return {53, -9999, 1023, "binary64"}; }

namespace {

long parse_field(const std::string& spec, std::string_view key, std::size_t& pos) {
    std::size_t at = spec.find(key, pos);
    if (at == std::string::npos)
        throw FormatError("custom format is missing '" + std::string(key) + "': " + spec);
    at += key.size();
    long value = 0;
    auto [end, ec] = std::from_chars(spec.data() + at, spec.data() + spec.size(), value);
    if (ec != std::errc{})
        throw FormatError("bad number after '" + std::string(key) + "' in: " + spec);
    pos = static_cast<std::size_t>(end - spec.data());
    return value;
}

}  // namespace

FpFormat parse_format(const std::string& name) {
    if (name == "binary16") return binary16();
    if (name == "binary32") return binary32();
    if (name == "binary64") return binary64();
    if (name.rfind("custom:", 0) == 0) {
        std::size_t pos = 7;
        FpFormat fmt;
        fmt.precision_bits = static_cast<int>(parse_field(name, "p=", pos));
        fmt.emin = parse_field(name, "emin=", pos);
        fmt.emax = parse_field(name, "emax=", pos);
        fmt.name = name;
        if (fmt.precision_bits < 2) throw FormatError("precision must be at least 2 bits: " + name);
        if (fmt.emin >= fmt.emax) throw FormatError("emin must be below emax: " + name);
        return fmt;
    }
    throw FormatError("unknown format '" + name +
                      "' (expected binary16/binary32/binary64 or custom:p=..,emin=..,emax=..)");
}

}  // namespace fpsum
