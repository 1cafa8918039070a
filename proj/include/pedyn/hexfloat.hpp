#ifndef PEDYN_HEXFLOAT_HPP
#define PEDYN_HEXFLOAT_HPP

#include <charconv>
#include <stdexcept>
#include <string>
#include <system_error>

namespace pedyn {

/// Doubles cross the serialization boundary as hex-float strings
/// ("0x1.921fb54442d18p+1"), which round-trip exactly. Decimal output is
/// shortest round-trip, used for human-facing CSV columns.

inline std::string to_hex(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::hex);
    if (res.ec != std::errc()) throw std::runtime_error("hex float formatting failed");
    std::string digits(buf, res.ptr);
    if (!digits.empty() && digits[0] == '-') {
        return "-0x" + digits.substr(1);
    }
    return "0x" + digits;
}

inline double from_hex(const std::string& s) {
    const char* begin = s.c_str();
    const char* end = begin + s.size();
    bool neg = false;
    if (begin != end && (*begin == '-' || *begin == '+')) {
        neg = (*begin == '-');
        ++begin;
    }
    if (end - begin >= 2 && begin[0] == '0' && (begin[1] == 'x' || begin[1] == 'X')) {
        begin += 2;
    }
    double v = 0.0;
    auto res = std::from_chars(begin, end, v, std::chars_format::hex);
    if (res.ec != std::errc() || res.ptr != end) {
        throw std::runtime_error("bad hex float: " + s);
    }
    return neg ? -v : v;
}

/// Shortest decimal that parses back to exactly v.
inline std::string format_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    if (res.ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, res.ptr);
}

} // namespace pedyn

#endif // PEDYN_HEXFLOAT_HPP
