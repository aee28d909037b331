#include "qmz/argtext.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

#include "qmz/errors.hpp"

namespace qmz {

namespace {

[[noreturn]] void fail_at(std::string_view text, size_t pos, const char* what) {
    throw argument_error("complex literal \"" + std::string(text) + "\": " + what +
                         " at position " + std::to_string(pos + 1));
}

// [+-]? digits with optional point/exponent; a bare sign (or nothing) yields
// coefficient 1 and sets `bare`, legal only when an 'i' follows
double scan_signed(std::string_view text, size_t& p, size_t end, bool& bare) {
    double sign = 1.0;
    if (p < end && (text[p] == '+' || text[p] == '-')) {
        if (text[p] == '-') sign = -1.0;
        ++p;
    }
    double mag = 0.0;
    const auto res = std::from_chars(text.data() + p, text.data() + end, mag);
    if (res.ec == std::errc()) {
        bare = false;
        p = static_cast<size_t>(res.ptr - text.data());
    } else {
        bare = true;
        mag = 1.0;
    }
    return sign * mag;
}

}  // namespace

Cplx parse_complex(std::string_view text) {
    size_t b = 0;
    size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b == e) fail_at(text, b, "empty literal");

    size_t p = b;
    bool bare_first = false;
    const double first = scan_signed(text, p, e, bare_first);
    if (p < e && text[p] == 'i') {
        ++p;
        if (p != e) fail_at(text, p, "trailing characters after 'i'");
        if (!std::isfinite(first)) fail_at(text, b, "non-finite value");
        return Cplx(0.0, first);
    }
    if (bare_first) fail_at(text, p, "expected a number");
    if (p == e) {
        if (!std::isfinite(first)) fail_at(text, b, "non-finite value");
        return Cplx(first, 0.0);
    }
    if (text[p] != '+' && text[p] != '-') fail_at(text, p, "expected '+', '-' or 'i'");

    const size_t imag_start = p;
    bool bare_second = false;
    const double second = scan_signed(text, p, e, bare_second);
    if (p >= e || text[p] != 'i') fail_at(text, p, "expected imaginary part ending in 'i'");
    ++p;
    if (p != e) fail_at(text, p, "trailing characters after 'i'");
    if (!std::isfinite(first) || !std::isfinite(second)) fail_at(text, imag_start, "non-finite value");
    return Cplx(first, second);
}

std::string format_real(double x) {
    if (x == 0.0) x = 0.0;  // fold -0
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string format_complex(Cplx z) {
    const double re = (z.real() == 0.0) ? 0.0 : z.real();
    const double im = (z.imag() == 0.0) ? 0.0 : z.imag();
    if (im == 0.0) return format_real(re);
    if (re == 0.0) return format_real(im) + "i";
    std::string out = format_real(re);
    out += (im < 0.0) ? '-' : '+';
    out += format_real(std::abs(im));
    out += 'i';
    return out;
}

ArgVector parse_arg_vector(std::string_view text) {
    ArgVector out;
    size_t start = 0;
    int component = 1;
    while (true) {
        const size_t comma = text.find(',', start);
        const std::string_view piece =
            text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                               : comma - start);
        try {
            out.push_back(parse_complex(piece));
        } catch (const argument_error& err) {
            throw argument_error("component " + std::to_string(component) + ": " + err.what());
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
        ++component;
    }
    return out;
}

std::string format_arg_vector(const ArgVector& s) {
    std::string out;
    for (size_t i = 0; i < s.size(); ++i) {
        if (i) out += ',';
        out += format_complex(s[i]);
    }
    return out;
}

}  // namespace qmz
