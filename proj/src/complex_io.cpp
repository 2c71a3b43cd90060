#include <landen/complex_io.hpp>

#include <cctype>
#include <charconv>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <system_error>

namespace landen::io
{

namespace
{

double parse_real(std::string_view s, std::string_view whole)
{
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) {
        return negative ? -1.0 : 1.0;
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw parse_error("invalid complex number '" + std::string(whole) + "'");
    }
    return negative ? -v : v;
}

} // namespace

std::complex<double> parse_complex(std::string_view text)
{
    const std::string_view whole = text;
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (text.empty()) {
        throw parse_error("empty complex number");
    }
    if (text.back() != 'i' && text.back() != 'j') {
        return {parse_real(text, whole), 0.0};
    }
    text.remove_suffix(1);
    // Split at the last sign that is not part of an exponent.
    std::size_t split = std::string_view::npos;
    for (std::size_t k = text.size(); k-- > 1;) {
        if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
            split = k;
            break;
        }
    }
    if (split == std::string_view::npos) {
        return {0.0, parse_real(text, whole)};
    }
    return {parse_real(text.substr(0, split), whole), parse_real(text.substr(split), whole)};
}

std::string format_real(double x, int digits)
{
    std::ostringstream os;
    os << std::setprecision(digits) << x;
    return os.str();
}

std::string format_complex(const std::complex<double> &z, int digits)
{
    std::ostringstream os;
    os << std::setprecision(digits) << z.real();
    const double im = z.imag();
    os << (std::signbit(im) && !std::isnan(im) ? '-' : '+') << std::abs(im) << 'i';
    return os.str();
}

nlohmann::json to_json(const std::complex<double> &z)
{
    return {{"re", z.real()}, {"im", z.imag()}};
}

std::complex<double> complex_from_json(const nlohmann::json &j)
{
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (!j.is_object() || !j.contains("re") || !j.at("re").is_number()) {
        throw parse_error("expected a complex record {re, im}, got " + j.dump());
    }
    double im = 0.0;
    if (j.contains("im")) {
        if (!j.at("im").is_number()) {
            throw parse_error("expected a number for 'im', got " + j.at("im").dump());
        }
        im = j.at("im").get<double>();
    }
    return {j.at("re").get<double>(), im};
}

} // namespace landen::io
