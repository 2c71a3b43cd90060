#ifndef LANDEN_COMPLEX_IO_HPP
#define LANDEN_COMPLEX_IO_HPP

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

namespace landen::io
{

class parse_error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Parses "a+bi", "a-bi", "a" or "bi"; components may use scientific notation, nan or inf.
std::complex<double> parse_complex(std::string_view text);

/// "a+bi" with `digits` significant digits per component.
std::string format_complex(const std::complex<double> &z, int digits = 17);

std::string format_real(double x, int digits = 17);

nlohmann::json to_json(const std::complex<double> &z);

/// Accepts {re, im} records (im optional) and bare numbers.
std::complex<double> complex_from_json(const nlohmann::json &j);

} // namespace landen::io

#endif
