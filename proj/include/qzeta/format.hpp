// Locale-independent numeric text output shared by the JSON/CSV emitters.
#ifndef QZETA_FORMAT_HPP
#define QZETA_FORMAT_HPP

#include <string>

namespace qzeta {

// 15 significant digits, '.' decimal separator, no locale dependence.
std::string format_double(double x);

// format_double for finite values, "null" for NaN/inf (JSON-safe).
std::string json_number(double x);

std::string json_escape(const std::string& s);

}  // namespace qzeta

#endif
