#pragma once

#include <string>

#include "hnbc/herglotz.hpp"
#include "hnbc/inverse.hpp"
#include "hnbc/problem.hpp"

namespace hnbc {

/// JSON readers.  All structural problems (syntax, missing or mistyped
/// fields, inadmissible values) surface as ConfigError with a message that
/// names the offending field.
Problem parse_problem(const std::string& text);
Spectrum parse_spectrum(const std::string& text);
PartialSpectrum parse_partial_spectrum(const std::string& text);
HerglotzFunction parse_herglotz(const std::string& text);

/// JSON / CSV writers.  Output is deterministic: fixed key order and all
/// floating point values rendered with 17 significant digits, enough to
/// reproduce every double exactly.
std::string write_spectrum_json(const Spectrum& spectrum);
std::string write_spectrum_csv(const Spectrum& spectrum);
std::string write_herglotz_json(const HerglotzFunction& function);

/// Whole-file helpers; ConfigError on I/O failure.  Content is serialized
/// fully before the file is opened, so a failed run never leaves a partial
/// file behind.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

} // namespace hnbc
