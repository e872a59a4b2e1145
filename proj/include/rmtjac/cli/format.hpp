#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "rmtjac/constructions.hpp"

namespace rmtjac::cli {

/// Shortest decimal string that round-trips to the same binary64, locale
/// independent. Infinities print as "inf"/"-inf", NaN as "nan".
std::string format_double(double value);

/// `sample_index,eig_1,...,eig_k` followed by one row per draw.
void write_spectra_csv(std::ostream& out, std::span<const SpectrumSample> samples);

/// Parses "0.1,0.2, 0.3" into numbers; throws PreconditionError on junk.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace rmtjac::cli
