#include "rmtjac/cli/format.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

#include "rmtjac/errors.hpp"

namespace rmtjac::cli {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value < 0 ? "-inf" : "inf";
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

void write_spectra_csv(std::ostream& out, std::span<const SpectrumSample> samples) {
  const std::size_t k = samples.empty() ? 0 : samples.front().values.size();
  out << "sample_index";
  for (std::size_t j = 1; j <= k; ++j) out << ",eig_" << j;
  out << '\n';
  for (std::size_t i = 0; i < samples.size(); ++i) {
    out << i;
    for (const double v : samples[i].values) out << ',' << format_double(v);
    out << '\n';
  }
}

std::vector<double> parse_number_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    const auto begin = token.find_first_not_of(" \t\r");
    const auto end = token.find_last_not_of(" \t\r");
    if (begin == std::string::npos) throw PreconditionError("empty entry in number list '" + text + "'");
    const std::string trimmed = token.substr(begin, end - begin + 1);
    double value = 0.0;
    const auto result = std::from_chars(trimmed.data(), trimmed.data() + trimmed.size(), value);
    if (result.ec != std::errc() || result.ptr != trimmed.data() + trimmed.size()) {
      throw PreconditionError("not a number: '" + trimmed + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw PreconditionError("empty number list");
  return out;
}

}  // namespace rmtjac::cli
