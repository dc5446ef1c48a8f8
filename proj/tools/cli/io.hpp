#pragma once

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "pdq/dists.hpp"
#include "pdq/estimate.hpp"

namespace pdq::cli {

/// Bad input file contents; maps to exit status 3.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Bad command line; maps to exit status 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FrequencyTable {
  std::vector<double> values;
  std::vector<std::size_t> counts;
};

/// "value,count" rows, optional header, '#' comments. Values must increase.
FrequencyTable parse_frequencies(std::istream& in, const std::string& origin);
/// One real per line (blank lines and '#' comments skipped).
std::vector<double> parse_sample(std::istream& in, const std::string& origin);

FrequencyTable read_frequency_file(const std::string& path);
std::vector<double> read_sample_file(const std::string& path);

/// Fibre diameters (microns) of the bundled wool data.
FrequencyTable wool_frequencies(bool trim_outliers = false);
void write_frequencies(std::ostream& out, const FrequencyTable& t);

/// What an input specification resolves to.
using Source = std::variant<ContinuousModel, LatticeDistribution, EmpiricalSample>;

/// Parses "normal", "tukey(-1)", "gamma(3)", "poisson(4)", "geometric(0.5)",
/// "negbin(2,0.25)", "binomial(10,0.5)", "sample:PATH", "freq:PATH", "wool",
/// "wool-trimmed".
Source parse_source(const std::string& spec);

/// "name(a,b)" or "name" -> name and parameters.
std::pair<std::string, std::vector<double>> parse_call(const std::string& spec);

/// %.10g, which also fixes JSON output at 10 significant digits.
std::string format_number(double x);
double round_significant(double x);

}  // namespace pdq::cli
