#include "cli/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace pdq::cli {

namespace {

constexpr int kWoolFirst = 9;
constexpr std::array<std::size_t, 46> kWoolCounts = {
    1,   1,   3,   10,  29,  25,  43,  79,  117, 178, 216, 238, 305, 337, 361, 404,
    378, 336, 277, 288, 227, 215, 181, 139, 113, 79,  62,  48,  31,  27,  22,  19,
    12,  7,   1,   1,   1,   2,   1,   0,   0,   0,   0,   2,   0,   1};

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& s, double& out) {
  std::size_t used = 0;
  try {
    out = std::stod(s, &used);
  } catch (const std::exception&) {
    return false;
  }
  return used == s.size() && std::isfinite(out);
}

std::string where(const std::string& origin, std::size_t line) {
  return origin + ":" + std::to_string(line) + ": ";
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return in;
}

}  // namespace

FrequencyTable parse_frequencies(std::istream& in, const std::string& origin) {
  FrequencyTable t;
  std::string line;
  std::size_t lineno = 0;
  bool first_data = true;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError(where(origin, lineno) + "expected 'value,count'");
    }
    const std::string a = trim(line.substr(0, comma));
    const std::string b = trim(line.substr(comma + 1));
    double value = 0.0;
    double count = 0.0;
    if (!parse_double(a, value) || !parse_double(b, count)) {
      if (first_data && t.values.empty()) {
        first_data = false;  // header row
        continue;
      }
      throw ParseError(where(origin, lineno) + "expected numbers, got '" + line + "'");
    }
    first_data = false;
    if (count < 0.0 || count != std::floor(count)) {
      throw ParseError(where(origin, lineno) + "count must be a non-negative integer");
    }
    if (!t.values.empty() && !(value > t.values.back())) {
      throw ParseError(where(origin, lineno) + "values must be strictly increasing");
    }
    t.values.push_back(value);
    t.counts.push_back(static_cast<std::size_t>(count));
  }
  std::size_t total = 0;
  for (std::size_t c : t.counts) total += c;
  if (total == 0) throw ParseError(origin + ": no observations");
  return t;
}

std::vector<double> parse_sample(std::istream& in, const std::string& origin) {
  std::vector<double> x;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    double v = 0.0;
    if (!parse_double(line, v)) {
      throw ParseError(where(origin, lineno) + "expected a real number, got '" + line + "'");
    }
    x.push_back(v);
  }
  if (x.empty()) throw ParseError(origin + ": no observations");
  return x;
}

FrequencyTable read_frequency_file(const std::string& path) {
  auto in = open(path);
  return parse_frequencies(in, path);
}

std::vector<double> read_sample_file(const std::string& path) {
  auto in = open(path);
  return parse_sample(in, path);
}

FrequencyTable wool_frequencies(bool trim_outliers) {
  FrequencyTable t;
  for (std::size_t i = 0; i < kWoolCounts.size(); ++i) {
    const int d = kWoolFirst + static_cast<int>(i);
    std::size_t c = kWoolCounts[i];
    // The trimmed variant drops the two 52s and the 54.
    if (trim_outliers && d >= 52) c = 0;
    if (c == 0) continue;
    t.values.push_back(d);
    t.counts.push_back(c);
  }
  return t;
}

void write_frequencies(std::ostream& out, const FrequencyTable& t) {
  out << "value,count\n";
  for (std::size_t i = 0; i < t.values.size(); ++i) {
    out << format_number(t.values[i]) << ',' << t.counts[i] << '\n';
  }
}

std::pair<std::string, std::vector<double>> parse_call(const std::string& spec) {
  const std::string s = trim(spec);
  const auto open_paren = s.find('(');
  if (open_paren == std::string::npos) return {s, {}};
  if (s.back() != ')') throw UsageError("malformed specification '" + spec + "'");
  std::vector<double> params;
  std::stringstream args(s.substr(open_paren + 1, s.size() - open_paren - 2));
  std::string item;
  while (std::getline(args, item, ',')) {
    double v = 0.0;
    if (!parse_double(trim(item), v)) {
      throw UsageError("bad parameter '" + item + "' in '" + spec + "'");
    }
    params.push_back(v);
  }
  return {trim(s.substr(0, open_paren)), params};
}

Source parse_source(const std::string& spec) {
  if (spec.rfind("sample:", 0) == 0) return EmpiricalSample(read_sample_file(spec.substr(7)));
  if (spec.rfind("freq:", 0) == 0) {
    const auto t = read_frequency_file(spec.substr(5));
    return EmpiricalSample::from_frequencies(t.values, t.counts);
  }
  if (spec == "wool" || spec == "wool-trimmed") {
    const auto t = wool_frequencies(spec == "wool-trimmed");
    return EmpiricalSample::from_frequencies(t.values, t.counts);
  }
  const auto [name, p] = parse_call(spec);
  auto need = [&](std::size_t k) {
    if (p.size() != k) {
      throw UsageError("'" + name + "' takes " + std::to_string(k) + " parameter(s)");
    }
  };
  if (name == "poisson") {
    need(1);
    return LatticeDistribution::poisson(p[0]);
  }
  if (name == "geometric") {
    need(1);
    return LatticeDistribution::geometric(p[0]);
  }
  if (name == "negbin") {
    need(2);
    return LatticeDistribution::negative_binomial(p[0], p[1]);
  }
  if (name == "binomial") {
    need(2);
    if (p[0] != std::floor(p[0])) throw UsageError("binomial trials must be an integer");
    return LatticeDistribution::binomial(static_cast<int>(p[0]), p[1]);
  }
  return make_model(name, std::span<const double>(p));
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.10g", x);
  return buf.data();
}

double round_significant(double x) {
  if (!std::isfinite(x)) return x;
  return std::stod(format_number(x));
}

}  // namespace pdq::cli
