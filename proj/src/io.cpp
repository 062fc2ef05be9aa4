#include "hyperlm/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "hyperlm/error.hpp"

namespace hyperlm {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string format_list(std::span<const double> v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += format_double(v[i]);
  }
  return s;
}

void write_dataset(std::ostream& out, const LabeledSet& s) {
  out << s.dim() << ' ' << s.size() << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << s.label(i);
    for (double c : s.point(i).vec().coords()) out << ' ' << format_double(c);
    out << '\n';
  }
}

std::string dataset_to_string(const LabeledSet& s) {
  std::ostringstream os;
  write_dataset(os, s);
  return os.str();
}

double parse_double(const std::string& token, const std::string& what) {
  if (token.empty()) throw ConfigError(what + ": empty value");
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(token.c_str(), &end);
  if (end != token.c_str() + token.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(what + ": not a finite number: '" + token + "'");
  }
  return v;
}

long long parse_int(const std::string& token, const std::string& what) {
  if (token.empty()) throw ConfigError(what + ": empty value");
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(token.c_str(), &end, 10);
  if (end != token.c_str() + token.size() || errno == ERANGE) {
    throw ConfigError(what + ": not an integer: '" + token + "'");
  }
  return v;
}

std::vector<double> parse_list(const std::string& token, const std::string& what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = token.find(',', start);
    out.push_back(parse_double(token.substr(start, comma - start), what));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

LabeledSet read_dataset(std::istream& in, double tol) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("dataset: missing header");
  std::istringstream header(line);
  std::string dtok, ntok, extra;
  if (!(header >> dtok >> ntok) || (header >> extra)) {
    throw ConfigError("dataset: header must be 'd n'");
  }
  const long long d = parse_int(dtok, "dataset d");
  const long long n = parse_int(ntok, "dataset n");
  if (d < 1 || n < 0) throw ConfigError("dataset: need d >= 1 and n >= 0");

  std::vector<LorentzPoint> pts;
  std::vector<int> labels;
  pts.reserve(static_cast<std::size_t>(n));
  labels.reserve(static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    const std::string where = "dataset line " + std::to_string(i + 2);
    if (!std::getline(in, line)) throw ConfigError(where + ": missing");
    std::istringstream row(line);
    std::string tok;
    if (!(row >> tok)) throw ConfigError(where + ": empty");
    const long long y = parse_int(tok, where + " label");
    if (y != 1 && y != -1) throw ConfigError(where + ": label must be -1 or 1");
    std::vector<double> c;
    while (row >> tok) c.push_back(parse_double(tok, where));
    if (c.size() != static_cast<std::size_t>(d) + 1) {
      throw ConfigError(where + ": expected " + std::to_string(d + 1) + " coordinates");
    }
    try {
      pts.emplace_back(AmbientVector(std::move(c)), Sheet::Upper, tol);
    } catch (const OffManifold& e) {
      throw ConfigError(where + ": " + e.what());
    }
    labels.push_back(static_cast<int>(y));
  }
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") != std::string::npos) {
      throw ConfigError("dataset: trailing content after " + std::to_string(n) + " rows");
    }
  }
  return LabeledSet(static_cast<std::size_t>(d), std::move(pts), std::move(labels));
}

LabeledSet read_dataset_file(const std::string& path, double tol) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open dataset '" + path + "'");
  return read_dataset(in, tol);
}

void write_trace_csv(std::ostream& out, const TrainTrace& trace) {
  out << "iter,clean_loss,robust_loss,margin,eta,adv_count\n";
  for (const auto& r : trace.rows) {
    out << r.iter << ',' << format_double(r.clean_loss) << ',' << format_double(r.robust_loss)
        << ',' << format_double(r.margin) << ',' << format_double(r.eta) << ',' << r.adv_count
        << '\n';
  }
}

}  // namespace hyperlm
