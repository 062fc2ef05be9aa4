#pragma once

// Text formats. Numbers are written with 17 significant digits so that a
// dataset read back is bit-identical to the one written.
//
// Dataset:  `d n` on the first line, then n lines `label x0 x1 ... xd`.
// Trace:    CSV with columns iter,clean_loss,robust_loss,margin,eta,adv_count.

#include <iosfwd>
#include <string>
#include <vector>

#include "hyperlm/geometry.hpp"
#include "hyperlm/margin.hpp"
#include "hyperlm/train.hpp"

namespace hyperlm {

inline constexpr double kDatasetTol = 1e-6;

std::string format_double(double v);
// Comma-separated, no spaces.
std::string format_list(std::span<const double> v);

void write_dataset(std::ostream& out, const LabeledSet& s);
std::string dataset_to_string(const LabeledSet& s);
// Throws ConfigError on malformed input or on points off the upper sheet.
LabeledSet read_dataset(std::istream& in, double tol = kDatasetTol);
LabeledSet read_dataset_file(const std::string& path, double tol = kDatasetTol);

void write_trace_csv(std::ostream& out, const TrainTrace& trace);

// Strict parse of a whole token; throws ConfigError naming `what` otherwise.
double parse_double(const std::string& token, const std::string& what);
long long parse_int(const std::string& token, const std::string& what);
std::vector<double> parse_list(const std::string& token, const std::string& what);

}  // namespace hyperlm
