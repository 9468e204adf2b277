#include "cuttana/types.hpp"

#include <algorithm>
#include <cmath>

namespace cuttana {

std::string_view to_string(BalanceMode mode) {
  return mode == BalanceMode::vertex ? "vertex" : "edge";
}

std::string_view to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::cuttana: return "cuttana";
    case Algorithm::fennel: return "fennel";
    case Algorithm::ldg: return "ldg";
  }
  return "unknown";
}

BalanceMode parse_balance_mode(std::string_view text) {
  if (text == "vertex") return BalanceMode::vertex;
  if (text == "edge") return BalanceMode::edge;
  throw std::invalid_argument("unknown balance mode '" + std::string(text) + "' (expected vertex|edge)");
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "cuttana") return Algorithm::cuttana;
  if (text == "fennel") return Algorithm::fennel;
  if (text == "ldg") return Algorithm::ldg;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected cuttana|fennel|ldg)");
}

double capacity(std::uint64_t total, std::uint32_t parts, double epsilon) {
  const std::uint64_t share = (total + parts - 1) / parts;
  const double exact = (1.0 + epsilon) * static_cast<double>(total) / static_cast<double>(parts);
  return std::max(exact, static_cast<double>(share));
}

bool fits(double load, double cap) {
  return load <= cap * (1.0 + 1e-12);
}

}  // namespace cuttana
