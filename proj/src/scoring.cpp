#include "cuttana/scoring.hpp"

#include <algorithm>
#include <cmath>

namespace cuttana {

double buffer_score(std::uint32_t degree, std::uint32_t assigned, std::uint32_t d_max, double theta) {
  return static_cast<double>(degree) / static_cast<double>(d_max) +
         theta * (static_cast<double>(assigned) / static_cast<double>(degree));
}

double FennelPenalty::operator()(double load) const {
  if (gamma == 1.5) return alpha * gamma * std::sqrt(load);
  return alpha * gamma * std::pow(load, gamma - 1.0);
}

FennelPenalty FennelPenalty::for_instance(double parts, double vertices, double edges, double gamma) {
  return {std::sqrt(parts) * edges / std::pow(vertices, gamma), gamma};
}

bool score_ties(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1.0});
  return std::abs(a - b) <= 1e-12 * scale;
}

void TieBreakingArgmax::reset() { ties_.clear(); }

void TieBreakingArgmax::offer(std::uint32_t id, double score) {
  if (ties_.empty() || (score > best_ && !score_ties(score, best_))) {
    ties_.assign(1, id);
    best_ = score;
  } else if (score_ties(score, best_)) {
    ties_.push_back(id);
  }
}

std::uint32_t TieBreakingArgmax::pick(Rng& rng) const {
  if (ties_.size() == 1) return ties_.front();
  return ties_[rng() % ties_.size()];
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace cuttana
