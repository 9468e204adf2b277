#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace cuttana {

using Rng = std::mt19937_64;

/// Priority of a deferred vertex: degree/d_max + theta * assigned/degree.
/// Requires 1 <= degree; callers only buffer vertices with degree < d_max.
double buffer_score(std::uint32_t degree, std::uint32_t assigned, std::uint32_t d_max, double theta);

/// Marginal Fennel penalty alpha * gamma * x^(gamma - 1).
struct FennelPenalty {
  double alpha = 1.0;
  double gamma = 1.5;

  double operator()(double load) const;

  /// alpha = sqrt(parts) * edges / vertices^gamma, the published default.
  static FennelPenalty for_instance(double parts, double vertices, double edges, double gamma = 1.5);
};

/// Exact-tie test used by every argmax in the streaming phase.
bool score_ties(double a, double b);

/// Collects argmax candidates and breaks exact ties with a seeded draw.
/// The RNG is consumed only when more than one candidate ties, so runs that
/// never tie never touch it.
class TieBreakingArgmax {
 public:
  void reset();
  void offer(std::uint32_t id, double score);
  bool empty() const { return ties_.empty(); }
  double best_score() const { return best_; }
  std::uint32_t pick(Rng& rng) const;

 private:
  double best_ = 0.0;
  std::vector<std::uint32_t> ties_;
};

/// splitmix64 finalizer; used to derive independent seeds and rank keys.
std::uint64_t mix64(std::uint64_t x);

}  // namespace cuttana
