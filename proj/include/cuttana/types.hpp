#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cuttana {

// Vertex ids are 0-based in memory and 1-based in every file format.
using VertexId = std::uint32_t;
// Partition and sub-partition ids are 0-based in memory.
using PartId = std::uint32_t;
using SubpartId = std::uint32_t;

inline constexpr PartId kUnassigned = std::numeric_limits<PartId>::max();

enum class BalanceMode { vertex, edge };
enum class Algorithm { cuttana, fennel, ldg };

std::string_view to_string(BalanceMode mode);
std::string_view to_string(Algorithm algo);
BalanceMode parse_balance_mode(std::string_view text);
Algorithm parse_algorithm(std::string_view text);

/// Raised when a run hits a broken internal invariant (a logic bug, not bad input).
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Hard per-part capacity for a balance measure: max((1 + eps) * total / parts,
/// ceil(total / parts)).
///
/// `total` is |V| in vertex mode and 2|E| in edge mode. Never looser than
/// (1 + eps) * ceil(total / parts); the ceiling term keeps eps = 0 satisfiable.
double capacity(std::uint64_t total, std::uint32_t parts, double epsilon);

/// True when `load` fits under `capacity(...)`, with a small relative tolerance
/// so that exactly-representable boundaries are not lost to rounding.
bool fits(double load, double cap);

}  // namespace cuttana
