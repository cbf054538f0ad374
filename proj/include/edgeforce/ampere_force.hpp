#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "edgeforce/edge_current.hpp"
#include "edgeforce/raster_io.hpp"
#include "edgeforce/types.hpp"

namespace edgeforce {

// Planar reduction of dF = T1 x (T2 x r) / r^3 for in-plane currents.
// With source T2 = (a, b), target T1 = (c, d), r = target - source and
// s = a*r.y - b*r.x (the z component of T2 x r), the pair term is
// A * (d*s, -c*s) / r^3. Coincident positions contribute nothing.

/// Environment variable that overrides the default worker count.
inline constexpr const char* kWorkersEnv = "EDGEFORCE_THREADS";

struct ForceParams {
  double A = 1.0;
  double cutoff = std::numeric_limits<double>::infinity();

  bool has_cutoff() const { return cutoff != std::numeric_limits<double>::infinity(); }
  /// Throws std::invalid_argument unless A > 0 and cutoff > 0.
  void validate() const;

  friend bool operator==(const ForceParams&, const ForceParams&) = default;
};

struct ForceSample {
  Pixel position;
  Vec2 force;
  double magnitude = 0.0;

  friend bool operator==(const ForceSample&, const ForceSample&) = default;
};

/// Forces on target elements, index-aligned with the (ROI-filtered) targets.
struct ForceField {
  std::vector<ForceSample> samples;
  ForceParams params;
  int width = 0;   // frame size, 0 when unknown
  int height = 0;

  std::size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }

  friend bool operator==(const ForceField&, const ForceField&) = default;
};

struct ComputeOptions {
  /// 0 selects default_worker_count().
  unsigned workers = 0;
};

/// EDGEFORCE_THREADS if set to a positive integer, else the hardware
/// concurrency (at least 1).
unsigned default_worker_count();

ForceSample make_sample(Pixel position, Vec2 force);

Vec2 pair_force(const CurrentElement& target, const CurrentElement& source,
                double A);

/// Sum over sources in their canonical order, skipping sources farther than
/// the cutoff.
ForceSample element_force(const CurrentElement& target,
                          const CurrentField& sources,
                          const ForceParams& params);

/// Per-target forces. roi filters targets only; every source contributes.
/// Throws std::invalid_argument if roi does not fit the target frame.
ForceField force_field(const CurrentField& targets, const CurrentField& sources,
                       const ForceParams& params,
                       const std::optional<RegionMask>& roi = std::nullopt,
                       ComputeOptions options = {});

/// Sum of all per-target forces, in target order.
Vec2 total_force(const CurrentField& targets, const CurrentField& sources,
                 const ForceParams& params, ComputeOptions options = {});
Vec2 total_force(const ForceField& field);

/// Out-of-plane induction Bz at each queried position.
class InductionMap {
 public:
  void insert(Pixel p, double bz);
  std::optional<double> find(Pixel p) const;
  std::size_t size() const { return values_.size(); }
  const ForceParams& params() const { return params_; }
  void set_params(const ForceParams& p) { params_ = p; }

 private:
  static std::uint64_t key(Pixel p) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(p.y)) << 32) |
           static_cast<std::uint32_t>(p.x);
  }
  std::unordered_map<std::uint64_t, double> values_;
  ForceParams params_;
};

/// Bz(p) = A * sum_k s_k / r_k^3, sources beyond the cutoff skipped.
InductionMap induction_map(const CurrentField& sources,
                           std::span<const Pixel> positions,
                           const ForceParams& params,
                           ComputeOptions options = {});

/// Per target (c, d): force = (d*Bz, -c*Bz). Throws std::out_of_range if a
/// target position is missing from the map.
ForceField force_via_induction(const CurrentField& targets,
                               const InductionMap& induction,
                               const std::optional<RegionMask>& roi = std::nullopt);

}  // namespace edgeforce
