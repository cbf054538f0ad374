#include "edgeforce/ampere_force.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>

namespace edgeforce {

namespace {

// Static contiguous partition of [0, n). Each index is written by exactly one
// worker, so results do not depend on the worker count.
template <class Fn>
void parallel_for(std::size_t n, unsigned workers, Fn&& fn) {
  if (workers == 0) workers = default_worker_count();
  workers = static_cast<unsigned>(
      std::min<std::size_t>(workers, std::max<std::size_t>(n / 64, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::size_t begin = n * w / workers;
    const std::size_t end = n * (w + 1) / workers;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
}

// Row index over a (y, x)-sorted source list. Candidate sources for a target
// are visited row by row, left to right, which is a subsequence of the
// canonical order, so a bucketed sum matches the brute-force sum bitwise.
class SourceIndex {
 public:
  explicit SourceIndex(const CurrentField& sources) : elements_(sources.elements) {
    if (!std::is_sorted(elements_.begin(), elements_.end(),
                        [](const auto& a, const auto& b) {
                          return a.position < b.position;
                        })) {
      throw std::invalid_argument("source current field is not in (y, x) order");
    }
    if (elements_.empty()) return;
    y_min_ = elements_.front().position.y;
    const int y_max = elements_.back().position.y;
    row_start_.assign(static_cast<std::size_t>(y_max - y_min_) + 2, 0);
    std::size_t i = 0;
    for (int y = y_min_; y <= y_max + 1; ++y) {
      while (i < elements_.size() && elements_[i].position.y < y) ++i;
      row_start_[static_cast<std::size_t>(y - y_min_)] = i;
    }
  }

  // Calls fn(element) for every source within `radius` pixels of p on each
  // axis, in canonical order.
  template <class Fn>
  void for_each_near(Pixel p, double radius, Fn&& fn) const {
    if (elements_.empty()) return;
    const int rows = static_cast<int>(row_start_.size()) - 1;
    const double lo = std::ceil(p.y - radius) - y_min_;
    const double hi = std::floor(p.y + radius) - y_min_;
    const int r0 = static_cast<int>(std::max(lo, 0.0));
    const int r1 = static_cast<int>(std::min(hi, rows - 1.0));
    const double x_lo = p.x - radius, x_hi = p.x + radius;
    for (int r = r0; r <= r1; ++r) {
      auto first = elements_.begin() + static_cast<std::ptrdiff_t>(row_start_[r]);
      auto last = elements_.begin() + static_cast<std::ptrdiff_t>(row_start_[r + 1]);
      auto it = std::lower_bound(first, last, x_lo, [](const auto& e, double x) {
        return e.position.x < x;
      });
      for (; it != last && it->position.x <= x_hi; ++it) fn(*it);
    }
  }

 private:
  const std::vector<CurrentElement>& elements_;
  int y_min_ = 0;
  std::vector<std::size_t> row_start_;
};

bool beyond(const Pixel& a, const Pixel& b, double cutoff_sq) {
  const double rx = a.x - b.x, ry = a.y - b.y;
  return rx * rx + ry * ry > cutoff_sq;
}

// Out-of-plane (T2 x r).z / r^3 without the constant; 0 for coincident points.
double induction_term(Pixel at, const CurrentElement& source) {
  const double rx = at.x - source.position.x;
  const double ry = at.y - source.position.y;
  if (rx == 0 && ry == 0) return 0.0;
  const double s = source.vector.x * ry - source.vector.y * rx;
  const double r2 = rx * rx + ry * ry;
  return s / (r2 * std::sqrt(r2));
}

std::vector<std::size_t> selected_targets(const CurrentField& targets,
                                          const std::optional<RegionMask>& roi) {
  std::vector<std::size_t> idx;
  idx.reserve(targets.size());
  if (roi) roi->validate(targets.width, targets.height);
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (!roi || roi->contains(targets.elements[i].position)) idx.push_back(i);
  }
  return idx;
}

}  // namespace

void ForceParams::validate() const {
  if (!(A > 0) || !std::isfinite(A)) {
    throw std::invalid_argument("constant A must be a positive number");
  }
  if (!(cutoff > 0)) {
    throw std::invalid_argument("cutoff must be positive or infinite");
  }
}

unsigned default_worker_count() {
  if (const char* env = std::getenv(kWorkersEnv)) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

ForceSample make_sample(Pixel position, Vec2 force) {
  return {position, force, std::hypot(force.x, force.y)};
}

Vec2 pair_force(const CurrentElement& target, const CurrentElement& source,
                double A) {
  const double rx = target.position.x - source.position.x;
  const double ry = target.position.y - source.position.y;
  if (rx == 0 && ry == 0) return {};
  const double s = source.vector.x * ry - source.vector.y * rx;
  const double r2 = rx * rx + ry * ry;
  const double r3 = r2 * std::sqrt(r2);
  return {A * target.vector.y * s / r3, -A * target.vector.x * s / r3};
}

ForceSample element_force(const CurrentElement& target,
                          const CurrentField& sources,
                          const ForceParams& params) {
  Vec2 acc;
  const double cutoff_sq = params.cutoff * params.cutoff;
  for (const auto& src : sources.elements) {
    if (params.has_cutoff() && beyond(target.position, src.position, cutoff_sq))
      continue;
    acc += pair_force(target, src, params.A);
  }
  return make_sample(target.position, acc);
}

ForceField force_field(const CurrentField& targets, const CurrentField& sources,
                       const ForceParams& params,
                       const std::optional<RegionMask>& roi,
                       ComputeOptions options) {
  params.validate();
  const auto idx = selected_targets(targets, roi);
  ForceField out;
  out.params = params;
  out.width = targets.width;
  out.height = targets.height;
  out.samples.resize(idx.size());

  if (!params.has_cutoff()) {
    parallel_for(idx.size(), options.workers, [&](std::size_t i) {
      out.samples[i] = element_force(targets.elements[idx[i]], sources, params);
    });
    return out;
  }

  const SourceIndex index(sources);
  const double cutoff_sq = params.cutoff * params.cutoff;
  parallel_for(idx.size(), options.workers, [&](std::size_t i) {
    const auto& target = targets.elements[idx[i]];
    Vec2 acc;
    index.for_each_near(target.position, params.cutoff, [&](const auto& src) {
      if (!beyond(target.position, src.position, cutoff_sq))
        acc += pair_force(target, src, params.A);
    });
    out.samples[i] = make_sample(target.position, acc);
  });
  return out;
}

Vec2 total_force(const ForceField& field) {
  Vec2 sum;
  for (const auto& s : field.samples) sum += s.force;
  return sum;
}

Vec2 total_force(const CurrentField& targets, const CurrentField& sources,
                 const ForceParams& params, ComputeOptions options) {
  return total_force(force_field(targets, sources, params, std::nullopt, options));
}

void InductionMap::insert(Pixel p, double bz) { values_[key(p)] = bz; }

std::optional<double> InductionMap::find(Pixel p) const {
  if (auto it = values_.find(key(p)); it != values_.end()) return it->second;
  return std::nullopt;
}

InductionMap induction_map(const CurrentField& sources,
                           std::span<const Pixel> positions,
                           const ForceParams& params, ComputeOptions options) {
  params.validate();
  std::vector<double> bz(positions.size());
  const double cutoff_sq = params.cutoff * params.cutoff;
  parallel_for(positions.size(), options.workers, [&](std::size_t i) {
    double sum = 0.0;
    for (const auto& src : sources.elements) {
      if (params.has_cutoff() && beyond(positions[i], src.position, cutoff_sq))
        continue;
      sum += induction_term(positions[i], src);
    }
    bz[i] = params.A * sum;
  });
  InductionMap map;
  map.set_params(params);
  for (std::size_t i = 0; i < positions.size(); ++i) map.insert(positions[i], bz[i]);
  return map;
}

ForceField force_via_induction(const CurrentField& targets,
                               const InductionMap& induction,
                               const std::optional<RegionMask>& roi) {
  ForceField out;
  out.params = induction.params();
  out.width = targets.width;
  out.height = targets.height;
  for (std::size_t i : selected_targets(targets, roi)) {
    const auto& t = targets.elements[i];
    const auto bz = induction.find(t.position);
    if (!bz) {
      throw std::out_of_range("no induction value at (" +
                              std::to_string(t.position.x) + ", " +
                              std::to_string(t.position.y) + ")");
    }
    out.samples.push_back(
        make_sample(t.position, {t.vector.y * *bz, -t.vector.x * *bz}));
  }
  return out;
}

}  // namespace edgeforce
