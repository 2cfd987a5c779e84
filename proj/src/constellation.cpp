#include "cld/constellation.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace cld {

BuiltLayer build_walker(const LayerSpec& spec, Epoch epoch) {
  if (spec.kind != LayerKind::walker) {
    throw ConstellationError("build_walker: layer '" + spec.name + "' is not a walker layer");
  }
  if (spec.planes <= 0 || spec.sats_per_plane <= 0) {
    throw ConstellationError("build_walker: layer '" + spec.name +
                             "' needs at least one plane and one satellite per plane");
  }
  BuiltLayer out;
  out.spec = spec;
  out.elements.reserve(static_cast<std::size_t>(spec.planes) * spec.sats_per_plane);
  const double raan_step = spec.raan_spread_deg * kDegToRad / spec.planes;
  const double slot_step = kTwoPi / spec.sats_per_plane;
  const double phase_step = spec.phasing_offset_deg * kDegToRad;
  for (int p = 0; p < spec.planes; ++p) {
    for (int q = 0; q < spec.sats_per_plane; ++q) {
      OrbitalElements e;
      e.semi_major_axis = kEarthRadius + spec.altitude_m;
      e.inclination = spec.inclination_deg * kDegToRad;
      e.raan = wrap_two_pi(p * raan_step);
      e.arg_latitude_at_epoch = wrap_two_pi(q * slot_step + p * phase_step);
      e.eccentricity = 0.0;
      e.epoch = epoch;
      validate(e);
      out.elements.push_back(e);
    }
  }
  return out;
}

BuiltLayer build_tle_layer(const LayerSpec& spec, const std::vector<TleRecord>& records) {
  if (records.empty()) {
    throw ConstellationError("TLE layer '" + spec.name + "' has no element sets");
  }
  BuiltLayer out;
  out.spec = spec;
  double altitude_sum = 0.0;
  for (const auto& r : records) {
    out.elements.push_back(r.elements);
    out.names.push_back(r.name);
    altitude_sum += r.elements.semi_major_axis - kEarthRadius;
  }
  out.spec.altitude_m = altitude_sum / static_cast<double>(records.size());
  out.spec.planes = 1;
  out.spec.sats_per_plane = static_cast<int>(records.size());
  return out;
}

Constellation Constellation::assign_global_ids(std::vector<BuiltLayer> layers) {
  Constellation c;
  std::set<int> seen;
  GlobalId next = 1;
  for (std::size_t k = 0; k < layers.size(); ++k) {
    auto& b = layers[k];
    if (!seen.insert(b.spec.index).second) {
      throw ConstellationError("duplicate layer index " + std::to_string(b.spec.index));
    }
    if (b.spec.index != static_cast<int>(k) + 1) {
      throw ConstellationError("layer indices must run 1..n in order; found " +
                               std::to_string(b.spec.index) + " at position " +
                               std::to_string(k + 1));
    }
    if (k > 0 && !(b.spec.altitude_m > layers[k - 1].spec.altitude_m)) {
      throw ConstellationError("layer altitudes must strictly increase with index (layer " +
                               std::to_string(b.spec.index) + ")");
    }
    if (b.elements.empty()) {
      throw ConstellationError("layer " + std::to_string(b.spec.index) + " is empty");
    }
    Layer l;
    l.spec = std::move(b.spec);
    l.first_global_id = next;
    l.elements = std::move(b.elements);
    l.names = std::move(b.names);
    next += l.size();
    c.layers_.push_back(std::move(l));
  }
  c.total_ = next - 1;
  return c;
}

const Layer& Constellation::layer(int u) const {
  if (u < 1 || u > layer_count()) {
    throw ConstellationError("layer index " + std::to_string(u) + " out of range");
  }
  return layers_[static_cast<std::size_t>(u - 1)];
}

SatelliteId Constellation::layer_of(GlobalId g) const {
  if (g < 1 || g > total_) {
    throw ConstellationError("global id " + std::to_string(g) + " out of range [1, " +
                             std::to_string(total_) + "]");
  }
  const auto it = std::upper_bound(
      layers_.begin(), layers_.end(), g,
      [](GlobalId value, const Layer& l) { return value < l.first_global_id; });
  const Layer& l = *std::prev(it);
  return SatelliteId{g, l.spec.index, g - l.first_global_id + 1};
}

GlobalId Constellation::global_id(int u, int local_index) const {
  const Layer& l = layer(u);
  if (local_index < 1 || local_index > l.size()) {
    throw ConstellationError("local index " + std::to_string(local_index) +
                             " out of range for layer " + std::to_string(u));
  }
  return l.first_global_id + local_index - 1;
}

const OrbitalElements& Constellation::elements(GlobalId g) const {
  const SatelliteId id = layer_of(g);
  return layers_[static_cast<std::size_t>(id.layer - 1)]
      .elements[static_cast<std::size_t>(id.local_index - 1)];
}

const Layer& Constellation::walker_layer(int u) const {
  const Layer& l = layer(u);
  if (l.spec.kind != LayerKind::walker) {
    throw ConstellationError("layer " + std::to_string(u) + " is not a walker layer");
  }
  return l;
}

WalkerSlot Constellation::slot_of(int u, int local_index) const {
  const Layer& l = walker_layer(u);
  if (local_index < 1 || local_index > l.size()) {
    throw ConstellationError("local index " + std::to_string(local_index) +
                             " out of range for layer " + std::to_string(u));
  }
  const int k = local_index - 1;
  return WalkerSlot{k / l.spec.sats_per_plane, k % l.spec.sats_per_plane};
}

int Constellation::local_index_of(int u, WalkerSlot s) const {
  const Layer& l = walker_layer(u);
  if (s.plane < 0 || s.plane >= l.spec.planes || s.slot < 0 || s.slot >= l.spec.sats_per_plane) {
    throw ConstellationError("walker slot out of range");
  }
  return s.plane * l.spec.sats_per_plane + s.slot + 1;
}

std::array<int, 4> Constellation::intra_layer_neighbors(int u, int local_index) const {
  const Layer& l = walker_layer(u);
  const int planes = l.spec.planes, sigma = l.spec.sats_per_plane;
  if (planes < 3 || sigma < 3) {
    throw ConstellationError("layer " + std::to_string(u) + " is a degenerate grid (" +
                             std::to_string(planes) + " planes x " + std::to_string(sigma) +
                             " slots); the 4-neighbor torus needs at least 3 x 3");
  }
  const WalkerSlot s = slot_of(u, local_index);
  auto idx = [&](int p, int q) {
    return local_index_of(u, WalkerSlot{(p + planes) % planes, (q + sigma) % sigma});
  };
  return {idx(s.plane, s.slot - 1), idx(s.plane, s.slot + 1), idx(s.plane - 1, s.slot),
          idx(s.plane + 1, s.slot)};
}

}  // namespace cld
