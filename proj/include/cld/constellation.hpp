#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cld/orbit_time.hpp"
#include "cld/tle.hpp"

namespace cld {

class ConstellationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// 1-based satellite number across all layers, lowest layer first.
using GlobalId = int;

enum class LayerKind { walker, tle };

struct LayerSpec {
  int index = 0;  // u, 1-based, ordered by altitude
  std::string name;
  LayerKind kind = LayerKind::walker;
  int planes = 0;
  int sats_per_plane = 0;
  double altitude_m = 0.0;
  double inclination_deg = 0.0;
  double raan_spread_deg = 360.0;
  double phasing_offset_deg = 0.0;
  double min_elevation_deg = 10.0;  // omega_u, intra-layer ISL constraint
  std::optional<std::filesystem::path> tle_path;
};

struct SatelliteId {
  GlobalId global_id = 0;
  int layer = 0;
  int local_index = 0;

  friend bool operator==(const SatelliteId&, const SatelliteId&) = default;
};

struct WalkerSlot {
  int plane = 0;  // 0-based
  int slot = 0;   // 0-based

  friend bool operator==(const WalkerSlot&, const WalkerSlot&) = default;
};

/// One layer's satellites before global numbering; elements[k] has local index k + 1.
struct BuiltLayer {
  LayerSpec spec;
  std::vector<OrbitalElements> elements;
  std::vector<std::string> names;  // optional, parallel to elements
};

/// Walker shell: RAAN evenly spread over raan_spread, satellites evenly spaced in
/// argument of latitude, phasing applied cumulatively per plane. Local indices
/// are plane-major (i = p * sats_per_plane + q + 1). Elements are anchored at epoch.
BuiltLayer build_walker(const LayerSpec& spec, Epoch epoch = {});

/// Layer from parsed TLE records. The spec's altitude is replaced by the mean
/// altitude of the records and planes/sats_per_plane describe a single ring.
BuiltLayer build_tle_layer(const LayerSpec& spec, const std::vector<TleRecord>& records);

struct Layer {
  LayerSpec spec;
  GlobalId first_global_id = 1;
  std::vector<OrbitalElements> elements;
  std::vector<std::string> names;

  int size() const { return static_cast<int>(elements.size()); }
  GlobalId last_global_id() const { return first_global_id + size() - 1; }
};

/// The full multi-layer satellite set. Immutable once assembled.
class Constellation {
 public:
  /// Assigns layer-contiguous global IDs. Layers must carry indices 1..n in
  /// order with strictly increasing altitude.
  static Constellation assign_global_ids(std::vector<BuiltLayer> layers);

  int size() const { return total_; }
  int layer_count() const { return static_cast<int>(layers_.size()); }
  const Layer& layer(int u) const;
  const std::vector<Layer>& layers() const { return layers_; }

  /// Inverse of the ID assignment. Throws ConstellationError when out of range.
  SatelliteId layer_of(GlobalId g) const;
  GlobalId global_id(int u, int local_index) const;
  const OrbitalElements& elements(GlobalId g) const;

  WalkerSlot slot_of(int u, int local_index) const;
  int local_index_of(int u, WalkerSlot s) const;

  /// The four +grid neighbors (in-plane q-1, q+1, inter-plane p-1, p+1) as
  /// local indices. Requires a walker layer with at least 3 planes and 3 slots.
  std::array<int, 4> intra_layer_neighbors(int u, int local_index) const;

 private:
  const Layer& walker_layer(int u) const;

  std::vector<Layer> layers_;
  int total_ = 0;
};

}  // namespace cld
