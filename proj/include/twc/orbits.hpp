#pragma once

// Orbits and stabilizers of lines under G_q.
//
// Orbits are closed breadth-first under the three generators of G_q. The full
// partition of a line class is sharded over worker threads that share an
// insert-only ownership table; partial orbits that touch are merged with a
// union-find, and each orbit is named by the smallest line key it contains, so
// the result does not depend on scheduling.

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <vector>

#include "twc/cubic.hpp"
#include "twc/group.hpp"

namespace twc::orbits {

using group::Projectivity;
using pg3::Line;
using pg3::LineKey;

struct OrbitResult {
  LineKey seed = 0;
  LineKey representative = 0;  // smallest key in the orbit
  std::uint64_t size = 0;
  std::vector<LineKey> members;  // only filled on request, sorted
  std::vector<Projectivity> stabilizer;
};

struct OrbitRecord {
  LineKey representative = 0;
  std::uint64_t length = 0;
  std::uint64_t stabilizer_order = 0;  // 0 when not computed
};

struct OrbitCensus {
  std::uint32_t q = 0;
  std::optional<cubic::LineClassTag> filter;  // nullopt: every line
  std::map<std::uint64_t, std::uint64_t> lengths;  // orbit length -> multiplicity
  std::uint64_t covered = 0;
  std::vector<OrbitRecord> orbits;  // sorted by representative

  std::size_t orbit_count() const noexcept { return orbits.size(); }
};

struct EngineOptions {
  /// Largest q for which stabilizers are found by scanning the whole group.
  std::uint32_t full_scan_max_q = 64;
};

struct PartitionOptions {
  std::optional<cubic::LineClassTag> filter = cubic::LineClassTag::EnG;
  unsigned workers = 1;
  /// Compute each orbit's stabilizer and check |orbit| * |stabilizer| = |G_q|.
  bool verify_stabilizers = false;
};

/// Membership set over line keys: a dense bit table when it fits, hashing otherwise.
class KeySet {
 public:
  explicit KeySet(std::uint64_t universe);
  /// Returns true if the key was newly inserted.
  bool insert(LineKey k);
  bool contains(LineKey k) const;
  std::uint64_t size() const noexcept { return size_; }

 private:
  std::vector<std::uint64_t> bits_;
  std::vector<LineKey> hashed_;  // open addressing, 0 = empty, keys stored as k + 1
  std::uint64_t size_ = 0;
  bool dense_ = true;
  void grow();
};

class Engine {
 public:
  Engine(const cubic::TwistedCubic& cubic, const group::Gq& group, EngineOptions options = {});

  const group::Gq& group() const noexcept { return *group_; }
  const cubic::TwistedCubic& cubic() const noexcept { return *cubic_; }
  const pg3::Space& space() const noexcept { return group_->space(); }

  /// Breadth-first closure plus stabilizer; checks the orbit-stabilizer identity.
  OrbitResult orbit_of_line(const Line& l, bool keep_members = false) const;
  std::uint64_t orbit_size(const Line& l) const;
  std::vector<LineKey> orbit_members(const Line& l) const;

  std::vector<Projectivity> stabilizer_of_line(const Line& l) const;
  /// Schreier-generator search that stops once `expected_order` elements are found.
  std::vector<Projectivity> stabilizer_by_schreier(const Line& l, std::uint64_t expected_order) const;

  bool same_orbit(const Line& a, const Line& b) const;

  OrbitCensus partition(const PartitionOptions& options) const;

  /// Image of a line key under one of the three generators.
  LineKey image_key(std::size_t generator, LineKey k) const;

 private:
  const cubic::TwistedCubic* cubic_;
  const group::Gq* group_;
  EngineOptions options_;
  std::vector<Projectivity> generators_;
  mutable std::once_flag elements_once_;
  mutable std::vector<Projectivity> elements_;

  std::vector<Projectivity> full_scan(const Line& l) const;
};

}  // namespace twc::orbits
