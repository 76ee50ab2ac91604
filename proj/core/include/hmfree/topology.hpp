#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace hmfree {

/// Finite topological space. Opens are stored extensionally as bitmasks
/// over the canonical point order; the axioms (empty set, full set,
/// closure under binary union and intersection) are checked at
/// construction, so any constructed space is genuinely a topology.
class FiniteSpace {
public:
  FiniteSpace(std::vector<std::string> points,
              const std::vector<std::set<std::string>>& opens);

  const std::vector<std::string>& points() const { return points_; }  // sorted
  const std::vector<std::uint64_t>& open_masks() const { return opens_; }  // sorted
  std::vector<std::set<std::string>> opens() const;

  std::size_t point_index(const std::string& point) const;
  std::uint64_t full_mask() const;
  std::uint64_t mask_of(const std::set<std::string>& subset) const;
  std::set<std::string> subset_of(std::uint64_t mask) const;

  bool is_open_mask(std::uint64_t mask) const;
  bool is_open(const std::set<std::string>& subset) const;

  bool operator==(const FiniteSpace& other) const = default;

private:
  std::vector<std::string> points_;
  std::vector<std::uint64_t> opens_;
};

/// True iff the complement of `subset` is open.
bool is_closed(const std::set<std::string>& subset, const FiniteSpace& space);

/// Smallest closed superset.
std::uint64_t closure_mask(std::uint64_t subset, const FiniteSpace& space);

/// Point map whose continuity (preimage of every open is open) is verified
/// at construction.
class ContinuousMap {
public:
  ContinuousMap(FiniteSpace source, FiniteSpace target,
                std::map<std::string, std::string> table);

  const FiniteSpace& source() const { return source_; }
  const FiniteSpace& target() const { return target_; }
  const std::map<std::string, std::string>& table() const { return table_; }

  const std::string& operator()(const std::string& point) const;
  bool is_injective() const;

  /// Preimage of a target subset, as a source mask.
  std::uint64_t preimage_mask(std::uint64_t target_mask) const;

private:
  FiniteSpace source_;
  FiniteSpace target_;
  std::map<std::string, std::string> table_;
};

ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f);

/// Injective, and the preimages of target opens are exactly the source
/// opens (the subspace topology on the image pulls back to the source
/// topology).
bool is_embedding(const ContinuousMap& f);

/// is_embedding plus a closed image.
bool is_closed_embedding(const ContinuousMap& f);

}  // namespace hmfree
