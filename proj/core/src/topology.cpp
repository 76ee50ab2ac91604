#include "hmfree/topology.hpp"

#include "hmfree/error.hpp"

#include <algorithm>
#include <sstream>

namespace hmfree {
namespace {

std::string set_text(const std::set<std::string>& s) {
  std::ostringstream out;
  out << "{";
  bool first = true;
  for (const auto& x : s) {
    if (!first) out << ",";
    out << x;
    first = false;
  }
  out << "}";
  return out.str();
}

}  // namespace

FiniteSpace::FiniteSpace(std::vector<std::string> points,
                         const std::vector<std::set<std::string>>& opens)
    : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end());
  auto dup = std::adjacent_find(points_.begin(), points_.end());
  if (dup != points_.end()) throw ValidationError("duplicate point '" + *dup + "'");
  if (points_.empty()) throw ValidationError("space must have at least one point");
  if (points_.size() > 63) throw ValidationError("spaces are limited to 63 points");

  std::set<std::uint64_t> masks;
  for (const auto& open : opens) masks.insert(mask_of(open));
  opens_.assign(masks.begin(), masks.end());

  if (!is_open_mask(0)) throw ValidationError("missing open set: {} (empty set absent)");
  if (!is_open_mask(full_mask()))
    throw ValidationError("missing open set: " + set_text({points_.begin(), points_.end()}) +
                          " (full set absent)");
  for (std::uint64_t u : opens_) {
    for (std::uint64_t v : opens_) {
      if (!is_open_mask(u | v))
        throw ValidationError("opens not closed under union: " + set_text(subset_of(u)) +
                              " with " + set_text(subset_of(v)) + " gives missing " +
                              set_text(subset_of(u | v)));
      if (!is_open_mask(u & v))
        throw ValidationError("opens not closed under intersection: " +
                              set_text(subset_of(u)) + " with " + set_text(subset_of(v)) +
                              " gives missing " + set_text(subset_of(u & v)));
    }
  }
}

std::vector<std::set<std::string>> FiniteSpace::opens() const {
  std::vector<std::set<std::string>> out;
  out.reserve(opens_.size());
  for (std::uint64_t mask : opens_) out.push_back(subset_of(mask));
  return out;
}

std::size_t FiniteSpace::point_index(const std::string& point) const {
  const auto it = std::lower_bound(points_.begin(), points_.end(), point);
  if (it == points_.end() || *it != point)
    throw ValidationError("unknown point '" + point + "'");
  return static_cast<std::size_t>(it - points_.begin());
}

std::uint64_t FiniteSpace::full_mask() const {
  return (std::uint64_t{1} << points_.size()) - 1;
}

std::uint64_t FiniteSpace::mask_of(const std::set<std::string>& subset) const {
  std::uint64_t mask = 0;
  for (const auto& p : subset) mask |= std::uint64_t{1} << point_index(p);
  return mask;
}

std::set<std::string> FiniteSpace::subset_of(std::uint64_t mask) const {
  std::set<std::string> out;
  for (std::size_t i = 0; i < points_.size(); ++i)
    if (mask & (std::uint64_t{1} << i)) out.insert(points_[i]);
  return out;
}

bool FiniteSpace::is_open_mask(std::uint64_t mask) const {
  return std::binary_search(opens_.begin(), opens_.end(), mask);
}

bool FiniteSpace::is_open(const std::set<std::string>& subset) const {
  return is_open_mask(mask_of(subset));
}

bool is_closed(const std::set<std::string>& subset, const FiniteSpace& space) {
  return space.is_open_mask(space.full_mask() & ~space.mask_of(subset));
}

std::uint64_t closure_mask(std::uint64_t subset, const FiniteSpace& space) {
  // Intersection of all closed supersets.
  std::uint64_t result = space.full_mask();
  for (std::uint64_t open : space.open_masks()) {
    const std::uint64_t closed = space.full_mask() & ~open;
    if ((closed & subset) == subset) result &= closed;
  }
  return result;
}

ContinuousMap::ContinuousMap(FiniteSpace source, FiniteSpace target,
                             std::map<std::string, std::string> table)
    : source_(std::move(source)), target_(std::move(target)), table_(std::move(table)) {
  for (const auto& p : source_.points()) {
    const auto it = table_.find(p);
    if (it == table_.end()) throw ValidationError("map not total: no image for '" + p + "'");
    target_.point_index(it->second);  // throws on unknown image
  }
  if (table_.size() != source_.points().size())
    throw ValidationError("map table mentions points outside its source");
  for (std::uint64_t open : target_.open_masks()) {
    if (!source_.is_open_mask(preimage_mask(open)))
      throw ValidationError("map is not continuous: preimage of " +
                            set_text(target_.subset_of(open)) + " is not open");
  }
}

const std::string& ContinuousMap::operator()(const std::string& point) const {
  const auto it = table_.find(point);
  if (it == table_.end()) throw ValidationError("point '" + point + "' not in source");
  return it->second;
}

bool ContinuousMap::is_injective() const {
  std::set<std::string> images;
  for (const auto& [from, to] : table_)
    if (!images.insert(to).second) return false;
  return true;
}

std::uint64_t ContinuousMap::preimage_mask(std::uint64_t target_mask) const {
  std::uint64_t out = 0;
  for (const auto& [from, to] : table_) {
    if (target_mask & (std::uint64_t{1} << target_.point_index(to)))
      out |= std::uint64_t{1} << source_.point_index(from);
  }
  return out;
}

ContinuousMap compose(const ContinuousMap& g, const ContinuousMap& f) {
  if (!(f.target() == g.source()))
    throw ValidationError("composition of maps with mismatched spaces");
  std::map<std::string, std::string> table;
  for (const auto& [from, mid] : f.table()) table.emplace(from, g(mid));
  return ContinuousMap(f.source(), g.target(), std::move(table));
}

bool is_embedding(const ContinuousMap& f) {
  if (!f.is_injective()) return false;
  std::set<std::uint64_t> pulled;
  for (std::uint64_t open : f.target().open_masks()) pulled.insert(f.preimage_mask(open));
  const std::set<std::uint64_t> source_opens(f.source().open_masks().begin(),
                                             f.source().open_masks().end());
  return pulled == source_opens;
}

bool is_closed_embedding(const ContinuousMap& f) {
  if (!is_embedding(f)) return false;
  std::set<std::string> image;
  for (const auto& [from, to] : f.table()) image.insert(to);
  return is_closed(image, f.target());
}

}  // namespace hmfree
