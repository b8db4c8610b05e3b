#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace carinfo {

/// Undirected areal adjacency: ordered region ids, symmetric neighbour lists
/// without self-loops or duplicates, and the connected-component partition.
/// Immutable after construction.
class AdjacencyGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  /// Builds a graph over `declared_ids` (kept in that order). When
  /// `declared_ids` is empty the region set is the ids mentioned by `edges`,
  /// in order of first appearance. Duplicate and reversed edges collapse.
  /// Throws ValidationError on self-loops, duplicate declared ids, or edge ids
  /// missing from a non-empty declared set.
  static AdjacencyGraph from_edges(const std::vector<std::string>& declared_ids, const std::vector<Edge>& edges);

  std::size_t size() const noexcept { return ids_.size(); }
  const std::vector<std::string>& ids() const noexcept { return ids_; }
  const std::string& id(std::size_t i) const { return ids_.at(i); }
  std::optional<std::size_t> index_of(const std::string& id) const;

  std::span<const std::size_t> neighbors(std::size_t i) const { return neighbors_.at(i); }
  std::size_t degree(std::size_t i) const { return neighbors_.at(i).size(); }
  bool is_island(std::size_t i) const { return neighbors_.at(i).empty(); }
  std::size_t island_count() const noexcept;

  /// Undirected edges as index pairs (i < j), sorted.
  std::vector<std::pair<std::size_t, std::size_t>> edges() const;
  std::size_t edge_count() const noexcept;

  /// Component label per region; labels are 0..component_count()-1 in order
  /// of each component's first region.
  std::size_t component_of(std::size_t i) const { return component_.at(i); }
  std::size_t component_count() const noexcept { return components_.size(); }
  const std::vector<std::vector<std::size_t>>& components() const noexcept { return components_; }

  /// Rank of the intrinsic CAR precision D - W: regions minus components,
  /// where every island counts as its own component.
  std::size_t icar_rank() const noexcept { return size() - component_count(); }

  /// Same graph with regions listed in `order` (a permutation of ids()).
  AdjacencyGraph reordered(const std::vector<std::string>& order) const;

 private:
  AdjacencyGraph(std::vector<std::string> ids, std::vector<std::vector<std::size_t>> neighbors);
  void label_components();

  std::vector<std::string> ids_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::vector<std::size_t>> neighbors_;
  std::vector<std::size_t> component_;
  std::vector<std::vector<std::size_t>> components_;
};

/// Reads an edge-list CSV with header `region_a,region_b`. See from_edges for
/// the meaning of `declared_ids` and the validation rules; errors carry the
/// file name and line.
AdjacencyGraph load_adjacency(const std::string& path, const std::vector<std::string>& declared_ids = {});

/// Every region neighbours every other one (ids "1".."I"). Requires I >= 2.
AdjacencyGraph complete_graph(std::size_t region_count);

/// Rook-adjacency lattice with ids "r<row>c<col>", rows and cols >= 1.
AdjacencyGraph lattice_graph(std::size_t rows, std::size_t cols);

/// Writes the edge list in the same CSV format load_adjacency reads.
void write_adjacency(const AdjacencyGraph& graph, const std::string& path);

}  // namespace carinfo
