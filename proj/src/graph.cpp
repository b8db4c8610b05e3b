#include "carinfo/graph.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include "carinfo/csv.hpp"
#include "carinfo/error.hpp"

namespace carinfo {
namespace {

struct RawEdge {
  std::string a;
  std::string b;
  std::string where;  // "file:line" for diagnostics
};

AdjacencyGraph build(const std::vector<std::string>& declared_ids, const std::vector<RawEdge>& edges,
                     const std::string& source) {
  std::vector<AdjacencyGraph::Edge> plain;
  plain.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.a == e.b) {
      throw ValidationError(e.where + ": self-loop on region '" + e.a + "'");
    }
    plain.emplace_back(e.a, e.b);
  }
  if (!declared_ids.empty()) {
    std::set<std::string> declared(declared_ids.begin(), declared_ids.end());
    std::set<std::string> unmatched;
    for (const auto& [a, b] : plain) {
      if (!declared.count(a)) unmatched.insert(a);
      if (!declared.count(b)) unmatched.insert(b);
    }
    if (!unmatched.empty()) {
      std::string list;
      for (const auto& id : unmatched) list += (list.empty() ? "" : ", ") + id;
      throw ValidationError(source + ": adjacency mentions regions absent from the counts data: " + list);
    }
  }
  return AdjacencyGraph::from_edges(declared_ids, plain);
}

}  // namespace

AdjacencyGraph::AdjacencyGraph(std::vector<std::string> ids, std::vector<std::vector<std::size_t>> neighbors)
    : ids_(std::move(ids)), neighbors_(std::move(neighbors)) {
  for (std::size_t i = 0; i < ids_.size(); ++i) index_.emplace(ids_[i], i);
  label_components();
}

AdjacencyGraph AdjacencyGraph::from_edges(const std::vector<std::string>& declared_ids,
                                          const std::vector<Edge>& edges) {
  std::vector<std::string> ids;
  std::unordered_map<std::string, std::size_t> index;
  auto intern = [&](const std::string& id) {
    auto [it, inserted] = index.emplace(id, ids.size());
    if (inserted) ids.push_back(id);
    return it->second;
  };
  for (const auto& id : declared_ids) {
    if (index.count(id)) throw ValidationError("duplicate region id '" + id + "'");
    intern(id);
  }
  const bool closed = !declared_ids.empty();

  std::vector<std::set<std::size_t>> adjacency;
  for (const auto& [a, b] : edges) {
    if (a == b) throw ValidationError("self-loop on region '" + a + "'");
    if (closed && (!index.count(a) || !index.count(b))) {
      throw ValidationError("edge (" + a + ", " + b + ") mentions an undeclared region");
    }
    const std::size_t i = intern(a);
    const std::size_t j = intern(b);
    if (adjacency.size() < ids.size()) adjacency.resize(ids.size());
    adjacency[i].insert(j);
    adjacency[j].insert(i);
  }
  adjacency.resize(ids.size());

  std::vector<std::vector<std::size_t>> neighbors(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) neighbors[i].assign(adjacency[i].begin(), adjacency[i].end());
  return AdjacencyGraph(std::move(ids), std::move(neighbors));
}

void AdjacencyGraph::label_components() {
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  component_.assign(ids_.size(), kUnset);
  components_.clear();
  std::vector<std::size_t> stack;
  for (std::size_t start = 0; start < ids_.size(); ++start) {
    if (component_[start] != kUnset) continue;
    const std::size_t label = components_.size();
    components_.emplace_back();
    stack.push_back(start);
    component_[start] = label;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      components_[label].push_back(v);
      for (std::size_t w : neighbors_[v]) {
        if (component_[w] == kUnset) {
          component_[w] = label;
          stack.push_back(w);
        }
      }
    }
    std::sort(components_[label].begin(), components_[label].end());
  }
}

std::optional<std::size_t> AdjacencyGraph::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t AdjacencyGraph::island_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(neighbors_.begin(), neighbors_.end(), [](const auto& n) { return n.empty(); }));
}

std::vector<std::pair<std::size_t, std::size_t>> AdjacencyGraph::edges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < neighbors_.size(); ++i) {
    for (std::size_t j : neighbors_[i]) {
      if (i < j) out.emplace_back(i, j);
    }
  }
  return out;
}

std::size_t AdjacencyGraph::edge_count() const noexcept {
  std::size_t twice = 0;
  for (const auto& n : neighbors_) twice += n.size();
  return twice / 2;
}

AdjacencyGraph AdjacencyGraph::reordered(const std::vector<std::string>& order) const {
  if (order.size() != ids_.size()) throw ValidationError("reordering must list every region exactly once");
  std::vector<std::size_t> new_index(ids_.size(), static_cast<std::size_t>(-1));
  for (std::size_t k = 0; k < order.size(); ++k) {
    auto old = index_of(order[k]);
    if (!old || new_index[*old] != static_cast<std::size_t>(-1)) {
      throw ValidationError("reordering is not a permutation of the graph's regions (at '" + order[k] + "')");
    }
    new_index[*old] = k;
  }
  std::vector<std::vector<std::size_t>> neighbors(ids_.size());
  for (std::size_t old = 0; old < ids_.size(); ++old) {
    auto& list = neighbors[new_index[old]];
    for (std::size_t w : neighbors_[old]) list.push_back(new_index[w]);
    std::sort(list.begin(), list.end());
  }
  return AdjacencyGraph(order, std::move(neighbors));
}

AdjacencyGraph load_adjacency(const std::string& path, const std::vector<std::string>& declared_ids) {
  const csv::Table table = csv::read_file(path);
  const std::size_t ca = table.column("region_a", path);
  const std::size_t cb = table.column("region_b", path);
  std::vector<RawEdge> edges;
  edges.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    edges.push_back({row.fields[ca], row.fields[cb], path + ":" + std::to_string(row.line)});
  }
  return build(declared_ids, edges, path);
}

AdjacencyGraph complete_graph(std::size_t region_count) {
  if (region_count < 2) throw DomainError("complete_graph: need at least 2 regions");
  std::vector<std::string> ids;
  for (std::size_t i = 1; i <= region_count; ++i) ids.push_back(std::to_string(i));
  std::vector<AdjacencyGraph::Edge> edges;
  for (std::size_t i = 0; i < region_count; ++i) {
    for (std::size_t j = i + 1; j < region_count; ++j) edges.emplace_back(ids[i], ids[j]);
  }
  return AdjacencyGraph::from_edges(ids, edges);
}

AdjacencyGraph lattice_graph(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DomainError("lattice_graph: rows and cols must be positive");
  auto name = [](std::size_t r, std::size_t c) { return "r" + std::to_string(r + 1) + "c" + std::to_string(c + 1); };
  std::vector<std::string> ids;
  std::vector<AdjacencyGraph::Edge> edges;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      ids.push_back(name(r, c));
      if (c + 1 < cols) edges.emplace_back(name(r, c), name(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(name(r, c), name(r + 1, c));
    }
  }
  return AdjacencyGraph::from_edges(ids, edges);
}

void write_adjacency(const AdjacencyGraph& graph, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError(path + ": cannot open for writing");
  out << "region_a,region_b\n";
  for (const auto& [i, j] : graph.edges()) out << csv::escape(graph.id(i)) << ',' << csv::escape(graph.id(j)) << '\n';
}

}  // namespace carinfo
