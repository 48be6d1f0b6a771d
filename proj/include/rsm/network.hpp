#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <shared_mutex>
#include <span>
#include <unordered_map>
#include <vector>

namespace rsm {

using NodeId = std::int64_t;

struct Node {
    NodeId id = 0;
    double x = 0.0;  // planar meters
    double y = 0.0;
};

struct Edge {
    NodeId from = 0;
    NodeId to = 0;
    double length_m = 0.0;
};

/// Shortest-path query result.
struct Trip {
    double seconds = 0.0;
    double meters = 0.0;

    friend bool operator==(const Trip&, const Trip&) = default;
};

/// Directed road graph travelled at a single flat speed.
///
/// Immutable after construction. Shortest-path trees are computed lazily per
/// source node and memoised; the memo is guarded so concurrent queries from
/// several replications return the same answers as serialized ones.
class NetworkGraph {
public:
    /// Validates and builds the graph. Throws ValidationError on non-positive
    /// lengths or speed, duplicate node ids, dangling edge endpoints, or when
    /// the node set is not strongly connected.
    NetworkGraph(std::vector<Node> nodes, std::vector<Edge> edges, double speed_kmh);

    NetworkGraph(const NetworkGraph&) = delete;
    NetworkGraph& operator=(const NetworkGraph&) = delete;
    NetworkGraph(NetworkGraph&&) noexcept;
    NetworkGraph& operator=(NetworkGraph&&) noexcept;
    ~NetworkGraph();

    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Edge> edges() const noexcept { return edges_; }
    double speed_kmh() const noexcept { return speed_kmh_; }
    double speed_mps() const noexcept { return speed_kmh_ / 3.6; }

    bool contains(NodeId id) const noexcept { return index_.contains(id); }

    /// Shortest path distance and the corresponding time at flat speed.
    /// Throws Error for an unknown node id.
    Trip travel_time(NodeId from, NodeId to) const;

    /// Longest shortest-path distance from `from` to any node.
    double eccentricity_m(NodeId from) const;

private:
    std::size_t index_of(NodeId id) const;
    const std::vector<double>& distances_from(std::size_t source) const;

    std::vector<Node> nodes_;
    std::vector<Edge> edges_;
    double speed_kmh_ = 0.0;
    std::unordered_map<NodeId, std::size_t> index_;
    // adjacency as (target index, length)
    std::vector<std::vector<std::pair<std::size_t, double>>> out_;

    struct Cache;
    std::unique_ptr<Cache> cache_;
};

/// Loads `node_id,x,y` and `from,to,length_m` CSV files.
NetworkGraph load_graph(const std::filesystem::path& nodes_file,
                        const std::filesystem::path& edges_file, double speed_kmh);

/// n×n lattice, bidirectional edges of length `spacing_m`. Node ids are
/// row-major from 0.
NetworkGraph make_grid(int n, double spacing_m, double speed_kmh);

void save_graph(const NetworkGraph& g, const std::filesystem::path& nodes_file,
                const std::filesystem::path& edges_file);

}  // namespace rsm
