#include "rsm/network.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <mutex>
#include <queue>
#include <string>

#include "rsm/csv.hpp"
#include "rsm/error.hpp"

namespace rsm {

struct NetworkGraph::Cache {
    std::shared_mutex mutex;
    std::unordered_map<std::size_t, std::vector<double>> rows;
};

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Nodes reachable from index 0 following `adj`.
std::vector<bool> reach(const std::vector<std::vector<std::pair<std::size_t, double>>>& adj) {
    std::vector<bool> seen(adj.size(), false);
    if (adj.empty()) return seen;
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    while (!stack.empty()) {
        auto u = stack.back();
        stack.pop_back();
        for (auto [v, len] : adj[u]) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return seen;
}

}  // namespace

NetworkGraph::NetworkGraph(std::vector<Node> nodes, std::vector<Edge> edges, double speed_kmh)
    : nodes_(std::move(nodes)),
      edges_(std::move(edges)),
      speed_kmh_(speed_kmh),
      cache_(std::make_unique<Cache>()) {
    std::vector<std::string> problems;
    if (!(speed_kmh_ > 0.0) || !std::isfinite(speed_kmh_)) {
        problems.push_back("network speed must be > 0 km/h");
    }
    if (nodes_.empty()) problems.push_back("graph has no nodes");

    for (std::size_t i = 0; i < nodes_.size(); ++i) {
        if (!index_.emplace(nodes_[i].id, i).second) {
            problems.push_back("duplicate node id " + std::to_string(nodes_[i].id));
        }
    }
    out_.assign(nodes_.size(), {});
    std::vector<std::vector<std::pair<std::size_t, double>>> in(nodes_.size());
    for (const auto& e : edges_) {
        auto f = index_.find(e.from);
        auto t = index_.find(e.to);
        if (f == index_.end() || t == index_.end()) {
            problems.push_back("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                               " references an unknown node (dangling endpoint)");
            continue;
        }
        if (!(e.length_m > 0.0) || !std::isfinite(e.length_m)) {
            problems.push_back("edge " + std::to_string(e.from) + "->" + std::to_string(e.to) +
                               " has non-positive length");
            continue;
        }
        out_[f->second].emplace_back(t->second, e.length_m);
        in[t->second].emplace_back(f->second, e.length_m);
    }
    if (problems.empty()) {
        auto fwd = reach(out_);
        auto bwd = reach(in);
        for (std::size_t i = 0; i < nodes_.size(); ++i) {
            if (!fwd[i] || !bwd[i]) {
                problems.push_back("graph is not strongly connected: node " +
                                   std::to_string(nodes_[i].id) +
                                   " is not mutually reachable with node " +
                                   std::to_string(nodes_[0].id));
                break;
            }
        }
    }
    if (!problems.empty()) throw ValidationError(std::move(problems));
}

NetworkGraph::NetworkGraph(NetworkGraph&&) noexcept = default;
NetworkGraph& NetworkGraph::operator=(NetworkGraph&&) noexcept = default;
NetworkGraph::~NetworkGraph() = default;

std::size_t NetworkGraph::index_of(NodeId id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("unknown node id " + std::to_string(id));
    return it->second;
}

const std::vector<double>& NetworkGraph::distances_from(std::size_t source) const {
    {
        std::shared_lock lock(cache_->mutex);
        if (auto it = cache_->rows.find(source); it != cache_->rows.end()) return it->second;
    }

    std::vector<double> dist(nodes_.size(), kInf);
    using Item = std::pair<double, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    dist[source] = 0.0;
    heap.emplace(0.0, source);
    while (!heap.empty()) {
        auto [d, u] = heap.top();
        heap.pop();
        if (d > dist[u]) continue;
        for (auto [v, len] : out_[u]) {
            double nd = d + len;
            if (nd < dist[v]) {
                dist[v] = nd;
                heap.emplace(nd, v);
            }
        }
    }

    std::unique_lock lock(cache_->mutex);
    // unordered_map never invalidates references to mapped values on insert
    auto [it, inserted] = cache_->rows.emplace(source, std::move(dist));
    return it->second;
}

Trip NetworkGraph::travel_time(NodeId from, NodeId to) const {
    auto s = index_of(from);
    auto t = index_of(to);
    if (s == t) return {};
    double meters = distances_from(s)[t];
    return Trip{meters / speed_mps(), meters};
}

double NetworkGraph::eccentricity_m(NodeId from) const {
    const auto& row = distances_from(index_of(from));
    return *std::max_element(row.begin(), row.end());
}

NetworkGraph load_graph(const std::filesystem::path& nodes_file,
                        const std::filesystem::path& edges_file, double speed_kmh) {
    std::vector<Node> nodes;
    for (const auto& row : csv::read(nodes_file, "node_id,x,y")) {
        nodes.push_back(Node{csv::to_int(row, 0, nodes_file), csv::to_double(row, 1, nodes_file),
                             csv::to_double(row, 2, nodes_file)});
    }
    std::vector<Edge> edges;
    for (const auto& row : csv::read(edges_file, "from,to,length_m")) {
        edges.push_back(Edge{csv::to_int(row, 0, edges_file), csv::to_int(row, 1, edges_file),
                             csv::to_double(row, 2, edges_file)});
    }
    return NetworkGraph(std::move(nodes), std::move(edges), speed_kmh);
}

NetworkGraph make_grid(int n, double spacing_m, double speed_kmh) {
    if (n < 2) throw ValidationError("grid size n must be >= 2");
    if (!(spacing_m > 0.0)) throw ValidationError("grid spacing must be > 0");

    std::vector<Node> nodes;
    std::vector<Edge> edges;
    nodes.reserve(static_cast<std::size_t>(n) * n);
    auto id = [n](int r, int c) { return static_cast<NodeId>(r) * n + c; };
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            nodes.push_back(Node{id(r, c), c * spacing_m, r * spacing_m});
        }
    }
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            if (c + 1 < n) {
                edges.push_back({id(r, c), id(r, c + 1), spacing_m});
                edges.push_back({id(r, c + 1), id(r, c), spacing_m});
            }
            if (r + 1 < n) {
                edges.push_back({id(r, c), id(r + 1, c), spacing_m});
                edges.push_back({id(r + 1, c), id(r, c), spacing_m});
            }
        }
    }
    return NetworkGraph(std::move(nodes), std::move(edges), speed_kmh);
}

void save_graph(const NetworkGraph& g, const std::filesystem::path& nodes_file,
                const std::filesystem::path& edges_file) {
    std::ofstream nf(nodes_file);
    if (!nf) throw Error("cannot write " + nodes_file.string());
    nf << "node_id,x,y\n";
    for (const auto& n : g.nodes()) {
        csv::write_row(nf, {csv::format(n.id), csv::format(n.x), csv::format(n.y)});
    }
    std::ofstream ef(edges_file);
    if (!ef) throw Error("cannot write " + edges_file.string());
    ef << "from,to,length_m\n";
    for (const auto& e : g.edges()) {
        csv::write_row(ef, {csv::format(e.from), csv::format(e.to), csv::format(e.length_m)});
    }
}

}  // namespace rsm
