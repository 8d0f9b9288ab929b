#include "minta/graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace minta {

std::string_view to_string(NodeKind kind) {
    switch (kind) {
        case NodeKind::Domain: return "domain";
        case NodeKind::Ip: return "ip";
        case NodeKind::Client: return "client";
    }
    return "?";
}

std::string_view to_string(EdgeKind kind) {
    switch (kind) {
        case EdgeKind::Query: return "query";
        case EdgeKind::Apex: return "apex";
        case EdgeKind::Resolve: return "resolve";
        case EdgeKind::Similar: return "similar";
    }
    return "?";
}

Dmg Dmg::build(std::span<const DnsLogRecord> records, DmgConfig config) {
    Dmg graph;
    graph.config_ = config;

    std::set<std::string> domain_names, ip_names, client_names;
    for (const auto& record : records) {
        domain_names.insert(record.qname);
        ip_names.insert(record.resolved_ip);
        client_names.insert(record.client_id);
    }

    std::map<std::pair<int, std::string>, int> index;
    auto add_nodes = [&](const std::set<std::string>& names, NodeKind kind) {
        for (const auto& name : names) {
            Node node;
            node.id = static_cast<int>(graph.nodes_.size());
            node.kind = kind;
            node.name = name;
            index[{static_cast<int>(kind), name}] = node.id;
            graph.nodes_.push_back(std::move(node));
        }
    };
    add_nodes(domain_names, NodeKind::Domain);
    add_nodes(ip_names, NodeKind::Ip);
    add_nodes(client_names, NodeKind::Client);
    graph.domain_count_ = static_cast<int>(domain_names.size());

    std::set<TypedEdge> edges;
    auto add_edge = [&](int a, int b, EdgeKind kind) {
        if (a == b) return;
        edges.insert(TypedEdge{std::min(a, b), std::max(a, b), kind});
    };

    for (const auto& record : records) {
        const int d = index.at({static_cast<int>(NodeKind::Domain), record.qname});
        const int ip = index.at({static_cast<int>(NodeKind::Ip), record.resolved_ip});
        const int client = index.at({static_cast<int>(NodeKind::Client), record.client_id});
        add_edge(d, client, EdgeKind::Query);
        add_edge(d, ip, EdgeKind::Resolve);
    }

    // Pairwise domain-domain rules. Precompute apexes and n-gram sets once.
    const int nd = graph.domain_count_;
    std::vector<std::string> apexes(static_cast<std::size_t>(nd));
    std::vector<std::vector<std::uint64_t>> grams(static_cast<std::size_t>(nd));
    graph.features_.resize(nd, kFeatureCount);
    for (int i = 0; i < nd; ++i) {
        const auto& name = graph.nodes_[static_cast<std::size_t>(i)].name;
        apexes[static_cast<std::size_t>(i)] = apex_of(name, *config.features.suffixes);
        grams[static_cast<std::size_t>(i)] = ngram_set(name, config.ngram_n);
        graph.features_.row(i) = extract_features(name, config.features).transpose();
    }
    for (int i = 0; i < nd; ++i) {
        for (int j = i + 1; j < nd; ++j) {
            if (apexes[static_cast<std::size_t>(i)] == apexes[static_cast<std::size_t>(j)]) {
                add_edge(i, j, EdgeKind::Apex);
            }
            const double sim = ngram_set_similarity(grams[static_cast<std::size_t>(i)],
                                                    grams[static_cast<std::size_t>(j)],
                                                    config.similarity_functional);
            if (sim >= config.similarity_threshold) {
                add_edge(i, j, EdgeKind::Similar);
            }
        }
    }

    graph.edges_.assign(edges.begin(), edges.end());
    return graph;
}

std::optional<int> Dmg::find_node(NodeKind kind, std::string_view name) const {
    // Nodes are sorted by (kind, name); binary search.
    const auto begin = nodes_.begin();
    const auto it = std::lower_bound(begin, nodes_.end(), std::make_pair(kind, name),
                                     [](const Node& node, const std::pair<NodeKind, std::string_view>& key) {
                                         if (node.kind != key.first) return node.kind < key.first;
                                         return std::string_view(node.name) < key.second;
                                     });
    if (it != nodes_.end() && it->kind == kind && it->name == name) return it->id;
    return std::nullopt;
}

bool Dmg::has_edge(int u, int v, EdgeKind kind) const {
    const TypedEdge probe{std::min(u, v), std::max(u, v), kind};
    return std::binary_search(edges_.begin(), edges_.end(), probe);
}

std::vector<TypedEdge> Dmg::edges_of_kind(EdgeKind kind) const {
    std::vector<TypedEdge> out;
    for (const auto& edge : edges_) {
        if (edge.kind == kind) out.push_back(edge);
    }
    return out;
}

std::vector<int> Dmg::neighbors(int id, EdgeKind kind) const {
    std::vector<int> out;
    for (const auto& edge : edges_) {
        if (edge.kind != kind) continue;
        if (edge.u == id) out.push_back(edge.v);
        if (edge.v == id) out.push_back(edge.u);
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<int>> Dmg::domain_association_lists() const {
    std::vector<std::set<int>> assoc(static_cast<std::size_t>(domain_count_));
    std::vector<std::vector<int>> ip_domains(nodes_.size());
    for (const auto& edge : edges_) {
        if (edge.kind == EdgeKind::Apex || edge.kind == EdgeKind::Similar) {
            assoc[static_cast<std::size_t>(edge.u)].insert(edge.v);
            assoc[static_cast<std::size_t>(edge.v)].insert(edge.u);
        } else if (edge.kind == EdgeKind::Resolve) {
            const int domain = edge.u < domain_count_ ? edge.u : edge.v;
            const int ip = edge.u < domain_count_ ? edge.v : edge.u;
            ip_domains[static_cast<std::size_t>(ip)].push_back(domain);
        }
    }
    for (const auto& sharers : ip_domains) {
        for (std::size_t a = 0; a < sharers.size(); ++a) {
            for (std::size_t b = a + 1; b < sharers.size(); ++b) {
                assoc[static_cast<std::size_t>(sharers[a])].insert(sharers[b]);
                assoc[static_cast<std::size_t>(sharers[b])].insert(sharers[a]);
            }
        }
    }
    std::vector<std::vector<int>> out(assoc.size());
    for (std::size_t i = 0; i < assoc.size(); ++i) out[i].assign(assoc[i].begin(), assoc[i].end());
    return out;
}

nlohmann::json Dmg::to_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& node : nodes_) {
        nodes.push_back({{"id", node.id}, {"kind", to_string(node.kind)}, {"name", node.name}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& edge : edges_) {
        edges.push_back({{"u", edge.u}, {"v", edge.v}, {"kind", to_string(edge.kind)}});
    }
    return nlohmann::json{{"similarity_threshold", config_.similarity_threshold},
                          {"ngram_n", config_.ngram_n},
                          {"nodes", nodes},
                          {"edges", edges}};
}

std::string Dmg::to_canonical_json_string() const { return to_json().dump(2); }

Eigen::SparseMatrix<double> normalize_adjacency(const Eigen::SparseMatrix<double>& adjacency) {
    const int n = static_cast<int>(adjacency.rows());
    Eigen::VectorXd degree = Eigen::VectorXd::Ones(n);  // self-loop
    for (int k = 0; k < adjacency.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(adjacency, k); it; ++it) {
            degree[it.row()] += it.value();
        }
    }
    const Eigen::VectorXd inv_sqrt = degree.array().rsqrt();

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(static_cast<std::size_t>(adjacency.nonZeros() + n));
    for (int k = 0; k < adjacency.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(adjacency, k); it; ++it) {
            triplets.emplace_back(it.row(), it.col(), it.value() * inv_sqrt[it.row()] * inv_sqrt[it.col()]);
        }
    }
    for (int i = 0; i < n; ++i) {
        triplets.emplace_back(i, i, inv_sqrt[i] * inv_sqrt[i]);
    }
    Eigen::SparseMatrix<double> normalized(n, n);
    normalized.setFromTriplets(triplets.begin(), triplets.end());
    return normalized;
}

HomogeneousProjection homogeneous_projection(const Dmg& graph) {
    const int n = graph.node_count();
    HomogeneousProjection proj;
    proj.domain_count = graph.domain_count();

    std::vector<Eigen::Triplet<double>> triplets;
    triplets.reserve(graph.edges().size() * 2);
    std::set<std::pair<int, int>> seen;  // collapse multi-edges
    for (const auto& edge : graph.edges()) {
        if (seen.insert({edge.u, edge.v}).second) {
            triplets.emplace_back(edge.u, edge.v, 1.0);
            triplets.emplace_back(edge.v, edge.u, 1.0);
        }
    }
    proj.adjacency.resize(n, n);
    proj.adjacency.setFromTriplets(triplets.begin(), triplets.end());

    proj.normalized = normalize_adjacency(proj.adjacency);
    proj.propagation = (proj.normalized * proj.normalized).pruned();

    proj.features = Eigen::MatrixXd::Zero(n, kFullFeatureCount);
    for (int i = 0; i < n; ++i) {
        const auto kind = graph.node(i).kind;
        if (kind == NodeKind::Domain) {
            proj.features.row(i).head(kFeatureCount) = graph.domain_features().row(i);
        }
        proj.features(i, kFeatureCount + static_cast<int>(kind)) = 1.0;
    }
    return proj;
}

}  // namespace minta
