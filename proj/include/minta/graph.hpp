#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "minta/dns_log.hpp"
#include "minta/domain_name.hpp"
#include "minta/features.hpp"

#include <nlohmann/json_fwd.hpp>

namespace minta {

enum class NodeKind : int { Domain = 0, Ip = 1, Client = 2 };
enum class EdgeKind : int { Query = 0, Apex = 1, Resolve = 2, Similar = 3 };

std::string_view to_string(NodeKind kind);
std::string_view to_string(EdgeKind kind);

struct Node {
    int id = -1;
    NodeKind kind = NodeKind::Domain;
    std::string name;
};

struct TypedEdge {
    int u = -1;  // canonical: u < v
    int v = -1;
    EdgeKind kind = EdgeKind::Query;

    auto operator<=>(const TypedEdge&) const = default;
};

struct DmgConfig {
    // 0.8 is the conventional published threshold, but with bigram Jaccard the
    // canonical same-apex sibling pair scores ~0.54, so the default is
    // calibrated to 0.5 to keep that relation intact. Fully configurable.
    double similarity_threshold = 0.5;
    int ngram_n = 2;
    SimilarityFunctional similarity_functional = SimilarityFunctional::Jaccard;
    FeatureConfig features;
};

// Heterogeneous domain-maliciousness graph. Node ids are canonical: nodes are
// sorted by (kind, name) so identical record multisets produce identical
// graphs regardless of input order.
class Dmg {
public:
    static Dmg build(std::span<const DnsLogRecord> records, DmgConfig config = {});

    const DmgConfig& config() const { return config_; }
    const std::vector<Node>& nodes() const { return nodes_; }
    const std::vector<TypedEdge>& edges() const { return edges_; }  // sorted
    const Node& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }

    int node_count() const { return static_cast<int>(nodes_.size()); }
    int domain_count() const { return domain_count_; }

    // Domains occupy ids [0, domain_count); feature row i belongs to node i.
    const Eigen::MatrixXd& domain_features() const { return features_; }

    std::optional<int> find_node(NodeKind kind, std::string_view name) const;
    bool has_edge(int u, int v, EdgeKind kind) const;
    std::vector<TypedEdge> edges_of_kind(EdgeKind kind) const;

    // Neighbors of `id` across edges of `kind`.
    std::vector<int> neighbors(int id, EdgeKind kind) const;

    // Domain-to-domain association: apex/similar edges plus co-resolution
    // through a shared IP. This is the adjacency used for connected adversary
    // sampling and neighbor-impact bucketing.
    std::vector<std::vector<int>> domain_association_lists() const;

    nlohmann::json to_json() const;  // canonical: sorted node and edge arrays
    std::string to_canonical_json_string() const;

private:
    DmgConfig config_;
    std::vector<Node> nodes_;
    std::vector<TypedEdge> edges_;  // sorted, canonical endpoints
    Eigen::MatrixXd features_;      // domain_count x kFeatureCount
    int domain_count_ = 0;
};

inline constexpr int kKindTagCount = 3;
inline constexpr int kFullFeatureCount = kFeatureCount + kKindTagCount;

// Homogeneous collapse of a Dmg: all edge kinds become entries of one 0/1
// adjacency. normalized = D^{-1/2}(A+I)D^{-1/2} with D the degree matrix of
// A+I; propagation = normalized^2. Feature rows are widened by a one-hot
// node-kind tag; non-domain nodes carry zero features plus their tag.
struct HomogeneousProjection {
    Eigen::SparseMatrix<double> adjacency;
    Eigen::SparseMatrix<double> normalized;
    Eigen::SparseMatrix<double> propagation;
    Eigen::MatrixXd features;  // node_count x kFullFeatureCount
    int domain_count = 0;
};

HomogeneousProjection homogeneous_projection(const Dmg& graph);

// Shared by the Dmg projection and the adversary's local estimate.
Eigen::SparseMatrix<double> normalize_adjacency(const Eigen::SparseMatrix<double>& adjacency);

}  // namespace minta
