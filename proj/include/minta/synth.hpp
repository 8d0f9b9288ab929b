#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "minta/dns_log.hpp"
#include "minta/graph.hpp"

namespace minta {

// Stand-in for enterprise DNS data: plants benign (dictionary-word) and
// malicious (clustered, DGA-flavored) structure with tunable density.
struct SynthConfig {
    int n_benign_domains = 1400;
    int n_malicious_domains = 600;
    int n_clients = 1200;
    int n_ips = 800;
    double malicious_clustering = 0.7;  // in [0,1]; drives shared apex/IP/name-stem mass
    std::uint64_t seed = 0;
};

struct SynthOutput {
    std::vector<DnsLogRecord> records;
    std::map<std::string, bool> labels;  // qname -> malicious
};

SynthOutput generate_dns_log(const SynthConfig& config);

std::string serialize_labels(const std::map<std::string, bool>& labels);
std::map<std::string, bool> parse_labels(const std::string& csv);

// malicious flag per domain id; domains absent from the map get label 0.
std::vector<int> label_vector(const Dmg& graph, const std::map<std::string, bool>& labels);

// What the adversary knows about its own corner of the DMG: its domains, the
// IPs they resolve to, the edges among them, and its own feature extraction.
// Everything the attack consumes (messages, neighborhoods, degrees) comes
// from this local estimate, never from the full graph.
struct AdversarySubgraph {
    std::vector<int> domain_ids;   // sorted ids in the host graph
    std::vector<int> owned_ip_ids; // sorted
    std::vector<TypedEdge> known_edges;
    Eigen::MatrixXd estimated_features;  // |domains| x kFeatureCount, re-extracted

    // Local homogeneous estimate over [domains..., ips...].
    Eigen::SparseMatrix<double> local_adjacency;
    Eigen::SparseMatrix<double> local_normalized;
    Eigen::SparseMatrix<double> local_propagation;  // B' = normalized^2
    Eigen::MatrixXd local_features;                 // local nodes x kFullFeatureCount

    std::vector<std::vector<int>> neighbors;  // per local domain: local domain ids with B' mass
    std::vector<double> degree;               // per local node: adjacency degree (no self-loop)

    int local_domain_count() const { return static_cast<int>(domain_ids.size()); }
    int graph_id(int local_domain) const { return domain_ids[static_cast<std::size_t>(local_domain)]; }
    bool domains_connected() const;  // association-connected, the subgraph invariant
};

AdversarySubgraph make_adversary_subgraph(const Dmg& graph, std::vector<int> domain_ids);

// Seeded random frontier BFS over the malicious domain association graph.
// Throws std::runtime_error naming the largest component when none has >= m.
AdversarySubgraph sample_adversary(const Dmg& graph, const std::vector<int>& malicious,
                                   int m, std::uint64_t seed);

struct CreateAdversaryOptions {
    int ip_pool_size = 5;  // created adversaries have limited hosting
    int max_name_retries = 32;
    int apex_group_size = 10;
};

struct CreatedAdversary {
    std::vector<DnsLogRecord> appended;
    std::vector<std::string> domain_names;
};

// Synthesizes m fresh adversary-owned domains as new log records; the caller
// rebuilds the graph from base + appended and maps names back to node ids.
// Never touches existing records.
CreatedAdversary create_adversary(const Dmg& graph, std::span<const DnsLogRecord> base_records,
                                  int m, std::uint64_t seed, const CreateAdversaryOptions& options = {});

}  // namespace minta
