#include "minta/synth.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "minta/rng.hpp"

namespace minta {

namespace {

const std::vector<std::string>& word_list() {
    static const std::vector<std::string> words = {
        "acorn", "alpha", "amber", "anchor", "apple", "arrow", "aspen", "atlas", "autumn", "badge",
        "baker", "basil", "beacon", "birch", "bloom", "brook", "candle", "canyon", "cedar", "cloud",
        "clover", "cobalt", "comet", "coral", "cotton", "cradle", "crystal", "dawn", "delta", "drift",
        "eagle", "ember", "falcon", "fern", "field", "flint", "forest", "garden", "glade", "grove",
        "harbor", "hazel", "heron", "hollow", "ivory", "jasper", "juniper", "kettle", "lagoon", "lantern",
        "laurel", "linden", "lotus", "maple", "marble", "meadow", "mellow", "mint", "mistral", "morning",
        "nectar", "noble", "north", "oasis", "ocean", "olive", "onyx", "orchid", "otter", "pearl",
        "pebble", "pine", "plume", "prairie", "quartz", "quill", "raven", "reed", "ridge", "river",
        "robin", "rustic", "saffron", "sage", "shore", "silver", "sparrow", "spring", "spruce", "stone",
        "summit", "sunset", "thistle", "timber", "topaz", "trail", "tulip", "valley", "velvet", "violet",
        "walnut", "willow", "winter", "wren", "zephyr",
    };
    return words;
}

std::string dga_label(Rng& rng, int len, bool with_digit) {
    static const std::string consonants = "bcdfghjklmnpqrstvwxz";
    std::string label;
    for (int i = 0; i < len; ++i) {
        label += consonants[rng.next_index(consonants.size())];
    }
    if (with_digit && !label.empty()) {
        const std::size_t pos = rng.next_index(label.size());
        label[pos] = static_cast<char>('0' + rng.next_int(0, 9));
        if (pos == 0 && label.size() > 1) std::swap(label[0], label[1]);  // keep it name-ish
    }
    return label;
}

}  // namespace

SynthOutput generate_dns_log(const SynthConfig& config) {
    if (config.n_benign_domains < 0 || config.n_malicious_domains < 0 || config.n_clients < 0 ||
        config.n_ips < 0) {
        throw std::invalid_argument("generate_dns_log: counts must be >= 0");
    }
    SynthOutput out;
    const int total_domains = config.n_benign_domains + config.n_malicious_domains;
    if (total_domains == 0) return out;

    Rng rng(config.seed ^ 0x5eedf00dULL);
    const auto& words = word_list();
    const double clustering = std::clamp(config.malicious_clustering, 0.0, 1.0);

    // Entity pools. Every pool member is used at least once (round-robin base
    // assignment) so configured counts translate into exact node counts.
    std::vector<std::string> clients;
    for (int i = 0; i < std::max(config.n_clients, 1); ++i) clients.push_back("client" + std::to_string(i));
    std::vector<std::string> ips;
    for (int i = 0; i < std::max(config.n_ips, 1); ++i) {
        ips.push_back("10." + std::to_string(i / 65536 % 256) + "." + std::to_string(i / 256 % 256) + "." +
                      std::to_string(i % 256));
    }
    // Malicious hosting concentrates on a small slice of the IP space.
    const int malicious_ip_count = std::max(1, std::min(config.n_ips, static_cast<int>(
        std::max(2.0, config.n_malicious_domains * (1.05 - clustering) * 0.12))));
    const int malicious_ip_base = std::max(0, static_cast<int>(ips.size()) - malicious_ip_count);
    // Infected clients query many malicious domains.
    const int infected_count = std::max(1, std::min(config.n_clients, config.n_malicious_domains / 6 + 1));
    const int infected_base = std::max(0, static_cast<int>(clients.size()) - infected_count);

    std::set<std::string> used_names;
    std::vector<std::pair<std::string, bool>> domains;  // (name, malicious)
    static const std::vector<std::string> benign_tlds = {"com", "org", "net", "de", "edu", "io"};
    static const std::vector<std::string> bad_tlds = {"net", "biz", "info", "xyz", "top"};

    std::vector<std::string> benign_apexes;
    for (int i = 0; i < config.n_benign_domains; ++i) {
        std::string name;
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::string apex;
            if (!benign_apexes.empty() && rng.next_bool(0.3)) {
                apex = rng.pick(benign_apexes);
            } else {
                apex = rng.pick(words) + (rng.next_bool(0.4) ? "-" + rng.pick(words) : "") + "." +
                       rng.pick(benign_tlds);
                benign_apexes.push_back(apex);
            }
            name = apex;
            if (rng.next_bool(0.55)) name = rng.pick(words) + "." + name;
            if (rng.next_bool(0.45)) name = "www." + name;
            if (rng.next_bool(0.08)) name = rng.pick(words) + std::to_string(rng.next_int(0, 9)) + "." + name;
            if (used_names.insert(name).second) break;
            name.clear();
        }
        if (name.empty()) continue;
        domains.emplace_back(name, false);
    }

    struct Cluster {
        std::string apex;
        std::string stem;
        std::vector<int> ip_ids;
    };
    std::vector<Cluster> clusters;
    const int cluster_size = std::max(2, static_cast<int>(4 + clustering * 21));
    const int n_clusters = std::max(1, (config.n_malicious_domains + cluster_size - 1) / cluster_size);
    for (int c = 0; c < n_clusters; ++c) {
        Cluster cluster;
        cluster.apex = dga_label(rng, rng.next_int(7, 11), rng.next_bool(0.5)) + "." + rng.pick(bad_tlds);
        cluster.stem = dga_label(rng, rng.next_int(4, 6), false);
        const int pool = std::max(1, static_cast<int>(1 + (1.0 - clustering) * 5));
        for (int k = 0; k < pool; ++k) {
            // Round-robin base so the whole malicious IP slice gets used.
            cluster.ip_ids.push_back(malicious_ip_base + (c * pool + k) % malicious_ip_count);
        }
        clusters.push_back(std::move(cluster));
    }

    std::vector<int> domain_cluster;
    for (int i = 0; i < config.n_malicious_domains; ++i) {
        const int c = i % n_clusters;
        const auto& cluster = clusters[static_cast<std::size_t>(c)];
        std::string name;
        for (int attempt = 0; attempt < 64; ++attempt) {
            std::string apex = cluster.apex;
            if (!rng.next_bool(clustering)) {
                apex = dga_label(rng, rng.next_int(7, 11), rng.next_bool(0.5)) + "." + rng.pick(bad_tlds);
            }
            std::string label = rng.next_bool(clustering)
                                    ? cluster.stem + dga_label(rng, rng.next_int(2, 5), true)
                                    : dga_label(rng, rng.next_int(6, 12), true);
            name = label + "." + apex;
            if (rng.next_bool(0.15)) name = dga_label(rng, rng.next_int(2, 4), rng.next_bool(0.5)) + "." + name;
            if (used_names.insert(name).second) break;
            name.clear();
        }
        if (name.empty()) continue;
        domains.emplace_back(name, true);
        domain_cluster.push_back(i % n_clusters);
    }

    // Emit resolution/query events. Base pass guarantees pool coverage.
    std::int64_t ts = 1000;
    int client_cursor = 0;
    int ip_cursor = 0;
    std::size_t malicious_seen = 0;
    for (const auto& [name, malicious] : domains) {
        std::vector<std::string> domain_ips;
        if (malicious) {
            const auto& cluster = clusters[static_cast<std::size_t>(domain_cluster[malicious_seen++])];
            const int n_res = 1 + (rng.next_bool(0.3) ? 1 : 0);
            for (int k = 0; k < n_res; ++k) {
                domain_ips.push_back(ips[static_cast<std::size_t>(rng.pick(cluster.ip_ids))]);
            }
        } else {
            // Mostly dedicated hosting, cycling so every benign IP is used.
            domain_ips.push_back(ips[static_cast<std::size_t>(ip_cursor % std::max(1, malicious_ip_base))]);
            ip_cursor++;
            if (rng.next_bool(0.12)) {
                domain_ips.push_back(ips[rng.next_index(static_cast<std::size_t>(std::max(1, malicious_ip_base)))]);
            }
        }
        std::vector<std::string> domain_clients;
        if (malicious) {
            const int n_q = rng.next_int(1, 3);
            domain_clients.push_back(clients[static_cast<std::size_t>(
                infected_base + static_cast<int>(malicious_seen - 1) % infected_count)]);
            for (int k = 1; k < n_q; ++k) {
                domain_clients.push_back(clients[static_cast<std::size_t>(infected_base + rng.next_int(0, infected_count - 1))]);
            }
        } else {
            const int n_q = rng.next_int(1, 3);
            for (int k = 0; k < n_q; ++k) {
                domain_clients.push_back(clients[static_cast<std::size_t>(client_cursor % std::max(1, infected_base))]);
                client_cursor++;
            }
        }
        for (const auto& ip : domain_ips) {
            for (const auto& client : domain_clients) {
                out.records.push_back(DnsLogRecord{ts++, client, name, ip});
            }
        }
        out.labels[name] = malicious;
    }
    return out;
}

std::string serialize_labels(const std::map<std::string, bool>& labels) {
    std::ostringstream out;
    out << "qname,label\n";
    for (const auto& [name, malicious] : labels) {
        out << name << ',' << (malicious ? "malicious" : "benign") << '\n';
    }
    return out.str();
}

std::map<std::string, bool> parse_labels(const std::string& csv) {
    std::map<std::string, bool> labels;
    std::istringstream in(csv);
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (first && line.rfind("qname,", 0) == 0) {
            first = false;
            continue;
        }
        first = false;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("parse_labels: bad line '" + line + "'");
        labels[line.substr(0, comma)] = line.substr(comma + 1) == "malicious";
    }
    return labels;
}

std::vector<int> label_vector(const Dmg& graph, const std::map<std::string, bool>& labels) {
    std::vector<int> out(static_cast<std::size_t>(graph.domain_count()), 0);
    for (int i = 0; i < graph.domain_count(); ++i) {
        const auto it = labels.find(graph.node(i).name);
        if (it != labels.end() && it->second) out[static_cast<std::size_t>(i)] = 1;
    }
    return out;
}

bool AdversarySubgraph::domains_connected() const {
    const int n = local_domain_count();
    if (n <= 1) return true;
    // Association within the estimate: direct domain-domain edge or shared IP,
    // i.e. a path in the local adjacency not crossing another domain.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    Eigen::MatrixXd a = Eigen::MatrixXd(local_adjacency);
    const int total = static_cast<int>(a.rows());
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            bool linked = a(i, j) != 0.0;
            for (int p = n; p < total && !linked; ++p) {
                linked = a(i, p) != 0.0 && a(j, p) != 0.0;
            }
            if (linked) {
                adj[static_cast<std::size_t>(i)].push_back(j);
                adj[static_cast<std::size_t>(j)].push_back(i);
            }
        }
    }
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack = {0};
    seen[0] = 1;
    int count = 0;
    while (!stack.empty()) {
        const int node = stack.back();
        stack.pop_back();
        ++count;
        for (int next : adj[static_cast<std::size_t>(node)]) {
            if (!seen[static_cast<std::size_t>(next)]) {
                seen[static_cast<std::size_t>(next)] = 1;
                stack.push_back(next);
            }
        }
    }
    return count == n;
}

AdversarySubgraph make_adversary_subgraph(const Dmg& graph, std::vector<int> domain_ids) {
    std::sort(domain_ids.begin(), domain_ids.end());
    domain_ids.erase(std::unique(domain_ids.begin(), domain_ids.end()), domain_ids.end());
    AdversarySubgraph adv;
    adv.domain_ids = std::move(domain_ids);
    const auto is_owned_domain = [&](int id) {
        return std::binary_search(adv.domain_ids.begin(), adv.domain_ids.end(), id);
    };

    std::set<int> ip_set;
    for (int id : adv.domain_ids) {
        for (int ip : graph.neighbors(id, EdgeKind::Resolve)) ip_set.insert(ip);
    }
    adv.owned_ip_ids.assign(ip_set.begin(), ip_set.end());

    for (const auto& edge : graph.edges()) {
        if (edge.kind == EdgeKind::Apex || edge.kind == EdgeKind::Similar) {
            if (is_owned_domain(edge.u) && is_owned_domain(edge.v)) adv.known_edges.push_back(edge);
        } else if (edge.kind == EdgeKind::Resolve) {
            const int domain = edge.u < graph.domain_count() ? edge.u : edge.v;
            const int ip = edge.u < graph.domain_count() ? edge.v : edge.u;
            if (is_owned_domain(domain) && ip_set.count(ip)) adv.known_edges.push_back(edge);
        }
    }

    const int nd = adv.local_domain_count();
    const int total = nd + static_cast<int>(adv.owned_ip_ids.size());
    std::map<int, int> local_of;
    for (int i = 0; i < nd; ++i) local_of[adv.domain_ids[static_cast<std::size_t>(i)]] = i;
    for (std::size_t i = 0; i < adv.owned_ip_ids.size(); ++i) {
        local_of[adv.owned_ip_ids[i]] = nd + static_cast<int>(i);
    }

    std::vector<Eigen::Triplet<double>> triplets;
    for (const auto& edge : adv.known_edges) {
        const int u = local_of.at(edge.u);
        const int v = local_of.at(edge.v);
        triplets.emplace_back(u, v, 1.0);
        triplets.emplace_back(v, u, 1.0);
    }
    adv.local_adjacency.resize(total, total);
    adv.local_adjacency.setFromTriplets(triplets.begin(), triplets.end(),
                                        [](const double&, const double&) { return 1.0; });
    adv.local_normalized = normalize_adjacency(adv.local_adjacency);
    adv.local_propagation = (adv.local_normalized * adv.local_normalized).pruned();

    adv.estimated_features.resize(nd, kFeatureCount);
    adv.local_features = Eigen::MatrixXd::Zero(total, kFullFeatureCount);
    for (int i = 0; i < nd; ++i) {
        const auto& name = graph.node(adv.domain_ids[static_cast<std::size_t>(i)]).name;
        adv.estimated_features.row(i) = extract_features(name, graph.config().features).transpose();
        adv.local_features.row(i).head(kFeatureCount) = adv.estimated_features.row(i);
        adv.local_features(i, kFeatureCount + static_cast<int>(NodeKind::Domain)) = 1.0;
    }
    for (int i = nd; i < total; ++i) {
        adv.local_features(i, kFeatureCount + static_cast<int>(NodeKind::Ip)) = 1.0;
    }

    adv.neighbors.assign(static_cast<std::size_t>(nd), {});
    for (int k = 0; k < adv.local_propagation.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(adv.local_propagation, k); it; ++it) {
            const int i = static_cast<int>(it.row());
            const int j = static_cast<int>(it.col());
            if (i < nd && j < nd && i != j && it.value() > 1e-12) {
                adv.neighbors[static_cast<std::size_t>(i)].push_back(j);
            }
        }
    }
    for (auto& list : adv.neighbors) std::sort(list.begin(), list.end());

    adv.degree.assign(static_cast<std::size_t>(total), 0.0);
    for (int k = 0; k < adv.local_adjacency.outerSize(); ++k) {
        for (Eigen::SparseMatrix<double>::InnerIterator it(adv.local_adjacency, k); it; ++it) {
            adv.degree[static_cast<std::size_t>(it.row())] += it.value();
        }
    }
    return adv;
}

AdversarySubgraph sample_adversary(const Dmg& graph, const std::vector<int>& malicious,
                                   int m, std::uint64_t seed) {
    if (m <= 0) throw std::invalid_argument("sample_adversary: m must be positive");
    const auto assoc = graph.domain_association_lists();
    const int nd = graph.domain_count();

    // Connected components of the malicious-induced association graph.
    std::vector<int> component(static_cast<std::size_t>(nd), -1);
    std::vector<int> component_size;
    for (int start = 0; start < nd; ++start) {
        if (component[static_cast<std::size_t>(start)] != -1 || !malicious[static_cast<std::size_t>(start)]) continue;
        const int comp = static_cast<int>(component_size.size());
        int size = 0;
        std::vector<int> stack = {start};
        component[static_cast<std::size_t>(start)] = comp;
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            ++size;
            for (int next : assoc[static_cast<std::size_t>(node)]) {
                if (malicious[static_cast<std::size_t>(next)] && component[static_cast<std::size_t>(next)] == -1) {
                    component[static_cast<std::size_t>(next)] = comp;
                    stack.push_back(next);
                }
            }
        }
        component_size.push_back(size);
    }

    std::vector<int> eligible;
    int largest = 0;
    for (std::size_t c = 0; c < component_size.size(); ++c) {
        largest = std::max(largest, component_size[c]);
        if (component_size[c] >= m) eligible.push_back(static_cast<int>(c));
    }
    if (eligible.empty()) {
        throw std::runtime_error("sample_adversary: no malicious component of size >= " + std::to_string(m) +
                                 " (largest available: " + std::to_string(largest) + ")");
    }

    Rng rng(seed ^ 0xadff5a11ULL);
    const int chosen = eligible[rng.next_index(eligible.size())];
    std::vector<int> members;
    for (int i = 0; i < nd; ++i) {
        if (component[static_cast<std::size_t>(i)] == chosen) members.push_back(i);
    }

    // Randomized-frontier BFS keeps the sample connected.
    std::vector<char> in_sample(static_cast<std::size_t>(nd), 0), in_frontier(static_cast<std::size_t>(nd), 0);
    std::vector<int> frontier = {members[rng.next_index(members.size())]};
    in_frontier[static_cast<std::size_t>(frontier[0])] = 1;
    std::vector<int> sample;
    while (static_cast<int>(sample.size()) < m && !frontier.empty()) {
        const std::size_t pick = rng.next_index(frontier.size());
        const int node = frontier[pick];
        frontier[pick] = frontier.back();
        frontier.pop_back();
        in_sample[static_cast<std::size_t>(node)] = 1;
        sample.push_back(node);
        for (int next : assoc[static_cast<std::size_t>(node)]) {
            if (malicious[static_cast<std::size_t>(next)] && !in_sample[static_cast<std::size_t>(next)] &&
                !in_frontier[static_cast<std::size_t>(next)]) {
                in_frontier[static_cast<std::size_t>(next)] = 1;
                frontier.push_back(next);
            }
        }
    }
    if (static_cast<int>(sample.size()) < m) {
        throw std::runtime_error("sample_adversary: frontier exhausted before reaching m");
    }
    return make_adversary_subgraph(graph, std::move(sample));
}

CreatedAdversary create_adversary(const Dmg& graph, std::span<const DnsLogRecord> base_records,
                                  int m, std::uint64_t seed, const CreateAdversaryOptions& options) {
    CreatedAdversary created;
    if (m == 0) return created;
    if (m < 0) throw std::invalid_argument("create_adversary: m must be >= 0");

    Rng rng(seed ^ 0xc4ea7edULL);
    std::set<std::string> existing_names, existing_ips;
    for (const auto& record : base_records) {
        existing_names.insert(record.qname);
        existing_ips.insert(record.resolved_ip);
    }

    std::vector<std::string> pool_ips;
    for (int k = 1; pool_ips.size() < static_cast<std::size_t>(options.ip_pool_size); ++k) {
        std::string ip = "203.0.113." + std::to_string(k);
        if (!existing_ips.count(ip)) pool_ips.push_back(ip);
        if (k > 250) throw std::runtime_error("create_adversary: adversary IP range exhausted");
    }
    const int n_clients = std::max(1, m / 2);
    std::vector<std::string> pool_clients;
    for (int k = 0; k < n_clients; ++k) pool_clients.push_back("advclient" + std::to_string(k));

    const int group = std::max(2, options.apex_group_size);
    const int n_apexes = (m + group - 1) / group;
    static const std::vector<std::string> tlds = {"net", "biz", "info", "org"};
    std::vector<std::string> apexes;
    std::vector<std::string> stems;
    for (int a = 0; a < n_apexes; ++a) {
        apexes.push_back(dga_label(rng, rng.next_int(8, 11), rng.next_bool(0.5)) + "." + rng.pick(tlds));
        stems.push_back(dga_label(rng, rng.next_int(4, 6), false));
    }

    std::int64_t ts = 0;
    for (const auto& record : base_records) ts = std::max(ts, record.timestamp);
    ++ts;

    std::vector<int> domain_ip(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int a = i % n_apexes;
        std::string name;
        for (int attempt = 0; attempt <= options.max_name_retries; ++attempt) {
            if (attempt == options.max_name_retries) {
                throw std::runtime_error("create_adversary: name collision retries exhausted");
            }
            std::string label = rng.next_bool(0.7) ? stems[static_cast<std::size_t>(a)] + dga_label(rng, rng.next_int(2, 5), true)
                                                   : dga_label(rng, rng.next_int(6, 12), true);
            name = label + "." + apexes[static_cast<std::size_t>(a)];
            if (!existing_names.count(name)) {
                existing_names.insert(name);
                break;
            }
            name.clear();
        }
        created.domain_names.push_back(name);
        domain_ip[static_cast<std::size_t>(i)] = rng.next_int(0, static_cast<int>(pool_ips.size()) - 1);
    }

    // Shared-IP stitching: make sure the apex groups cannot fall apart into
    // disconnected islands of the association graph.
    for (int a = 0; a < n_apexes; ++a) domain_ip[static_cast<std::size_t>(a % m)] = 0;

    for (int i = 0; i < m; ++i) {
        const auto& name = created.domain_names[static_cast<std::size_t>(i)];
        const auto& ip = pool_ips[static_cast<std::size_t>(domain_ip[static_cast<std::size_t>(i)])];
        const int n_q = rng.next_int(1, 3);
        for (int q = 0; q < n_q; ++q) {
            created.appended.push_back(DnsLogRecord{ts++, rng.pick(pool_clients), name, ip});
        }
    }
    (void)graph;
    return created;
}

}  // namespace minta
