#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "minta/rng.hpp"
#include "minta/synth.hpp"

using namespace minta;

namespace {
SynthConfig small_config(std::uint64_t seed) {
    SynthConfig config;
    config.n_benign_domains = 350;
    config.n_malicious_domains = 150;
    config.n_clients = 300;
    config.n_ips = 200;
    config.malicious_clustering = 0.7;
    config.seed = seed;
    return config;
}
}  // namespace

TEST_CASE("all-zero config yields an empty log") {
    SynthConfig config;
    config.n_benign_domains = config.n_malicious_domains = config.n_clients = config.n_ips = 0;
    auto out = generate_dns_log(config);
    CHECK(out.records.empty());
    CHECK(out.labels.empty());
}

TEST_CASE("identical config and seed give byte-identical output") {
    const auto config = small_config(1);
    const auto a = generate_dns_log(config);
    const auto b = generate_dns_log(config);
    CHECK(serialize_dns_log(a.records) == serialize_dns_log(b.records));
    CHECK(serialize_labels(a.labels) == serialize_labels(b.labels));
}

TEST_CASE("configured entity counts become exact node counts") {
    const auto config = small_config(3);
    auto out = generate_dns_log(config);
    auto graph = Dmg::build(out.records);
    CHECK(graph.domain_count() == config.n_benign_domains + config.n_malicious_domains);
    CHECK(graph.node_count() == config.n_benign_domains + config.n_malicious_domains +
                                    config.n_clients + config.n_ips);
}

TEST_CASE("high clustering makes malicious pairs more name-similar than benign pairs") {
    auto config = small_config(5);
    config.malicious_clustering = 0.9;
    auto out = generate_dns_log(config);

    std::vector<std::string> benign, malicious;
    for (const auto& [name, bad] : out.labels) (bad ? malicious : benign).push_back(name);
    Rng rng(11);
    auto mean_similarity = [&](const std::vector<std::string>& names) {
        double total = 0.0;
        const int pairs = 400;
        for (int k = 0; k < pairs; ++k) {
            const auto& a = rng.pick(names);
            const auto& b = rng.pick(names);
            total += ngram_similarity(a, b, 2);
        }
        return total / pairs;
    };
    CHECK(mean_similarity(malicious) > mean_similarity(benign));
}

TEST_CASE("labels CSV round-trips") {
    const auto out = generate_dns_log(small_config(7));
    CHECK(parse_labels(serialize_labels(out.labels)) == out.labels);
}

TEST_CASE("sampled adversaries are connected, label-pure, and seeded") {
    const auto out = generate_dns_log(small_config(9));
    auto graph = Dmg::build(out.records);
    const auto malicious = label_vector(graph, out.labels);

    auto adv = sample_adversary(graph, malicious, 40, 1234);
    CHECK(adv.local_domain_count() == 40);
    CHECK(adv.domains_connected());
    for (int id : adv.domain_ids) CHECK(malicious[static_cast<std::size_t>(id)] == 1);

    auto again = sample_adversary(graph, malicious, 40, 1234);
    CHECK(again.domain_ids == adv.domain_ids);

    auto single = sample_adversary(graph, malicious, 1, 77);
    CHECK(single.local_domain_count() == 1);
    CHECK(single.domains_connected());
}

TEST_CASE("oversized sample request names the largest component") {
    const auto out = generate_dns_log(small_config(13));
    auto graph = Dmg::build(out.records);
    const auto malicious = label_vector(graph, out.labels);
    CHECK_THROWS_WITH_AS(sample_adversary(graph, malicious, 100000, 5),
                         doctest::Contains("largest available"), std::runtime_error);
}

TEST_CASE("subgraph estimate stays inside the owned node set") {
    const auto out = generate_dns_log(small_config(17));
    auto graph = Dmg::build(out.records);
    auto adv = sample_adversary(graph, label_vector(graph, out.labels), 30, 2);

    std::set<int> allowed(adv.domain_ids.begin(), adv.domain_ids.end());
    allowed.insert(adv.owned_ip_ids.begin(), adv.owned_ip_ids.end());
    for (const auto& edge : adv.known_edges) {
        CHECK(allowed.count(edge.u));
        CHECK(allowed.count(edge.v));
    }
    // The adversary's own extraction agrees with the graph's.
    for (int i = 0; i < adv.local_domain_count(); ++i) {
        const int id = adv.graph_id(i);
        CHECK((adv.estimated_features.row(i) - graph.domain_features().row(id)).cwiseAbs().maxCoeff() == 0.0);
    }
}

TEST_CASE("created adversary appends records without touching existing ones") {
    const auto out = generate_dns_log(small_config(19));
    auto base_graph = Dmg::build(out.records);

    SUBCASE("m = 0 changes nothing") {
        auto created = create_adversary(base_graph, out.records, 0, 3);
        CHECK(created.appended.empty());
        CHECK(created.domain_names.empty());
    }

    SUBCASE("m = 50 adds exactly the documented nodes") {
        auto created = create_adversary(base_graph, out.records, 50, 3);
        CHECK(created.domain_names.size() == 50);

        auto merged = out.records;
        merged.insert(merged.end(), created.appended.begin(), created.appended.end());
        auto graph = Dmg::build(merged);

        std::vector<int> ids;
        for (const auto& name : created.domain_names) {
            auto id = graph.find_node(NodeKind::Domain, name);
            REQUIRE(id.has_value());
            ids.push_back(*id);
        }
        auto adv = make_adversary_subgraph(graph, ids);
        CHECK(adv.local_domain_count() == 50);
        CHECK(adv.domains_connected());
        CHECK(adv.owned_ip_ids.size() <= 5);

        // Round trip: rebuilt feature rows equal a direct re-extraction.
        for (int i = 0; i < adv.local_domain_count(); ++i) {
            const auto direct = extract_features(graph.node(adv.graph_id(i)).name, graph.config().features);
            CHECK((adv.estimated_features.row(i).transpose() - direct).cwiseAbs().maxCoeff() == 0.0);
        }

        // Pre-existing structure is preserved: every base edge survives under
        // the rebuilt node identities.
        for (const auto& edge : base_graph.edges()) {
            const auto& nu = base_graph.node(edge.u);
            const auto& nv = base_graph.node(edge.v);
            const auto u = graph.find_node(nu.kind, nu.name);
            const auto v = graph.find_node(nv.kind, nv.name);
            REQUIRE(u.has_value());
            REQUIRE(v.has_value());
            CHECK(graph.has_edge(*u, *v, edge.kind));
        }

        // Determinism.
        auto created2 = create_adversary(base_graph, out.records, 50, 3);
        CHECK(created2.domain_names == created.domain_names);
        CHECK(serialize_dns_log(created2.appended) == serialize_dns_log(created.appended));
    }
}
