#include "minta/surrogate.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "minta/json_matrix.hpp"
#include "minta/rng.hpp"

namespace minta {

namespace {

std::uint64_t fingerprint(const std::vector<std::pair<int, int>>& dataset) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 0x100000001b3ULL;
    };
    for (const auto& [node, label] : dataset) {
        mix(static_cast<std::uint64_t>(node));
        mix(static_cast<std::uint64_t>(label) + 0x9e37ULL);
    }
    return h;
}

Eigen::MatrixXd fit_logistic(const Eigen::MatrixXd& z, const std::vector<int>& labels,
                             int iterations, double learning_rate) {
    const Eigen::Index n = z.rows();
    const Eigen::Index k = z.cols();
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(k, 2);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (int iter = 0; iter < iterations; ++iter) {
        Eigen::MatrixXd logits = z * w;
        Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
        Eigen::MatrixXd e = (logits.colwise() - row_max).array().exp();
        Eigen::VectorXd sums = e.rowwise().sum();
        Eigen::MatrixXd p = e.array().colwise() / sums.array();
        for (Eigen::Index i = 0; i < n; ++i) p(i, labels[static_cast<std::size_t>(i)]) -= 1.0;
        w -= learning_rate * inv_n * (z.transpose() * p);
    }
    if (!w.allFinite()) throw std::runtime_error("train_surrogate: fit diverged");
    return w;
}

}  // namespace

SurrogateModel train_surrogate(const std::vector<std::pair<int, int>>& query_dataset,
                               const HomogeneousProjection& projection,
                               SurrogateFitOptions options) {
    if (query_dataset.size() < 2) throw std::invalid_argument("train_surrogate: need >= 2 queried nodes");
    bool saw[2] = {false, false};
    for (const auto& [node, label] : query_dataset) {
        if (label != 0 && label != 1) throw std::invalid_argument("train_surrogate: labels must be 0/1");
        saw[label] = true;
    }
    if (!saw[0] || !saw[1]) {
        throw std::runtime_error("train_surrogate: query set contains a single class");
    }

    const Eigen::MatrixXd bx = projection.propagation * projection.features;
    Eigen::MatrixXd z(query_dataset.size(), bx.cols());
    std::vector<int> labels(query_dataset.size());
    for (std::size_t i = 0; i < query_dataset.size(); ++i) {
        z.row(static_cast<Eigen::Index>(i)) = bx.row(query_dataset[i].first);
        labels[i] = query_dataset[i].second;
    }

    // Column RMS scaling, folded back into W afterwards.
    Eigen::VectorXd scale = (z.array().square().colwise().mean().sqrt() + 0.0).matrix();
    for (Eigen::Index j = 0; j < scale.size(); ++j) {
        if (scale[j] < 1e-12) scale[j] = 1.0;
    }
    Eigen::MatrixXd z_scaled = z.array().rowwise() / scale.transpose().array();

    // Seeded split for the validation report; the returned weights come from
    // the training rows only so the number stays honest.
    std::vector<std::size_t> order(query_dataset.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    Rng rng(options.seed ^ 0x5b22ULL);
    rng.shuffle(order);
    const std::size_t val_count = std::min(order.size() - 2,
        static_cast<std::size_t>(options.validation_fraction * static_cast<double>(order.size())));
    const std::size_t train_count = order.size() - val_count;

    Eigen::MatrixXd z_train(train_count, z.cols());
    std::vector<int> y_train(train_count);
    for (std::size_t i = 0; i < train_count; ++i) {
        z_train.row(static_cast<Eigen::Index>(i)) = z_scaled.row(static_cast<Eigen::Index>(order[i]));
        y_train[i] = labels[order[i]];
    }
    bool train_saw[2] = {false, false};
    for (int y : y_train) train_saw[y] = true;
    if (!train_saw[0] || !train_saw[1]) {
        throw std::runtime_error("train_surrogate: training split is single-class; reseed or add queries");
    }

    Eigen::MatrixXd w_scaled = fit_logistic(z_train, y_train, options.iterations, options.learning_rate);

    int hits = 0;
    for (std::size_t i = train_count; i < order.size(); ++i) {
        const Eigen::RowVectorXd logits = z_scaled.row(static_cast<Eigen::Index>(order[i])) * w_scaled;
        const int verdict = logits(1) >= logits(0) ? 1 : 0;
        if (verdict == labels[order[i]]) ++hits;
    }

    SurrogateModel model;
    model.weights = w_scaled.array().colwise() / scale.array();
    model.training_fingerprint = fingerprint(query_dataset);
    model.validation_accuracy = val_count == 0 ? 1.0 : static_cast<double>(hits) / static_cast<double>(val_count);
    return model;
}

Eigen::MatrixXd surrogate_forward(const HomogeneousProjection& projection,
                                  const Eigen::MatrixXd& features, const Eigen::MatrixXd& weights) {
    if (features.rows() != projection.propagation.cols()) {
        throw std::invalid_argument("surrogate_forward: feature row count mismatch");
    }
    if (weights.rows() != features.cols()) {
        throw std::invalid_argument("surrogate_forward: weight shape mismatch");
    }
    return projection.propagation * (features * weights);
}

Eigen::VectorXd message_at(const HomogeneousProjection& projection,
                           const Eigen::MatrixXd& features, int node_id) {
    if (node_id < 0 || node_id >= projection.propagation.rows()) {
        throw std::invalid_argument("message_at: bad node id");
    }
    return (projection.propagation.row(node_id) * features).transpose();
}

std::string serialize_query_dataset(const std::vector<std::pair<int, int>>& dataset) {
    std::ostringstream out;
    out << "node_id,label\n";
    for (const auto& [node, label] : dataset) out << node << ',' << label << '\n';
    return out.str();
}

std::vector<std::pair<int, int>> parse_query_dataset(const std::string& csv) {
    std::vector<std::pair<int, int>> dataset;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.rfind("node_id", 0) == 0) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw std::runtime_error("parse_query_dataset: bad line '" + line + "'");
        dataset.emplace_back(std::stoi(line.substr(0, comma)), std::stoi(line.substr(comma + 1)));
    }
    return dataset;
}

nlohmann::json SurrogateModel::to_json() const {
    return nlohmann::json{{"schema_version", 1},
                          {"kind", "surrogate"},
                          {"weights", matrix_to_json(weights)},
                          {"training_fingerprint", training_fingerprint},
                          {"validation_accuracy", validation_accuracy}};
}

SurrogateModel SurrogateModel::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != 1 || j.at("kind").get<std::string>() != "surrogate") {
        throw std::runtime_error("SurrogateModel::from_json: unsupported checkpoint");
    }
    SurrogateModel model;
    model.weights = matrix_from_json(j.at("weights"));
    model.training_fingerprint = j.at("training_fingerprint").get<std::uint64_t>();
    model.validation_accuracy = j.at("validation_accuracy").get<double>();
    return model;
}

}  // namespace minta
