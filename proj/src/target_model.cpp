#include "minta/target_model.hpp"

#include <cmath>

#include <nlohmann/json.hpp>

#include "minta/json_matrix.hpp"
#include "minta/rng.hpp"

namespace minta {

QueryBudgetError::QueryBudgetError(int max_queries)
    : std::runtime_error("query budget of " + std::to_string(max_queries) + " exhausted") {}

namespace {

Eigen::MatrixXd standardized(const TargetModel& model, const Eigen::MatrixXd& features) {
    Eigen::MatrixXd x = features;
    x.rowwise() -= model.feature_mean.transpose();
    x.array().rowwise() /= model.feature_scale.transpose().array();
    return x;
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& z) {
    Eigen::VectorXd row_max = z.rowwise().maxCoeff();
    Eigen::MatrixXd e = (z.colwise() - row_max).array().exp();
    Eigen::VectorXd sums = e.rowwise().sum();
    return e.array().colwise() / sums.array();
}

double accuracy_on(const Eigen::MatrixXd& logits, const std::vector<std::pair<int, int>>& labels) {
    if (labels.empty()) return 0.0;
    int hits = 0;
    for (const auto& [node, label] : labels) {
        const int verdict = logits(node, 1) >= logits(node, 0) ? 1 : 0;
        if (verdict == label) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

}  // namespace

TargetModel train_target(const HomogeneousProjection& projection,
                         const std::vector<std::pair<int, int>>& train_labels,
                         TargetHyper hyper, std::uint64_t seed,
                         const std::vector<std::pair<int, int>>* holdout_labels) {
    if (train_labels.empty()) throw std::invalid_argument("train_target: no labels");
    const auto& a_hat = projection.normalized;
    const Eigen::Index n = projection.features.rows();
    const Eigen::Index k = projection.features.cols();

    TargetModel model;
    model.hyper = hyper;
    model.feature_mean = projection.features.colwise().mean();
    Eigen::MatrixXd centered = projection.features.rowwise() - model.feature_mean.transpose();
    model.feature_scale = (centered.array().square().colwise().mean().sqrt() + 1e-9).matrix();

    Rng rng(seed ^ 0x7a26e7ULL);
    model.w1.resize(k, hyper.hidden);
    for (Eigen::Index i = 0; i < k; ++i) {
        for (int j = 0; j < hyper.hidden; ++j) {
            model.w1(i, j) = rng.next_normal() * hyper.init_scale / std::sqrt(static_cast<double>(k));
        }
    }
    model.w2.resize(hyper.hidden, 2);
    for (int i = 0; i < hyper.hidden; ++i) {
        for (int j = 0; j < 2; ++j) {
            model.w2(i, j) = rng.next_normal() * hyper.init_scale / std::sqrt(static_cast<double>(hyper.hidden));
        }
    }

    const Eigen::MatrixXd x = standardized(model, projection.features);
    const double inv_l = 1.0 / static_cast<double>(train_labels.size());

    for (int epoch = 0; epoch < hyper.epochs; ++epoch) {
        const Eigen::MatrixXd z1 = a_hat * (x * model.w1);
        const Eigen::MatrixXd h = z1.cwiseMax(0.0);
        const Eigen::MatrixXd z2 = a_hat * (h * model.w2);
        const Eigen::MatrixXd p = softmax_rows(z2);

        double loss = 0.0;
        Eigen::MatrixXd g2 = Eigen::MatrixXd::Zero(n, 2);
        for (const auto& [node, label] : train_labels) {
            loss -= std::log(std::max(p(node, label), 1e-300));
            g2.row(node) = p.row(node);
            g2(node, label) -= 1.0;
            g2.row(node) *= inv_l;
        }
        loss *= inv_l;
        if (!std::isfinite(loss)) {
            throw std::runtime_error("train_target: loss diverged at epoch " + std::to_string(epoch) +
                                     "; try a smaller learning rate");
        }

        const Eigen::MatrixXd ag2 = a_hat * g2;
        const Eigen::MatrixXd grad_w2 = h.transpose() * ag2;
        Eigen::MatrixXd dz1 = (ag2 * model.w2.transpose()).cwiseProduct((z1.array() > 0.0).cast<double>().matrix());
        const Eigen::MatrixXd grad_w1 = x.transpose() * (a_hat * dz1);

        model.w1 -= hyper.learning_rate * grad_w1;
        model.w2 -= hyper.learning_rate * grad_w2;
    }

    const Eigen::MatrixXd logits = target_logits(model, projection);
    model.train_accuracy = accuracy_on(logits, train_labels);
    if (holdout_labels) model.holdout_accuracy = accuracy_on(logits, *holdout_labels);
    return model;
}

Eigen::MatrixXd target_logits(const TargetModel& model, const HomogeneousProjection& projection) {
    const Eigen::MatrixXd x = standardized(model, projection.features);
    const Eigen::MatrixXd h = (projection.normalized * (x * model.w1)).cwiseMax(0.0);
    return projection.normalized * (h * model.w2);
}

std::vector<int> target_verdicts(const TargetModel& model, const HomogeneousProjection& projection) {
    const Eigen::MatrixXd logits = target_logits(model, projection);
    std::vector<int> verdicts(static_cast<std::size_t>(projection.domain_count));
    for (int i = 0; i < projection.domain_count; ++i) {
        verdicts[static_cast<std::size_t>(i)] = logits(i, 1) >= logits(i, 0) ? 1 : 0;
    }
    return verdicts;
}

int query_target(const TargetModel& model, const HomogeneousProjection& projection,
                 int node_id, QueryBudgetLedger& ledger, TargetQueryCache* cache) {
    if (node_id < 0 || node_id >= projection.domain_count) {
        throw std::invalid_argument("query_target: node " + std::to_string(node_id) + " is not a domain node");
    }
    ledger.charge();
    if (cache && cache->model == &model && cache->projection == &projection) {
        return cache->logits(node_id, 1) >= cache->logits(node_id, 0) ? 1 : 0;
    }
    const Eigen::MatrixXd logits = target_logits(model, projection);
    if (cache) {
        cache->model = &model;
        cache->projection = &projection;
        cache->logits = logits;
    }
    return logits(node_id, 1) >= logits(node_id, 0) ? 1 : 0;
}

nlohmann::json TargetModel::to_json() const {
    return nlohmann::json{{"schema_version", 1},
                          {"kind", "target"},
                          {"hidden", hyper.hidden},
                          {"epochs", hyper.epochs},
                          {"learning_rate", hyper.learning_rate},
                          {"init_scale", hyper.init_scale},
                          {"w1", matrix_to_json(w1)},
                          {"w2", matrix_to_json(w2)},
                          {"feature_mean", vector_to_json(feature_mean)},
                          {"feature_scale", vector_to_json(feature_scale)},
                          {"train_accuracy", train_accuracy},
                          {"holdout_accuracy", holdout_accuracy}};
}

TargetModel TargetModel::from_json(const nlohmann::json& j) {
    if (j.at("schema_version").get<int>() != 1 || j.at("kind").get<std::string>() != "target") {
        throw std::runtime_error("TargetModel::from_json: unsupported checkpoint");
    }
    TargetModel model;
    model.hyper.hidden = j.at("hidden").get<int>();
    model.hyper.epochs = j.at("epochs").get<int>();
    model.hyper.learning_rate = j.at("learning_rate").get<double>();
    model.hyper.init_scale = j.at("init_scale").get<double>();
    model.w1 = matrix_from_json(j.at("w1"));
    model.w2 = matrix_from_json(j.at("w2"));
    model.feature_mean = vector_from_json(j.at("feature_mean"));
    model.feature_scale = vector_from_json(j.at("feature_scale"));
    model.train_accuracy = j.at("train_accuracy").get<double>();
    model.holdout_accuracy = j.at("holdout_accuracy").get<double>();
    return model;
}

}  // namespace minta
