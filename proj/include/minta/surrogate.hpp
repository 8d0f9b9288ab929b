#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <utility>
#include <vector>

#include "minta/graph.hpp"

#include <nlohmann/json_fwd.hpp>

namespace minta {

// 2-hop linearized graph convolution: logits = B X W with B = normalized^2.
// Fitted from black-box query labels on a graph disjoint from the target's.
struct SurrogateModel {
    Eigen::MatrixXd weights;  // kFullFeatureCount x 2
    std::uint64_t training_fingerprint = 0;
    double validation_accuracy = 0.0;

    nlohmann::json to_json() const;
    static SurrogateModel from_json(const nlohmann::json& j);
};

struct SurrogateFitOptions {
    int iterations = 3000;
    double learning_rate = 0.5;
    double validation_fraction = 0.2;
    std::uint64_t seed = 0;
};

// Logistic regression on rows of (B X) against queried verdicts. Internally
// fits on RMS-rescaled columns and folds the scaling back into W, so the
// decision surface is invariant to positive feature rescaling. Throws on a
// single-class dataset.
SurrogateModel train_surrogate(const std::vector<std::pair<int, int>>& query_dataset,
                               const HomogeneousProjection& projection,
                               SurrogateFitOptions options = {});

// Exactly B X W; pure, with shape checks.
Eigen::MatrixXd surrogate_forward(const HomogeneousProjection& projection,
                                  const Eigen::MatrixXd& features, const Eigen::MatrixXd& weights);

// Row j of (B X): the pre-weight aggregated feature message at node j.
Eigen::VectorXd message_at(const HomogeneousProjection& projection,
                           const Eigen::MatrixXd& features, int node_id);

std::string serialize_query_dataset(const std::vector<std::pair<int, int>>& dataset);
std::vector<std::pair<int, int>> parse_query_dataset(const std::string& csv);

}  // namespace minta
