#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>
#include <vector>

#include "minta/graph.hpp"

#include <nlohmann/json_fwd.hpp>

namespace minta {

// The detector under attack. Deliberately deeper and nonlinear compared to
// the surrogate the attack differentiates through: two graph-convolution
// layers with a ReLU between them. Attack-side code must never include this
// header; its only channel is query_target (enforced by a lint test).
struct TargetHyper {
    int hidden = 16;
    int epochs = 200;
    double learning_rate = 0.01;
    double init_scale = 0.5;
};

struct TargetModel {
    Eigen::MatrixXd w1;  // kFullFeatureCount x hidden
    Eigen::MatrixXd w2;  // hidden x 2 (benign, malicious)
    Eigen::VectorXd feature_mean;   // standardization fitted on the training graph
    Eigen::VectorXd feature_scale;
    TargetHyper hyper;
    double train_accuracy = 0.0;
    double holdout_accuracy = 0.0;

    nlohmann::json to_json() const;
    static TargetModel from_json(const nlohmann::json& j);
};

// Full-batch gradient training with softmax cross-entropy over the labeled
// domain rows. Deterministic under a fixed seed; throws on divergence.
TargetModel train_target(const HomogeneousProjection& projection,
                         const std::vector<std::pair<int, int>>& train_labels,
                         TargetHyper hyper, std::uint64_t seed,
                         const std::vector<std::pair<int, int>>* holdout_labels = nullptr);

// Logit rows for every node (only domain rows are meaningful verdicts).
Eigen::MatrixXd target_logits(const TargetModel& model, const HomogeneousProjection& projection);

// 0 = benign, 1 = malicious; equal logits break toward malicious.
std::vector<int> target_verdicts(const TargetModel& model, const HomogeneousProjection& projection);

class QueryBudgetError : public std::runtime_error {
public:
    explicit QueryBudgetError(int max_queries);
};

class QueryBudgetLedger {
public:
    explicit QueryBudgetLedger(int max_queries = 600) : max_queries_(max_queries) {}
    int max_queries() const { return max_queries_; }
    int used() const { return used_; }
    void charge() {
        if (used_ >= max_queries_) throw QueryBudgetError(max_queries_);
        ++used_;
    }

private:
    int max_queries_;
    int used_ = 0;
};

// Memo for repeated queries against one (model, projection) pair. Avoids
// recomputing the hidden layer; reveals nothing beyond per-query verdicts.
struct TargetQueryCache {
    const TargetModel* model = nullptr;
    const HomogeneousProjection* projection = nullptr;
    Eigen::MatrixXd logits;
};

// The one black-box channel: verdict for a single domain node, charging the
// ledger per call (repeat queries cost again).
int query_target(const TargetModel& model, const HomogeneousProjection& projection,
                 int node_id, QueryBudgetLedger& ledger, TargetQueryCache* cache = nullptr);

}  // namespace minta
