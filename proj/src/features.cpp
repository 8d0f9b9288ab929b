#include "minta/features.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace minta {

Eigen::VectorXd extract_features(std::string_view qname, const FeatureConfig& config) {
    const auto labels = split_labels(qname);
    if (labels.size() < 2) {
        throw std::invalid_argument("extract_features: need >= 2 labels in '" + std::string(qname) + "'");
    }
    const std::string apex = apex_of(qname, *config.suffixes);
    const std::size_t apex_labels = split_labels(apex).size();
    const std::size_t sub_count = labels.size() - apex_labels;

    Eigen::VectorXd f = Eigen::VectorXd::Zero(kFeatureCount);

    f[kFeatLength] = std::min(static_cast<double>(qname.size()) / config.base_length,
                              static_cast<double>(kLengthGridMax));

    if (sub_count >= 1 && labels.front() == "www") f[kFeatHasWww] = 1.0;

    bool single_char = false;
    bool all_equal = sub_count >= 2;
    for (std::size_t i = 0; i < sub_count; ++i) {
        if (labels[i].size() == 1) single_char = true;
        if (i > 0 && labels[i] != labels[0]) all_equal = false;
    }
    f[kFeatSingleCharSub] = single_char ? 1.0 : 0.0;
    f[kFeatPrefixRepetition] = all_equal ? 1.0 : 0.0;

    std::size_t digits = 0, hyphens = 0, letters = 0, vowels = 0;
    for (char c : qname) {
        if (c >= '0' && c <= '9') ++digits;
        if (c == '-') ++hyphens;
        if (c >= 'a' && c <= 'z') {
            ++letters;
            if (c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u') ++vowels;
        }
    }
    f[kFeatContainsDigits] = digits > 0 ? 1.0 : 0.0;

    f[kFeatLabelCount] = static_cast<double>(labels.size());

    std::size_t total_label_chars = 0, max_label = 0;
    for (const auto& label : labels) {
        total_label_chars += label.size();
        max_label = std::max(max_label, label.size());
    }
    f[kFeatMeanLabelLength] = static_cast<double>(total_label_chars) / static_cast<double>(labels.size());
    f[kFeatDigitRatio] = total_label_chars == 0 ? 0.0 : static_cast<double>(digits) / static_cast<double>(total_label_chars);
    f[kFeatHyphenCount] = static_cast<double>(hyphens);
    f[kFeatVowelRatio] = letters == 0 ? 0.0 : static_cast<double>(vowels) / static_cast<double>(letters);
    f[kFeatMaxLabelLength] = static_cast<double>(max_label);

    const auto tld_len = static_cast<double>(labels.back().size());
    f[kFeatTldBucket] = std::clamp(tld_len - 2.0, 0.0, 3.0);
    return f;
}

Eigen::VectorXd editable_slice(const Eigen::VectorXd& features) {
    Eigen::VectorXd out(kEditableCount);
    for (int i = 0; i < kEditableCount; ++i) out[i] = features[kEditableIndices[i]];
    return out;
}

}  // namespace minta
