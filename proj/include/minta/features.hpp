#pragma once

#include <Eigen/Dense>
#include <array>
#include <string_view>

#include "minta/domain_name.hpp"

namespace minta {

// Domain feature layout. The first five components are the editable set the
// attack may steer through renames; the rest are deterministic name
// statistics that give models realistic non-editable mass.
enum FeatureIndex : int {
    kFeatLength = 0,              // name length / base_length, clamped to [0, 5]
    kFeatHasWww = 1,              // leading subdomain label is exactly "www"
    kFeatSingleCharSub = 2,       // some subdomain label has length 1
    kFeatPrefixRepetition = 3,    // >= 2 subdomain labels, all identical
    kFeatContainsDigits = 4,      // any digit anywhere in the name
    kFeatLabelCount = 5,
    kFeatMeanLabelLength = 6,
    kFeatDigitRatio = 7,
    kFeatHyphenCount = 8,
    kFeatVowelRatio = 9,
    kFeatMaxLabelLength = 10,
    kFeatTldBucket = 11,
};

inline constexpr int kFeatureCount = 12;
inline constexpr int kEditableCount = 5;
inline constexpr std::array<int, kEditableCount> kEditableIndices = {0, 1, 2, 3, 4};
inline constexpr int kLengthGridMax = 5;

struct FeatureConfig {
    double base_length = 10.0;  // length feature saturates at 5 * base_length
    const SuffixList* suffixes = &SuffixList::default_list();
};

// Pure function of the name string. Subdomain labels are the labels strictly
// left of the registrable apex; the apex's own labels never count toward the
// www / single-char / repetition bits.
Eigen::VectorXd extract_features(std::string_view qname, const FeatureConfig& config = {});

// Editable slice helpers shared by the attack's projection and realization.
Eigen::VectorXd editable_slice(const Eigen::VectorXd& features);

}  // namespace minta
