#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "minta/features.hpp"

using namespace minta;
using doctest::Approx;

namespace {
std::array<int, 4> editable_bits(const Eigen::VectorXd& f) {
    return {static_cast<int>(f[kFeatHasWww]), static_cast<int>(f[kFeatSingleCharSub]),
            static_cast<int>(f[kFeatPrefixRepetition]), static_cast<int>(f[kFeatContainsDigits])};
}
}  // namespace

TEST_CASE("www sibling name has bits 1100") {
    const auto f = extract_features("www.b.rwth-aachen.de");
    CHECK(editable_bits(f) == std::array<int, 4>{1, 1, 0, 0});
}

TEST_CASE("repeated-prefix digit name has bits 0011") {
    const auto f = extract_features("bnxd3.bnxd3.rwth-aachen.cis");
    CHECK(editable_bits(f) == std::array<int, 4>{0, 0, 1, 1});
}

TEST_CASE("the apex's own leftmost label is not a subdomain") {
    const auto f = extract_features("a.com");
    CHECK(f[kFeatSingleCharSub] == 0.0);
    CHECK(f[kFeatHasWww] == 0.0);
    CHECK(f[kFeatContainsDigits] == 0.0);
    CHECK(f[kFeatPrefixRepetition] == 0.0);
}

TEST_CASE("www as part of the apex does not count as a prefix") {
    CHECK(extract_features("www.com")[kFeatHasWww] == 0.0);
    CHECK(extract_features("www.example.com")[kFeatHasWww] == 1.0);
}

TEST_CASE("length feature is affine and clamps at five base lengths") {
    FeatureConfig config;
    config.base_length = 10.0;
    CHECK(extract_features("ab.cd.ef.gh", config)[kFeatLength] == Approx(1.1));  // 11 chars
    // 60 chars >= 5 * base_length -> clamped to 5.
    const std::string long_name = std::string(55, 'a') + ".com";  // 59 chars total
    CHECK(extract_features(long_name, config)[kFeatLength] == Approx(5.0));
}

TEST_CASE("non-editable stats are deterministic functions of the name") {
    const auto f = extract_features("ab1-x.cde.org");
    CHECK(f[kFeatLabelCount] == Approx(3.0));
    CHECK(f[kFeatMeanLabelLength] == Approx(11.0 / 3.0));  // 5 + 3 + 3 chars
    CHECK(f[kFeatDigitRatio] == Approx(1.0 / 11.0));
    CHECK(f[kFeatHyphenCount] == Approx(1.0));
    CHECK(f[kFeatMaxLabelLength] == Approx(5.0));
    CHECK(f[kFeatTldBucket] == Approx(1.0));  // |org| - 2
    // vowels: a, e, o over letters a,b,x,c,d,e,o,r,g
    CHECK(f[kFeatVowelRatio] == Approx(3.0 / 9.0));
}

TEST_CASE("extraction is pure") {
    const auto a = extract_features("x7.x7.evil-corp.net");
    const auto b = extract_features("x7.x7.evil-corp.net");
    CHECK(a == b);
    CHECK(a.allFinite());
}

TEST_CASE("binary components are exactly zero or one") {
    for (const auto* name : {"www.a.b.com", "q3z.t.co.uk", "x.x.x.org", "plain.net"}) {
        const auto f = extract_features(name);
        for (int idx : {kFeatHasWww, kFeatSingleCharSub, kFeatPrefixRepetition, kFeatContainsDigits}) {
            CHECK((f[idx] == 0.0 || f[idx] == 1.0));
        }
    }
}
