#include "minta/domain_name.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace minta {

std::vector<std::string_view> split_labels(std::string_view qname) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= qname.size(); ++i) {
        if (i == qname.size() || qname[i] == '.') {
            labels.push_back(qname.substr(start, i - start));
            start = i + 1;
        }
    }
    return labels;
}

const SuffixList& SuffixList::default_list() {
    static const SuffixList instance(std::set<std::string, std::less<>>{
        "co.uk", "ac.uk", "org.uk", "gov.uk",
        "com.au", "net.au", "org.au",
        "co.jp", "ne.jp", "or.jp",
        "com.cn", "net.cn", "org.cn",
        "com.br", "net.br",
        "co.in", "co.za", "co.nz",
    });
    return instance;
}

std::string apex_of(std::string_view qname, const SuffixList& suffixes) {
    const auto labels = split_labels(qname);
    if (labels.size() < 2) {
        throw std::invalid_argument("apex_of: single-label name '" + std::string(qname) + "'");
    }
    const std::string last_two = std::string(labels[labels.size() - 2]) + "." + std::string(labels.back());
    std::size_t keep = 2;
    if (suffixes.is_two_part_suffix(last_two) && labels.size() >= 3) {
        keep = 3;
    }
    std::string apex;
    for (std::size_t i = labels.size() - keep; i < labels.size(); ++i) {
        if (!apex.empty()) apex += '.';
        apex += std::string(labels[i]);
    }
    return apex;
}

std::vector<std::uint64_t> ngram_set(std::string_view name, int n) {
    if (n < 1) throw std::invalid_argument("ngram_set: n must be >= 1");
    if (static_cast<std::size_t>(n) > name.size()) {
        throw std::invalid_argument("ngram_set: n exceeds length of '" + std::string(name) + "'");
    }
    if (n > 8) throw std::invalid_argument("ngram_set: n > 8 unsupported");
    std::vector<std::uint64_t> grams;
    grams.reserve(name.size() - n + 1);
    for (std::size_t i = 0; i + n <= name.size(); ++i) {
        std::uint64_t packed = 0;
        for (int k = 0; k < n; ++k) {
            packed = (packed << 8) | static_cast<unsigned char>(name[i + k]);
        }
        grams.push_back(packed);
    }
    std::sort(grams.begin(), grams.end());
    grams.erase(std::unique(grams.begin(), grams.end()), grams.end());
    return grams;
}

double ngram_set_similarity(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b,
                            SimilarityFunctional functional) {
    std::size_t inter = 0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] == b[j]) {
            ++inter;
            ++i;
            ++j;
        } else if (a[i] < b[j]) {
            ++i;
        } else {
            ++j;
        }
    }
    if (functional == SimilarityFunctional::Overlap) {
        const std::size_t denom = std::min(a.size(), b.size());
        return denom == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(denom);
    }
    const std::size_t uni = a.size() + b.size() - inter;
    return uni == 0 ? 0.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

double ngram_similarity(std::string_view a, std::string_view b, int n, SimilarityFunctional functional) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ngram_similarity: empty name");
    return ngram_set_similarity(ngram_set(a, n), ngram_set(b, n), functional);
}

}  // namespace minta
