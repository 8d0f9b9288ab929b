#pragma once

#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace minta {

std::vector<std::string_view> split_labels(std::string_view qname);

// Static stand-in for a public-suffix database: entries are two-label
// suffixes ("co.uk") under which the registrable apex keeps three labels.
class SuffixList {
public:
    SuffixList() = default;
    explicit SuffixList(std::set<std::string, std::less<>> two_part) : two_part_(std::move(two_part)) {}

    static const SuffixList& default_list();

    bool is_two_part_suffix(std::string_view suffix) const {
        return two_part_.count(suffix) > 0;
    }

private:
    std::set<std::string, std::less<>> two_part_;
};

// Registrable apex: last two labels, or last three when the trailing two form
// a configured two-part suffix. Throws std::invalid_argument on single-label
// names.
std::string apex_of(std::string_view qname, const SuffixList& suffixes = SuffixList::default_list());

enum class SimilarityFunctional { Jaccard, Overlap };

// Character n-gram set similarity between two names, in [0, 1]. Jaccard by
// default; Overlap (|A∩B| / min(|A|,|B|)) kept as a configurable alternative.
// Throws std::invalid_argument when n < 1 or n exceeds either name's length.
double ngram_similarity(std::string_view a, std::string_view b, int n = 2,
                        SimilarityFunctional functional = SimilarityFunctional::Jaccard);

// Sorted unique n-gram ids (n <= 4 packed into a u64). Exposed so graph
// construction can precompute per-name sets for the pairwise scan.
std::vector<std::uint64_t> ngram_set(std::string_view name, int n);

double ngram_set_similarity(const std::vector<std::uint64_t>& a,
                            const std::vector<std::uint64_t>& b,
                            SimilarityFunctional functional = SimilarityFunctional::Jaccard);

}  // namespace minta
