// Multi-index algebra: admissibility, weight/depth/height, run-length
// decomposition, the dual involution, and sequence classification statistics.
#ifndef QZETA_MULTI_INDEX_HPP
#define QZETA_MULTI_INDEX_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qzeta {

// An ordered nonempty tuple (k_1,...,k_d) of positive integers, stored
// outermost-first (k_1 corresponds to the largest summation variable).
class MultiIndex {
public:
    explicit MultiIndex(std::vector<int> parts);
    MultiIndex(std::initializer_list<int> parts);

    // Text grammar: index := part ("," part)* ; part := INT | INT "^" INT,
    // all INT >= 1. "2,1^3" expands to (2,1,1,1).
    static MultiIndex parse(std::string_view text);

    const std::vector<int>& parts() const { return parts_; }
    int depth() const { return static_cast<int>(parts_.size()); }
    int weight() const;
    int height() const;  // number of parts >= 2
    bool admissible() const { return parts_.front() >= 2; }

    std::string to_string() const;  // plain comma-separated, no shorthand

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    friend auto operator<=>(const MultiIndex& a, const MultiIndex& b) {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
};

// Run-length form of an admissible index:
//   k = (a_1+1, {1}^{b_1-1}, ..., a_s+1, {1}^{b_s-1}),  a_i, b_i >= 1.
struct RunDecomposition {
    std::vector<std::pair<int, int>> runs;  // (a_i, b_i)
};

RunDecomposition decompose_runs(const MultiIndex& k);      // requires admissible
MultiIndex reassemble(const RunDecomposition& runs);

// The dual index (b_s+1, {1}^{a_s-1}, ..., b_1+1, {1}^{a_1-1}).
// An involution on admissible indices preserving weight.
MultiIndex dual(const MultiIndex& k);

// Builds (first, {1}^{ones}); first >= 1, ones >= 0.
MultiIndex one_padded_index(int first, int ones);

// Per-element classification data for a sequence of admissible indices.
// For elements with k_1 = 2: l = position of the first entry >= 2 after the
// leading 2 (or 1 when there is none or depth is 1), v = depth - l + 1, and
// when l >= 2 the trailing block (k_l,...,k_d) is recorded as s_parts.
// Note the l = 1 case covers indices of the form (2,{1}^{d-1}); v then counts
// the depth including the 1-parts.
struct SequenceElementStats {
    int position = 0;  // 1-based position in the input sequence
    int depth = 0;
    int weight = 0;
    bool in_n2 = false;
    std::optional<int> l;
    std::optional<int> v;
    std::vector<int> s_parts;  // nonempty only when l >= 2
};

struct SequenceStats {
    std::vector<SequenceElementStats> elements;
    // Observed value sets over the supplied prefix (sorted, deduplicated).
    std::vector<int> d_set;       // depths over N2
    std::vector<int> v_set;       // v values over N2
    std::vector<int> w_set;       // weights over N2
    std::vector<int> wprime_set;  // s_1+...+s_v over N2 with l >= 2
    // Finite prefixes are always bounded; flags state just that, with no
    // extrapolation to the infinite sequence.
    bool d_bounded_over_prefix = true;
    bool v_bounded_over_prefix = true;
    bool w_bounded_over_prefix = true;
    bool wprime_bounded_over_prefix = true;
};

SequenceStats sequence_stats(const std::vector<MultiIndex>& ks);

// All admissible indices of the given weight, lexicographic in the parts.
std::vector<MultiIndex> admissible_indices_of_weight(int weight);
// Weights 2..max_weight concatenated, each block lexicographic.
std::vector<MultiIndex> admissible_indices_up_to_weight(int max_weight);

}  // namespace qzeta

#endif
