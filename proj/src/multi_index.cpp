#include "qzeta/multi_index.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <stdexcept>

namespace qzeta {

namespace {

constexpr int kMaxPartValue = 1'000'000;
constexpr std::size_t kMaxParts = 100'000;

[[noreturn]] void parse_fail(std::string_view token, const std::string& why) {
    throw std::invalid_argument("index parse error at token '" + std::string(token) +
                                "': " + why);
}

int parse_positive_int(std::string_view token, std::string_view full_token) {
    if (token.empty()) parse_fail(full_token, "empty integer");
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size())
        parse_fail(full_token, "not an integer");
    if (value < 1) parse_fail(full_token, "must be >= 1");
    if (value > kMaxPartValue) parse_fail(full_token, "exceeds supported range");
    return value;
}

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

}  // namespace

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw std::invalid_argument("multi-index must be nonempty");
    for (int p : parts_)
        if (p < 1) throw std::invalid_argument("multi-index parts must be >= 1");
}

MultiIndex::MultiIndex(std::initializer_list<int> parts)
    : MultiIndex(std::vector<int>(parts)) {}

MultiIndex MultiIndex::parse(std::string_view text) {
    std::vector<int> parts;
    std::string_view rest = trim(text);
    if (rest.empty()) throw std::invalid_argument("index parse error: empty input");
    while (true) {
        std::size_t comma = rest.find(',');
        std::string_view token = trim(rest.substr(0, comma));
        if (token.empty()) parse_fail(token, "empty part");
        std::size_t caret = token.find('^');
        int base = 0;
        long count = 1;
        if (caret == std::string_view::npos) {
            base = parse_positive_int(token, token);
        } else {
            base = parse_positive_int(trim(token.substr(0, caret)), token);
            count = parse_positive_int(trim(token.substr(caret + 1)), token);
        }
        if (parts.size() + static_cast<std::size_t>(count) > kMaxParts)
            parse_fail(token, "index too long");
        parts.insert(parts.end(), static_cast<std::size_t>(count), base);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
        if (trim(rest).empty())
            throw std::invalid_argument("index parse error: trailing comma");
    }
    return MultiIndex(std::move(parts));
}

int MultiIndex::weight() const {
    return std::accumulate(parts_.begin(), parts_.end(), 0);
}

int MultiIndex::height() const {
    return static_cast<int>(std::count_if(parts_.begin(), parts_.end(),
                                          [](int p) { return p >= 2; }));
}

std::string MultiIndex::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i > 0) out += ',';
        out += std::to_string(parts_[i]);
    }
    return out;
}

RunDecomposition decompose_runs(const MultiIndex& k) {
    if (!k.admissible())
        throw std::domain_error("run decomposition requires an admissible index, got (" +
                                k.to_string() + ")");
    RunDecomposition out;
    const auto& p = k.parts();
    std::size_t i = 0;
    while (i < p.size()) {
        // p[i] >= 2 here: position 0 by admissibility, later positions because
        // the preceding loop consumed the whole run of ones.
        int a = p[i] - 1;
        int b = 1;
        ++i;
        while (i < p.size() && p[i] == 1) {
            ++b;
            ++i;
        }
        out.runs.emplace_back(a, b);
    }
    return out;
}

MultiIndex reassemble(const RunDecomposition& dec) {
    std::vector<int> parts;
    for (auto [a, b] : dec.runs) {
        parts.push_back(a + 1);
        parts.insert(parts.end(), static_cast<std::size_t>(b - 1), 1);
    }
    return MultiIndex(std::move(parts));
}

MultiIndex dual(const MultiIndex& k) {
    RunDecomposition dec = decompose_runs(k);
    RunDecomposition swapped;
    for (auto it = dec.runs.rbegin(); it != dec.runs.rend(); ++it)
        swapped.runs.emplace_back(it->second, it->first);
    return reassemble(swapped);
}

MultiIndex one_padded_index(int first, int ones) {
    if (first < 1 || ones < 0)
        throw std::domain_error("one_padded_index: first >= 1 and ones >= 0 required");
    std::vector<int> parts;
    parts.reserve(static_cast<std::size_t>(ones) + 1);
    parts.push_back(first);
    parts.insert(parts.end(), static_cast<std::size_t>(ones), 1);
    return MultiIndex(std::move(parts));
}

SequenceStats sequence_stats(const std::vector<MultiIndex>& ks) {
    SequenceStats stats;
    stats.elements.reserve(ks.size());
    for (std::size_t idx = 0; idx < ks.size(); ++idx) {
        const MultiIndex& k = ks[idx];
        if (!k.admissible())
            throw std::domain_error("sequence_stats: element " + std::to_string(idx + 1) +
                                    " (" + k.to_string() + ") is not admissible");
        SequenceElementStats e;
        e.position = static_cast<int>(idx + 1);
        e.depth = k.depth();
        e.weight = k.weight();
        e.in_n2 = (k.parts().front() == 2);
        if (e.in_n2) {
            int l = 1;
            if (e.depth >= 2) {
                for (int i = 2; i <= e.depth; ++i) {
                    if (k.parts()[static_cast<std::size_t>(i - 1)] >= 2) {
                        l = i;
                        break;
                    }
                }
            }
            e.l = l;
            e.v = e.depth - l + 1;
            if (l >= 2)
                e.s_parts.assign(k.parts().begin() + (l - 1), k.parts().end());
            stats.d_set.push_back(e.depth);
            stats.v_set.push_back(*e.v);
            stats.w_set.push_back(e.weight);
            if (l >= 2)
                stats.wprime_set.push_back(
                    std::accumulate(e.s_parts.begin(), e.s_parts.end(), 0));
        }
        stats.elements.push_back(std::move(e));
    }
    for (auto* set : {&stats.d_set, &stats.v_set, &stats.w_set, &stats.wprime_set}) {
        std::sort(set->begin(), set->end());
        set->erase(std::unique(set->begin(), set->end()), set->end());
    }
    return stats;
}

std::vector<MultiIndex> admissible_indices_of_weight(int weight) {
    std::vector<MultiIndex> out;
    if (weight < 2) return out;
    // Compositions of `weight` with first part >= 2, lexicographic.
    std::vector<int> current;
    auto extend = [&](auto&& self, int remaining) -> void {
        if (remaining == 0) {
            out.emplace_back(current);
            return;
        }
        for (int next = 1; next <= remaining; ++next) {
            current.push_back(next);
            self(self, remaining - next);
            current.pop_back();
        }
    };
    for (int first = 2; first <= weight; ++first) {
        current.push_back(first);
        extend(extend, weight - first);
        current.pop_back();
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<MultiIndex> admissible_indices_up_to_weight(int max_weight) {
    std::vector<MultiIndex> out;
    for (int w = 2; w <= max_weight; ++w) {
        auto block = admissible_indices_of_weight(w);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

}  // namespace qzeta
