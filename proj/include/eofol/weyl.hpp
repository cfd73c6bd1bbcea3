#pragma once

// (n,m)-shuffles in the symmetric group, the Bruhat order, the EO order and
// the stratum poset with its closed-form statistics.

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace eofol {

/// One-line notation, 1-based: images()[i-1] = w(i).
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> images);

    static Permutation identity(std::size_t n);
    /// "561234", or comma separated ("1,2,...,10") for any size.
    static Permutation parse(std::string_view text);

    std::size_t size() const { return images_.size(); }
    int operator()(int i) const { return images_[static_cast<std::size_t>(i - 1)]; }
    const std::vector<int>& images() const { return images_; }

    Permutation inverse() const;
    /// (this * o)(i) = this(o(i))
    Permutation operator*(const Permutation& o) const;
    std::size_t inversions() const;

    /// Digits when size <= 9, comma separated otherwise.
    std::string to_string() const;

    auto operator<=>(const Permutation&) const = default;

private:
    std::vector<int> images_;
};

class ShuffleLabel {
public:
    ShuffleLabel(Permutation w, int n, int m);

    const Permutation& w() const { return w_; }
    int n() const { return n_; }
    int m() const { return m_; }

    bool operator==(const ShuffleLabel&) const = default;

private:
    Permutation w_;
    int n_;
    int m_;
};

struct StratumInfo {
    ShuffleLabel label;
    int length = 0;
    int a_sigma = 0;
    bool in_s_sharp = false;
    bool is_fol = false;
    bool is_ordinary = false;
    int fiber_dim = 0;

    bool operator==(const StratumInfo&) const = default;
};

struct StratumPoset {
    int n = 0;
    int m = 0;
    std::vector<StratumInfo> nodes;
    /// Node index pairs (larger, smaller).
    std::vector<std::pair<std::size_t, std::size_t>> covers;

    bool operator==(const StratumPoset&) const = default;
};

struct SpecialElements {
    Permutation identity;
    Permutation longest;
    Permutation w_fol;
    Permutation w_0J;
};

inline constexpr int default_shuffle_bound = 12;
inline constexpr std::uint64_t default_eo_search_bound = 1'000'000;

std::vector<ShuffleLabel> enumerate_shuffles(int n, int m, int bound = default_shuffle_bound);
bool is_shuffle(const Permutation& w, int n, int m);

/// sum_{i<=n} (w^{-1}(i) - i)
int shuffle_length(const ShuffleLabel& s);
/// |{ i <= n : w^{-1}(i) <= n }|
int a_sigma(const ShuffleLabel& s);

/// Tableau criterion: sorted prefixes of u are entrywise below those of v.
bool bruhat_leq(const Permutation& u, const Permutation& v);

/// w1 below w2 in the EO order: some y in S_n x S_m has
/// y w1 w_0J y^{-1} w_0J <= w2 in the Bruhat order.
bool eo_leq(const ShuffleLabel& w1, const ShuffleLabel& w2,
            std::uint64_t search_bound = default_eo_search_bound);

StratumPoset eo_poset(int n, int m, std::uint64_t search_bound = default_eo_search_bound);

/// The block-reversal w_0J, the foliation stratum label w_fol and the
/// longest shuffle. Requires 1 <= m < n.
SpecialElements special_elements(int n, int m);
Permutation w_fol(int n, int m);
Permutation w_0J(int n, int m);

StratumInfo stratum_info(const ShuffleLabel& s);

/// Transitive closure of a cover list over `count` nodes, as an adjacency
/// matrix: reach[a][b] means a strictly above b.
std::vector<std::vector<bool>> transitive_closure(std::size_t count,
                                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges);

std::string poset_to_dot(const StratumPoset& poset);
nlohmann::json poset_to_json(const StratumPoset& poset);
StratumPoset poset_from_json(const nlohmann::json& j);
nlohmann::json stratum_to_json(const StratumInfo& info);

}  // namespace eofol
