#include "eofol/weyl.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "eofol/gf.hpp"

namespace eofol {

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
    std::vector<bool> seen(images_.size() + 1, false);
    for (int x : images_) {
        if (x < 1 || static_cast<std::size_t>(x) > images_.size() || seen[static_cast<std::size_t>(x)]) {
            throw std::invalid_argument("Permutation: not a bijection of {1..N}");
        }
        seen[static_cast<std::size_t>(x)] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 1);
    return Permutation(std::move(v));
}

Permutation Permutation::parse(std::string_view text) {
    std::vector<int> v;
    if (text.find(',') != std::string_view::npos) {
        std::string token;
        std::istringstream is{std::string(text)};
        while (std::getline(is, token, ',')) {
            if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos) {
                throw std::invalid_argument("Permutation::parse: bad entry '" + token + "'");
            }
            v.push_back(std::stoi(token));
        }
    } else {
        for (char ch : text) {
            if (ch < '1' || ch > '9') throw std::invalid_argument("Permutation::parse: bad digit in '" + std::string(text) + "'");
            v.push_back(ch - '0');
        }
    }
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    std::vector<int> inv(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i] - 1)] = static_cast<int>(i + 1);
    return Permutation(std::move(inv));
}

Permutation Permutation::operator*(const Permutation& o) const {
    if (o.size() != size()) throw std::invalid_argument("Permutation: size mismatch in product");
    std::vector<int> r(size());
    for (std::size_t i = 0; i < size(); ++i) r[i] = images_[static_cast<std::size_t>(o.images_[i] - 1)];
    return Permutation(std::move(r));
}

std::size_t Permutation::inversions() const {
    std::size_t count = 0;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        for (std::size_t j = i + 1; j < images_.size(); ++j) count += images_[i] > images_[j];
    }
    return count;
}

std::string Permutation::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_.size() > 9 && i > 0) out += ',';
        out += std::to_string(images_[i]);
    }
    return out;
}

bool is_shuffle(const Permutation& w, int n, int m) {
    if (n < 1 || m < 0 || static_cast<int>(w.size()) != n + m) return false;
    Permutation inv = w.inverse();
    for (int i = 1; i < n; ++i) {
        if (inv(i) > inv(i + 1)) return false;
    }
    for (int i = n + 1; i < n + m; ++i) {
        if (inv(i) > inv(i + 1)) return false;
    }
    return true;
}

ShuffleLabel::ShuffleLabel(Permutation w, int n, int m) : w_(std::move(w)), n_(n), m_(m) {
    if (n < 1 || m < 0 || m >= n) throw std::invalid_argument("ShuffleLabel: need 0 <= m < n");
    if (!is_shuffle(w_, n, m)) {
        throw std::invalid_argument("ShuffleLabel: " + w_.to_string() + " is not an (" + std::to_string(n) + "," +
                                    std::to_string(m) + ")-shuffle");
    }
}

std::vector<ShuffleLabel> enumerate_shuffles(int n, int m, int bound) {
    if (m < 0 || m >= n) throw std::invalid_argument("enumerate_shuffles: need 0 <= m < n");
    if (n + m > bound) {
        throw std::invalid_argument("enumerate_shuffles: n+m = " + std::to_string(n + m) + " exceeds bound " +
                                    std::to_string(bound));
    }
    const int total = n + m;
    // Choose the positions holding n+1..n+m; the rest hold 1..n in order.
    std::vector<bool> second(static_cast<std::size_t>(total), false);
    std::fill(second.end() - m, second.end(), true);
    std::vector<ShuffleLabel> out;
    do {
        std::vector<int> img(static_cast<std::size_t>(total));
        int lo = 1, hi = n + 1;
        for (std::size_t pos = 0; pos < img.size(); ++pos) img[pos] = second[pos] ? hi++ : lo++;
        out.emplace_back(Permutation(std::move(img)), n, m);
    } while (std::next_permutation(second.begin(), second.end()));
    std::sort(out.begin(), out.end(), [](const ShuffleLabel& a, const ShuffleLabel& b) { return a.w() < b.w(); });
    return out;
}

int shuffle_length(const ShuffleLabel& s) {
    Permutation inv = s.w().inverse();
    int total = 0;
    for (int i = 1; i <= s.n(); ++i) total += inv(i) - i;
    return total;
}

int a_sigma(const ShuffleLabel& s) {
    Permutation inv = s.w().inverse();
    int count = 0;
    for (int i = 1; i <= s.n(); ++i) count += inv(i) <= s.n();
    return count;
}

bool bruhat_leq(const Permutation& u, const Permutation& v) {
    if (u.size() != v.size()) throw std::invalid_argument("bruhat_leq: size mismatch");
    std::vector<int> pu, pv;
    for (std::size_t k = 0; k < u.size(); ++k) {
        pu.insert(std::upper_bound(pu.begin(), pu.end(), u.images()[k]), u.images()[k]);
        pv.insert(std::upper_bound(pv.begin(), pv.end(), v.images()[k]), v.images()[k]);
        for (std::size_t i = 0; i <= k; ++i) {
            if (pu[i] > pv[i]) return false;
        }
    }
    return true;
}

namespace {

std::uint64_t factorial_capped(int n, std::uint64_t cap) {
    std::uint64_t f = 1;
    for (int i = 2; i <= n; ++i) {
        f *= static_cast<std::uint64_t>(i);
        if (f > cap) return cap + 1;
    }
    return f;
}

void check_search_bound(int n, int m, std::uint64_t bound) {
    std::uint64_t a = factorial_capped(n, bound);
    std::uint64_t b = factorial_capped(m, bound);
    if (a > bound || b > bound || a * b > bound) {
        throw std::invalid_argument("eo_leq: |S_n x S_m| for (" + std::to_string(n) + "," + std::to_string(m) +
                                    ") exceeds search bound " + std::to_string(bound));
    }
}

}  // namespace

Permutation w_0J(int n, int m) {
    std::vector<int> img;
    for (int i = n; i >= 1; --i) img.push_back(i);
    for (int i = n + m; i > n; --i) img.push_back(i);
    return Permutation(std::move(img));
}

bool eo_leq(const ShuffleLabel& w1, const ShuffleLabel& w2, std::uint64_t search_bound) {
    if (w1.n() != w2.n() || w1.m() != w2.m()) throw std::invalid_argument("eo_leq: signature mismatch");
    const int n = w1.n(), m = w1.m();
    check_search_bound(n, m, search_bound);
    if (bruhat_leq(w1.w(), w2.w())) return true;

    const Permutation w0 = w_0J(n, m);
    std::vector<int> head(static_cast<std::size_t>(n)), tail(static_cast<std::size_t>(m));
    std::iota(head.begin(), head.end(), 1);
    std::iota(tail.begin(), tail.end(), n + 1);
    do {
        do {
            std::vector<int> img = head;
            img.insert(img.end(), tail.begin(), tail.end());
            Permutation y(std::move(img));
            if (bruhat_leq(y * w1.w() * w0 * y.inverse() * w0, w2.w())) return true;
        } while (std::next_permutation(tail.begin(), tail.end()));
    } while (std::next_permutation(head.begin(), head.end()));
    return false;
}

std::vector<std::vector<bool>> transitive_closure(std::size_t count,
                                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<bool>> reach(count, std::vector<bool>(count, false));
    for (auto [a, b] : edges) reach.at(a).at(b) = true;
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t i = 0; i < count; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < count; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }
    return reach;
}

StratumPoset eo_poset(int n, int m, std::uint64_t search_bound) {
    check_search_bound(n, m, search_bound);
    auto labels = enumerate_shuffles(n, m);
    StratumPoset poset{n, m, {}, {}};
    for (const auto& s : labels) poset.nodes.push_back(stratum_info(s));

    const std::size_t k = labels.size();
    std::vector<std::vector<bool>> below(k, std::vector<bool>(k, false));  // below[a][b]: b < a strictly
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (a != b) below[a][b] = eo_leq(labels[b], labels[a], search_bound);
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = a + 1; b < k; ++b) {
            if (below[a][b] && below[b][a]) {
                throw assertion_error("eo_poset: EO relation not antisymmetric on " + labels[a].w().to_string() +
                                      ", " + labels[b].w().to_string());
            }
        }
    }
    for (std::size_t a = 0; a < k; ++a) {
        for (std::size_t b = 0; b < k; ++b) {
            if (!below[a][b]) continue;
            if (poset.nodes[a].length <= poset.nodes[b].length) {
                throw assertion_error("eo_poset: relation does not decrease length at " + labels[a].w().to_string());
            }
            bool implied = false;
            for (std::size_t c = 0; c < k && !implied; ++c) implied = below[a][c] && below[c][b];
            if (!implied) poset.covers.emplace_back(a, b);
        }
    }
    return poset;
}

Permutation w_fol(int n, int m) {
    std::vector<int> img;
    for (int i = 1; i <= n - m; ++i) img.push_back(i);
    for (int i = n + 1; i <= n + m; ++i) img.push_back(i);
    for (int i = n - m + 1; i <= n; ++i) img.push_back(i);
    return Permutation(std::move(img));
}

SpecialElements special_elements(int n, int m) {
    if (m < 1 || m >= n) throw std::invalid_argument("special_elements: need 1 <= m < n");
    std::vector<int> longest;
    for (int i = n + 1; i <= n + m; ++i) longest.push_back(i);
    for (int i = 1; i <= n; ++i) longest.push_back(i);
    return {Permutation::identity(static_cast<std::size_t>(n + m)), Permutation(std::move(longest)), w_fol(n, m),
            w_0J(n, m)};
}

StratumInfo stratum_info(const ShuffleLabel& s) {
    const int n = s.n(), m = s.m();
    StratumInfo info{s};
    info.length = shuffle_length(s);
    info.a_sigma = a_sigma(s);
    info.in_s_sharp = info.a_sigma == n - m;
    Permutation inv = s.w().inverse();
    bool by_positions = true;
    for (int j = 1; j <= m; ++j) by_positions = by_positions && inv(n - m + j) == n + j;
    if (by_positions != info.in_s_sharp) {
        throw assertion_error("stratum_info: S_sharp criteria disagree on " + s.w().to_string());
    }
    info.is_fol = s.w() == w_fol(n, m);
    info.is_ordinary = info.length == n * m;
    info.fiber_dim = (n - m) * (info.a_sigma - n + m);
    return info;
}

std::string poset_to_dot(const StratumPoset& poset) {
    std::ostringstream os;
    os << "digraph eo_strata_" << poset.n << "_" << poset.m << " {\n";
    os << "  rankdir=TB;\n  node [shape=box];\n";
    std::map<int, std::vector<std::size_t>, std::greater<>> by_length;
    for (std::size_t i = 0; i < poset.nodes.size(); ++i) by_length[poset.nodes[i].length].push_back(i);
    for (const auto& [len, idx] : by_length) {
        os << "  { rank=same;";
        for (auto i : idx) os << " \"" << poset.nodes[i].label.w().to_string() << "\";";
        os << " }\n";
    }
    for (const auto& node : poset.nodes) {
        const std::string w = node.label.w().to_string();
        os << "  \"" << w << "\" [label=\"" << w << "\\n\u2113=" << node.length << "\"";
        if (node.in_s_sharp) os << ", style=filled, fillcolor=lightgray";
        os << "];\n";
    }
    for (auto [a, b] : poset.covers) {
        os << "  \"" << poset.nodes[a].label.w().to_string() << "\" -> \"" << poset.nodes[b].label.w().to_string()
           << "\";\n";
    }
    os << "}\n";
    return os.str();
}

nlohmann::json stratum_to_json(const StratumInfo& info) {
    return {{"w", info.label.w().to_string()}, {"length", info.length},         {"a_sigma", info.a_sigma},
            {"in_s_sharp", info.in_s_sharp},   {"is_fol", info.is_fol},         {"fiber_dim", info.fiber_dim}};
}

nlohmann::json poset_to_json(const StratumPoset& poset) {
    nlohmann::json strata = nlohmann::json::array();
    for (const auto& node : poset.nodes) strata.push_back(stratum_to_json(node));
    nlohmann::json covers = nlohmann::json::array();
    for (auto [a, b] : poset.covers) {
        covers.push_back({poset.nodes[a].label.w().to_string(), poset.nodes[b].label.w().to_string()});
    }
    return {{"n", poset.n}, {"m", poset.m}, {"strata", strata}, {"covers", covers}};
}

StratumPoset poset_from_json(const nlohmann::json& j) {
    StratumPoset poset{j.at("n").get<int>(), j.at("m").get<int>(), {}, {}};
    std::map<std::string, std::size_t> index;
    for (const auto& s : j.at("strata")) {
        ShuffleLabel label(Permutation::parse(s.at("w").get<std::string>()), poset.n, poset.m);
        StratumInfo info = stratum_info(label);
        if (stratum_to_json(info) != s) {
            throw std::invalid_argument("poset_from_json: inconsistent statistics for " + label.w().to_string());
        }
        index.emplace(label.w().to_string(), poset.nodes.size());
        poset.nodes.push_back(std::move(info));
    }
    for (const auto& c : j.at("covers")) {
        poset.covers.emplace_back(index.at(c.at(0).get<std::string>()), index.at(c.at(1).get<std::string>()));
    }
    return poset;
}

}  // namespace eofol
