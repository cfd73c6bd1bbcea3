#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "eofol/weyl.hpp"
#include "figure1.hpp"
#include "oracles.hpp"

using namespace eofol;

namespace {

ShuffleLabel lab(const char* w, int n, int m) { return ShuffleLabel(Permutation::parse(w), n, m); }

std::uint64_t binom(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

std::size_t index_of(const StratumPoset& p, std::string_view w) {
    for (std::size_t i = 0; i < p.nodes.size(); ++i) {
        if (p.nodes[i].label.w().to_string() == w) return i;
    }
    FAIL("missing node " << w);
    return 0;
}

}  // namespace

TEST_CASE("permutation basics") {
    auto w = Permutation::parse("561234");
    CHECK(w(1) == 5);
    CHECK(w.inverse()(5) == 1);
    CHECK((w * w.inverse()) == Permutation::identity(6));
    CHECK(Permutation::parse("1,2,3") == Permutation::parse("123"));
    CHECK(Permutation::identity(10).to_string() == "1,2,3,4,5,6,7,8,9,10");
    CHECK_THROWS(Permutation::parse("113"));
    CHECK_THROWS(Permutation::parse("124"));
    CHECK_THROWS(ShuffleLabel(Permutation::parse("213"), 2, 1));
    CHECK_THROWS(ShuffleLabel(Permutation::parse("123"), 1, 2));
}

TEST_CASE("enumerate_shuffles examples") {
    CHECK(enumerate_shuffles(4, 2).size() == 15);
    auto e = enumerate_shuffles(5, 0);
    REQUIRE(e.size() == 1);
    CHECK(e[0].w() == Permutation::identity(5));
    std::vector<std::string> got;
    for (const auto& s : enumerate_shuffles(2, 1)) got.push_back(s.w().to_string());
    CHECK(got == std::vector<std::string>{"123", "132", "312"});
    CHECK_THROWS(enumerate_shuffles(2, 2));
    CHECK_THROWS(enumerate_shuffles(8, 5));
}

TEST_CASE("enumerate_shuffles matches the definition, in lexicographic order") {
    for (int n = 1; n <= 8; ++n) {
        for (int m = 0; m < n && n + m <= 9; ++m) {
            std::vector<oracle::Perm> expected;
            if (n + m <= 8) {
                for (const auto& w : oracle::all_perms(n + m)) {
                    if (oracle::is_shuffle(w, n)) expected.push_back(w);
                }
            }
            const auto got = enumerate_shuffles(n, m);
            CHECK(got.size() == binom(n + m, m));
            if (n + m <= 8) {
                REQUIRE(got.size() == expected.size());
                for (std::size_t i = 0; i < got.size(); ++i) CHECK(got[i].w().images() == expected[i]);
            }
        }
    }
}

TEST_CASE("length and a_sigma") {
    CHECK(shuffle_length(lab("123456", 4, 2)) == 0);
    CHECK(shuffle_length(lab("561234", 4, 2)) == 8);
    CHECK(shuffle_length(lab("125634", 4, 2)) == 4);
    CHECK(a_sigma(lab("123456", 4, 2)) == 4);
    CHECK(a_sigma(lab("561234", 4, 2)) == 2);
    CHECK(a_sigma(lab("512346", 4, 2)) == 3);

    for (int n = 1; n <= 8; ++n) {
        for (int m = 0; m < n && n + m <= 9; ++m) {
            for (const auto& s : enumerate_shuffles(n, m)) {
                CHECK(shuffle_length(s) == oracle::inversions(s.w().images()));
                CHECK(a_sigma(s) >= n - m);
                CHECK(a_sigma(s) <= n);
            }
        }
    }
}

TEST_CASE("bruhat_leq examples") {
    CHECK(bruhat_leq(Permutation::identity(4), Permutation::parse("3142")));
    CHECK(bruhat_leq(Permutation::parse("132"), Permutation::parse("312")));
    CHECK_FALSE(bruhat_leq(Permutation::parse("312"), Permutation::parse("132")));
    CHECK_THROWS(bruhat_leq(Permutation::parse("12"), Permutation::parse("123")));
}

TEST_CASE("bruhat_leq agrees with the reflection-closure oracle for N <= 6") {
    for (int N = 1; N <= 6; ++N) {
        const auto up = oracle::bruhat_upper_sets(N);
        std::size_t pairs = 0;
        for (const auto& [u, ups] : up) {
            for (const auto& [v, unused] : up) {
                ++pairs;
                if (bruhat_leq(Permutation(u), Permutation(v)) != static_cast<bool>(ups.count(v))) {
                    FAIL_CHECK("mismatch at N=" << N);
                }
            }
        }
        if (N == 5) CHECK(pairs == 14400);
    }
}

TEST_CASE("eo_leq examples") {
    auto w = lab("152634", 4, 2);
    CHECK(eo_leq(w, w));
    CHECK(eo_leq(lab("125634", 4, 2), lab("152634", 4, 2)));
    CHECK(eo_leq(lab("512346", 4, 2), lab("512634", 4, 2)));
    CHECK_FALSE(eo_leq(lab("512634", 4, 2), lab("512346", 4, 2)));
    CHECK_THROWS(eo_leq(w, w, 10));
}

TEST_CASE("eo order is a partial order containing the Bruhat order (n+m <= 7)") {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m < n && n + m <= 7; ++m) {
            const auto sh = enumerate_shuffles(n, m);
            const std::size_t N = sh.size();
            std::vector<std::vector<bool>> le(N, std::vector<bool>(N));
            for (std::size_t i = 0; i < N; ++i) {
                for (std::size_t j = 0; j < N; ++j) le[i][j] = eo_leq(sh[i], sh[j]);
            }
            for (std::size_t i = 0; i < N; ++i) {
                CHECK(le[i][i]);
                for (std::size_t j = 0; j < N; ++j) {
                    if (i != j && le[i][j]) CHECK_FALSE(le[j][i]);
                    if (bruhat_leq(sh[i].w(), sh[j].w())) CHECK(le[i][j]);
                    if (!le[i][j]) continue;
                    for (std::size_t k = 0; k < N; ++k) {
                        if (le[j][k]) CHECK(le[i][k]);
                    }
                }
            }
        }
    }
}

TEST_CASE("Figure 1 poset") {
    const auto p = eo_poset(4, 2);
    REQUIRE(p.nodes.size() == 15);
    std::vector<int> lengths;
    for (const auto& s : p.nodes) lengths.push_back(s.length);
    std::sort(lengths.rbegin(), lengths.rend());
    CHECK(std::equal(lengths.begin(), lengths.end(), fixture::figure1_lengths.begin()));

    std::vector<std::pair<std::size_t, std::size_t>> golden;
    for (const auto& [a, b] : fixture::figure1_edges) golden.emplace_back(index_of(p, a), index_of(p, b));
    CHECK(transitive_closure(15, golden) == transitive_closure(15, p.covers));

    std::set<std::pair<std::size_t, std::size_t>> got(p.covers.begin(), p.covers.end()), want(golden.begin(), golden.end());
    CHECK(got == want);
}

TEST_CASE("small posets") {
    const auto chain = eo_poset(2, 1);
    REQUIRE(chain.nodes.size() == 3);
    std::set<std::pair<std::string, std::string>> edges;
    for (auto [a, b] : chain.covers) edges.emplace(chain.nodes[a].label.w().to_string(), chain.nodes[b].label.w().to_string());
    CHECK(edges == std::set<std::pair<std::string, std::string>>{{"312", "132"}, {"132", "123"}});
    const auto single = eo_poset(4, 0);
    CHECK(single.nodes.size() == 1);
    CHECK(single.covers.empty());
}

TEST_CASE("poset structure for n+m <= 7") {
    for (int n = 2; n <= 6; ++n) {
        for (int m = 1; m < n && n + m <= 7; ++m) {
            const auto p = eo_poset(n, m);
            std::set<std::size_t> below, above;
            for (auto [a, b] : p.covers) {
                below.insert(b);
                above.insert(a);
                CHECK(p.nodes[a].length > p.nodes[b].length);
            }
            std::vector<std::size_t> maxima, minima;
            for (std::size_t i = 0; i < p.nodes.size(); ++i) {
                if (!below.count(i)) maxima.push_back(i);
                if (!above.count(i)) minima.push_back(i);
            }
            REQUIRE(maxima.size() == 1);
            REQUIRE(minima.size() == 1);
            CHECK(p.nodes[maxima[0]].length == n * m);
            CHECK(p.nodes[maxima[0]].label.w() == special_elements(n, m).longest);
            CHECK(p.nodes[minima[0]].label.w() == Permutation::identity(static_cast<std::size_t>(n + m)));
            if (m == 1) CHECK(p.covers.size() == static_cast<std::size_t>(n));

            // S# members and the unique minimal one
            std::vector<std::size_t> sharp;
            for (std::size_t i = 0; i < p.nodes.size(); ++i) {
                if (p.nodes[i].in_s_sharp) sharp.push_back(i);
            }
            CHECK(sharp.size() == binom(n, m));
            std::size_t minimal = 0;
            for (auto i : sharp) {
                bool is_min = true;
                for (auto j : sharp) is_min = is_min && (i == j || !eo_leq(p.nodes[j].label, p.nodes[i].label));
                if (is_min) {
                    ++minimal;
                    CHECK(p.nodes[i].label.w() == w_fol(n, m));
                    CHECK(p.nodes[i].length == m * m);
                    CHECK(p.nodes[i].is_fol);
                }
            }
            CHECK(minimal == 1);
        }
    }
}

TEST_CASE("special elements and stratum_info") {
    const auto se = special_elements(4, 2);
    CHECK(se.w_fol.to_string() == "125634");
    CHECK(se.w_0J.to_string() == "432165");
    CHECK(se.longest.to_string() == "561234");
    CHECK(shuffle_length(ShuffleLabel(se.longest, 4, 2)) == 8);

    const auto fol = stratum_info(lab("125634", 4, 2));
    CHECK(fol.in_s_sharp);
    CHECK(fol.is_fol);
    CHECK(fol.fiber_dim == 0);
    CHECK(fol.length == 4);
    const auto id = stratum_info(lab("123456", 4, 2));
    CHECK(id.fiber_dim == 4);
    CHECK_FALSE(id.in_s_sharp);
    for (int n = 2; n <= 8; ++n) CHECK(stratum_info(ShuffleLabel(Permutation::identity(n + 1), n, 1)).fiber_dim == n - 1);

    for (int n = 2; n <= 7; ++n) {
        for (int m = 1; m < n && n + m <= 9; ++m) {
            for (const auto& s : enumerate_shuffles(n, m)) {
                const auto info = stratum_info(s);
                CHECK(info.fiber_dim == (n - m) * (info.a_sigma - n + m));
                CHECK(info.in_s_sharp == (info.a_sigma == n - m));
                CHECK(info.length <= n * m);
                CHECK(info.is_ordinary == (info.length == n * m));
            }
        }
    }
}

TEST_CASE("poset JSON round trip and DOT shape") {
    for (int n = 1; n <= 6; ++n) {
        for (int m = 0; m < n && n + m <= 7; ++m) {
            const auto p = eo_poset(n, m);
            const auto j = poset_to_json(p);
            CHECK(poset_from_json(nlohmann::json::parse(j.dump())) == p);

            const std::string dot = poset_to_dot(p);
            CHECK(dot.rfind("digraph", 0) == 0);
            CHECK(std::count(dot.begin(), dot.end(), '{') == std::count(dot.begin(), dot.end(), '}'));
            CHECK(std::count(dot.begin(), dot.end(), '"') % 2 == 0);
            std::size_t arrows = 0;
            for (std::size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) ++arrows;
            CHECK(arrows == p.covers.size());
            for (const auto& s : p.nodes) CHECK(dot.find("\"" + s.label.w().to_string() + "\"") != std::string::npos);
        }
    }
    const std::string dot = poset_to_dot(eo_poset(4, 2));
    std::size_t ranks = 0;
    for (std::size_t pos = dot.find("rank=same"); pos != std::string::npos; pos = dot.find("rank=same", pos + 1)) ++ranks;
    CHECK(ranks == 9);
}

TEST_CASE("poset_from_json rejects tampered statistics") {
    auto j = poset_to_json(eo_poset(3, 1));
    j["strata"][0]["length"] = 7;
    CHECK_THROWS(poset_from_json(j));
}
