#include "eofol/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "eofol/counting.hpp"
#include "eofol/deformation.hpp"
#include "eofol/dieudonne.hpp"
#include "eofol/gf.hpp"
#include "eofol/weyl.hpp"

namespace eofol::cli {

namespace {

using nlohmann::json;

struct Options {
    int n = 0;
    int m = 0;
    unsigned p = 0;
    std::string w;
    std::string format = "text";
    std::uint64_t guard = default_guard;
    std::string out;
    int max_nm = 0;
    unsigned degree = 0;
    unsigned workers = 0;
};

class usage_failure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Emission {
    json report;       // always populated
    std::string text;  // --format text
    std::string dot;   // --format dot, only for strata
};

// A failed verify still emits its report.
class verify_failure : public assertion_error {
public:
    verify_failure(Emission e, const std::string& what) : assertion_error(what), emission(std::move(e)) {}
    Emission emission;
};

json stamped(json j) {
    j["schema"] = schema;
    return j;
}

void require_signature(const Options& o, int min_m = 1) {
    if (o.m < min_m || o.m >= o.n) throw usage_failure("need " + std::to_string(min_m) + " <= m < n");
}

// Prime-field coefficients print as signed integers, others as a+b*t.
std::string coeff_string(const FieldContext& k, FqElt c) {
    if (!c.in_prime_field()) return "(" + format_fq(c) + ")";
    const auto p = static_cast<std::int64_t>(k.p());
    std::int64_t v = c.a;
    if (v > p / 2) v -= p;
    return std::to_string(v);
}

std::string combination(const DieudonneModule& mod, const Vec& v, const std::string& suffix = "") {
    const FieldContext& k = mod.field();
    std::string s;
    for (std::size_t c = 0; c < v.size(); ++c) {
        if (v[c].is_zero()) continue;
        std::string coeff = coeff_string(k, v[c]);
        std::string term = mod.basis_label(c) + suffix;
        if (coeff == "1") {
            s += s.empty() ? term : " + " + term;
        } else if (coeff == "-1") {
            s += s.empty() ? "-" + term : " - " + term;
        } else {
            s += (s.empty() ? "" : " + ") + coeff + "*" + term;
        }
    }
    return s.empty() ? "0" : s;
}

std::string span_string(const DieudonneModule& mod, const Subspace& sub) {
    const std::string suffix = sub.twist() == 0 ? "" : sub.twist() == 1 ? "^(p)" : "^(p^2)";
    std::string s = "Span{";
    for (std::size_t r = 0; r < sub.dim(); ++r) s += (r ? ", " : "") + combination(mod, sub.basis().row(r), suffix);
    return s + "}";
}

// ---------------------------------------------------------------------------

Emission cmd_strata(const Options& o) {
    require_signature(o, 0);
    const StratumPoset poset = eo_poset(o.n, o.m);
    Emission e{stamped(poset_to_json(poset)), {}, poset_to_dot(poset)};
    std::ostringstream t;
    t << "EO strata for (n,m) = (" << o.n << "," << o.m << "): " << poset.nodes.size() << " strata, "
      << poset.covers.size() << " covers\n";
    for (const auto& s : poset.nodes) {
        t << s.label.w().to_string() << "  length=" << s.length << " a_sigma=" << s.a_sigma
          << " fiber_dim=" << s.fiber_dim << (s.in_s_sharp ? " S#" : "") << (s.is_fol ? " fol" : "")
          << (s.is_ordinary ? " ordinary" : "") << "\n";
    }
    for (const auto& [a, b] : poset.covers) {
        t << poset.nodes[a].label.w().to_string() << " > " << poset.nodes[b].label.w().to_string() << "\n";
    }
    e.text = t.str();
    return e;
}

Emission cmd_stratum(const Options& o) {
    require_signature(o, 0);
    if (o.w.empty()) throw usage_failure("stratum requires --w");
    const ShuffleLabel label(Permutation::parse(o.w), o.n, o.m);
    const StratumInfo info = stratum_info(label);
    json j = stratum_to_json(info);
    j["n"] = o.n;
    j["m"] = o.m;
    j["inversions"] = info.label.w().inversions();
    Emission e{stamped(j), {}, {}};
    std::ostringstream t;
    t << "w = " << info.label.w().to_string() << " in Pi(" << o.n << "," << o.m << ")\n"
      << "length     " << info.length << "\n"
      << "a_sigma    " << info.a_sigma << "\n"
      << "in S#      " << (info.in_s_sharp ? "yes" : "no") << "\n"
      << "is w_fol   " << (info.is_fol ? "yes" : "no") << "\n"
      << "ordinary   " << (info.is_ordinary ? "yes" : "no") << "\n"
      << "fiber dim  " << info.fiber_dim << "\n";
    e.text = t.str();
    return e;
}

Emission cmd_dieudonne(const Options& o) {
    require_signature(o);
    const DieudonneModule mod(o.n, o.m, FieldContext(o.p));
    Emission e{stamped(dieudonne_report(mod)), {}, {}};
    const FieldContext& k = mod.field();
    std::ostringstream t;
    t << "Dieudonne module at S_fol, (n,m) = (" << o.n << "," << o.m << "), p = " << o.p << "\n";
    for (std::size_t c = 0; c < mod.dim(); ++c) {
        t << "F(" << mod.basis_label(c) << "^(p)) = " << combination(mod, mod.F_matrix().column(c)) << "    V("
          << mod.basis_label(c) << ") = " << combination(mod, mod.V_matrix().column(c), "^(p)") << "\n";
    }
    t << "ker V    = " << span_string(mod, map_kernel(mod, DMap::V)) << "\n"
      << "ker F    = " << span_string(mod, map_kernel(mod, DMap::F)) << "\n"
      << "omega    = " << span_string(mod, hodge_filtration(mod)) << "\n"
      << "P        = " << span_string(mod, hodge_sigma(mod)) << "\n"
      << "Q        = " << span_string(mod, hodge_sigma_bar(mod)) << "\n"
      << "P_0      = " << span_string(mod, p_zero(mod)) << "\n"
      << "M        = " << span_string(mod, canonical_M(o.n, o.m, k)) << "\n"
      << "V(Q)     = " << span_string(mod, vq_image(o.n, o.m, k).image) << "\n";
    const Matrix H = hasse_matrix(o.n, o.m, k);
    t << "Hasse matrix" << (H.is_zero() ? " (zero)" : "") << ":\n";
    for (std::size_t r = 0; r < H.rows(); ++r) {
        t << " ";
        for (std::size_t c = 0; c < H.cols(); ++c) t << " " << coeff_string(k, H.at(r, c));
        t << "\n";
    }
    e.text = t.str();
    return e;
}

Emission cmd_canfilt(const Options& o) {
    require_signature(o);
    if (2 * o.m <= o.n) throw usage_failure("canfilt requires n < 2m");
    const CanonicalWord word = canonical_word(o.n, o.m, FieldContext(o.p));
    json j = canonical_word_to_json(word);
    j["n"] = o.n;
    j["m"] = o.m;
    j["p"] = o.p;
    Emission e{stamped(j), {}, {}};
    std::ostringstream t;
    t << "r = " << word.r << "\n";
    auto pair = [](LatticePair x) { return "D(" + std::to_string(x.a) + "," + std::to_string(x.b) + ")"; };
    std::vector<std::string> steps{"V^-1(0)"};
    for (int i = 1; i <= 2 * word.r + 1; ++i) steps.push_back("F^" + std::to_string(i) + " V^-1(0)");
    for (int j2 = 1; j2 <= 2 * word.r; ++j2) steps.push_back("V^-" + std::to_string(j2) + " F^" +
                                                             std::to_string(2 * word.r + 1) + " V^-1(0)");
    for (std::size_t i = 0; i < word.trace.size(); ++i) {
        t << steps[i] << " = " << pair(word.trace[i]) << "\n";
    }
    t << "result = " << pair(word.lattice_result) << " (both engines agree)\n";
    e.text = t.str();
    return e;
}

Emission cmd_deform(const Options& o) {
    require_signature(o);
    const FieldContext k(o.p);
    const DeformationContext dc(o.n, o.m, k);
    json j = deformation_report(dc);
    Emission e{stamped(j), {}, {}};
    std::ostringstream t;
    t << "Residues of V(omega(Sigma-bar)) modulo the target summand:\n";
    for (const auto& r : j["residues"]) {
        t << "  column " << r["column"].get<int>() << ":";
        for (const auto& [g, coords] : r["terms"].items()) {
            for (const auto& [basis, c] : coords.items()) {
                const std::string coeff = coeff_string(k, parse_fq(k, c.get<std::string>()));
                t << " " << (coeff == "-1" ? "-" : coeff == "1" ? "+" : coeff + "*") << dc.indexed_name(g) << " " << basis;
            }
        }
        t << "\n";
    }
    t << "Ideal of S_fol:";
    for (const auto& g : j["ideal_indexed"]) t << " " << g.get<std::string>();
    t << "\nTangent dims: total " << j["tangent"]["total"] << ", foliation " << j["tangent"]["foliation"]
      << ", fiber " << j["tangent"]["fiber"] << "\n";
    e.text = t.str();
    return e;
}

Emission cmd_count(const Options& o) {
    require_signature(o);
    const GammaInstance inst(FieldContext(o.p), o.n, o.m, o.guard);
    json j = counting_report(inst, {true, true, o.workers});
    Emission e{stamped(j), {}, {}};
    auto value = [](const json& v) { return v.is_string() ? v.get<std::string>() : "skipped (needs " +
                                                                                      v["required"].get<std::string>() + ")"; };
    std::ostringstream t;
    t << "closed " << j["closed_form"]["value"].get<std::string>() << "\n"
      << "brute " << value(j["brute_force"]) << "\n"
      << "fast " << value(j["fast"]) << "\n"
      << "oracle " << value(j["oracle"]) << "\n";
    for (const auto& [k, v] : j["degrees"].items()) t << k << " " << v.get<std::string>() << "\n";
    e.text = t.str();
    return e;
}

Emission cmd_derivation(const Options& o) {
    const unsigned bound = o.degree ? o.degree : 2 * o.p;
    if (bound < o.p) throw usage_failure("--degree must be at least p");
    const DerivationReport r = p_power_of_derivation(o.p, bound);
    json mons = json::array();
    std::ostringstream t;
    for (const auto& mc : r.monomials) {
        mons.push_back({{"dx", mc.dx}, {"dy", mc.dy}, {"p_power_image", mc.p_power_image},
                        {"expected", mc.expected}, {"pass", mc.pass}});
        t << "x^" << mc.dx << " y^" << mc.dy << ": xi^p -> " << mc.p_power_image << ", x d/dx -> " << mc.expected
          << (mc.pass ? "  ok" : "  MISMATCH") << "\n";
    }
    t << (r.all_pass ? "xi^p = x d/dx on all monomials" : "xi^p differs from x d/dx") << "\n";
    Emission e{stamped({{"p", r.p}, {"degree_bound", r.degree_bound}, {"monomials", mons}, {"all_pass", r.all_pass}}),
               t.str(), {}};
    if (!r.all_pass) throw assertion_error("derivation-demo: xi^p != x d/dx for p = " + std::to_string(o.p));
    return e;
}

// ---------------------------------------------------------------------------
// verify

struct Suite {
    std::string name;
    std::size_t checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    // Runs a block whose internal assertions count as one check.
    void guarded(const std::string& what, const std::function<void()>& body) {
        try {
            body();
            ++checks;
        } catch (const std::exception& ex) {
            ++checks;
            failures.push_back(what + ": " + ex.what());
        }
    }
};

std::string sig(int n, int m) { return "(" + std::to_string(n) + "," + std::to_string(m) + ")"; }

std::uint64_t binomial(int n, int k) {
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    return r;
}

Suite verify_weyl(int max_nm) {
    Suite s{"weyl", 0, {}};
    for (int n = 1; n < max_nm; ++n) {
        for (int m = 0; m < n && n + m <= max_nm; ++m) {
            s.guarded("poset " + sig(n, m), [&] {
                const auto poset = eo_poset(n, m);
                const auto& nodes = poset.nodes;
                s.expect(nodes.size() == binomial(n + m, m), "shuffle count " + sig(n, m));
                std::size_t maxima = 0, minima = 0, sharp = 0, sharp_min = 0;
                std::set<std::size_t> has_up, has_down;
                for (const auto& [a, b] : poset.covers) {
                    has_down.insert(a);
                    has_up.insert(b);
                }
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    const auto& st = nodes[i];
                    s.expect(static_cast<std::size_t>(st.length) == st.label.w().inversions(),
                             "length = inversions for " + st.label.w().to_string());
                    s.expect(st.length <= n * m && st.a_sigma >= n - m && st.a_sigma <= n,
                             "statistic bounds for " + st.label.w().to_string());
                    if (!has_up.count(i)) ++maxima;
                    if (!has_down.count(i)) ++minima;
                }
                s.expect(maxima == 1 && minima == 1, "unique extremal strata " + sig(n, m));
                if (m == 1) s.expect(poset.covers.size() == static_cast<std::size_t>(n), "chain for m = 1, n = " + std::to_string(n));
                if (m == 0) return;
                const auto fol = w_fol(n, m);
                for (std::size_t i = 0; i < nodes.size(); ++i) {
                    if (!nodes[i].in_s_sharp) continue;
                    ++sharp;
                    bool minimal = true;
                    for (std::size_t j = 0; j < nodes.size(); ++j) {
                        if (j != i && nodes[j].in_s_sharp && eo_leq(nodes[j].label, nodes[i].label)) minimal = false;
                    }
                    if (minimal) {
                        ++sharp_min;
                        s.expect(nodes[i].label.w() == fol && nodes[i].length == m * m, "minimal S# member is w_fol " + sig(n, m));
                    }
                }
                s.expect(sharp == binomial(n, m), "|S#| = C(n,m) " + sig(n, m));
                s.expect(sharp_min == 1, "unique minimal S# member " + sig(n, m));
            });
        }
    }
    return s;
}

Suite verify_gf(unsigned p) {
    Suite s{"gf", 0, {}};
    s.guarded("field " + std::to_string(p), [&] {
        const FieldContext k(p);
        const auto el = k.elements();
        const bool triples = el.size() * el.size() * el.size() <= 200'000;
        for (auto x : el) {
            s.expect(k.frob(k.frob(x)) == x, "frob is an involution");
            s.expect(k.trace(x).in_prime_field() && k.norm(x).in_prime_field(), "trace and norm in F_p");
            if (!x.is_zero()) s.expect(k.mul(x, k.inv(x)) == k.one(), "inverse of " + format_fq(x));
            for (auto y : el) {
                s.expect(k.mul(x, y) == k.mul(y, x) && k.add(x, y) == k.add(y, x), "commutativity");
                s.expect(k.frob(k.mul(x, y)) == k.mul(k.frob(x), k.frob(y)), "frob multiplicative");
                if (!triples) continue;
                for (auto z : el) {
                    if (k.mul(x, k.add(y, z)) != k.add(k.mul(x, y), k.mul(x, z)) ||
                        k.mul(x, k.mul(y, z)) != k.mul(k.mul(x, y), z)) {
                        s.expect(false, "associativity/distributivity");
                    }
                }
            }
        }
    });
    s.guarded("derivation", [&] { s.expect(p_power_of_derivation(p, 2 * p).all_pass, "xi^p = x d/dx"); });
    return s;
}

Suite verify_dieudonne(int max_nm, unsigned p) {
    Suite s{"dieudonne", 0, {}};
    const FieldContext k(p);
    for (int n = 2; n < max_nm; ++n) {
        for (int m = 1; m < n && n + m <= max_nm; ++m) {
            s.guarded("module " + sig(n, m), [&] {
                const DieudonneModule mod(n, m, k);
                const auto N = static_cast<std::size_t>(n + m);
                const auto imF = map_image(mod, DMap::F, Subspace::whole(k, 1, mod.dim()));
                const auto imV = map_image(mod, DMap::V, Subspace::whole(k, 0, mod.dim()));
                s.expect(imF == map_kernel(mod, DMap::V) && imF.dim() == N, "im F = ker V " + sig(n, m));
                s.expect(imV == map_kernel(mod, DMap::F) && imV.dim() == N, "im V = ker F " + sig(n, m));
                const auto omega = hodge_filtration(mod);
                s.expect(is_isotropic(mod, omega) && omega.dim() == N, "omega maximal isotropic " + sig(n, m));
                s.expect(type_profile(mod, omega) == TypeProfile{static_cast<std::size_t>(n), static_cast<std::size_t>(m)},
                         "omega of type (n,m) " + sig(n, m));
                std::vector<std::size_t> p0;
                for (int i = 1; i <= n - m; ++i) p0.push_back(mod.e(i));
                s.expect(p_zero(mod) == mod.coordinate_span(p0, 0), "P_0 = e_[1,n-m] " + sig(n, m));
                s.expect(hasse_matrix(n, m, k).is_zero() == (2 * m <= n), "Hasse zero iff 2m <= n " + sig(n, m));
                vq_image(n, m, k);
                if (n < 2 * m) canonical_word(n, m, k);
                for (int a = 0; a <= n + m; ++a) {
                    for (int b = 0; b <= n + m; ++b) {
                        for (auto which : {LatticeMap::F, LatticeMap::V_inverse}) {
                            const auto lat = lattice_step(n, m, {a, b}, which);
                            const auto mat = as_lattice(mod, matrix_step(mod, mod.lattice({a, b}), which));
                            s.expect(mat && *mat == lat, "lattice step D(" + std::to_string(a) + "," +
                                                             std::to_string(b) + ") " + sig(n, m));
                        }
                    }
                }
            });
        }
    }
    return s;
}

Suite verify_deformation(int max_nm, unsigned p) {
    Suite s{"deformation", 0, {}};
    const FieldContext k(p);
    for (int n = 2; n < max_nm; ++n) {
        for (int m = 1; m < n && n + m <= max_nm; ++m) {
            s.guarded("deformation " + sig(n, m), [&] {
                const DeformationContext dc(n, m, k);
                const auto ud = universal_deformation(dc);
                auto all = ud.omega_sigma;
                all.insert(all.end(), ud.omega_sigma_bar.begin(), ud.omega_sigma_bar.end());
                s.expect(is_isotropic_over_R(dc, all), "isotropy over R " + sig(n, m));
                s.expect(canonical_generators(dc, all).size() == static_cast<std::size_t>(n + m), "free of rank n+m " + sig(n, m));
                const auto ideal = sfol_ideal(dc);
                s.expect(ideal.size() == static_cast<std::size_t>((n - m) * m), "ideal size " + sig(n, m));
                const auto d = tangent_system(n, m, k);
                const auto nm = static_cast<std::size_t>(n * m), mm = static_cast<std::size_t>(m * m);
                s.expect(d.total == nm && d.foliation == mm && d.fiber == 0, "tangent dims " + sig(n, m));
                s.expect(d.total == d.foliation + ideal.size(), "total = foliation + |ideal| " + sig(n, m));
                s.expect(static_cast<int>(d.foliation) == shuffle_length(ShuffleLabel(w_fol(n, m), n, m)),
                         "foliation rank = l(w_fol) " + sig(n, m));
            });
        }
    }
    return s;
}

Suite verify_counting(int max_nm, unsigned p, std::uint64_t guard) {
    Suite s{"counting", 0, {}};
    const FieldContext k(p);
    for (int n = 2; n < max_nm; ++n) {
        for (int m = 1; m < n && n + m <= max_nm; ++m) {
            s.guarded("counting " + sig(n, m), [&] {
                const GammaInstance inst(k, n, m, guard);
                const BigInt closed = gamma_count_closed(p, n, m).value;
                if (gamma_enumeration_size(inst) <= guard) {
                    s.expect(gamma_count_bruteforce(inst, 1) == closed, "brute force " + sig(n, m));
                }
                try {
                    s.expect(gamma_count_fast(inst) == closed, "fast count " + sig(n, m));
                } catch (const guard_exceeded&) {
                }
                if (gaussian_binomial(k.order(), n + m, m) <= guard / 100) {
                    s.expect(isotropic_subspace_oracle(inst) == closed, "subspace oracle " + sig(n, m));
                }
                degree_table(p, n, m, n <= 8);
            });
        }
    }
    for (int n = 2; n <= 20; ++n) {
        for (int m = 1; m < n; ++m) {
            s.expect(m * m + (n - m) * m == n * m && (n - m) * m + n * m == (2 * n - m) * m, "exponent identities");
            s.guarded("degree table " + sig(n, m), [&] { degree_table(p, n, m, false); });
        }
    }
    return s;
}

Emission cmd_verify(const Options& o) {
    if (o.max_nm < 2) throw usage_failure("--max-nm must be at least 2");
    std::vector<Suite> suites;
    suites.push_back(verify_weyl(o.max_nm));
    suites.push_back(verify_gf(o.p));
    suites.push_back(verify_dieudonne(o.max_nm, o.p));
    suites.push_back(verify_deformation(o.max_nm, o.p));
    suites.push_back(verify_counting(o.max_nm, o.p, o.guard));

    json js = json::array();
    std::ostringstream t;
    std::size_t failed = 0;
    for (const auto& s : suites) {
        js.push_back({{"name", s.name}, {"checks", s.checks}, {"failures", s.failures}});
        t << s.name << ": " << s.checks << " checks, " << s.failures.size() << " failed\n";
        for (const auto& f : s.failures) t << "  FAIL " << f << "\n";
        if (!s.failures.empty()) ++failed;
    }
    t << (failed ? "verify: FAILED (" + std::to_string(failed) + " suites)" : "verify: all suites passed") << "\n";
    Emission e{stamped({{"max_nm", o.max_nm}, {"p", o.p}, {"suites", js}, {"passed", failed == 0}}), t.str(), {}};
    if (failed) {
        std::string msg = "verify failed:";
        for (const auto& s : suites) {
            for (const auto& f : s.failures) msg += "\n  [" + s.name + "] " + f;
        }
        throw verify_failure(e, msg);
    }
    return e;
}

void emit(const Emission& e, const Options& o, std::ostream& out) {
    std::string body;
    if (o.format == "json") {
        body = e.report.dump(2) + "\n";
    } else if (o.format == "dot") {
        if (e.dot.empty()) throw usage_failure("--format dot is only available for strata");
        body = e.dot;
    } else {
        body = e.text;
    }
    if (o.out.empty()) {
        out << body;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw usage_failure("cannot open " + o.out + " for writing");
    f << body;
}

json failure_report(const std::string& subcommand, const std::string& kind, const std::string& message) {
    return stamped({{"status", kind}, {"subcommand", subcommand}, {"message", message}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ekedahl-Oort strata, Dieudonne modules and foliation checks for unitary signature (n,m)", "eofol"};
    app.require_subcommand(1);
    Options o;

    auto add_nm = [&](CLI::App* sub, bool with_p) {
        sub->add_option("--n", o.n, "signature n")->required();
        sub->add_option("--m", o.m, "signature m")->required();
        if (with_p) sub->add_option("--p", o.p, "odd prime p")->required();
    };
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "text, json or dot")
            ->check(CLI::IsMember({"text", "json", "dot"}))
            ->capture_default_str();
        sub->add_option("--out", o.out, "write the report to this file");
    };

    auto* strata = app.add_subcommand("strata", "EO stratum poset for (n,m)");
    add_nm(strata, false);
    auto* stratum = app.add_subcommand("stratum", "statistics of a single stratum");
    add_nm(stratum, false);
    stratum->add_option("--w", o.w, "one-line notation, e.g. 125634")->required();
    auto* dieudonne = app.add_subcommand("dieudonne", "Dieudonne module tables, kernels and images");
    add_nm(dieudonne, true);
    auto* canfilt = app.add_subcommand("canfilt", "canonical filtration word trace (n < 2m)");
    add_nm(canfilt, true);
    auto* deform = app.add_subcommand("deform", "first-order deformation: residues, ideal, tangent dimensions");
    add_nm(deform, true);
    auto* count = app.add_subcommand("count", "Gamma-matrix counts and covering degrees");
    add_nm(count, true);
    count->add_option("--guard", o.guard, "maximum enumeration size")->capture_default_str();
    count->add_option("--workers", o.workers, "worker threads (0 = hardware)");
    auto* derivation = app.add_subcommand("derivation-demo", "p-th power of x d/dx + d/dy");
    derivation->add_option("--p", o.p, "odd prime p")->required();
    derivation->add_option("--degree", o.degree, "monomial degree bound (default 2p)");
    auto* verify = app.add_subcommand("verify", "full invariant suite");
    verify->add_option("--max-nm", o.max_nm, "bound on n+m")->required();
    verify->add_option("--p", o.p, "odd prime p")->required();
    verify->add_option("--guard", o.guard, "maximum enumeration size")->capture_default_str();
    for (auto* sub : {strata, stratum, dieudonne, canfilt, deform, count, derivation, verify}) add_common(sub);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return pass;
    } catch (const CLI::ParseError& e) {
        const auto* active = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << "error: " << e.what() << "\n\n" << active->help();
        return usage_error;
    }

    CLI::App* active = app.get_subcommands().front();
    const std::string name = active->get_name();
    const std::map<std::string, std::function<Emission(const Options&)>> table{
        {"strata", cmd_strata},   {"stratum", cmd_stratum}, {"dieudonne", cmd_dieudonne},
        {"canfilt", cmd_canfilt}, {"deform", cmd_deform},   {"count", cmd_count},
        {"derivation-demo", cmd_derivation}, {"verify", cmd_verify},
    };
    return guarded(name, active->help(), err, [&] {
        if (o.p != 0 && (o.p % 2 == 0 || !is_prime(o.p))) throw usage_failure("--p must be an odd prime");
        try {
            emit(table.at(name)(o), o, out);
        } catch (const verify_failure& failed) {
            emit(failed.emission, o, out);
            throw;
        }
    });
}

int guarded(const std::string& subcommand, const std::string& usage, std::ostream& err,
            const std::function<void()>& body) {
    try {
        body();
        return pass;
    } catch (const assertion_error& e) {
        err << failure_report(subcommand, "assertion_failure", e.what()).dump(2) << "\n";
        return assertion_failure;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n\n" << usage;
    } catch (const std::out_of_range& e) {
        err << "error: " << e.what() << "\n\n" << usage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n\n" << usage;
    }
    return usage_error;
}

}  // namespace eofol::cli
