#include "eofol/counting.hpp"

#include <algorithm>
#include <chrono>
#include <thread>
#include <vector>

#include "eofol/deformation.hpp"
#include "eofol/linalg.hpp"

namespace eofol {

namespace {

using boost::multiprecision::pow;

BigInt big_pow(std::uint64_t base, int e) { return pow(BigInt(base), static_cast<unsigned>(e)); }

void check_signature(int n, int m, const char* where) {
    if (m < 1 || m >= n) throw std::invalid_argument(std::string(where) + ": need 1 <= m < n");
}

void check_guard(const BigInt& size, std::uint64_t guard, const std::string& what) {
    if (size > guard) {
        throw guard_exceeded(what + ": enumeration size " + size.str() + " exceeds guard " + std::to_string(guard),
                             size, guard);
    }
}

// Dense lookup tables over F_{p^2}, indices as in FieldContext::index.
struct Tables {
    std::uint32_t q;
    std::vector<std::uint32_t> add, mul, frob, neg;

    explicit Tables(const FieldContext& k) : q(k.order()), add(q * q), mul(q * q), frob(q), neg(q) {
        for (std::uint32_t x = 0; x < q; ++x) {
            frob[x] = k.index(k.frob(k.element(x)));
            neg[x] = k.index(k.neg(k.element(x)));
            for (std::uint32_t y = 0; y < q; ++y) {
                add[x * q + y] = k.index(k.add(k.element(x), k.element(y)));
                mul[x * q + y] = k.index(k.mul(k.element(x), k.element(y)));
            }
        }
    }
};

// -(tG2^(p) G2), row-major m x m, for the G2 with dense index g.
void negated_hermitian(const Tables& T, int rows, int m, std::uint64_t g, std::vector<std::uint32_t>& g2,
                       std::vector<std::uint32_t>& out) {
    for (auto& x : g2) {
        x = static_cast<std::uint32_t>(g % T.q);
        g /= T.q;
    }
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            std::uint32_t s = 0;
            for (int k = 0; k < rows; ++k) {
                s = T.add[s * T.q + T.mul[T.frob[g2[k * m + i]] * T.q + g2[k * m + j]]];
            }
            out[i * m + j] = T.neg[s];
        }
    }
}

std::uint64_t count_block(const Tables& T, int n, int m, std::uint64_t begin, std::uint64_t end) {
    const int rows = n - m;
    const std::size_t cells = static_cast<std::size_t>(m) * m;
    std::vector<std::uint32_t> g2(static_cast<std::size_t>(rows) * m), target(cells), g1(cells);
    std::uint64_t count = 0;
    for (std::uint64_t g = begin; g < end; ++g) {
        negated_hermitian(T, rows, m, g, g2, target);
        std::fill(g1.begin(), g1.end(), 0);
        while (true) {
            bool ok = true;
            for (int i = 0; i < m && ok; ++i) {
                for (int j = i; j < m; ++j) {
                    if (T.add[g1[i * m + j] * T.q + T.frob[g1[j * m + i]]] != target[i * m + j] ||
                        T.add[g1[j * m + i] * T.q + T.frob[g1[i * m + j]]] != target[j * m + i]) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) ++count;
            std::size_t pos = 0;
            while (pos < cells && ++g1[pos] == T.q) g1[pos++] = 0;
            if (pos == cells) break;
        }
    }
    return count;
}

}  // namespace

GammaInstance::GammaInstance(FieldContext c, int n_, int m_, std::uint64_t g) : ctx(c), n(n_), m(m_), guard(g) {
    check_signature(n, m, "GammaInstance");
}

BigInt gamma_enumeration_size(const GammaInstance& inst) { return big_pow(inst.ctx.p(), 2 * inst.n * inst.m); }

BigInt gamma_count_bruteforce(const GammaInstance& inst, unsigned workers) {
    check_guard(gamma_enumeration_size(inst), inst.guard, "gamma_count_bruteforce");
    const Tables T(inst.ctx);
    std::uint64_t outer = 1;
    for (int i = 0; i < (inst.n - inst.m) * inst.m; ++i) outer *= T.q;

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, outer));
    std::vector<std::uint64_t> partial(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t step = outer / workers, extra = outer % workers;
    std::uint64_t begin = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t end = begin + step + (w < extra ? 1 : 0);
        pool.emplace_back([&, w, begin, end] { partial[w] = count_block(T, inst.n, inst.m, begin, end); });
        begin = end;
    }
    for (auto& t : pool) t.join();
    BigInt total = 0;
    for (auto c : partial) total += c;
    return total;
}

BigInt gamma_count_fast(const GammaInstance& inst) {
    const Tables T(inst.ctx);
    const int n = inst.n, m = inst.m, rows = n - m;
    check_guard(big_pow(T.q, rows * m), inst.guard, "gamma_count_fast");

    // fibre[c] = #{x : x + x^p = c}; pairs[c1][c2] = #{(x,y) : x + y^p = c1, y + x^p = c2}
    std::vector<std::uint64_t> fibre(T.q, 0), pairs(static_cast<std::size_t>(T.q) * T.q, 0);
    for (std::uint32_t x = 0; x < T.q; ++x) {
        ++fibre[T.add[x * T.q + T.frob[x]]];
        for (std::uint32_t y = 0; y < T.q; ++y) {
            ++pairs[T.add[x * T.q + T.frob[y]] * T.q + T.add[y * T.q + T.frob[x]]];
        }
    }
    std::uint64_t outer = 1;
    for (int i = 0; i < rows * m; ++i) outer *= T.q;
    std::vector<std::uint32_t> g2(static_cast<std::size_t>(rows) * m), target(static_cast<std::size_t>(m) * m);
    BigInt total = 0;
    for (std::uint64_t g = 0; g < outer; ++g) {
        negated_hermitian(T, rows, m, g, g2, target);
        BigInt term = 1;
        for (int i = 0; i < m && term != 0; ++i) {
            term *= fibre[target[i * m + i]];
            for (int j = i + 1; j < m; ++j) term *= pairs[target[i * m + j] * T.q + target[j * m + i]];
        }
        total += term;
    }
    return total;
}

ClosedCount gamma_count_closed(std::uint32_t p, int n, int m) {
    check_signature(n, m, "gamma_count_closed");
    ClosedCount c;
    c.exponent = 2 * n * m - m * m;
    c.gamma2_exponent = 2 * (n - m) * m;
    c.offdiagonal_exponent = m * (m - 1);
    c.diagonal_exponent = m;
    if (c.gamma2_exponent + c.offdiagonal_exponent + c.diagonal_exponent != c.exponent) {
        throw assertion_error("gamma_count_closed: exponent factorization inconsistent");
    }
    c.value = big_pow(p, c.exponent);
    return c;
}

BigInt gaussian_binomial(std::uint64_t q, int N, int m) {
    if (m < 0 || m > N) return 0;
    BigInt num = 1, den = 1;
    for (int i = 0; i < m; ++i) {
        num *= big_pow(q, N - i) - 1;
        den *= big_pow(q, i + 1) - 1;
    }
    return num / den;
}

BigInt isotropic_subspace_oracle(const GammaInstance& inst, bool isotropy_filter) {
    const FieldContext& k = inst.ctx;
    const int n = inst.n, m = inst.m, N = n + m;
    check_guard(gaussian_binomial(k.order(), N, m), inst.guard, "isotropic_subspace_oracle");
    auto partner = [&](int c) { return c < m ? c + n : (c >= n ? c - n : c); };
    const auto elems = k.elements();

    std::uint64_t count = 0;
    std::vector<int> pivots(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) pivots[i] = i;
    while (true) {
        // Free slots of the RREF basis for this pivot set.
        std::vector<std::pair<int, int>> free;
        for (int r = 0; r < m; ++r) {
            for (int c = pivots[r] + 1; c < N; ++c) {
                if (std::find(pivots.begin(), pivots.end(), c) == pivots.end()) free.emplace_back(r, c);
            }
        }
        std::vector<std::size_t> digits(free.size(), 0);
        Matrix B(static_cast<std::size_t>(m), static_cast<std::size_t>(N));
        while (true) {
            for (int r = 0; r < m; ++r) {
                for (int c = 0; c < N; ++c) B.at(r, c) = k.zero();
                B.at(r, pivots[r]) = k.one();
            }
            for (std::size_t s = 0; s < free.size(); ++s) B.at(free[s].first, free[s].second) = elems[digits[s]];

            Matrix tail(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
            for (int r = 0; r < m; ++r) {
                for (int c = 0; c < m; ++c) tail.at(r, c) = B.at(r, n + c);
            }
            bool ok = rank(k, tail) == static_cast<std::size_t>(m);
            for (int r = 0; r < m && ok && isotropy_filter; ++r) {
                for (int s = 0; s < m && ok; ++s) {
                    FqElt v = k.zero();
                    for (int c = 0; c < N; ++c) v = k.add(v, k.mul(k.frob(B.at(r, c)), B.at(s, partner(c))));
                    ok = v.is_zero();
                }
            }
            if (ok) ++count;
            std::size_t pos = 0;
            while (pos < digits.size() && ++digits[pos] == elems.size()) digits[pos++] = 0;
            if (pos == digits.size()) break;
        }
        // next combination of pivot columns
        int i = m - 1;
        while (i >= 0 && pivots[i] == N - m + i) --i;
        if (i < 0) break;
        ++pivots[i];
        for (int j = i + 1; j < m; ++j) pivots[j] = pivots[j - 1] + 1;
    }
    return count;
}

DegreeTable degree_table(std::uint32_t p, int n, int m, bool cross_check_tangent) {
    check_signature(n, m, "degree_table");
    DegreeTable t;
    t.deg_rho = big_pow(p, m * m);
    t.deg_rho_prime = big_pow(p, (n - m) * m);
    t.deg_pi_et = big_pow(p, (2 * n - m) * m);
    t.deg_theta = t.deg_rho;
    t.deg_theta_prime = t.deg_pi_et;

    const BigInt pnm = big_pow(p, n * m);
    if (t.deg_rho * t.deg_rho_prime != pnm) throw assertion_error("degree_table: deg(rho) deg(rho') != p^{nm}");
    if (t.deg_rho_prime * pnm != t.deg_pi_et) throw assertion_error("degree_table: deg(rho') p^{nm} != deg(pi_et)");
    if (t.deg_pi_et != t.deg_theta_prime) throw assertion_error("degree_table: deg(pi_et) != deg(theta')");
    if (t.deg_theta != t.deg_rho) throw assertion_error("degree_table: deg(theta) != deg(rho)");
    if (cross_check_tangent) {
        const auto dims = tangent_system(n, m, FieldContext(p));
        if (t.deg_rho != big_pow(p, static_cast<int>(dims.foliation))) {
            throw assertion_error("degree_table: deg(rho) != p^{foliation rank} = p^" + std::to_string(dims.foliation));
        }
    }
    return t;
}

nlohmann::json degree_table_to_json(const DegreeTable& t) {
    return {
        {"deg_rho", t.deg_rho.str()},
        {"deg_rho_prime", t.deg_rho_prime.str()},
        {"deg_pi_et", t.deg_pi_et.str()},
        {"deg_theta", t.deg_theta.str()},
        {"deg_theta_prime", t.deg_theta_prime.str()},
    };
}

nlohmann::json counting_report(const GammaInstance& inst, const CountOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    const ClosedCount closed = gamma_count_closed(inst.ctx.p(), inst.n, inst.m);
    auto skipped = [](const guard_exceeded& e) {
        return nlohmann::json{{"skipped", "guard exceeded"}, {"required", e.required().str()}, {"guard", e.guard()}};
    };
    auto checked = [&](const char* name, const BigInt& v) {
        if (v != closed.value) {
            throw assertion_error(std::string("counting: ") + name + " = " + v.str() + " but closed form = " +
                                  closed.value.str());
        }
        return nlohmann::json(v.str());
    };

    nlohmann::json report;
    report["p"] = inst.ctx.p();
    report["n"] = inst.n;
    report["m"] = inst.m;
    report["closed_form"] = {
        {"value", closed.value.str()},
        {"exponent", closed.exponent},
        {"factors", {{"gamma2", closed.gamma2_exponent}, {"offdiagonal", closed.offdiagonal_exponent},
                     {"diagonal", closed.diagonal_exponent}}},
    };
    if (opts.brute_force) {
        try {
            report["brute_force"] = checked("brute force", gamma_count_bruteforce(inst, opts.workers));
        } catch (const guard_exceeded& e) {
            report["brute_force"] = skipped(e);
        }
    }
    try {
        report["fast"] = checked("fast count", gamma_count_fast(inst));
    } catch (const guard_exceeded& e) {
        report["fast"] = skipped(e);
    }
    if (opts.oracle) {
        try {
            report["oracle"] = checked("subspace oracle", isotropic_subspace_oracle(inst));
        } catch (const guard_exceeded& e) {
            report["oracle"] = skipped(e);
        }
    }
    report["degrees"] = degree_table_to_json(degree_table(inst.ctx.p(), inst.n, inst.m, inst.n <= 8));
    report["elapsed"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

}  // namespace eofol
