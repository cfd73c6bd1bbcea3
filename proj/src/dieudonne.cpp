#include "eofol/dieudonne.hpp"

#include <algorithm>
#include <stdexcept>

namespace eofol {

// ---------------------------------------------------------------------------
// Subspace

Subspace::Subspace(const FieldContext& ctx, int twist, std::size_t ambient_dim, const std::vector<Vec>& generators)
    : twist_(twist), ambient_(ambient_dim) {
    if (twist < 0 || twist > max_twist) throw std::invalid_argument("Subspace: twist index out of range");
    Echelon e = rref(ctx, Matrix::from_rows(ambient_dim, generators));
    basis_ = std::move(e.reduced);
    pivots_ = std::move(e.pivots);
}

Subspace Subspace::zero(int twist, std::size_t ambient_dim) {
    if (twist < 0 || twist > max_twist) throw std::invalid_argument("Subspace: twist index out of range");
    Subspace s;
    s.twist_ = twist;
    s.ambient_ = ambient_dim;
    s.basis_ = Matrix(0, ambient_dim);
    return s;
}

Subspace Subspace::whole(const FieldContext& ctx, int twist, std::size_t ambient_dim) {
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < ambient_dim; ++i) {
        Vec v(ambient_dim, ctx.zero());
        v[i] = ctx.one();
        rows.push_back(std::move(v));
    }
    return Subspace(ctx, twist, ambient_dim, rows);
}

Vec Subspace::reduce(const FieldContext& ctx, Vec v) const {
    if (v.size() != ambient_) throw std::invalid_argument("Subspace::reduce: length mismatch");
    for (std::size_t r = 0; r < pivots_.size(); ++r) {
        FqElt c = v[pivots_[r]];
        if (c.is_zero()) continue;
        for (std::size_t k = 0; k < ambient_; ++k) v[k] = ctx.sub(v[k], ctx.mul(c, basis_.at(r, k)));
    }
    return v;
}

bool Subspace::contains(const FieldContext& ctx, const Vec& v) const {
    Vec r = reduce(ctx, v);
    return std::all_of(r.begin(), r.end(), [](FqElt x) { return x.is_zero(); });
}

bool Subspace::contains(const FieldContext& ctx, const Subspace& other) const {
    if (other.twist_ != twist_ || other.ambient_ != ambient_) return false;
    for (std::size_t r = 0; r < other.dim(); ++r) {
        if (!contains(ctx, other.basis_.row(r))) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// The module

DieudonneModule::DieudonneModule(int n, int m, FieldContext ctx) : n_(n), m_(m), ctx_(ctx) {
    if (m < 1 || m >= n) throw std::invalid_argument("DieudonneModule: need 1 <= m < n");
    const std::size_t d = dim();
    F_ = Matrix(d, d);
    V_ = Matrix(d, d);
    pairing_ = Matrix(d, d);
    const FqElt one = ctx_.one();
    const FqElt minus_one = ctx_.neg(one);
    const int N = n + m;

    // F(e_i^(p)) and V(e_i)
    for (int i = 1; i <= N; ++i) {
        if (i > n - m && i <= n) F_.at(f(i - n + m), e(i)) = minus_one;
        if (i > n) V_.at(f(i - n + m), e(i)) = one;
    }
    // F(f_j^(p))
    for (int j = 1; j <= N; ++j) {
        if (j <= m) {
            F_.at(e(j), f(j)) = minus_one;
        } else if (j > 2 * m) {
            F_.at(e(j - m), f(j)) = minus_one;
        }
    }
    // V(f_j)
    for (int j = m + 1; j <= N; ++j) {
        if (j <= n) {
            V_.at(e(j - m), f(j)) = one;
        } else {
            V_.at(e(j), f(j)) = one;
        }
    }
    // {e_i, f_{N+1-i}} = 1, skew-symmetric
    for (int i = 1; i <= N; ++i) {
        pairing_.at(e(i), f(N + 1 - i)) = one;
        pairing_.at(f(N + 1 - i), e(i)) = minus_one;
    }
}

std::size_t DieudonneModule::e(int i) const {
    if (i < 1 || i > rank()) throw std::out_of_range("DieudonneModule::e: index out of range");
    return static_cast<std::size_t>(i - 1);
}

std::size_t DieudonneModule::f(int j) const {
    if (j < 1 || j > rank()) throw std::out_of_range("DieudonneModule::f: index out of range");
    return static_cast<std::size_t>(rank() + j - 1);
}

Vec DieudonneModule::basis_vector(std::size_t coord) const {
    Vec v(dim(), ctx_.zero());
    v.at(coord) = ctx_.one();
    return v;
}

std::string DieudonneModule::basis_label(std::size_t coord) const {
    const auto N = static_cast<std::size_t>(rank());
    return coord < N ? "e" + std::to_string(coord + 1) : "f" + std::to_string(coord - N + 1);
}

FqElt DieudonneModule::pair(const Vec& x, const Vec& y) const {
    Vec jy = apply(ctx_, pairing_, y);
    FqElt s = ctx_.zero();
    for (std::size_t k = 0; k < x.size(); ++k) s = ctx_.add(s, ctx_.mul(x[k], jy[k]));
    return s;
}

Subspace DieudonneModule::coordinate_span(const std::vector<std::size_t>& coords, int twist) const {
    std::vector<Vec> rows;
    for (auto c : coords) rows.push_back(basis_vector(c));
    return Subspace(ctx_, twist, dim(), rows);
}

Subspace DieudonneModule::lattice(LatticePair ab, int twist) const {
    if (ab.a < 0 || ab.b < 0 || ab.a > rank() || ab.b > rank()) {
        throw std::out_of_range("DieudonneModule::lattice: pair out of range");
    }
    std::vector<std::size_t> coords;
    for (int i = 1; i <= ab.a; ++i) coords.push_back(e(i));
    for (int j = 1; j <= ab.b; ++j) coords.push_back(f(j));
    return coordinate_span(coords, twist);
}

Subspace DieudonneModule::e_span(int twist) const { return lattice({rank(), 0}, twist); }

Subspace DieudonneModule::f_span(int twist) const {
    std::vector<std::size_t> coords;
    for (int j = 1; j <= rank(); ++j) coords.push_back(f(j));
    return coordinate_span(coords, twist);
}

DieudonneModule standard_fol_module(int n, int m, const FieldContext& ctx) { return DieudonneModule(n, m, ctx); }

// ---------------------------------------------------------------------------
// Maps and subspace operations

namespace {

const Matrix& matrix_of(const DieudonneModule& mod, DMap which) {
    return which == DMap::F ? mod.F_matrix() : mod.V_matrix();
}

/// Rows z with z . y = 0 for every y in sub.
std::vector<Vec> annihilator_rows(const FieldContext& ctx, const Subspace& sub) {
    if (sub.dim() == 0) {
        return Subspace::whole(ctx, sub.twist(), sub.ambient_dim()).basis().row_list();
    }
    return kernel_basis(ctx, sub.basis());
}

void check_same_space(const Subspace& a, const Subspace& b) {
    if (a.twist() != b.twist() || a.ambient_dim() != b.ambient_dim()) {
        throw std::invalid_argument("subspaces live in different twists");
    }
}

}  // namespace

Subspace map_image(const DieudonneModule& mod, DMap which, const Subspace& src) {
    const FieldContext& ctx = mod.field();
    int target_twist = 0;
    if (which == DMap::F) {
        if (src.twist() < 1) throw std::invalid_argument("map_image: F is defined on a Frobenius twist (twist >= 1)");
        target_twist = src.twist() - 1;
    } else {
        if (src.twist() + 1 > max_twist) throw std::invalid_argument("map_image: V would leave the twist range");
        target_twist = src.twist() + 1;
    }
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < src.dim(); ++r) rows.push_back(apply(ctx, matrix_of(mod, which), src.basis().row(r)));
    return Subspace(ctx, target_twist, mod.dim(), rows);
}

Subspace map_kernel(const DieudonneModule& mod, DMap which, int source_twist) {
    if (source_twist < 0) source_twist = which == DMap::F ? 1 : 0;
    if (which == DMap::F && source_twist < 1) throw std::invalid_argument("map_kernel: F needs twist >= 1");
    if (which == DMap::V && source_twist + 1 > max_twist) throw std::invalid_argument("map_kernel: twist out of range");
    return Subspace(mod.field(), source_twist, mod.dim(), kernel_basis(mod.field(), matrix_of(mod, which)));
}

Subspace map_preimage(const DieudonneModule& mod, DMap which, const Subspace& tgt) {
    if (which != DMap::V) throw std::invalid_argument("map_preimage: only V^{-1} is supported");
    if (tgt.twist() < 1) throw std::invalid_argument("map_preimage: target must live in a twist >= 1");
    const FieldContext& ctx = mod.field();
    // x in V^{-1}(tgt)  <=>  z . V x = 0 for every z annihilating tgt
    auto ann = annihilator_rows(ctx, tgt);
    Matrix composite = multiply(ctx, Matrix::from_rows(mod.dim(), ann), mod.V_matrix());
    return Subspace(ctx, tgt.twist() - 1, mod.dim(), kernel_basis(ctx, composite));
}

namespace {

Subspace apply_sigma(const FieldContext& ctx, const Subspace& sub, int new_twist) {
    std::vector<Vec> rows = sub.basis().row_list();
    for (auto& row : rows) {
        for (auto& x : row) x = ctx.frob(x);
    }
    return Subspace(ctx, new_twist, sub.ambient_dim(), rows);
}

}  // namespace

Subspace twist(const FieldContext& ctx, const Subspace& sub) {
    if (sub.twist() + 1 > max_twist) throw std::invalid_argument("twist: twist index would exceed range");
    return apply_sigma(ctx, sub, sub.twist() + 1);
}

Subspace untwist(const FieldContext& ctx, const Subspace& sub) {
    if (sub.twist() < 1) throw std::invalid_argument("untwist: subspace is not a twist");
    // sigma is an involution on F_{p^2}
    return apply_sigma(ctx, sub, sub.twist() - 1);
}

Subspace intersect(const FieldContext& ctx, const Subspace& a, const Subspace& b) {
    check_same_space(a, b);
    // a cap b = (a^perp + b^perp)^perp for the coordinate dot product
    auto rows = annihilator_rows(ctx, a);
    auto more = annihilator_rows(ctx, b);
    rows.insert(rows.end(), more.begin(), more.end());
    if (rows.empty()) return Subspace::whole(ctx, a.twist(), a.ambient_dim());
    return Subspace(ctx, a.twist(), a.ambient_dim(), kernel_basis(ctx, Matrix::from_rows(a.ambient_dim(), rows)));
}

Subspace sum(const FieldContext& ctx, const Subspace& a, const Subspace& b) {
    check_same_space(a, b);
    auto rows = a.basis().row_list();
    auto more = b.basis().row_list();
    rows.insert(rows.end(), more.begin(), more.end());
    return Subspace(ctx, a.twist(), a.ambient_dim(), rows);
}

Subspace orthogonal(const DieudonneModule& mod, const Subspace& sub) {
    const FieldContext& ctx = mod.field();
    if (sub.dim() == 0) return Subspace::whole(ctx, sub.twist(), mod.dim());
    std::vector<Vec> rows;
    for (std::size_t r = 0; r < sub.dim(); ++r) rows.push_back(apply(ctx, mod.pairing_matrix(), sub.basis().row(r)));
    return Subspace(ctx, sub.twist(), mod.dim(), kernel_basis(ctx, Matrix::from_rows(mod.dim(), rows)));
}

bool is_isotropic(const DieudonneModule& mod, const Subspace& sub) {
    for (std::size_t a = 0; a < sub.dim(); ++a) {
        for (std::size_t b = 0; b < sub.dim(); ++b) {
            if (!mod.pair(sub.basis().row(a), sub.basis().row(b)).is_zero()) return false;
        }
    }
    return true;
}

Subspace hodge_filtration(const DieudonneModule& mod) {
    return untwist(mod.field(), map_kernel(mod, DMap::F));
}

Subspace hodge_sigma(const DieudonneModule& mod) {
    return intersect(mod.field(), hodge_filtration(mod), mod.e_span());
}

Subspace hodge_sigma_bar(const DieudonneModule& mod) {
    return intersect(mod.field(), hodge_filtration(mod), mod.f_span());
}

Subspace p_zero(const DieudonneModule& mod) {
    return intersect(mod.field(), hodge_sigma(mod), map_kernel(mod, DMap::V));
}

bool is_graded(const DieudonneModule& mod, const Subspace& sub) {
    for (std::size_t r = 0; r < sub.dim(); ++r) {
        bool has_e = false, has_f = false;
        for (std::size_t k = 0; k < mod.dim(); ++k) {
            if (sub.basis().at(r, k).is_zero()) continue;
            (mod.is_e_coord(k) ? has_e : has_f) = true;
        }
        if (has_e && has_f) return false;
    }
    return true;
}

TypeProfile type_profile(const DieudonneModule& mod, const Subspace& sub) {
    if (!is_graded(mod, sub)) throw std::invalid_argument("type_profile: subspace is not graded");
    TypeProfile t;
    for (auto p : sub.pivots()) (mod.is_e_coord(p) ? t.sigma : t.sigma_bar) += 1;
    return t;
}

std::pair<std::vector<int>, std::vector<int>> coordinate_indices(const DieudonneModule& mod, const Subspace& sub) {
    std::pair<std::vector<int>, std::vector<int>> out;
    for (std::size_t r = 0; r < sub.dim(); ++r) {
        for (std::size_t k = 0; k < mod.dim(); ++k) {
            if (k != sub.pivots()[r] && !sub.basis().at(r, k).is_zero()) {
                throw std::invalid_argument("coordinate_indices: not a coordinate subspace");
            }
        }
        const auto p = sub.pivots()[r];
        const int N = mod.rank();
        if (mod.is_e_coord(p)) {
            out.first.push_back(static_cast<int>(p) + 1);
        } else {
            out.second.push_back(static_cast<int>(p) - N + 1);
        }
    }
    return out;
}

std::optional<LatticePair> as_lattice(const DieudonneModule& mod, const Subspace& sub) {
    std::pair<std::vector<int>, std::vector<int>> idx;
    try {
        idx = coordinate_indices(mod, sub);
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    auto initial = [](const std::vector<int>& v) {
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (v[i] != static_cast<int>(i) + 1) return false;
        }
        return true;
    };
    if (!initial(idx.first) || !initial(idx.second)) return std::nullopt;
    return LatticePair{static_cast<int>(idx.first.size()), static_cast<int>(idx.second.size())};
}

// ---------------------------------------------------------------------------
// Lattice recursion

LatticePair lattice_step(int n, int m, LatticePair pr, LatticeMap which) {
    const int N = n + m;
    if (m < 1 || m >= n) throw std::invalid_argument("lattice_step: need 1 <= m < n");
    if (pr.a < 0 || pr.b < 0 || pr.a > N || pr.b > N) throw std::out_of_range("lattice_step: pair out of range");
    const int a = pr.a, b = pr.b;
    if (which == LatticeMap::F) {
        int a_minus = b <= m ? b : (b <= 2 * m ? m : b - m);
        int b_minus = a <= n - m ? 0 : (a <= n ? a - n + m : m);
        return {a_minus, b_minus};
    }
    int a_plus = b <= m ? n : (b <= 2 * m ? b + n - m : n + m);
    int b_plus = a <= n - m ? a + m : (a <= n ? n : a);
    return {a_plus, b_plus};
}

Subspace matrix_step(const DieudonneModule& mod, const Subspace& sub, LatticeMap which) {
    if (sub.twist() != 0) throw std::invalid_argument("matrix_step: expects a subspace of D_0");
    Subspace twisted = twist(mod.field(), sub);
    return which == LatticeMap::F ? map_image(mod, DMap::F, twisted) : map_preimage(mod, DMap::V, twisted);
}

int r_of(int n, int m) {
    if (m < 1 || m >= n) throw std::invalid_argument("r_of: need 1 <= m < n");
    if (2 * m <= n) throw std::invalid_argument("r_of: r is only defined when n < 2m");
    int found = 0, count = 0;
    for (int r = 1; r <= m; ++r) {
        // r/(r+1) < m/n <= (r+1)/(r+2)
        if (r * n < m * (r + 1) && m * (r + 2) <= (r + 1) * n) {
            found = r;
            ++count;
        }
    }
    if (count != 1) throw assertion_error("r_of: window is not satisfied by a unique r");
    return found;
}

std::vector<LatticePair> canonical_word_formulas(int n, int m, int r) {
    std::vector<LatticePair> out;
    for (int k = 0; k <= 2 * r + 1; ++k) {
        int i = k / 2;
        if (k % 2 == 0) {
            out.push_back({i * m - (i - 1) * n, (i + 1) * m - i * n});
        } else {
            out.push_back({(i + 1) * m - i * n, (i + 1) * m - i * n});
        }
    }
    for (int s = 1; s <= 2 * r; ++s) {
        int j = (s + 1) / 2;
        if (s % 2 == 1) {
            out.push_back({j * n - (j - 1) * m, (r + 3 - j) * m - (r + 1 - j) * n});
        } else {
            out.push_back({(r + 2 - j) * m - (r - j) * n, j * n - (j - 1) * m});
        }
    }
    return out;
}

namespace {

std::string pair_string(LatticePair p) {
    return "D(" + std::to_string(p.a) + "," + std::to_string(p.b) + ")";
}

}  // namespace

CanonicalWord canonical_word(int n, int m, const FieldContext& ctx) {
    CanonicalWord word;
    word.r = r_of(n, m);
    const int r = word.r;
    DieudonneModule mod(n, m, ctx);

    std::vector<LatticeMap> steps(static_cast<std::size_t>(2 * r + 1), LatticeMap::F);
    steps.insert(steps.end(), static_cast<std::size_t>(2 * r), LatticeMap::V_inverse);

    LatticePair lat = lattice_step(n, m, {0, 0}, LatticeMap::V_inverse);
    Subspace mat = map_preimage(mod, DMap::V, Subspace::zero(1, mod.dim()));
    auto record = [&](const std::string& where) {
        if (mat != mod.lattice(lat)) {
            throw assertion_error("canonical_word(" + std::to_string(n) + "," + std::to_string(m) + "): " + where +
                                  ": lattice engine gives " + pair_string(lat) + ", matrix engine disagrees");
        }
        word.trace.push_back(lat);
    };
    record("V^{-1}(0)");
    for (std::size_t s = 0; s < steps.size(); ++s) {
        lat = lattice_step(n, m, lat, steps[s]);
        mat = matrix_step(mod, mat, steps[s]);
        record("step " + std::to_string(s + 1));
    }
    word.formula_trace = canonical_word_formulas(n, m, r);
    for (std::size_t k = 0; k < word.trace.size(); ++k) {
        if (word.trace[k] != word.formula_trace[k]) {
            throw assertion_error("canonical_word(" + std::to_string(n) + "," + std::to_string(m) + "): piece " +
                                  std::to_string(k) + " is " + pair_string(word.trace[k]) + ", closed form gives " +
                                  pair_string(word.formula_trace[k]));
        }
    }
    const LatticePair expected{2 * m, r * n - (r - 1) * m};
    if (lat != expected) {
        throw assertion_error("canonical_word: result " + pair_string(lat) + " differs from " + pair_string(expected));
    }
    word.lattice_result = lat;
    word.matrix_result = mat;
    return word;
}

Subspace canonical_M(int n, int m, const FieldContext& ctx) {
    DieudonneModule mod(n, m, ctx);
    if (2 * m <= n) {
        Subspace fv = map_image(mod, DMap::F, twist(ctx, map_kernel(mod, DMap::V)));
        return intersect(ctx, fv, mod.e_span());
    }
    return intersect(ctx, canonical_word(n, m, ctx).matrix_result, mod.e_span());
}

VQImage vq_image(int n, int m, const FieldContext& ctx) {
    DieudonneModule mod(n, m, ctx);
    VQImage out;
    out.image = map_image(mod, DMap::V, hodge_sigma_bar(mod));
    std::vector<std::size_t> coords;
    if (2 * m <= n) {
        for (int i = 1; i <= m; ++i) coords.push_back(mod.e(i));
    } else {
        for (int i = 1; i <= n - m; ++i) coords.push_back(mod.e(i));
        for (int i = n + 1; i <= 2 * m; ++i) coords.push_back(mod.e(i));
    }
    out.expected = mod.coordinate_span(coords, 1);
    out.m_twisted = twist(ctx, canonical_M(n, m, ctx));
    const std::string sig = "(" + std::to_string(n) + "," + std::to_string(m) + ")";
    if (out.image != out.expected) throw assertion_error("vq_image" + sig + ": V(Q) differs from the closed-form span");
    if (!out.m_twisted.contains(ctx, out.image)) throw assertion_error("vq_image" + sig + ": V(Q) not inside M^(p)");
    out.equals_m_twisted = out.image == out.m_twisted;
    if (out.equals_m_twisted != (2 * m <= n)) {
        throw assertion_error("vq_image" + sig + ": V(Q) = M^(p) should hold exactly when 2m <= n");
    }
    return out;
}

Matrix hasse_matrix(int n, int m, const FieldContext& ctx) {
    DieudonneModule mod(n, m, ctx);
    std::vector<std::size_t> q_coords;
    for (int j = m + 1; j <= 2 * m; ++j) q_coords.push_back(mod.f(j));
    if (hodge_sigma_bar(mod) != mod.coordinate_span(q_coords, 0)) {
        throw assertion_error("hasse_matrix: Q is not spanned by f_{m+1..2m}");
    }
    const auto msz = static_cast<std::size_t>(m);
    Matrix h(msz, msz);
    for (std::size_t k = 0; k < msz; ++k) {
        Vec vq = apply(ctx, mod.V_matrix(), mod.basis_vector(q_coords[k]));
        Vec hq = apply(ctx, mod.V_matrix(), vq);
        for (std::size_t c = 0; c < mod.dim(); ++c) {
            auto pos = std::find(q_coords.begin(), q_coords.end(), c);
            if (pos == q_coords.end()) {
                if (!hq[c].is_zero()) throw assertion_error("hasse_matrix: image leaves Q^(p^2)");
            } else {
                h.at(static_cast<std::size_t>(pos - q_coords.begin()), k) = hq[c];
            }
        }
    }
    return h;
}

// ---------------------------------------------------------------------------
// Reports

namespace {

nlohmann::json sparse_vector(const DieudonneModule& mod, const Vec& v) {
    nlohmann::json j = nlohmann::json::object();
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!v[k].is_zero()) j[mod.basis_label(k)] = format_fq(v[k]);
    }
    return j;
}

nlohmann::json matrix_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_fq(m.at(r, c)));
        rows.push_back(row);
    }
    return rows;
}

nlohmann::json pair_json(LatticePair p) { return nlohmann::json::array({p.a, p.b}); }

}  // namespace

nlohmann::json subspace_to_json(const DieudonneModule& mod, const Subspace& sub) {
    nlohmann::json j{{"twist", sub.twist()}, {"dim", sub.dim()}};
    if (is_graded(mod, sub)) {
        TypeProfile t = type_profile(mod, sub);
        j["type"] = nlohmann::json::array({t.sigma, t.sigma_bar});
    }
    try {
        auto [e, f] = coordinate_indices(mod, sub);
        j["e"] = e;
        j["f"] = f;
    } catch (const std::invalid_argument&) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t r = 0; r < sub.dim(); ++r) rows.push_back(sparse_vector(mod, sub.basis().row(r)));
        j["rows"] = rows;
    }
    return j;
}

nlohmann::json dieudonne_report(const DieudonneModule& mod) {
    const FieldContext& ctx = mod.field();
    nlohmann::json F = nlohmann::json::object(), V = nlohmann::json::object();
    for (std::size_t k = 0; k < mod.dim(); ++k) {
        F[mod.basis_label(k) + "^(p)"] = sparse_vector(mod, mod.F_matrix().column(k));
        V[mod.basis_label(k)] = sparse_vector(mod, mod.V_matrix().column(k));
    }
    nlohmann::json pairing = nlohmann::json::array();
    for (int i = 1; i <= mod.rank(); ++i) {
        pairing.push_back({{"e", i}, {"f", mod.rank() + 1 - i}, {"value", format_fq(ctx.one())}});
    }
    nlohmann::json j{
        {"n", mod.n()},
        {"m", mod.m()},
        {"p", ctx.p()},
        {"nonresidue", ctx.c()},
        {"F", F},
        {"V", V},
        {"pairing", pairing},
        {"image_F", subspace_to_json(mod, map_image(mod, DMap::F, Subspace::whole(ctx, 1, mod.dim())))},
        {"kernel_V", subspace_to_json(mod, map_kernel(mod, DMap::V))},
        {"image_V", subspace_to_json(mod, map_image(mod, DMap::V, Subspace::whole(ctx, 0, mod.dim())))},
        {"kernel_F", subspace_to_json(mod, map_kernel(mod, DMap::F))},
        {"omega", subspace_to_json(mod, hodge_filtration(mod))},
        {"P", subspace_to_json(mod, hodge_sigma(mod))},
        {"Q", subspace_to_json(mod, hodge_sigma_bar(mod))},
        {"P0", subspace_to_json(mod, p_zero(mod))},
        {"M", subspace_to_json(mod, canonical_M(mod.n(), mod.m(), ctx))},
        {"V_of_Q", subspace_to_json(mod, vq_image(mod.n(), mod.m(), ctx).image)},
        {"hasse_matrix", matrix_json(hasse_matrix(mod.n(), mod.m(), ctx))},
    };
    j["canonical_word"] = 2 * mod.m() > mod.n() ? canonical_word_to_json(canonical_word(mod.n(), mod.m(), ctx))
                                                 : nlohmann::json(nullptr);
    return j;
}

nlohmann::json canonical_word_to_json(const CanonicalWord& word) {
    nlohmann::json trace = nlohmann::json::array(), formulas = nlohmann::json::array();
    for (auto p : word.trace) trace.push_back(pair_json(p));
    for (auto p : word.formula_trace) formulas.push_back(pair_json(p));
    return {{"r", word.r}, {"result", pair_json(word.lattice_result)}, {"trace", trace}, {"formula_trace", formulas}};
}

}  // namespace eofol
