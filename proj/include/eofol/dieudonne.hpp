#pragma once

// The Dieudonne module D_0 of A_x[p] at a point x of the foliation stratum,
// subspace calculus across Frobenius twists, the D(a,b) lattice recursion for
// the canonical filtration, and the Hasse matrix.
//
// Coordinates: D_0 has basis e_1..e_N, f_1..f_N with N = n+m. Coordinate
// index i-1 is e_i and N+j-1 is f_j. The same indices are used for every
// Frobenius twist D_0^(p^k); a Subspace records which twist it lives in.

#include <optional>
#include <string>
#include <vector>

#include "eofol/gf.hpp"
#include "eofol/linalg.hpp"
#include "json.hpp"

namespace eofol {

enum class DMap { F, V };

inline constexpr int max_twist = 2;

class Subspace {
public:
    Subspace() = default;
    /// Echelonizes `generators` (each of length ambient_dim) inside D_0^(p^twist).
    Subspace(const FieldContext& ctx, int twist, std::size_t ambient_dim, const std::vector<Vec>& generators);

    static Subspace zero(int twist, std::size_t ambient_dim);
    static Subspace whole(const FieldContext& ctx, int twist, std::size_t ambient_dim);

    int twist() const { return twist_; }
    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const FieldContext& ctx, const Vec& v) const;
    bool contains(const FieldContext& ctx, const Subspace& other) const;
    /// Subtracts basis multiples so that v vanishes on every pivot column.
    Vec reduce(const FieldContext& ctx, Vec v) const;

    bool operator==(const Subspace&) const = default;

private:
    int twist_ = 0;
    std::size_t ambient_ = 0;
    Matrix basis_;
    std::vector<std::size_t> pivots_;
};

struct LatticePair {
    int a = 0;
    int b = 0;
    auto operator<=>(const LatticePair&) const = default;
};

class DieudonneModule {
public:
    DieudonneModule(int n, int m, FieldContext ctx);

    int n() const { return n_; }
    int m() const { return m_; }
    int rank() const { return n_ + m_; }
    std::size_t dim() const { return static_cast<std::size_t>(2 * (n_ + m_)); }
    const FieldContext& field() const { return ctx_; }

    std::size_t e(int i) const;
    std::size_t f(int j) const;
    Vec basis_vector(std::size_t coord) const;
    std::string basis_label(std::size_t coord) const;
    bool is_e_coord(std::size_t coord) const { return coord < static_cast<std::size_t>(rank()); }

    /// Column k holds F of the k-th basis vector of the twisted module.
    const Matrix& F_matrix() const { return F_; }
    /// Column k holds V of the k-th basis vector.
    const Matrix& V_matrix() const { return V_; }
    /// pairing()(x, y) = {basis_x, basis_y}_phi
    const Matrix& pairing_matrix() const { return pairing_; }
    FqElt pair(const Vec& x, const Vec& y) const;

    /// Span{e_1..e_a, f_1..f_b} inside the given twist.
    Subspace lattice(LatticePair ab, int twist = 0) const;
    Subspace coordinate_span(const std::vector<std::size_t>& coords, int twist) const;
    Subspace e_span(int twist = 0) const;
    Subspace f_span(int twist = 0) const;

private:
    int n_;
    int m_;
    FieldContext ctx_;
    Matrix F_;
    Matrix V_;
    Matrix pairing_;
};

DieudonneModule standard_fol_module(int n, int m, const FieldContext& ctx);

Subspace map_image(const DieudonneModule& mod, DMap which, const Subspace& src);
/// Kernel of F (on twist source_twist >= 1) or V (on twist source_twist <= 1).
/// Default source: twist 1 for F, twist 0 for V.
Subspace map_kernel(const DieudonneModule& mod, DMap which, int source_twist = -1);
/// { x : V(x) in tgt }, one twist below tgt.
Subspace map_preimage(const DieudonneModule& mod, DMap which, const Subspace& tgt);
Subspace twist(const FieldContext& ctx, const Subspace& sub);
Subspace untwist(const FieldContext& ctx, const Subspace& sub);

Subspace intersect(const FieldContext& ctx, const Subspace& a, const Subspace& b);
Subspace sum(const FieldContext& ctx, const Subspace& a, const Subspace& b);
/// {x : {x, s}_phi = 0 for all s in sub}
Subspace orthogonal(const DieudonneModule& mod, const Subspace& sub);
bool is_isotropic(const DieudonneModule& mod, const Subspace& sub);

/// Hodge filtration omega = (D^(p)[F])^(p^-1), its Sigma part P and
/// Sigma-bar part Q, and P_0 = P cap D[V].
Subspace hodge_filtration(const DieudonneModule& mod);
Subspace hodge_sigma(const DieudonneModule& mod);
Subspace hodge_sigma_bar(const DieudonneModule& mod);
Subspace p_zero(const DieudonneModule& mod);

struct TypeProfile {
    std::size_t sigma = 0;
    std::size_t sigma_bar = 0;
    bool balanced() const { return sigma == sigma_bar; }
    bool operator==(const TypeProfile&) const = default;
};

bool is_graded(const DieudonneModule& mod, const Subspace& sub);
TypeProfile type_profile(const DieudonneModule& mod, const Subspace& sub);
/// For a coordinate subspace: the e- and f-indices (1-based) spanning it.
/// Throws if the subspace is not spanned by standard basis vectors.
std::pair<std::vector<int>, std::vector<int>> coordinate_indices(const DieudonneModule& mod, const Subspace& sub);
/// Returns (a, b) when sub = D(a, b), nullopt otherwise.
std::optional<LatticePair> as_lattice(const DieudonneModule& mod, const Subspace& sub);

enum class LatticeMap { F, V_inverse };

/// F D(a,b)^(p) = D(a-, b-) and V^{-1} D(a,b)^(p) = D(a+, b+).
LatticePair lattice_step(int n, int m, LatticePair pair, LatticeMap which);
/// Matrix-engine counterpart of lattice_step on the standard module.
Subspace matrix_step(const DieudonneModule& mod, const Subspace& sub, LatticeMap which);

/// The unique r >= 1 with r/(r+1) < m/n <= (r+1)/(r+2). Requires n < 2m.
int r_of(int n, int m);

struct CanonicalWord {
    int r = 0;
    LatticePair lattice_result;
    Subspace matrix_result;
    /// Pairs after V^{-1}(0), then each of the 2r+1 F steps, then each of the
    /// 2r V^{-1} steps (4r+2 entries).
    std::vector<LatticePair> trace;
    /// Closed forms for the same pieces.
    std::vector<LatticePair> formula_trace;
};

/// Closed forms F^{2i}V^{-1}(0), F^{2i+1}V^{-1}(0) (0 <= i <= r), then
/// V^{-2j+1}F^{2r+1}V^{-1}(0), V^{-2j}F^{2r+1}V^{-1}(0) (1 <= j <= r).
std::vector<LatticePair> canonical_word_formulas(int n, int m, int r);

/// Evaluates V^{-2r} F^{2r+1} V^{-1}(0) by the lattice tables and by the
/// matrix engine. Throws assertion_error if the engines, the closed forms or
/// the final D(2m, rn-(r-1)m) disagree.
CanonicalWord canonical_word(int n, int m, const FieldContext& ctx);

/// Sigma part of FV^{-1}(0) when 2m <= n, of V^{-2r}F^{2r+1}V^{-1}(0) otherwise.
Subspace canonical_M(int n, int m, const FieldContext& ctx);

struct VQImage {
    Subspace image;                 // V(Q), twist 1
    Subspace expected;              // span given by the closed form
    Subspace m_twisted;             // canonical_M twisted once
    bool equals_m_twisted = false;  // holds iff 2m <= n
};

VQImage vq_image(int n, int m, const FieldContext& ctx);

/// Matrix of V_P^(p) o V_Q : Q -> Q^(p^2) in the bases f_{m+1..2m}.
Matrix hasse_matrix(int n, int m, const FieldContext& ctx);

nlohmann::json subspace_to_json(const DieudonneModule& mod, const Subspace& sub);
nlohmann::json dieudonne_report(const DieudonneModule& mod);
nlohmann::json canonical_word_to_json(const CanonicalWord& word);

}  // namespace eofol
