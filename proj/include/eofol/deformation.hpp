#pragma once

// First-order deformation of the foliation-stratum Dieudonne module over
// R = k[u, v]/(u, v)^2: the Hodge filtration over R, the V-image residues,
// the ideal cutting out the stratum, and the tangent-space system for the
// blow-up S#.
//
// Generator u_<i>_<j> (1 <= i <= n-m, 1 <= j <= m) is the deformation
// parameter moving e_i towards e_{n-m+j}; v_<l>_<j> (1 <= l, j <= m) moves
// e_{n+l} towards e_{n-m+j}.

#include <map>
#include <string>
#include <vector>

#include "eofol/dieudonne.hpp"
#include "eofol/gf.hpp"
#include "json.hpp"

namespace eofol {

using RVector = std::vector<DefRingElt>;

class DeformationContext {
public:
    DeformationContext(int n, int m, const FieldContext& ctx);

    const DieudonneModule& base() const { return base_; }
    const DefRing& ring() const { return ring_; }
    int n() const { return base_.n(); }
    int m() const { return base_.m(); }

    static std::string u_name(int i, int j);
    static std::string v_name(int l, int j);
    /// u_{i,n-m+j} / v_{n+l,n-m+j}, with the column index counted in [1, n+m].
    std::string indexed_name(const std::string& generator) const;
    std::vector<std::string> u_generators() const;

    RVector constant_vector(const Vec& v) const;
    /// Constant part of every coordinate.
    Vec reduction(const RVector& v) const;
    DefRingElt pair(const RVector& x, const RVector& y) const;
    /// R-linear extension of a constant matrix.
    RVector apply(const Matrix& m, const RVector& x) const;

private:
    DieudonneModule base_;
    DefRing ring_;
};

/// Canonical generators of the R-span of `gens`: constant parts in reduced
/// echelon form and linear parts zero on the pivot columns. Throws if the
/// constant parts are linearly dependent (the span is not a free summand).
std::vector<RVector> canonical_generators(const DeformationContext& dc, const std::vector<RVector>& gens);

struct UniversalDeformation {
    std::vector<RVector> omega_sigma;
    /// Closed form, one generator per column j = 1..m.
    std::vector<RVector> omega_sigma_bar;
    /// Annihilator of omega_sigma inside the f-span over R.
    std::vector<RVector> omega_sigma_bar_annihilator;
};

/// Throws assertion_error if the two descriptions of omega(Sigma-bar) differ.
UniversalDeformation universal_deformation(const DeformationContext& dc);
bool is_isotropic_over_R(const DeformationContext& dc, const std::vector<RVector>& gens);

struct Residue {
    int j = 0;  // column index in [1, m]
    /// generator -> coefficient vector in D_0^(p), reduced modulo the target
    std::map<std::string, Vec> terms;
};

struct VImageResidues {
    Subspace target;  // V(Q)_x if 2m <= n, M_x^(p) otherwise
    std::vector<Residue> residues;
};

/// V of each omega(Sigma-bar) generator modulo R (x) target. Throws
/// assertion_error if a residue deviates from the closed form
/// -sum_{i<=min(m,n-m)} u_ij e^(p)_{n+m+1-i} - sum_{i>min(m,n-m)} u_ij e^(p)_{n+1-i}.
VImageResidues v_image_residues(const DeformationContext& dc);

/// Generators of the ideal whose vanishing puts V(omega(Sigma-bar)) inside
/// R (x) target. Throws assertion_error unless it is exactly {u_ij}.
std::vector<std::string> sfol_ideal(const DeformationContext& dc);

struct TangentSystem {
    std::size_t phi_unknowns = 0;  // Hom(P, H(Sigma)/P)
    std::size_t psi_unknowns = 0;  // Hom(P_0, H_0(Sigma)/P_0)
    /// Rows of phi|_{P_0} - psi = 0 in H(Sigma)/P; columns phi first, then psi.
    Matrix constraints;
};

struct TangentDims {
    std::size_t total = 0;       // dim S#(k[eps])_y
    std::size_t foliation = 0;   // psi = 0 slice
    std::size_t fiber = 0;       // phi = 0 slice
    bool operator==(const TangentDims&) const = default;
};

TangentSystem build_tangent_system(const DieudonneModule& mod);
TangentDims tangent_system(int n, int m, const FieldContext& ctx);

nlohmann::json deformation_report(const DeformationContext& dc);

}  // namespace eofol
