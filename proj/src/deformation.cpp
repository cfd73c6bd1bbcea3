#include "eofol/deformation.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace eofol {

namespace {

std::vector<std::string> ring_generators(int n, int m) {
    std::vector<std::string> g;
    for (int i = 1; i <= n - m; ++i) {
        for (int j = 1; j <= m; ++j) g.push_back(DeformationContext::u_name(i, j));
    }
    for (int l = 1; l <= m; ++l) {
        for (int j = 1; j <= m; ++j) g.push_back(DeformationContext::v_name(l, j));
    }
    return g;
}

std::string signature(int n, int m) { return "(" + std::to_string(n) + "," + std::to_string(m) + ")"; }

}  // namespace

DeformationContext::DeformationContext(int n, int m, const FieldContext& ctx)
    : base_(n, m, ctx), ring_(ctx, ring_generators(n, m)) {}

std::string DeformationContext::u_name(int i, int j) { return "u_" + std::to_string(i) + "_" + std::to_string(j); }

std::string DeformationContext::v_name(int l, int j) { return "v_" + std::to_string(l) + "_" + std::to_string(j); }

std::string DeformationContext::indexed_name(const std::string& generator) const {
    auto first = generator.find('_'), second = generator.rfind('_');
    if (first == std::string::npos || first == second) throw std::invalid_argument("indexed_name: bad generator " + generator);
    int row = std::stoi(generator.substr(first + 1, second - first - 1));
    int col = std::stoi(generator.substr(second + 1)) + n() - m();
    if (generator[0] == 'v') row += n();
    return std::string(1, generator[0]) + "_{" + std::to_string(row) + "," + std::to_string(col) + "}";
}

std::vector<std::string> DeformationContext::u_generators() const {
    std::vector<std::string> out;
    for (const auto& g : ring_.generators()) {
        if (g[0] == 'u') out.push_back(g);
    }
    return out;
}

RVector DeformationContext::constant_vector(const Vec& v) const {
    RVector out;
    out.reserve(v.size());
    for (auto x : v) out.push_back(ring_.constant(x));
    return out;
}

Vec DeformationContext::reduction(const RVector& v) const {
    Vec out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(x.constant);
    return out;
}

DefRingElt DeformationContext::pair(const RVector& x, const RVector& y) const {
    const Matrix& J = base_.pairing_matrix();
    DefRingElt s = ring_.zero();
    for (std::size_t a = 0; a < J.rows(); ++a) {
        if (x[a].is_zero()) continue;
        for (std::size_t b = 0; b < J.cols(); ++b) {
            if (J.at(a, b).is_zero() || y[b].is_zero()) continue;
            s = ring_.add(s, ring_.scale(J.at(a, b), ring_.mul(x[a], y[b])));
        }
    }
    return s;
}

RVector DeformationContext::apply(const Matrix& mat, const RVector& x) const {
    RVector y(mat.rows(), ring_.zero());
    for (std::size_t r = 0; r < mat.rows(); ++r) {
        for (std::size_t c = 0; c < mat.cols(); ++c) {
            if (!mat.at(r, c).is_zero() && !x[c].is_zero()) y[r] = ring_.add(y[r], ring_.scale(mat.at(r, c), x[c]));
        }
    }
    return y;
}

std::vector<RVector> canonical_generators(const DeformationContext& dc, const std::vector<RVector>& gens) {
    const DefRing& R = dc.ring();
    std::vector<RVector> rows = gens;
    const std::size_t dim = dc.base().dim();
    std::size_t lead = 0;
    for (std::size_t c = 0; c < dim && lead < rows.size(); ++c) {
        std::size_t piv = lead;
        while (piv < rows.size() && !rows[piv][c].is_unit()) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[lead]);
        DefRingElt s = R.inv(rows[lead][c]);
        for (auto& x : rows[lead]) x = R.mul(s, x);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == lead || rows[r][c].is_zero()) continue;
            DefRingElt f = rows[r][c];
            for (std::size_t k = 0; k < dim; ++k) rows[r][k] = R.sub(rows[r][k], R.mul(f, rows[lead][k]));
        }
        ++lead;
    }
    for (std::size_t r = lead; r < rows.size(); ++r) {
        if (std::any_of(rows[r].begin(), rows[r].end(), [](const DefRingElt& x) { return !x.is_zero(); })) {
            throw std::invalid_argument("canonical_generators: span is not a free direct summand");
        }
    }
    rows.resize(lead);
    return rows;
}

UniversalDeformation universal_deformation(const DeformationContext& dc) {
    const DieudonneModule& mod = dc.base();
    const DefRing& R = dc.ring();
    const FieldContext& k = mod.field();
    const int n = dc.n(), m = dc.m(), N = n + m;
    UniversalDeformation out;

    auto basis = [&](std::size_t coord) { return dc.constant_vector(mod.basis_vector(coord)); };

    for (int i = 1; i <= n - m; ++i) {
        RVector g = basis(mod.e(i));
        for (int j = 1; j <= m; ++j) g[mod.e(n - m + j)] = R.gen(DeformationContext::u_name(i, j));
        out.omega_sigma.push_back(std::move(g));
    }
    for (int l = 1; l <= m; ++l) {
        RVector g = basis(mod.e(n + l));
        for (int j = 1; j <= m; ++j) g[mod.e(n - m + j)] = R.gen(DeformationContext::v_name(l, j));
        out.omega_sigma.push_back(std::move(g));
    }

    const FqElt minus_one = k.neg(k.one());
    for (int j = 1; j <= m; ++j) {
        const int col = n - m + j;
        RVector h = basis(mod.f(N + 1 - col));
        for (int i = 1; i <= n - m; ++i) h[mod.f(N + 1 - i)] = R.term(minus_one, DeformationContext::u_name(i, j));
        for (int l = 1; l <= m; ++l) h[mod.f(N + 1 - (n + l))] = R.term(minus_one, DeformationContext::v_name(l, j));
        out.omega_sigma_bar.push_back(std::move(h));
    }

    // Annihilator of omega(Sigma) in the f-span: with A = A_0 + sum_s eps_s A_s
    // the pairing matrix of the generators against f_1..f_N, solve
    // A_0 x_0 = 0 and A_0 x_s = -A_s x_0.
    const auto rows = out.omega_sigma.size();
    const auto cols = static_cast<std::size_t>(N);
    Matrix A0(rows, cols);
    std::map<std::string, Matrix> As;
    for (const auto& s : R.generators()) As.emplace(s, Matrix(rows, cols));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            DefRingElt v = dc.pair(out.omega_sigma[r], basis(mod.f(static_cast<int>(c) + 1)));
            A0.at(r, c) = v.constant;
            for (const auto& [s, coeff] : v.linear) As.at(s).at(r, c) = coeff;
        }
    }
    std::vector<RVector> ann;
    for (const Vec& x0 : kernel_basis(k, A0)) {
        RVector x(mod.dim(), R.zero());
        for (std::size_t c = 0; c < cols; ++c) x[mod.f(static_cast<int>(c) + 1)] = R.constant(x0[c]);
        for (const auto& [s, As_mat] : As) {
            Vec rhs = eofol::apply(k, As_mat, x0);
            for (auto& y : rhs) y = k.neg(y);
            auto xs = solve(k, A0, rhs);
            if (!xs) throw assertion_error("universal_deformation: annihilator system inconsistent");
            for (std::size_t c = 0; c < cols; ++c) {
                auto& slot = x[mod.f(static_cast<int>(c) + 1)];
                slot = R.add(slot, R.term((*xs)[c], s));
            }
        }
        ann.push_back(std::move(x));
    }
    out.omega_sigma_bar_annihilator = ann;

    if (canonical_generators(dc, out.omega_sigma_bar) != canonical_generators(dc, ann)) {
        throw assertion_error("universal_deformation" + signature(n, m) +
                              ": closed-form omega(Sigma-bar) differs from the annihilator of omega(Sigma)");
    }
    return out;
}

bool is_isotropic_over_R(const DeformationContext& dc, const std::vector<RVector>& gens) {
    for (const auto& x : gens) {
        for (const auto& y : gens) {
            if (!dc.pair(x, y).is_zero()) return false;
        }
    }
    return true;
}

namespace {

Subspace residue_target(const DeformationContext& dc) {
    const int n = dc.n(), m = dc.m();
    const FieldContext& k = dc.base().field();
    if (2 * m <= n) return vq_image(n, m, k).image;
    return twist(k, canonical_M(n, m, k));
}

}  // namespace

VImageResidues v_image_residues(const DeformationContext& dc) {
    const DieudonneModule& mod = dc.base();
    const FieldContext& k = mod.field();
    const int n = dc.n(), m = dc.m(), N = n + m;
    const auto ud = universal_deformation(dc);
    VImageResidues out{residue_target(dc), {}};

    std::set<std::size_t> target_pivots(out.target.pivots().begin(), out.target.pivots().end());
    const int lim = std::min(m, n - m);
    for (int j = 1; j <= m; ++j) {
        RVector image = dc.apply(mod.V_matrix(), ud.omega_sigma_bar[static_cast<std::size_t>(j - 1)]);
        Vec constant = out.target.reduce(k, dc.reduction(image));
        if (std::any_of(constant.begin(), constant.end(), [](FqElt x) { return !x.is_zero(); })) {
            throw assertion_error("v_image_residues" + signature(n, m) + ": constant part leaves the target");
        }
        Residue res{j, {}};
        for (const auto& s : dc.ring().generators()) {
            Vec coeff(mod.dim(), k.zero());
            for (std::size_t c = 0; c < mod.dim(); ++c) {
                auto it = image[c].linear.find(s);
                if (it != image[c].linear.end()) coeff[c] = it->second;
            }
            coeff = out.target.reduce(k, coeff);
            if (std::any_of(coeff.begin(), coeff.end(), [](FqElt x) { return !x.is_zero(); })) {
                res.terms.emplace(s, std::move(coeff));
            }
        }

        std::map<std::string, Vec> expected;
        for (int i = 1; i <= n - m; ++i) {
            Vec v(mod.dim(), k.zero());
            const int idx = i <= lim ? N + 1 - i : n + 1 - i;
            if (target_pivots.count(mod.e(idx))) {
                throw assertion_error("v_image_residues: residue index e" + std::to_string(idx) +
                                      " overlaps the target summand");
            }
            v[mod.e(idx)] = k.neg(k.one());
            expected.emplace(DeformationContext::u_name(i, j), std::move(v));
        }
        if (res.terms != expected) {
            throw assertion_error("v_image_residues" + signature(n, m) + ": residue for column " +
                                  std::to_string(n - m + j) + " deviates from the closed form");
        }
        out.residues.push_back(std::move(res));
    }
    return out;
}

std::vector<std::string> sfol_ideal(const DeformationContext& dc) {
    const DieudonneModule& mod = dc.base();
    const FieldContext& k = mod.field();
    const auto& gens = dc.ring().generators();
    const VImageResidues vr = v_image_residues(dc);

    // Each (column, coordinate) of a residue is a linear form in the generators.
    std::vector<Vec> forms;
    std::set<std::size_t> used_coords;
    for (const auto& res : vr.residues) {
        for (std::size_t c = 0; c < mod.dim(); ++c) {
            Vec form(gens.size(), k.zero());
            bool nonzero = false;
            for (std::size_t g = 0; g < gens.size(); ++g) {
                auto it = res.terms.find(gens[g]);
                if (it == res.terms.end() || it->second[c].is_zero()) continue;
                form[g] = it->second[c];
                nonzero = true;
            }
            if (nonzero) {
                forms.push_back(std::move(form));
                used_coords.insert(c);
            }
        }
    }

    std::vector<Vec> reduced_basis;
    for (auto c : used_coords) reduced_basis.push_back(vr.target.reduce(k, mod.basis_vector(c)));
    if (rank(k, Matrix::from_rows(mod.dim(), reduced_basis)) != used_coords.size()) {
        throw assertion_error("sfol_ideal: residue basis vectors are dependent modulo the target");
    }

    std::vector<std::string> ideal;
    if (!forms.empty()) {
        Echelon e = rref(k, Matrix::from_rows(gens.size(), forms));
        for (std::size_t r = 0; r < e.pivots.size(); ++r) {
            for (std::size_t g = 0; g < gens.size(); ++g) {
                if (g != e.pivots[r] && !e.reduced.at(r, g).is_zero()) {
                    throw assertion_error("sfol_ideal: ideal is not generated by a subset of the parameters");
                }
            }
            ideal.push_back(gens[e.pivots[r]]);
        }
    }
    if (ideal != dc.u_generators()) {
        throw assertion_error("sfol_ideal" + signature(dc.n(), dc.m()) + ": ideal is not (u_ij)");
    }
    return ideal;
}

TangentSystem build_tangent_system(const DieudonneModule& mod) {
    const FieldContext& k = mod.field();
    const Subspace P = hodge_sigma(mod);
    const Subspace P0 = p_zero(mod);
    const Subspace H0 = intersect(k, map_kernel(mod, DMap::V), mod.e_span());
    if (!P.contains(k, P0) || !H0.contains(k, P0)) throw assertion_error("tangent_system: P_0 not inside P and H_0");

    // Coordinates on H(Sigma)/P: e-coordinates that are not pivots of P.
    std::vector<std::size_t> quotient;
    for (int i = 1; i <= mod.rank(); ++i) {
        if (std::find(P.pivots().begin(), P.pivots().end(), mod.e(i)) == P.pivots().end()) quotient.push_back(mod.e(i));
    }
    // Complement of P_0 in H_0(Sigma).
    std::vector<Vec> complement;
    {
        std::vector<Vec> reduced;
        for (std::size_t r = 0; r < H0.dim(); ++r) reduced.push_back(P0.reduce(k, H0.basis().row(r)));
        complement = rref(k, Matrix::from_rows(mod.dim(), reduced)).reduced.row_list();
    }

    const std::size_t nP = P.dim(), nP0 = P0.dim(), nq = quotient.size(), nc = complement.size();
    TangentSystem ts;
    ts.phi_unknowns = nP * nq;
    ts.psi_unknowns = nP0 * nc;
    ts.constraints = Matrix(nP0 * nq, ts.phi_unknowns + ts.psi_unknowns);
    for (std::size_t a = 0; a < nP0; ++a) {
        Vec p0 = P0.basis().row(a);
        for (std::size_t qi = 0; qi < nq; ++qi) {
            const std::size_t row = a * nq + qi;
            // phi(p0) = sum_k lambda_k phi(P_k), lambda read off the pivots of P
            for (std::size_t kidx = 0; kidx < nP; ++kidx) ts.constraints.at(row, kidx * nq + qi) = p0[P.pivots()[kidx]];
            for (std::size_t b = 0; b < nc; ++b) {
                FqElt iota = P.reduce(k, complement[b])[quotient[qi]];
                ts.constraints.at(row, ts.phi_unknowns + a * nc + b) = k.neg(iota);
            }
        }
    }
    return ts;
}

TangentDims tangent_system(int n, int m, const FieldContext& ctx) {
    DieudonneModule mod(n, m, ctx);
    TangentSystem ts = build_tangent_system(mod);
    const FieldContext& k = mod.field();
    const Matrix& C = ts.constraints;
    Matrix phi_part(C.rows(), ts.phi_unknowns), psi_part(C.rows(), ts.psi_unknowns);
    for (std::size_t r = 0; r < C.rows(); ++r) {
        for (std::size_t c = 0; c < ts.phi_unknowns; ++c) phi_part.at(r, c) = C.at(r, c);
        for (std::size_t c = 0; c < ts.psi_unknowns; ++c) psi_part.at(r, c) = C.at(r, ts.phi_unknowns + c);
    }
    TangentDims d;
    d.total = ts.phi_unknowns + ts.psi_unknowns - rank(k, C);
    d.foliation = ts.phi_unknowns - rank(k, phi_part);
    d.fiber = ts.psi_unknowns - rank(k, psi_part);
    return d;
}

nlohmann::json deformation_report(const DeformationContext& dc) {
    const DieudonneModule& mod = dc.base();
    const DefRing& R = dc.ring();
    auto vec_json = [&](const RVector& v) {
        nlohmann::json j = nlohmann::json::object();
        for (std::size_t c = 0; c < v.size(); ++c) {
            if (!v[c].is_zero()) j[mod.basis_label(c)] = R.format(v[c]);
        }
        return j;
    };
    const auto ud = universal_deformation(dc);
    nlohmann::json sigma = nlohmann::json::array(), sigma_bar = nlohmann::json::array();
    for (const auto& g : ud.omega_sigma) sigma.push_back(vec_json(g));
    for (const auto& g : ud.omega_sigma_bar) sigma_bar.push_back(vec_json(g));

    const auto vr = v_image_residues(dc);
    nlohmann::json residues = nlohmann::json::array();
    for (const auto& res : vr.residues) {
        nlohmann::json terms = nlohmann::json::object();
        for (const auto& [g, vec] : res.terms) {
            nlohmann::json coords = nlohmann::json::object();
            for (std::size_t c = 0; c < vec.size(); ++c) {
                if (!vec[c].is_zero()) coords[mod.basis_label(c) + "^(p)"] = format_fq(vec[c]);
            }
            terms[g] = coords;
        }
        residues.push_back({{"j", res.j}, {"column", dc.n() - dc.m() + res.j}, {"terms", terms}});
    }
    nlohmann::json ideal = nlohmann::json::array(), ideal_ix = nlohmann::json::array();
    for (const auto& g : sfol_ideal(dc)) {
        ideal.push_back(g);
        ideal_ix.push_back(dc.indexed_name(g));
    }
    const TangentDims dims = tangent_system(dc.n(), dc.m(), mod.field());
    return {
        {"n", dc.n()},
        {"m", dc.m()},
        {"p", mod.field().p()},
        {"generators", R.generators()},
        {"omega_sigma", sigma},
        {"omega_sigma_bar", sigma_bar},
        {"isotropic", is_isotropic_over_R(dc, [&] {
             auto all = ud.omega_sigma;
             all.insert(all.end(), ud.omega_sigma_bar.begin(), ud.omega_sigma_bar.end());
             return all;
         }())},
        {"residue_target", subspace_to_json(mod, vr.target)},
        {"residues", residues},
        {"ideal", ideal},
        {"ideal_indexed", ideal_ix},
        {"tangent", {{"total", dims.total}, {"foliation", dims.foliation}, {"fiber", dims.fiber}}},
    };
}

}  // namespace eofol
