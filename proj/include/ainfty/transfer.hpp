#pragma once

#include "ainfinity.hpp"

#include <memory>
#include <set>

namespace ainfty {

/// Linear map between (possibly different) spaces as a dense-by-columns
/// sparse matrix: column j = image of basis vector j.
template <class K>
class LinearMap {
  public:
    LinearMap() : src_(nullptr), dst_(nullptr) {}
    LinearMap(const GradedSpace<K>* src, const GradedSpace<K>* dst)
        : src_(src), dst_(dst), cols_(src->dim()) {}

    const GradedSpace<K>* source() const { return src_; }
    const GradedSpace<K>* target() const { return dst_; }

    void set_column(int j, const Element<K>& v) { cols_[j] = v.coeffs(); }
    Element<K> apply(const Element<K>& x) const {
        Element<K> out(dst_);
        for (const auto& [j, c] : x.coeffs()) out.add_scaled(Element<K>(dst_, cols_[j]), c);
        return out;
    }
    Element<K> column(int j) const { return Element<K>(dst_, cols_[j]); }

    Matrix<K> matrix() const {
        Matrix<K> m(dst_->dim(), src_->dim());
        for (int j = 0; j < src_->dim(); ++j)
            for (const auto& [i, c] : cols_[j]) m.set(i, j, c);
        return m;
    }
    static LinearMap from_matrix(const GradedSpace<K>* src, const GradedSpace<K>* dst, const Matrix<K>& m) {
        LinearMap out(src, dst);
        for (int r = 0; r < m.rows(); ++r)
            for (const auto& [c, v] : m.row(r)) out.cols_[c][r] = v;
        return out;
    }
    bool operator==(const LinearMap& o) const { return cols_ == o.cols_; }

  private:
    const GradedSpace<K>* src_;
    const GradedSpace<K>* dst_;
    std::vector<SparseVec<K>> cols_;
};

/// Contraction data for homotopy transfer onto cohomology:
/// p1 q1 = 1_H,  im q1 ⊆ ker ∂,  1_A - q1 p1 = ∂ h1 + h1 ∂  (exact).
template <class K>
struct TransferData {
    std::shared_ptr<GradedSpace<K>> cohomology;  // basis of classes
    LinearMap<K> p1;                             // A -> H, degree 0
    LinearMap<K> q1;                             // H -> A, degree 0
    LinearMap<K> h1;                             // A -> A, degree -1
    /// H-class coordinates of a closed element.
    Element<K> project(const Element<K>& x) const { return p1.apply(x); }
};

/// Canonical contraction from echelon structure: per degree,
/// A^d = im ∂ ⊕ (chosen class representatives) ⊕ (pivot complement of ker ∂);
/// h1 inverts ∂ from im ∂ back into the pivot complement and vanishes on the
/// other two summands.
template <class K>
TransferData<K> build_transfer_data(const AInfinity<K>& a) {
    const GradedSpace<K>* sp = a.space();
    const Field<K>& f = sp->field();
    const bool z2 = sp->mode() == Grading::Z2;
    TransferData<K> out;

    // collect degrees (or parities) present
    std::vector<int> levels;
    if (z2) {
        levels = {0, 1};
    } else {
        std::set<int> degs;
        for (int i = 0; i < sp->dim(); ++i) degs.insert(sp->degree(i));
        levels.assign(degs.begin(), degs.end());
    }
    auto indices_at = [&](int d) { return z2 ? sp->indices_of_parity(((d % 2) + 2) % 2) : sp->indices_of_degree(d); };

    Matrix<K> d_mat = [&] {
        Matrix<K> m(sp->dim(), sp->dim());
        const MultiMap<K>* b1 = a.op(1);
        if (b1)
            for (const auto& [args, v] : b1->entries())
                for (const auto& [i, c] : v.coeffs()) m.set(i, args[0], c);
        return m;
    }();

    struct Level {
        std::vector<int> idx;                 // ambient coordinates of A^d
        std::vector<SparseVec<K>> reps;       // class representatives (ambient coords)
        std::vector<int> rep_ids;             // global H indices
    };
    std::map<int, Level> lv;
    std::vector<std::pair<std::string, int>> h_basis;
    // per level: kernel, image from previous level, representatives
    for (int d : levels) {
        Level L;
        L.idx = indices_at(d);
        if (L.idx.empty()) { lv.emplace(d, std::move(L)); continue; }
        // restriction of d to A^d in local coordinates
        Matrix<K> dd(sp->dim(), static_cast<int>(L.idx.size()));
        for (std::size_t j = 0; j < L.idx.size(); ++j)
            for (int r = 0; r < sp->dim(); ++r) {
                auto v = d_mat.get(r, L.idx[j]);
                if (v) dd.set(r, static_cast<int>(j), *v);
            }
        auto ker = kernel_basis(dd, f);
        // image of d landing in A^d (from the previous level, or from the
        // other parity in Z2 mode)
        std::vector<SparseVec<K>> img_local;
        {
            std::vector<int> prev = z2 ? indices_at(d + 1) : indices_at(d - 1);
            std::map<int, int> local_of;
            for (std::size_t j = 0; j < L.idx.size(); ++j) local_of[L.idx[j]] = static_cast<int>(j);
            for (int src : prev) {
                SparseVec<K> col;
                for (int r = 0; r < sp->dim(); ++r) {
                    auto v = d_mat.get(r, src);
                    if (!v) continue;
                    auto it = local_of.find(r);
                    if (it == local_of.end()) continue;  // mixed-degree images cannot occur for b_1
                    col.emplace(it->second, *v);
                }
                if (!col.empty()) img_local.push_back(std::move(col));
            }
        }
        int n = static_cast<int>(L.idx.size());
        Span<K> img_span(img_local, n);
        Span<K> ker_span(ker, n);
        auto reps = subquotient_basis(img_span, ker_span);
        for (const auto& r : reps) {
            // name from the leading basis label
            std::string nm = "[";
            nm += sp->label(L.idx[r.begin()->first]);
            nm += "]";
            h_basis.emplace_back(nm, z2 ? ((d % 2) + 2) % 2 : d);
            L.rep_ids.push_back(static_cast<int>(h_basis.size()) - 1);
            L.reps.push_back(r);
        }
        lv.emplace(d, std::move(L));
    }
    // de-duplicate names if leading labels collide
    {
        std::map<std::string, int> seen;
        for (auto& [nm, deg] : h_basis) {
            int k = seen[nm]++;
            if (k > 0) nm += "_" + std::to_string(k);
        }
    }
    out.cohomology = std::make_shared<GradedSpace<K>>(f, sp->mode(), h_basis);
    const GradedSpace<K>* H = out.cohomology.get();

    out.p1 = LinearMap<K>(sp, H);
    out.q1 = LinearMap<K>(H, sp);
    out.h1 = LinearMap<K>(sp, sp);

    for (int d : levels) {
        const Level& L = lv.at(d);
        int n = static_cast<int>(L.idx.size());
        if (n == 0) continue;
        // assemble the splitting basis: [image | reps | pivot complement]
        Matrix<K> dd(sp->dim(), n);
        for (int j = 0; j < n; ++j)
            for (int r = 0; r < sp->dim(); ++r) {
                auto v = d_mat.get(r, L.idx[j]);
                if (v) dd.set(r, j, *v);
            }
        auto piv = rref(dd).second;  // pivot columns = complement of ker
        std::vector<int> prev = z2 ? indices_at(d + 1) : indices_at(d - 1);
        std::vector<SparseVec<K>> img_local;
        std::vector<int> img_src;  // ambient source index realizing each generator
        {
            std::map<int, int> local_of;
            for (int j = 0; j < n; ++j) local_of[L.idx[j]] = j;
            for (int src : prev) {
                SparseVec<K> col;
                for (int r = 0; r < sp->dim(); ++r) {
                    auto v = d_mat.get(r, src);
                    if (!v) continue;
                    auto it = local_of.find(r);
                    if (it != local_of.end()) col.emplace(it->second, *v);
                }
                if (!col.empty()) {
                    img_local.push_back(std::move(col));
                    img_src.push_back(src);
                }
            }
        }
        Span<K> img_span(img_local, n);
        // columns of the decomposition matrix: image echelon, reps, pivots
        std::vector<SparseVec<K>> cols;
        for (const auto& r : img_span.rows()) cols.push_back(r);
        int n_img = static_cast<int>(cols.size());
        for (const auto& r : L.reps) cols.push_back(r);
        int n_rep = static_cast<int>(L.reps.size());
        for (int pc : piv) cols.push_back(SparseVec<K>{{pc, f.one()}});
        Matrix<K> dec(n, static_cast<int>(cols.size()));
        for (std::size_t j = 0; j < cols.size(); ++j)
            for (const auto& [i, v] : cols[j]) dec.set(i, static_cast<int>(j), v);

        for (int j = 0; j < n; ++j) {
            SparseVec<K> e{{j, f.one()}};
            auto coords = solve(dec, e);
            if (!coords) throw std::logic_error("transfer: splitting failed to decompose a vector");
            // p1: representative coordinates
            Element<K> pc(H);
            for (int k = 0; k < n_rep; ++k) {
                auto it = coords->find(n_img + k);
                if (it != coords->end()) pc.add_scaled(Element<K>::basis(H, L.rep_ids[k]), it->second);
            }
            out.p1.set_column(L.idx[j], pc);
            // h1: invert d on the image component, into the pivot complement
            // of the source level
            Element<K> himg(sp);
            if (n_img > 0) {
                // image component in local coordinates
                SparseVec<K> img_part;
                for (int k = 0; k < n_img; ++k) {
                    auto it = coords->find(k);
                    if (it != coords->end())
                        vec_add_scaled(img_part, img_span.rows()[k], it->second);
                }
                if (!img_part.empty()) {
                    // solve d u = img_part with u in the previous level
                    Matrix<K> dprev(n, static_cast<int>(prev.size()));
                    std::map<int, int> local_of;
                    for (int jj = 0; jj < n; ++jj) local_of[L.idx[jj]] = jj;
                    for (std::size_t c = 0; c < prev.size(); ++c)
                        for (int r = 0; r < sp->dim(); ++r) {
                            auto v = d_mat.get(r, prev[c]);
                            if (!v) continue;
                            auto it = local_of.find(r);
                            if (it != local_of.end()) dprev.set(it->second, static_cast<int>(c), *v);
                        }
                    auto u = solve(dprev, img_part);
                    if (!u) throw std::logic_error("transfer: image component has no preimage");
                    for (const auto& [c, v] : *u) himg.add_scaled(Element<K>::basis(sp, prev[c]), v);
                }
            }
            out.h1.set_column(L.idx[j], himg);
        }
        // q1 columns: representatives
        for (int k = 0; k < n_rep; ++k) {
            Element<K> rep(sp);
            for (const auto& [i, v] : L.reps[k]) rep.add_scaled(Element<K>::basis(sp, L.idx[i]), v);
            out.q1.set_column(L.rep_ids[k], rep);
        }
    }

    // exact contraction identities, asserted
    const MultiMap<K>* b1 = a.op(1);
    for (int i = 0; i < H->dim(); ++i) {
        Element<K> e = Element<K>::basis(H, i);
        if (!(out.p1.apply(out.q1.apply(e)) == e)) throw std::logic_error("transfer: p1 q1 != 1");
        Element<K> qe = out.q1.apply(e);
        if (b1 && !b1->eval({qe}).is_zero()) throw std::logic_error("transfer: im q1 not closed");
    }
    for (int i = 0; i < sp->dim(); ++i) {
        Element<K> e = Element<K>::basis(sp, i);
        Element<K> lhs = e - out.q1.apply(out.p1.apply(e));
        Element<K> de = b1 ? b1->eval({e}) : Element<K>(sp);
        Element<K> rhs = (b1 ? b1->eval({out.h1.apply(e)}) : Element<K>(sp)) + out.h1.apply(de);
        if (!(lhs == rhs)) throw std::logic_error("transfer: 1 - q1 p1 != d h1 + h1 d");
    }
    return out;
}

/// Result of the inductive transfer: the structure on cohomology and the
/// quasi-isomorphism q : (H, {b̄_n}) -> A lifting the identity.
template <class K>
struct TransferResult {
    TransferData<K> data;
    std::shared_ptr<AInfinity<K>> algebra;  // on data.cohomology, b̄_1 = 0
    AInfMorphism<K> q;                      // q_1 = data.q1
};

namespace detail {

/// λ_n = Σ_{r=2..n} Σ_{i_1+..+i_r=n} b_r ∘ (q_{i_1} ⊗ ... ⊗ q_{i_r}) as an
/// entry table on H-basis tuples (elements of A).  Degree-0 blocks: no signs.
template <class K>
std::map<std::vector<int>, Element<K>> lambda_n(const AInfinity<K>& a,
                                                const std::vector<MultiMap<K>>& q_comps, int n,
                                                bool dga_path) {
    const GradedSpace<K>* H = q_comps[0].source();
    const GradedSpace<K>* A = a.space();
    std::map<std::vector<int>, Element<K>> out;
    for_each_tuple(H->dim(), n, [&](const std::vector<int>& idx) {
        Element<K> acc(A);
        for (const auto& parts : compositions(n)) {
            const int r = static_cast<int>(parts.size());
            if (r < 2) continue;
            if (dga_path && r != 2) continue;
            const MultiMap<K>* br = a.op(r);
            if (!br) continue;
            std::vector<Element<K>> blocks;
            bool dead = false;
            int pos = 0;
            for (int len : parts) {
                if (len > static_cast<int>(q_comps.size())) { dead = true; break; }
                const MultiMap<K>& ql = q_comps[len - 1];
                std::vector<int> block(idx.begin() + pos, idx.begin() + pos + len);
                Element<K> val = ql.entry(block);
                if (val.is_zero()) { dead = true; break; }
                blocks.push_back(std::move(val));
                pos += len;
            }
            if (dead) continue;
            acc.add_scaled(br->eval(blocks), A->field().one());
        }
        if (!acc.is_zero()) out.emplace(idx, std::move(acc));
    });
    return out;
}

}  // namespace detail

/// Inductive homotopy transfer: b̄_n = p1 ∘ λ_n and q_n = -h1 ∘ λ_n.
/// (The sign on q_n pairs with the homotopy convention
/// 1 - q1 p1 = ∂ h1 + h1 ∂; it makes q a morphism, which is asserted by the
/// tests.)  With dga_simplified, only b_2 compositions are summed.
template <class K>
TransferResult<K> transfer(const AInfinity<K>& a, TransferData<K> data, int n_max,
                           bool dga_simplified = false) {
    if (n_max < 2) throw std::invalid_argument("transfer needs n_max >= 2");
    const GradedSpace<K>* H = data.cohomology.get();
    const GradedSpace<K>* A = a.space();
    TransferResult<K> out;
    out.data = std::move(data);

    out.algebra = std::make_shared<AInfinity<K>>(H, n_max);
    out.algebra->set_arity_complete(false);

    std::vector<MultiMap<K>> q_comps;
    {
        MultiMap<K> q1(H, A, 1, 0);
        for (int i = 0; i < H->dim(); ++i) q1.set({i}, out.data.q1.column(i));
        q_comps.push_back(std::move(q1));
    }
    bool use_dga = dga_simplified && a.is_dga();
    if (dga_simplified && !a.is_dga())
        throw std::invalid_argument("DGA-simplified recursion requires a DGA");

    for (int n = 2; n <= n_max; ++n) {
        auto lam = detail::lambda_n(a, q_comps, n, use_dga);
        MultiMap<K> bbar(H, H, n, 1);
        MultiMap<K> qn(H, A, n, 0);
        for (const auto& [idx, val] : lam) {
            Element<K> pb = out.data.p1.apply(val);
            if (!pb.is_zero()) bbar.set(idx, pb);
            Element<K> hb = -out.data.h1.apply(val);
            if (!hb.is_zero()) qn.set(idx, hb);
        }
        if (!bbar.is_zero()) out.algebra->set_op(std::move(bbar));
        q_comps.push_back(std::move(qn));
    }

    out.q = AInfMorphism<K>(out.algebra.get(), &a);
    for (auto& qc : q_comps)
        if (!qc.is_zero()) out.q.set_comp(qc);
    return out;
}

}  // namespace ainfty
