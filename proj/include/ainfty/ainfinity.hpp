#pragma once

#include "multimap.hpp"

#include <optional>
#include <string>
#include <vector>

namespace ainfty {

struct CharTooSmall : std::runtime_error {
    CharTooSmall() : std::runtime_error("field characteristic too small for the C-infinity check") {}
};

/// Iterate over all basis tuples of the given arity.
template <class F>
void for_each_tuple(int dim, int arity, F&& fn) {
    std::vector<int> idx(arity, 0);
    if (dim == 0) return;
    while (true) {
        fn(const_cast<const std::vector<int>&>(idx));
        int pos = arity - 1;
        while (pos >= 0 && ++idx[pos] == dim) idx[pos--] = 0;
        if (pos < 0) break;
    }
}

/// A_infinity structure: degree-1 operations b_n bundled over one space.
/// Absent arities are treated as zero.
template <class K>
class AInfinity {
  public:
    AInfinity() : sp_(nullptr), n_max_(0) {}
    explicit AInfinity(const GradedSpace<K>* sp, int n_max = 0) : sp_(sp), n_max_(n_max) {}

    const GradedSpace<K>* space() const { return sp_; }
    int n_max() const { return n_max_; }
    void set_n_max(int n) { n_max_ = n; }
    bool is_dga() const { return is_dga_; }
    void set_dga(bool v) { is_dga_ = v; }
    /// True when b_n = 0 for every n beyond the stored arities is asserted.
    bool arity_complete() const { return arity_complete_; }
    void set_arity_complete(bool v) { arity_complete_ = v; }

    void set_op(MultiMap<K> b) {
        if (b.map_degree() != 1) throw std::invalid_argument("b_n must have degree 1");
        if (b.source() != sp_ || b.target() != sp_) throw std::invalid_argument("b_n space mismatch");
        int n = b.arity();
        if (static_cast<int>(ops_.size()) < n) ops_.resize(n);
        ops_[n - 1] = std::move(b);
        n_max_ = std::max(n_max_, n);
    }
    const MultiMap<K>* op(int n) const {
        if (n < 1 || n > static_cast<int>(ops_.size())) return nullptr;
        const MultiMap<K>& m = ops_[n - 1];
        return (m.arity() == n && !m.is_zero()) ? &m : nullptr;
    }
    int max_stored_arity() const {
        for (int n = static_cast<int>(ops_.size()); n >= 1; --n)
            if (op(n)) return n;
        return 0;
    }
    std::vector<const MultiMap<K>*> op_ptrs() const {
        std::vector<const MultiMap<K>*> out;
        for (int n = 1; n <= static_cast<int>(ops_.size()); ++n)
            if (op(n)) out.push_back(op(n));
        return out;
    }

    /// b_1 applied to an element (zero when b_1 is absent).
    Element<K> differential(const Element<K>& x) const {
        const MultiMap<K>* b1 = op(1);
        return b1 ? b1->eval({x}) : Element<K>(sp_);
    }

    /// In Z mode with all basis degrees >= 1, b_n = 0 is forced for
    /// n > (d_max - 1)/d_min.
    std::optional<int> forced_arity_bound() const {
        if (sp_->mode() != Grading::Z || sp_->dim() == 0) return std::nullopt;
        int dmin = sp_->min_degree(), dmax = sp_->max_degree();
        if (dmin < 1) return std::nullopt;
        return std::max(1, dmax >= 1 ? (dmax - 1) / dmin : 1);
    }

  private:
    const GradedSpace<K>* sp_;
    std::vector<MultiMap<K>> ops_;
    int n_max_;
    bool is_dga_ = false;
    bool arity_complete_ = true;
};

/// The arity-n Stasheff residual sum b_{r+1+t} ∘ (1^r ⊗ b_s ⊗ 1^t); zero iff
/// the defining identity holds at arity n.
template <class K>
MultiMap<K> stasheff_residual(const AInfinity<K>& a, int n) {
    const GradedSpace<K>* sp = a.space();
    MultiMap<K> res(sp, sp, n, 2);
    for_each_tuple(sp->dim(), n, [&](const std::vector<int>& idx) {
        Element<K> acc(sp);
        for (int s = 1; s <= n; ++s) {
            const MultiMap<K>* inner = a.op(s);
            if (!inner) continue;
            for (int r = 0; r + s <= n; ++r) {
                int t = n - r - s;
                const MultiMap<K>* outer = a.op(r + 1 + t);
                if (!outer) continue;
                std::vector<int> mid(idx.begin() + r, idx.begin() + r + s);
                Element<K> val = inner->entry(mid);
                if (val.is_zero()) continue;
                int prefix = 0;
                for (int i = 0; i < r; ++i) prefix += sp->degree(idx[i]);
                for (const auto& [j, c] : val.coeffs()) {
                    std::vector<int> args;
                    args.reserve(r + 1 + t);
                    args.insert(args.end(), idx.begin(), idx.begin() + r);
                    args.push_back(j);
                    args.insert(args.end(), idx.begin() + r + s, idx.end());
                    acc.add_scaled(outer->entry(args), parity(prefix) ? -c : c);
                }
            }
        }
        if (!acc.is_zero()) res.set(idx, acc);
    });
    return res;
}

struct CheckLine {
    int n = 0;
    bool pass = false;
    std::string witness;  // first failing basis tuple, empty when passing
};

struct CheckReport {
    std::vector<CheckLine> lines;
    bool truncated = false;
    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    std::optional<int> first_failure() const {
        for (const auto& l : lines)
            if (!l.pass) return l.n;
        return std::nullopt;
    }
};

template <class K>
std::string tuple_label(const GradedSpace<K>& sp, const std::vector<int>& idx) {
    std::string s = "(";
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i) s += ",";
        s += sp.label(idx[i]);
    }
    return s + ")";
}

template <class K>
CheckLine residual_line(const MultiMap<K>& res, int n) {
    CheckLine line;
    line.n = n;
    line.pass = res.is_zero();
    if (!line.pass) line.witness = tuple_label(*res.source(), res.entries().begin()->first);
    return line;
}

template <class K>
CheckReport check_algebra(const AInfinity<K>& a, int n_max = 0) {
    CheckReport rep;
    int stored = a.max_stored_arity();
    auto forced = a.forced_arity_bound();
    if (n_max <= 0) {
        if (forced)
            n_max = std::min(*forced, std::max(1, 2 * stored - 1));
        else
            n_max = std::max(a.n_max(), stored);
    }
    rep.truncated = !forced && !a.arity_complete();
    for (int n = 1; n <= n_max; ++n) rep.lines.push_back(residual_line(stasheff_residual(a, n), n));
    return rep;
}

/// Morphism bundle f = {f_n}: A -> B, each of degree 0.
template <class K>
class AInfMorphism {
  public:
    AInfMorphism() : src_(nullptr), dst_(nullptr) {}
    AInfMorphism(const AInfinity<K>* src, const AInfinity<K>* dst) : src_(src), dst_(dst) {}

    static AInfMorphism identity(const AInfinity<K>* a) {
        AInfMorphism f(a, a);
        f.set_comp(MultiMap<K>::identity(a->space()));
        return f;
    }
    static AInfMorphism strict(const AInfinity<K>* src, const AInfinity<K>* dst, MultiMap<K> f1) {
        AInfMorphism f(src, dst);
        f.set_comp(std::move(f1));
        return f;
    }

    const AInfinity<K>* source() const { return src_; }
    const AInfinity<K>* target() const { return dst_; }

    void set_comp(MultiMap<K> f) {
        if (f.map_degree() != 0) throw std::invalid_argument("f_n must have degree 0");
        int n = f.arity();
        if (static_cast<int>(comps_.size()) < n) comps_.resize(n);
        comps_[n - 1] = std::move(f);
    }
    const MultiMap<K>* comp(int n) const {
        if (n < 1 || n > static_cast<int>(comps_.size())) return nullptr;
        const MultiMap<K>& m = comps_[n - 1];
        return (m.arity() == n && !m.is_zero()) ? &m : nullptr;
    }
    int max_stored_arity() const {
        for (int n = static_cast<int>(comps_.size()); n >= 1; --n)
            if (comp(n)) return n;
        return 0;
    }
    std::vector<const MultiMap<K>*> comp_ptrs(int up_to) const {
        std::vector<const MultiMap<K>*> out(up_to, nullptr);
        for (int n = 1; n <= up_to; ++n) out[n - 1] = comp(n);
        return out;
    }
    bool is_strict() const { return max_stored_arity() <= 1; }

    Element<K> apply1(const Element<K>& x) const {
        const MultiMap<K>* f1 = comp(1);
        return f1 ? f1->eval({x}) : Element<K>(dst_->space());
    }

  private:
    const AInfinity<K>* src_;
    const AInfinity<K>* dst_;
    std::vector<MultiMap<K>> comps_;
};

/// Two-sided morphism identity residual at arity n (Def. of morphisms).
template <class K>
MultiMap<K> morphism_residual(const AInfMorphism<K>& f, int n) {
    const GradedSpace<K>* A = f.source()->space();
    const GradedSpace<K>* B = f.target()->space();
    MultiMap<K> res(A, B, n, 1);
    for_each_tuple(A->dim(), n, [&](const std::vector<int>& idx) {
        Element<K> acc(B);
        // left side: f_{r+1+t} ∘ (1^r ⊗ b^A_s ⊗ 1^t)
        for (int s = 1; s <= n; ++s) {
            const MultiMap<K>* inner = f.source()->op(s);
            if (!inner) continue;
            for (int r = 0; r + s <= n; ++r) {
                int t = n - r - s;
                const MultiMap<K>* outer = f.comp(r + 1 + t);
                if (!outer) continue;
                std::vector<int> mid(idx.begin() + r, idx.begin() + r + s);
                Element<K> val = inner->entry(mid);
                if (val.is_zero()) continue;
                int prefix = 0;
                for (int i = 0; i < r; ++i) prefix += A->degree(idx[i]);
                for (const auto& [j, c] : val.coeffs()) {
                    std::vector<int> args;
                    args.insert(args.end(), idx.begin(), idx.begin() + r);
                    args.push_back(j);
                    args.insert(args.end(), idx.begin() + r + s, idx.end());
                    acc.add_scaled(outer->entry(args), parity(prefix) ? -c : c);
                }
            }
        }
        // right side: b^B_r (f_{i_1} ⊗ ... ⊗ f_{i_r}); degree-0 blocks carry
        // no Koszul signs
        for (const auto& parts : compositions(n)) {
            const MultiMap<K>* outer = f.target()->op(static_cast<int>(parts.size()));
            if (!outer) continue;
            std::vector<Element<K>> blocks;
            bool dead = false;
            int pos = 0;
            for (int len : parts) {
                const MultiMap<K>* fl = f.comp(len);
                if (!fl) { dead = true; break; }
                std::vector<int> block(idx.begin() + pos, idx.begin() + pos + len);
                Element<K> val = fl->entry(block);
                if (val.is_zero()) { dead = true; break; }
                blocks.push_back(std::move(val));
                pos += len;
            }
            if (dead) continue;
            acc.add_scaled(outer->eval(blocks), -A->field().one());
        }
        if (!acc.is_zero()) res.set(idx, acc);
    });
    return res;
}

template <class K>
CheckReport check_morphism(const AInfMorphism<K>& f, int n_max) {
    CheckReport rep;
    for (int n = 1; n <= n_max; ++n) rep.lines.push_back(residual_line(morphism_residual(f, n), n));
    return rep;
}

/// Homotopy bundle h = {h_n} between two morphisms with common endpoints.
template <class K>
class AInfHomotopy {
  public:
    AInfHomotopy() : f_(nullptr), g_(nullptr) {}
    AInfHomotopy(const AInfMorphism<K>* f, const AInfMorphism<K>* g) : f_(f), g_(g) {
        if (f->source() != g->source() || f->target() != g->target())
            throw std::invalid_argument("homotopy endpoints mismatch");
    }
    const AInfMorphism<K>* from() const { return f_; }
    const AInfMorphism<K>* to() const { return g_; }

    void set_comp(MultiMap<K> h) {
        if (h.map_degree() != -1) throw std::invalid_argument("h_n must have degree -1");
        int n = h.arity();
        if (static_cast<int>(comps_.size()) < n) comps_.resize(n);
        comps_[n - 1] = std::move(h);
    }
    const MultiMap<K>* comp(int n) const {
        if (n < 1 || n > static_cast<int>(comps_.size())) return nullptr;
        const MultiMap<K>& m = comps_[n - 1];
        return (m.arity() == n && !m.is_zero()) ? &m : nullptr;
    }

  private:
    const AInfMorphism<K>* f_;
    const AInfMorphism<K>* g_;
    std::vector<MultiMap<K>> comps_;
};

/// Residual of the homotopy identity
/// g_n - f_n = Σ b^B(g...g h f...f) + Σ h ∘ (1 ⊗ b^A ⊗ 1)  at arity n.
template <class K>
MultiMap<K> homotopy_residual(const AInfHomotopy<K>& h, int n) {
    const AInfMorphism<K>& f = *h.from();
    const AInfMorphism<K>& g = *h.to();
    const GradedSpace<K>* A = f.source()->space();
    const GradedSpace<K>* B = f.target()->space();
    MultiMap<K> res(A, B, n, -1 + 1);  // degree 0 overall
    for_each_tuple(A->dim(), n, [&](const std::vector<int>& idx) {
        Element<K> acc(B);
        auto add_comp = [&](const MultiMap<K>* m, const K& sign) {
            if (!m) return;
            Element<K> v = m->entry(idx);
            if (!v.is_zero()) acc.add_scaled(v, sign);
        };
        add_comp(g.comp(n), A->field().one());
        add_comp(f.comp(n), -A->field().one());

        // Σ b^B_{r+1+t}(g_{i_1} ⊗...⊗ g_{i_r} ⊗ h_s ⊗ f_{j_1} ⊗...⊗ f_{j_t});
        // only the h block is odd, so the sign is the parity of the degrees
        // consumed by the g blocks.
        for (const auto& parts : compositions(n)) {
            const int k = static_cast<int>(parts.size());
            const MultiMap<K>* outer = f.target()->op(k);
            if (!outer) continue;
            for (int hp = 0; hp < k; ++hp) {
                std::vector<Element<K>> blocks;
                bool dead = false;
                int pos = 0, gdeg = 0;
                for (int bi = 0; bi < k; ++bi) {
                    int len = parts[bi];
                    const MultiMap<K>* m =
                        bi < hp ? g.comp(len) : (bi == hp ? h.comp(len) : f.comp(len));
                    if (!m) { dead = true; break; }
                    std::vector<int> block(idx.begin() + pos, idx.begin() + pos + len);
                    Element<K> val = m->entry(block);
                    if (val.is_zero()) { dead = true; break; }
                    if (bi < hp)
                        for (int q = 0; q < len; ++q) gdeg += A->degree(idx[pos + q]);
                    blocks.push_back(std::move(val));
                    pos += len;
                }
                if (dead) continue;
                K sign = parity(gdeg) ? A->field().one() : -A->field().one();
                acc.add_scaled(outer->eval(blocks), sign);
            }
        }
        // Σ h_{r+1+t} ∘ (1^r ⊗ b^A_s ⊗ 1^t)
        for (int s = 1; s <= n; ++s) {
            const MultiMap<K>* inner = f.source()->op(s);
            if (!inner) continue;
            for (int r = 0; r + s <= n; ++r) {
                int t = n - r - s;
                const MultiMap<K>* outer = h.comp(r + 1 + t);
                if (!outer) continue;
                std::vector<int> mid(idx.begin() + r, idx.begin() + r + s);
                Element<K> val = inner->entry(mid);
                if (val.is_zero()) continue;
                int prefix = 0;
                for (int i = 0; i < r; ++i) prefix += A->degree(idx[i]);
                for (const auto& [j, c] : val.coeffs()) {
                    std::vector<int> args;
                    args.insert(args.end(), idx.begin(), idx.begin() + r);
                    args.push_back(j);
                    args.insert(args.end(), idx.begin() + r + s, idx.end());
                    acc.add_scaled(outer->entry(args), parity(prefix) ? c : -c);
                }
            }
        }
        if (!acc.is_zero()) res.set(idx, acc);
    });
    return res;
}

template <class K>
CheckReport check_homotopy(const AInfHomotopy<K>& h, int n_max) {
    CheckReport rep;
    for (int n = 1; n <= n_max; ++n) rep.lines.push_back(residual_line(homotopy_residual(h, n), n));
    return rep;
}

/// Composite morphism (g∘f)_n = Σ g_r ∘ (f_{i_1} ⊗ ... ⊗ f_{i_r}).
template <class K>
AInfMorphism<K> compose(const AInfMorphism<K>& g, const AInfMorphism<K>& f, int n_max) {
    if (f.target() != g.source()) throw std::invalid_argument("compose: endpoint mismatch");
    AInfMorphism<K> out(f.source(), g.target());
    const GradedSpace<K>* A = f.source()->space();
    for (int n = 1; n <= n_max; ++n) {
        MultiMap<K> comp(A, g.target()->space(), n, 0);
        for_each_tuple(A->dim(), n, [&](const std::vector<int>& idx) {
            Element<K> acc(g.target()->space());
            for (const auto& parts : compositions(n)) {
                const MultiMap<K>* outer = g.comp(static_cast<int>(parts.size()));
                if (!outer) continue;
                std::vector<Element<K>> blocks;
                bool dead = false;
                int pos = 0;
                for (int len : parts) {
                    const MultiMap<K>* fl = f.comp(len);
                    if (!fl) { dead = true; break; }
                    std::vector<int> block(idx.begin() + pos, idx.begin() + pos + len);
                    Element<K> val = fl->entry(block);
                    if (val.is_zero()) { dead = true; break; }
                    blocks.push_back(std::move(val));
                    pos += len;
                }
                if (dead) continue;
                acc.add_scaled(outer->eval(blocks), A->field().one());
            }
            if (!acc.is_zero()) comp.set(idx, acc);
        });
        if (!comp.is_zero()) out.set_comp(std::move(comp));
    }
    return out;
}

/// C-infinity checks: the arity-n family member must vanish on every shuffle
/// x ⋈ y with |x| + |y| = n.  Works for b_n, f_n and h_n families alike.
template <class K>
CheckReport check_cinfty_family(const GradedSpace<K>& sp, const std::function<const MultiMap<K>*(int)>& family,
                                int word_cap) {
    long long ch = sp.field().characteristic();
    if (ch != 0 && ch <= word_cap) throw CharTooSmall();
    CheckReport rep;
    for (int n = 2; n <= word_cap; ++n) {
        const MultiMap<K>* m = family(n);
        CheckLine line;
        line.n = n;
        line.pass = true;
        if (m) {
            for (int r = 1; r < n && line.pass; ++r) {
                for_each_tuple(sp.dim(), n, [&](const std::vector<int>& idx) {
                    if (!line.pass) return;
                    TensorWord x(idx.begin(), idx.begin() + r), y(idx.begin() + r, idx.end());
                    BarElement<K> sh = shuffle(sp, x, y, n);
                    Element<K> acc(m->target());
                    for (const auto& [w, c] : sh.terms()) acc.add_scaled(m->entry(w), c);
                    if (!acc.is_zero()) {
                        line.pass = false;
                        line.witness = tuple_label(sp, idx) + " split " + std::to_string(r);
                    }
                });
            }
        }
        rep.lines.push_back(line);
    }
    return rep;
}

template <class K>
CheckReport check_cinfty(const AInfinity<K>& a, int word_cap) {
    return check_cinfty_family<K>(*a.space(), [&](int n) { return a.op(n); }, word_cap);
}
template <class K>
CheckReport check_cinfty(const AInfMorphism<K>& f, int word_cap) {
    return check_cinfty_family<K>(*f.source()->space(), [&](int n) { return f.comp(n); }, word_cap);
}
template <class K>
CheckReport check_cinfty(const AInfHomotopy<K>& h, int word_cap) {
    return check_cinfty_family<K>(*h.from()->source()->space(), [&](int n) { return h.comp(n); }, word_cap);
}

/// Homotopy lift H: T̄A -> T̄B with ΔH = (G⊗H + H⊗F)Δ.
template <class K>
BarElement<K> homotopy_lift(const AInfHomotopy<K>& h, const BarElement<K>& x) {
    const AInfMorphism<K>& f = *h.from();
    const AInfMorphism<K>& g = *h.to();
    const GradedSpace<K>* A = f.source()->space();
    const GradedSpace<K>* B = f.target()->space();
    BarElement<K> out(B);
    for (const auto& [w, c] : x.terms()) {
        const int n = static_cast<int>(w.size());
        for (const auto& parts : compositions(n)) {
            const int k = static_cast<int>(parts.size());
            for (int hp = 0; hp < k; ++hp) {
                BarElement<K> acc(B);
                bool dead = false, first = true;
                int pos = 0, gdeg = 0;
                for (int bi = 0; bi < k; ++bi) {
                    int len = parts[bi];
                    const MultiMap<K>* m =
                        bi < hp ? g.comp(len) : (bi == hp ? h.comp(len) : f.comp(len));
                    if (!m) { dead = true; break; }
                    std::vector<int> block(w.begin() + pos, w.begin() + pos + len);
                    Element<K> val = m->entry(block);
                    if (val.is_zero()) { dead = true; break; }
                    if (bi < hp)
                        for (int q = 0; q < len; ++q) gdeg += A->degree(w[pos + q]);
                    BarElement<K> vb = BarElement<K>::from_element(val);
                    acc = first ? vb : acc.concat(vb, n);
                    first = false;
                    pos += len;
                }
                if (dead) continue;
                out.add_scaled(acc, parity(gdeg) ? -c : c);
            }
        }
    }
    return out;
}

}  // namespace ainfty
