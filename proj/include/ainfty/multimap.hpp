#pragma once

#include "bar.hpp"

#include <functional>
#include <vector>

namespace ainfty {

inline int parity(int d) { return ((d % 2) + 2) % 2; }

/// Arity-n sparse structure-constant tensor with a fixed map degree.
/// Houses the b_n (degree 1), f_n (degree 0) and h_n (degree -1) families.
template <class K>
class MultiMap {
  public:
    MultiMap() : src_(nullptr), dst_(nullptr), arity_(0), deg_(0) {}
    MultiMap(const GradedSpace<K>* src, const GradedSpace<K>* dst, int arity, int map_degree)
        : src_(src), dst_(dst), arity_(arity), deg_(map_degree) {
        if (arity < 1) throw std::invalid_argument("MultiMap arity must be >= 1");
    }
    static MultiMap identity(const GradedSpace<K>* sp) {
        MultiMap m(sp, sp, 1, 0);
        for (int i = 0; i < sp->dim(); ++i) m.set({i}, Element<K>::basis(sp, i));
        return m;
    }

    const GradedSpace<K>* source() const { return src_; }
    const GradedSpace<K>* target() const { return dst_; }
    int arity() const { return arity_; }
    int map_degree() const { return deg_; }
    bool is_zero() const { return entries_.empty(); }
    const std::map<std::vector<int>, Element<K>>& entries() const { return entries_; }

    /// Install a structure constant; enforces the degree contract
    /// |output| = sum of input degrees + map degree.
    void set(const std::vector<int>& args, const Element<K>& value) {
        if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("arity mismatch in set");
        if (value.is_zero()) {
            entries_.erase(args);
            return;
        }
        int in_deg = deg_;
        for (int i : args) in_deg = src_->deg_add(in_deg, src_->degree(i));
        auto out_deg = value.degree();
        if (!out_deg || dst_->normalize_deg(*out_deg) != dst_->normalize_deg(in_deg))
            throw std::invalid_argument("MultiMap entry violates the degree contract");
        entries_[args] = value;
    }
    void add_to(const std::vector<int>& args, const Element<K>& value) {
        auto it = entries_.find(args);
        if (it == entries_.end()) {
            set(args, value);
        } else {
            Element<K> sum = it->second + value;
            if (sum.is_zero())
                entries_.erase(it);
            else
                set(args, sum);
        }
    }

    Element<K> entry(const std::vector<int>& args) const {
        auto it = entries_.find(args);
        return it == entries_.end() ? Element<K>(dst_) : it->second;
    }

    /// Multilinear extension of the structure constants.  No Koszul sign
    /// here; signs appear only where maps are tensored.
    Element<K> eval(const std::vector<Element<K>>& args) const {
        if (static_cast<int>(args.size()) != arity_) throw std::invalid_argument("arity mismatch in eval");
        Element<K> out(dst_);
        std::vector<int> idx(arity_);
        eval_rec(args, 0, idx, src_->field().one(), out);
        return out;
    }

    MultiMap operator+(const MultiMap& o) const {
        MultiMap r = *this;
        for (const auto& [a, v] : o.entries_) r.add_to(a, v);
        return r;
    }
    MultiMap operator-() const {
        MultiMap r = *this;
        for (auto& [a, v] : r.entries_) v = -v;
        return r;
    }
    MultiMap operator-(const MultiMap& o) const { return *this + (-o); }
    bool operator==(const MultiMap& o) const {
        return arity_ == o.arity_ && deg_ == o.deg_ && entries_ == o.entries_;
    }

  private:
    void eval_rec(const std::vector<Element<K>>& args, int pos, std::vector<int>& idx, const K& coeff,
                  Element<K>& out) const {
        if (pos == arity_) {
            auto it = entries_.find(idx);
            if (it != entries_.end()) out.add_scaled(it->second, coeff);
            return;
        }
        for (const auto& [i, c] : args[pos].coeffs()) {
            idx[pos] = i;
            eval_rec(args, pos + 1, idx, coeff * c, out);
        }
    }

    const GradedSpace<K>* src_;
    const GradedSpace<K>* dst_;
    int arity_;
    int deg_;
    std::map<std::vector<int>, Element<K>> entries_;
};

/// 1^{⊗r} ⊗ m ⊗ 1^{⊗t} applied to a basis word, with the Koszul sign
/// (-1)^{|m| (|a_1|+...+|a_r|)}.
template <class K>
BarElement<K> apply_tensor_slot(const MultiMap<K>& m, const GradedSpace<K>& sp, const TensorWord& w, int r) {
    const int s = m.arity();
    if (r < 0 || r + s > static_cast<int>(w.size())) throw std::out_of_range("tensor slot out of range");
    int prefix = 0;
    for (int i = 0; i < r; ++i) prefix += sp.degree(w[i]);
    const bool neg = parity(m.map_degree()) && parity(prefix);

    std::vector<int> mid(w.begin() + r, w.begin() + r + s);
    Element<K> val = m.entry(mid);
    BarElement<K> out(&sp);
    for (const auto& [j, c] : val.coeffs()) {
        TensorWord nw;
        nw.reserve(w.size() - s + 1);
        nw.insert(nw.end(), w.begin(), w.begin() + r);
        nw.push_back(j);
        nw.insert(nw.end(), w.begin() + r + s, w.end());
        out.add(nw, neg ? -c : c);
    }
    return out;
}

/// Coderivation lift of a family of operations to T̄A; never lengthens words.
template <class K>
BarElement<K> bar_coderivation(const std::vector<const MultiMap<K>*>& ops, const BarElement<K>& x) {
    BarElement<K> out(x.space());
    for (const auto& [w, c] : x.terms()) {
        const int n = static_cast<int>(w.size());
        for (const MultiMap<K>* op : ops) {
            if (!op || op->is_zero()) continue;
            const int s = op->arity();
            for (int r = 0; r + s <= n; ++r) {
                BarElement<K> piece = apply_tensor_slot(*op, *x.space(), w, r);
                out.add_scaled(piece, c);
            }
        }
    }
    return out;
}

/// Ordered compositions of n into positive parts (optionally exactly k).
inline void compositions_rec(int n, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = 1; i <= n; ++i) {
        cur.push_back(i);
        compositions_rec(n - i, cur, out);
        cur.pop_back();
    }
}
inline const std::vector<std::vector<int>>& compositions(int n) {
    static std::vector<std::vector<std::vector<int>>> cache;
    if (static_cast<int>(cache.size()) <= n) cache.resize(n + 1);
    if (cache[n].empty() && n > 0) {
        std::vector<int> cur;
        compositions_rec(n, cur, cache[n]);
    }
    return cache[n];
}

/// Coalgebra-morphism lift of {f_n} applied to a bar element: all block
/// decompositions, each block fed to the matching component.  Degree-0
/// components, so no Koszul signs arise.
template <class K>
BarElement<K> coalgebra_lift(const std::vector<const MultiMap<K>*>& comps, const GradedSpace<K>& target,
                             const BarElement<K>& x) {
    BarElement<K> out(&target);
    for (const auto& [w, c] : x.terms()) {
        const int n = static_cast<int>(w.size());
        for (const auto& parts : compositions(n)) {
            BarElement<K> acc(&target);
            bool first = true, dead = false;
            int pos = 0;
            for (int len : parts) {
                const MultiMap<K>* f = (len <= static_cast<int>(comps.size())) ? comps[len - 1] : nullptr;
                if (!f || f->is_zero()) { dead = true; break; }
                std::vector<int> block(w.begin() + pos, w.begin() + pos + len);
                Element<K> val = f->entry(block);
                if (val.is_zero()) { dead = true; break; }
                BarElement<K> val_bar = BarElement<K>::from_element(val);
                acc = first ? val_bar : acc.concat(val_bar, n);
                first = false;
                pos += len;
            }
            if (!dead) out.add_scaled(acc, c);
        }
    }
    return out;
}

}  // namespace ainfty
