#pragma once

#include "graded.hpp"

#include <cstdlib>
#include <numeric>
#include <vector>

namespace ainfty {

struct WordCapExceeded : std::runtime_error {
    WordCapExceeded() : std::runtime_error("tensor word exceeds the word cap") {}
};

/// Default cap on bar-word length; override with AINFTY_WORD_CAP.
inline int default_word_cap() {
    static int cap = [] {
        if (const char* s = std::getenv("AINFTY_WORD_CAP")) {
            int v = std::atoi(s);
            if (v >= 1) return v;
        }
        return 6;
    }();
    return cap;
}

/// Word of basis indices in the reduced tensor coalgebra T̄A; length >= 1.
using TensorWord = std::vector<int>;

template <class K>
int word_degree(const GradedSpace<K>& sp, const TensorWord& w) {
    int d = 0;
    for (int i : w) d = sp.deg_add(d, sp.degree(i));
    return d;
}

template <class K>
int word_parity(const GradedSpace<K>& sp, const TensorWord& w) {
    int d = 0;
    for (int i : w) d += sp.degree(i);
    return ((d % 2) + 2) % 2;
}

/// Sparse sum of tensor words.
template <class K>
class BarElement {
  public:
    BarElement() : sp_(nullptr) {}
    explicit BarElement(const GradedSpace<K>* sp) : sp_(sp) {}

    const GradedSpace<K>* space() const { return sp_; }
    const std::map<TensorWord, K>& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    void add(const TensorWord& w, const K& c) {
        if (scalar_is_zero(c)) return;
        auto it = t_.find(w);
        if (it == t_.end()) {
            t_.emplace(w, c);
        } else {
            it->second += c;
            if (scalar_is_zero(it->second)) t_.erase(it);
        }
    }
    void add_scaled(const BarElement& o, const K& s) {
        for (const auto& [w, c] : o.t_) add(w, c * s);
    }
    BarElement operator+(const BarElement& o) const {
        BarElement r = *this;
        r.add_scaled(o, sp_->field().one());
        return r;
    }
    BarElement operator-(const BarElement& o) const {
        BarElement r = *this;
        r.add_scaled(o, -sp_->field().one());
        return r;
    }
    bool operator==(const BarElement& o) const { return t_ == o.t_; }

    /// Drop words longer than len.
    BarElement truncated(int len) const {
        BarElement out(sp_);
        for (const auto& [w, c] : t_)
            if (static_cast<int>(w.size()) <= len) out.t_.emplace(w, c);
        return out;
    }
    int max_word_length() const {
        int n = 0;
        for (const auto& [w, c] : t_) n = std::max(n, static_cast<int>(w.size()));
        return n;
    }

    static BarElement word(const GradedSpace<K>* sp, TensorWord w, const K& c) {
        BarElement out(sp);
        out.add(w, c);
        return out;
    }
    /// Embed a length-1 word for each component of an element.
    static BarElement from_element(const Element<K>& e) {
        BarElement out(e.space());
        for (const auto& [i, c] : e.coeffs()) out.add(TensorWord{i}, c);
        return out;
    }

    /// Concatenate with another bar element (tensor product of words).
    BarElement concat(const BarElement& o, int cap) const {
        BarElement out(sp_);
        for (const auto& [w1, c1] : t_)
            for (const auto& [w2, c2] : o.t_) {
                if (static_cast<int>(w1.size() + w2.size()) > cap) continue;
                TensorWord w = w1;
                w.insert(w.end(), w2.begin(), w2.end());
                out.add(w, c1 * c2);
            }
        return out;
    }

  private:
    const GradedSpace<K>* sp_;
    std::map<TensorWord, K> t_;
};

/// Comultiplication: all proper two-block splits of each word.
template <class K>
std::vector<std::tuple<TensorWord, TensorWord, K>> comultiply(const BarElement<K>& x) {
    std::vector<std::tuple<TensorWord, TensorWord, K>> out;
    for (const auto& [w, c] : x.terms())
        for (std::size_t r = 1; r < w.size(); ++r)
            out.emplace_back(TensorWord(w.begin(), w.begin() + r), TensorWord(w.begin() + r, w.end()), c);
    return out;
}

/// Shuffle product on words: signed sum over all order-preserving
/// interleavings, sign from inverted homogeneous pairs.
template <class K>
BarElement<K> shuffle(const GradedSpace<K>& sp, const TensorWord& x, const TensorWord& y, int cap) {
    const int r = static_cast<int>(x.size()), s = static_cast<int>(y.size());
    if (r + s > cap) throw WordCapExceeded();
    BarElement<K> out(&sp);
    // choose positions of x's letters among r+s slots
    std::vector<int> sel(r + s, 0);
    std::fill(sel.begin(), sel.begin() + r, 1);
    std::sort(sel.begin(), sel.end());
    // iterate over all permutations of the selector mask
    do {
        TensorWord w(r + s);
        int xi = 0, yi = 0, inversions_sign = 0;
        // a pair (x_i, y_j) is inverted when y_j is placed before x_i
        for (int pos = 0; pos < r + s; ++pos) {
            if (sel[pos]) {
                w[pos] = x[xi++];
            } else {
                w[pos] = y[yi++];
                // y_j precedes the remaining x-letters x_{xi..r-1}
                int deg_rest = 0;
                for (int t = xi; t < r; ++t) deg_rest += sp.degree(x[t]);
                inversions_sign += sp.degree(y[yi - 1]) * deg_rest;
            }
        }
        K coeff = (inversions_sign % 2) ? -sp.field().one() : sp.field().one();
        out.add(w, coeff);
    } while (std::next_permutation(sel.begin(), sel.end()));
    return out;
}

template <class K>
BarElement<K> shuffle(const BarElement<K>& x, const BarElement<K>& y, int cap) {
    BarElement<K> out(x.space());
    for (const auto& [wx, cx] : x.terms())
        for (const auto& [wy, cy] : y.terms())
            out.add_scaled(shuffle(*x.space(), wx, wy, cap), cx * cy);
    return out;
}

/// All (r, n-r) interleaving permutations of {1..n} as position lists, with
/// the shuffle sign for letters of the given degrees.  sigma[k] = index into
/// the concatenated list (first block then second) placed at position k.
inline std::vector<std::pair<std::vector<int>, int>> shuffle_permutations(int r, int n,
                                                                          const std::vector<int>& degrees) {
    std::vector<std::pair<std::vector<int>, int>> out;
    std::vector<int> sel(n, 0);
    std::fill(sel.begin(), sel.begin() + r, 1);
    std::sort(sel.begin(), sel.end());
    do {
        std::vector<int> perm(n);
        int xi = 0, yi = r, sign = 0;
        for (int pos = 0; pos < n; ++pos) {
            if (sel[pos]) {
                perm[pos] = xi++;
            } else {
                perm[pos] = yi++;
                int deg_rest = 0;
                for (int t = xi; t < r; ++t) deg_rest += degrees[t];
                sign += degrees[perm[pos]] * deg_rest;
            }
        }
        out.emplace_back(std::move(perm), ((sign % 2) + 2) % 2);
    } while (std::next_permutation(sel.begin(), sel.end()));
    return out;
}

}  // namespace ainfty
