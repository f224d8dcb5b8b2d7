// Test-side builder for small graded-commutative monomial DGAs
// (exterior generators in odd classical degree, truncated polynomial
// generators in even classical degree).  Produces structure constants in the
// shifted b-convention independently of the library's document importer.
#pragma once

#include "ainfty/ainfinity.hpp"

#include <algorithm>
#include <memory>
#include <map>
#include <string>
#include <vector>

namespace testutil {

using namespace ainfty;

struct MonomialDga {
    std::vector<std::string> gen_names;
    std::vector<int> gen_cl_deg;  // classical degrees
    int truncation_cl_deg = 1000;

    // monomial = exponent vector; odd-degree generators allow exponent <= 1
    using Mono = std::vector<int>;
    std::vector<Mono> basis;                 // includes the empty monomial (the unit)
    std::map<Mono, int> index;
    // d(generator i) as a linear combination of monomials
    std::map<int, std::map<Mono, long long>> dgen;

    int cl_degree(const Mono& m) const {
        int d = 0;
        for (std::size_t i = 0; i < m.size(); ++i) d += m[i] * gen_cl_deg[i];
        return d;
    }

    void build_basis() {
        Mono cur(gen_names.size(), 0);
        basis.clear();
        index.clear();
        enumerate(0, cur);
        std::sort(basis.begin(), basis.end(), [&](const Mono& a, const Mono& b) {
            int da = cl_degree(a), db = cl_degree(b);
            if (da != db) return da < db;
            return a < b;
        });
        for (std::size_t i = 0; i < basis.size(); ++i) index[basis[i]] = static_cast<int>(i);
    }

    std::string name(const Mono& m) const {
        std::string s;
        for (std::size_t i = 0; i < m.size(); ++i)
            for (int k = 0; k < m[i]; ++k) s += gen_names[i];
        return s.empty() ? "1" : s;
    }

    // product of monomials with the classical Koszul sign; zero if truncated
    // or an odd generator repeats
    std::pair<Mono, int> mul(const Mono& a, const Mono& b) const {
        Mono out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) {
            out[i] = a[i] + b[i];
            if ((gen_cl_deg[i] % 2) && out[i] > 1) return {Mono(), 0};
        }
        if (cl_degree(out) > truncation_cl_deg) return {Mono(), 0};
        // sign: move every factor of b past the larger-indexed factors of a
        long long sign_exp = 0;
        for (std::size_t j = 0; j < b.size(); ++j) {
            if (!b[j] || !(gen_cl_deg[j] % 2)) continue;
            long long cross = 0;
            for (std::size_t i = j + 1; i < a.size(); ++i)
                if (gen_cl_deg[i] % 2) cross += a[i];
            sign_exp += static_cast<long long>(b[j]) * cross;
        }
        return {out, (sign_exp % 2) ? -1 : 1};
    }

    // derivation extension of dgen to a monomial
    std::map<Mono, long long> d(const Mono& m) const {
        std::map<Mono, long long> out;
        // d(g_{i}^{e_i} ...) = sum over positions, Leibniz with classical signs
        // walk factors in sorted generator order
        int prefix_deg = 0;
        for (std::size_t i = 0; i < m.size(); ++i) {
            for (int k = 0; k < m[i]; ++k) {
                auto it = dgen.find(static_cast<int>(i));
                if (it != dgen.end()) {
                    // remove one copy of g_i, multiply d(g_i) back in place
                    Mono rest = m;
                    rest[i] -= 1;
                    for (const auto& [dm, dc] : it->second) {
                        // Leibniz sign for d passing the prefix combined with
                        // moving d(g_i) to the front of rest:
                        // (-1)^{|prefix| (|g_i|)}  (classical degrees)
                        auto [prod, s] = mul(dm, rest);
                        if (s == 0) continue;
                        bool neg = (prefix_deg % 2) && (gen_cl_deg[i] % 2);
                        long long coeff = dc * s * (neg ? -1 : 1);
                        out[prod] += coeff;
                        if (out[prod] == 0) out.erase(prod);
                    }
                }
                prefix_deg += gen_cl_deg[i];
            }
        }
        return out;
    }

  private:
    void enumerate(std::size_t i, Mono& cur) {
        if (i == gen_names.size()) {
            if (cl_degree(cur) <= truncation_cl_deg) basis.push_back(cur);
            return;
        }
        int cap = (gen_cl_deg[i] % 2) ? 1 : truncation_cl_deg / std::max(1, gen_cl_deg[i]);
        for (int e = 0; e <= cap; ++e) {
            cur[i] = e;
            if (cl_degree(cur) <= truncation_cl_deg) enumerate(i + 1, cur);
        }
        cur[i] = 0;
    }
};

/// Shift to the b-convention: paper degree = classical - 1, b_1 = d,
/// b_2(a,b) = (-1)^{|a|_paper} a·b.
template <class K>
struct BuiltDga {
    std::unique_ptr<GradedSpace<K>> space;
    AInfinity<K> alg;
    MonomialDga dga;
};

template <class K>
BuiltDga<K> build_dga(const Field<K>& field, MonomialDga dga) {
    dga.build_basis();
    std::vector<std::pair<std::string, int>> basis;
    for (const auto& m : dga.basis) basis.emplace_back(dga.name(m), dga.cl_degree(m) - 1);
    BuiltDga<K> out;
    out.space = std::make_unique<GradedSpace<K>>(field, Grading::Z, basis);
    const GradedSpace<K>* sp = out.space.get();
    out.alg = AInfinity<K>(sp);
    out.alg.set_dga(true);

    MultiMap<K> b1(sp, sp, 1, 1);
    for (std::size_t i = 0; i < dga.basis.size(); ++i) {
        auto dm = dga.d(dga.basis[i]);
        Element<K> val(sp);
        for (const auto& [mono, c] : dm)
            val.add_scaled(Element<K>::basis(sp, dga.index.at(mono)), field.from_long(c));
        if (!val.is_zero()) b1.set({static_cast<int>(i)}, val);
    }
    if (!b1.is_zero()) out.alg.set_op(std::move(b1));

    MultiMap<K> b2(sp, sp, 2, 1);
    for (std::size_t i = 0; i < dga.basis.size(); ++i)
        for (std::size_t j = 0; j < dga.basis.size(); ++j) {
            auto [prod, s] = dga.mul(dga.basis[i], dga.basis[j]);
            if (s == 0) continue;
            int paper_deg = dga.cl_degree(dga.basis[i]) - 1;
            long long coeff = s * ((paper_deg % 2 + 2) % 2 ? -1 : 1);
            Element<K> val = Element<K>::basis(sp, dga.index.at(prod)) * field.from_long(coeff);
            if (!val.is_zero()) b2.set({static_cast<int>(i), static_cast<int>(j)}, val);
        }
    if (!b2.is_zero()) out.alg.set_op(std::move(b2));
    out.dga = std::move(dga);
    return out;
}

/// Λ(x1, x2, y), dy = x1 x2, classical degrees (1,1,1).
template <class K>
BuiltDga<K> make_heis(const Field<K>& f) {
    MonomialDga d;
    d.gen_names = {"x1", "x2", "y"};
    d.gen_cl_deg = {1, 1, 1};
    d.dgen[2] = {{{1, 1, 0}, 1}};  // dy = x1x2
    return build_dga(f, std::move(d));
}

/// Unital Λ(u), classical degree 3, d = 0.
template <class K>
BuiltDga<K> make_s3u(const Field<K>& f) {
    MonomialDga d;
    d.gen_names = {"u"};
    d.gen_cl_deg = {3};
    return build_dga(f, std::move(d));
}

/// Λ(h) ⊗ k[x, x'] truncated at classical degree 9 with dx' = -hx;
/// h is a degree-2 (paper) twisting element with a nonzero d_5.
template <class K>
BuiltDga<K> make_dfive(const Field<K>& f) {
    MonomialDga d;
    d.gen_names = {"h", "x", "w"};  // w := x'
    d.gen_cl_deg = {3, 2, 4};
    d.truncation_cl_deg = 9;
    d.dgen[2] = {{{1, 1, 0}, -1}};  // dw = -hx
    return build_dga(f, std::move(d));
}

template <class K>
BuiltDga<K> make_zero(const Field<K>& f) {
    BuiltDga<K> out;
    out.space = std::make_unique<GradedSpace<K>>(f, Grading::Z, std::vector<std::pair<std::string, int>>{});
    out.alg = AInfinity<K>(out.space.get());
    out.alg.set_dga(true);
    return out;
}

template <class K>
Element<K> elem(const GradedSpace<K>* sp, const std::string& name) {
    return Element<K>::from_name(sp, name);
}

}  // namespace testutil
