#pragma once

#include "linalg.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ainfty {

enum class Grading { Z, Z2 };

/// Finite-basis graded vector space over an exact field.  The basis order is
/// fixed at construction and defines all downstream determinism.
template <class K>
class GradedSpace {
  public:
    GradedSpace(Field<K> field, Grading mode, std::vector<std::pair<std::string, int>> basis)
        : field_(field), mode_(mode) {
        for (auto& [name, deg] : basis) {
            if (names_.count(name)) throw std::invalid_argument("duplicate basis name: " + name);
            if (mode_ == Grading::Z2 && deg != 0 && deg != 1)
                throw std::invalid_argument("Z2 grading requires degrees in {0,1}");
            names_.emplace(name, static_cast<int>(degrees_.size()));
            labels_.push_back(name);
            degrees_.push_back(deg);
        }
    }

    const Field<K>& field() const { return field_; }
    Grading mode() const { return mode_; }
    int dim() const { return static_cast<int>(degrees_.size()); }
    int degree(int i) const { return degrees_[i]; }
    const std::string& label(int i) const { return labels_[i]; }
    int index(const std::string& name) const {
        auto it = names_.find(name);
        if (it == names_.end()) throw std::invalid_argument("unknown basis name: " + name);
        return it->second;
    }
    bool has(const std::string& name) const { return names_.count(name) != 0; }

    /// Degree arithmetic respecting the grading mode.
    int deg_add(int a, int b) const { return mode_ == Grading::Z2 ? (a + b) & 1 : a + b; }
    int normalize_deg(int d) const { return mode_ == Grading::Z2 ? ((d % 2) + 2) % 2 : d; }

    std::vector<int> indices_of_degree(int d) const {
        std::vector<int> out;
        for (int i = 0; i < dim(); ++i)
            if (degrees_[i] == d) out.push_back(i);
        return out;
    }
    std::vector<int> indices_of_parity(int par) const {
        std::vector<int> out;
        for (int i = 0; i < dim(); ++i)
            if (((degrees_[i] % 2) + 2) % 2 == par) out.push_back(i);
        return out;
    }
    int min_degree() const {
        int d = 0;
        for (int i = 0; i < dim(); ++i) d = i == 0 ? degrees_[i] : std::min(d, degrees_[i]);
        return d;
    }
    int max_degree() const {
        int d = 0;
        for (int i = 0; i < dim(); ++i) d = i == 0 ? degrees_[i] : std::max(d, degrees_[i]);
        return d;
    }

  private:
    Field<K> field_;
    Grading mode_;
    std::map<std::string, int> names_;
    std::vector<std::string> labels_;
    std::vector<int> degrees_;
};

/// Element with sparse coefficients over a space's basis.
template <class K>
class Element {
  public:
    Element() : sp_(nullptr) {}
    explicit Element(const GradedSpace<K>* sp) : sp_(sp) {}
    Element(const GradedSpace<K>* sp, SparseVec<K> coeffs) : sp_(sp), c_(std::move(coeffs)) {}

    static Element basis(const GradedSpace<K>* sp, int i) {
        return Element(sp, SparseVec<K>{{i, sp->field().one()}});
    }
    static Element from_name(const GradedSpace<K>* sp, const std::string& n) {
        return basis(sp, sp->index(n));
    }

    const GradedSpace<K>* space() const { return sp_; }
    const SparseVec<K>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }

    /// Defined only when every supporting basis vector shares one degree.
    std::optional<int> degree() const {
        std::optional<int> d;
        for (const auto& [i, v] : c_) {
            int di = sp_->degree(i);
            if (!d)
                d = di;
            else if (*d != di)
                return std::nullopt;
        }
        return d;
    }
    bool is_homogeneous() const { return c_.empty() || degree().has_value(); }

    void add_scaled(const Element& o, const K& s) {
        check(o);
        vec_add_scaled(c_, o.c_, s);
    }
    Element operator+(const Element& o) const {
        Element r = *this;
        r.add_scaled(o, sp_->field().one());
        return r;
    }
    Element operator-(const Element& o) const {
        Element r = *this;
        r.add_scaled(o, -sp_->field().one());
        return r;
    }
    Element operator*(const K& s) const { return Element(sp_, vec_scaled(c_, s)); }
    Element operator-() const { return *this * (-sp_->field().one()); }
    bool operator==(const Element& o) const { return check(o), c_ == o.c_; }

    /// Component supported in one degree (Z) or parity (Z2-normalized input).
    Element component(int deg) const {
        Element out(sp_);
        for (const auto& [i, v] : c_)
            if (sp_->degree(i) == deg) out.c_.emplace(i, v);
        return out;
    }
    Element parity_component(int par) const {
        Element out(sp_);
        for (const auto& [i, v] : c_)
            if (((sp_->degree(i) % 2) + 2) % 2 == par) out.c_.emplace(i, v);
        return out;
    }
    /// Bar involution: v -> (-1)^{|v|} v on each homogeneous component.
    Element bar() const {
        Element out(sp_);
        for (const auto& [i, v] : c_)
            out.c_.emplace(i, (sp_->degree(i) % 2) ? -v : v);
        return out;
    }

    std::string to_string() const {
        if (c_.empty()) return "0";
        std::string s;
        for (const auto& [i, v] : c_) {
            if (!s.empty()) s += " + ";
            s += Field<K>::to_string(v) + "*" + sp_->label(i);
        }
        return s;
    }

  private:
    void check(const Element& o) const {
        if (sp_ != o.sp_) throw std::invalid_argument("elements from different spaces");
    }
    const GradedSpace<K>* sp_;
    SparseVec<K> c_;
};

}  // namespace ainfty
