#ifndef FRAMEGEO_JET_HPP
#define FRAMEGEO_JET_HPP

#include <map>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "framegeo/errors.hpp"
#include "framegeo/scalar.hpp"

namespace framegeo {

/// Shared index bookkeeping for all jets of a given (n_vars, degree):
/// the list of multi-indices with total degree <= degree in graded
/// order, the convolution pair table for products, and the shift table
/// for partial derivatives. Built once per shape and cached.
class JetLayout {
  public:
    int n_vars() const { return n_vars_; }
    int degree() const { return degree_; }
    int size() const { return static_cast<int>(index_.size()); }

    const std::vector<int>& multi_index(int pos) const { return index_[pos]; }
    int total_degree(int pos) const { return order_of_[pos]; }

    /// Position of a multi-index, or -1 if its total degree exceeds degree.
    int position(const std::vector<int>& alpha) const {
        auto it = pos_.find(alpha);
        return it == pos_.end() ? -1 : it->second;
    }

    /// Pairs (i, j) of coefficient positions with index(i) + index(j) = index(k).
    const std::vector<std::pair<int, int>>& conv_pairs(int k) const { return conv_[k]; }

    /// Position of index(pos) + e_var, or -1 past the truncation order.
    int shift_up(int pos, int var) const { return shift_[var][pos]; }

    static const JetLayout& get(int n_vars, int degree);

  private:
    JetLayout(int n_vars, int degree);

    int n_vars_;
    int degree_;
    std::vector<std::vector<int>> index_;
    std::vector<int> order_of_;
    std::map<std::vector<int>, int> pos_;
    std::vector<std::vector<std::pair<int, int>>> conv_;
    std::vector<std::vector<int>> shift_;  // [var][pos]
};

inline JetLayout::JetLayout(int n_vars, int degree) : n_vars_(n_vars), degree_(degree) {
    // Multi-indices in graded order; the zero index sits at position 0.
    std::vector<int> alpha(n_vars, 0);
    for (int ord = 0; ord <= degree; ++ord) {
        // enumerate all alpha with |alpha| == ord, lexicographic
        std::vector<std::vector<int>> level;
        std::vector<int> cur(n_vars, 0);
        auto rec = [&](auto&& self, int var, int rest) -> void {
            if (var == n_vars - 1) {
                cur[var] = rest;
                level.push_back(cur);
                return;
            }
            for (int k = rest; k >= 0; --k) {
                cur[var] = k;
                self(self, var + 1, rest - k);
            }
        };
        if (n_vars > 0) rec(rec, 0, ord);
        else if (ord == 0) level.push_back({});
        for (auto& a : level) {
            pos_[a] = static_cast<int>(index_.size());
            index_.push_back(a);
            order_of_.push_back(ord);
        }
    }
    const int n = size();
    conv_.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (order_of_[i] + order_of_[j] > degree) continue;
            std::vector<int> sum(n_vars);
            for (int v = 0; v < n_vars; ++v) sum[v] = index_[i][v] + index_[j][v];
            conv_[pos_.at(sum)].emplace_back(i, j);
        }
    }
    shift_.assign(n_vars, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
        for (int v = 0; v < n_vars; ++v) {
            if (order_of_[i] + 1 > degree) continue;
            std::vector<int> up = index_[i];
            ++up[v];
            shift_[v][i] = pos_.at(up);
        }
    }
}

inline const JetLayout& JetLayout::get(int n_vars, int degree) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<JetLayout>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(n_vars, degree);
    auto it = cache.find(key);
    if (it == cache.end()) {
        it = cache.emplace(key, std::unique_ptr<JetLayout>(new JetLayout(n_vars, degree))).first;
    }
    return *it->second;
}

/// Truncated multivariate Taylor expansion of a scalar quantity at a
/// point. Coefficients carry the 1/alpha! normalization, so products
/// are plain truncated convolutions. `valid_order` is the highest
/// derivative order still trustworthy; it drops by one per directional
/// derivative, and operations never read coefficients beyond it.
template <class S>
class Jet {
  public:
    using Ops = ScalarOps<S>;

    Jet() : layout_(&JetLayout::get(1, 0)), c_(1, S(0)), valid_order_(0) {}

    static Jet constant(S v, int n_vars, int degree) {
        Jet j(&JetLayout::get(n_vars, degree));
        j.c_[0] = std::move(v);
        return j;
    }

    static Jet variable(int i, S value, int n_vars, int degree) {
        if (i < 0 || i >= n_vars) throw Error("jet variable index out of range");
        Jet j(&JetLayout::get(n_vars, degree));
        j.c_[0] = std::move(value);
        if (degree >= 1) {
            std::vector<int> e(n_vars, 0);
            e[i] = 1;
            j.c_[j.layout_->position(e)] = Ops::from_int(1);
        }
        return j;
    }

    const JetLayout& layout() const { return *layout_; }
    int n_vars() const { return layout_->n_vars(); }
    int degree() const { return layout_->degree(); }
    int valid_order() const { return valid_order_; }

    const S& value() const { return c_[0]; }

    /// Taylor coefficient of a multi-index (includes the 1/alpha! factor).
    const S& coeff(const std::vector<int>& alpha) const {
        int p = layout_->position(alpha);
        if (p < 0) throw Error("multi-index beyond jet degree");
        return c_[p];
    }

    const std::vector<S>& coeffs() const { return c_; }

    Jet operator-() const {
        Jet r = *this;
        for (auto& x : r.c_) x = -x;
        return r;
    }

    Jet operator+(const Jet& o) const {
        check_shape(o);
        Jet r = *this;
        for (int i = 0; i < layout_->size(); ++i) r.c_[i] += o.c_[i];
        r.valid_order_ = std::min(valid_order_, o.valid_order_);
        return r;
    }

    Jet operator-(const Jet& o) const {
        check_shape(o);
        Jet r = *this;
        for (int i = 0; i < layout_->size(); ++i) r.c_[i] -= o.c_[i];
        r.valid_order_ = std::min(valid_order_, o.valid_order_);
        return r;
    }

    Jet operator*(const Jet& o) const {
        check_shape(o);
        Jet r(layout_);
        const int n = layout_->size();
        for (int k = 0; k < n; ++k) {
            S acc = S(0);
            for (auto [i, j] : layout_->conv_pairs(k)) acc += c_[i] * o.c_[j];
            r.c_[k] = std::move(acc);
        }
        r.valid_order_ = std::min(valid_order_, o.valid_order_);
        return r;
    }

    Jet operator/(const Jet& o) const {
        check_shape(o);
        if (Ops::is_zero(o.c_[0]))
            throw DivisionByZeroAtPoint("jet division by zero at the evaluation point");
        // Solve (o * q) = *this coefficient by coefficient in graded order.
        Jet q(layout_);
        const int n = layout_->size();
        for (int k = 0; k < n; ++k) {
            S acc = c_[k];
            for (auto [i, j] : layout_->conv_pairs(k)) {
                if (j == 0) continue;  // the q[k] * o.value() term being solved for
                acc -= q.c_[i] * o.c_[j];
            }
            q.c_[k] = acc / o.c_[0];
        }
        q.valid_order_ = std::min(valid_order_, o.valid_order_);
        return q;
    }

    Jet& operator+=(const Jet& o) { return *this = *this + o; }
    Jet& operator-=(const Jet& o) { return *this = *this - o; }
    Jet& operator*=(const Jet& o) { return *this = *this * o; }
    Jet& operator/=(const Jet& o) { return *this = *this / o; }

    Jet operator*(const S& s) const {
        Jet r = *this;
        for (auto& x : r.c_) x *= s;
        return r;
    }

    bool same_shape(const Jet& o) const { return layout_ == o.layout_; }

    bool operator==(const Jet& o) const {
        return layout_ == o.layout_ && c_ == o.c_ && valid_order_ == o.valid_order_;
    }

    /// Partial derivative along one chart coordinate. Coefficients past
    /// the new valid_order are unknown and stored as zero.
    Jet partial(int var) const {
        if (valid_order_ < 1)
            throw OrderExhausted("partial derivative of a jet with no trustworthy orders left");
        Jet r(layout_);
        const int n = layout_->size();
        for (int p = 0; p < n; ++p) {
            int up = layout_->shift_up(p, var);
            if (up < 0) continue;
            r.c_[p] = c_[up] * Ops::from_int(layout_->multi_index(up)[var]);
        }
        r.valid_order_ = valid_order_ - 1;
        return r;
    }

  private:
    explicit Jet(const JetLayout* layout)
        : layout_(layout), c_(layout->size(), S(0)), valid_order_(layout->degree()) {}

    void check_shape(const Jet& o) const {
        if (layout_ != o.layout_)
            throw MixedJetShapes("jets have different n_vars or degree");
    }

    const JetLayout* layout_;
    std::vector<S> c_;
    int valid_order_;

    template <class T>
    friend Jet<T> compose_series(const Jet<T>& a, const std::vector<T>& series_coeffs);
};

template <class S>
Jet<S> jet_const(S v, int n_vars, int degree) {
    return Jet<S>::constant(std::move(v), n_vars, degree);
}

template <class S>
Jet<S> jet_var(int i, const std::vector<S>& point, int n_vars, int degree) {
    if (static_cast<int>(point.size()) != n_vars)
        throw MixedJetShapes("point dimension does not match n_vars");
    return Jet<S>::variable(i, point[i], n_vars, degree);
}

/// Integer power by repeated squaring; negative exponents go through
/// the reciprocal and need a nonzero value at the point.
template <class S>
Jet<S> jet_pow(const Jet<S>& a, long long e) {
    const int nv = a.n_vars(), d = a.degree();
    if (e < 0) return jet_const<S>(ScalarOps<S>::from_int(1), nv, d) / jet_pow(a, -e);
    Jet<S> result = jet_const<S>(ScalarOps<S>::from_int(1), nv, d);
    Jet<S> base = a;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

/// f(a) for a univariate series f given by coefficients f^(k)(a0)/k!,
/// composed with the nilpotent part u = a - a0 by Horner's scheme.
template <class S>
Jet<S> compose_series(const Jet<S>& a, const std::vector<S>& series_coeffs) {
    const int d = a.degree();
    Jet<S> u = a;
    u.c_[0] = S(0);
    Jet<S> r = jet_const<S>(series_coeffs[d], a.n_vars(), d);
    for (int k = d - 1; k >= 0; --k) {
        r = r * u;
        r.c_[0] += series_coeffs[k];
    }
    r.valid_order_ = a.valid_order();
    return r;
}

template <class S>
Jet<S> jet_exp(const Jet<S>& a) {
    using Ops = ScalarOps<S>;
    const int d = a.degree();
    std::vector<S> c(d + 1, S(0));
    c[0] = Ops::exp(a.value());
    for (int k = 1; k <= d; ++k) c[k] = c[k - 1] / Ops::from_int(k);
    return compose_series(a, c);
}

template <class S>
Jet<S> jet_ln(const Jet<S>& a) {
    using Ops = ScalarOps<S>;
    const int d = a.degree();
    std::vector<S> c(d + 1, S(0));
    c[0] = Ops::ln(a.value());
    S t = Ops::from_int(1);
    for (int k = 1; k <= d; ++k) {
        t = -(t / a.value());
        c[k] = -(t / Ops::from_int(k));
    }
    return compose_series(a, c);
}

template <class S>
Jet<S> jet_sin(const Jet<S>& a) {
    using Ops = ScalarOps<S>;
    const int d = a.degree();
    const S s = Ops::sin(a.value()), co = Ops::cos(a.value());
    std::vector<S> c(d + 1, S(0));
    S fact = Ops::from_int(1);
    for (int k = 0; k <= d; ++k) {
        if (k > 0) fact *= Ops::from_int(k);
        S val = (k % 4 == 0) ? s : (k % 4 == 1) ? co : (k % 4 == 2) ? -s : -co;
        c[k] = val / fact;
    }
    return compose_series(a, c);
}

template <class S>
Jet<S> jet_cos(const Jet<S>& a) {
    using Ops = ScalarOps<S>;
    const int d = a.degree();
    const S s = Ops::sin(a.value()), co = Ops::cos(a.value());
    std::vector<S> c(d + 1, S(0));
    S fact = Ops::from_int(1);
    for (int k = 0; k <= d; ++k) {
        if (k > 0) fact *= Ops::from_int(k);
        S val = (k % 4 == 0) ? co : (k % 4 == 1) ? -s : (k % 4 == 2) ? -co : s;
        c[k] = val / fact;
    }
    return compose_series(a, c);
}

template <class S>
Jet<S> jet_sqrt(const Jet<S>& a) {
    using Ops = ScalarOps<S>;
    const int d = a.degree();
    std::vector<S> c(d + 1, S(0));
    c[0] = Ops::sqrt(a.value());
    for (int k = 1; k <= d; ++k) {
        // binom(1/2, k) ratio: c_k = c_{k-1} * (3/2 - k) / (k * a0)
        c[k] = c[k - 1] * (Ops::from_ratio(3, 2) - Ops::from_int(k)) /
               (Ops::from_int(k) * a.value());
    }
    return compose_series(a, c);
}

/// Derivative of f along the vector field with chart components v:
/// sum_m v[m] * (d f / d x^m). Consumes one trustworthy order of f.
template <class S>
Jet<S> directional_derivative(const Jet<S>& f, std::span<const Jet<S>> v) {
    if (f.valid_order() < 1)
        throw OrderExhausted("directional derivative needs valid_order >= 1");
    if (static_cast<int>(v.size()) != f.n_vars())
        throw MixedJetShapes("direction has wrong number of components");
    Jet<S> r = jet_const<S>(S(0), f.n_vars(), f.degree());
    for (int m = 0; m < f.n_vars(); ++m) r = r + v[m] * f.partial(m);
    return r;
}

template <class S>
Jet<S> directional_derivative(const Jet<S>& f, const std::vector<Jet<S>>& v) {
    return directional_derivative(f, std::span<const Jet<S>>(v));
}

}  // namespace framegeo

#endif
