#ifndef FRAMEGEO_LINALG_HPP
#define FRAMEGEO_LINALG_HPP

#include <vector>

#include "framegeo/jet.hpp"

namespace framegeo {

/// Dense square matrix over any commutative ring with division
/// (scalars or jets). Row-major, dimension fixed at construction.
template <class T>
class Mat {
  public:
    Mat() : n_(0) {}
    Mat(int n, const T& fill) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

    int dim() const { return n_; }
    T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
    const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  private:
    int n_;
    std::vector<T> a_;
};

// Pivot selection key: |value at the point| for jets, |x| for scalars.
template <class S>
double pivot_magnitude(const Jet<S>& x) {
    return std::abs(ScalarOps<S>::to_double(x.value()));
}
inline double pivot_magnitude(double x) { return std::abs(x); }
inline double pivot_magnitude(const Rational& x) { return std::abs(x.to_double()); }

template <class T>
bool entry_is_zero(const T& x);
template <class S>
bool entry_is_zero(const Jet<S>& x) { return ScalarOps<S>::is_zero(x.value()); }
inline bool entry_is_zero(double x) { return x == 0.0; }
inline bool entry_is_zero(const Rational& x) { return x.is_zero(); }

/// Determinant of a scalar matrix by Gaussian elimination with partial
/// pivoting; exact in rational mode. Only values are ever needed for
/// the singularity test, because taking the value of a jet commutes
/// with ring operations.
template <class S>
S det(Mat<S> m) {
    const int n = m.dim();
    S result = ScalarOps<S>::from_int(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        double best = 0.0;
        for (int r = col; r < n; ++r) {
            double mag = pivot_magnitude(m(r, col));
            if (!entry_is_zero(m(r, col)) && (pivot < 0 || mag > best)) {
                pivot = r;
                best = mag;
            }
        }
        if (pivot < 0) return S(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(m(col, j), m(pivot, j));
            result = -result;
        }
        result = result * m(col, col);
        for (int r = col + 1; r < n; ++r) {
            S f = m(r, col) / m(col, col);
            for (int j = col; j < n; ++j) m(r, j) = m(r, j) - f * m(col, j);
        }
    }
    return result;
}

/// Gauss-Jordan inverse over jets or scalars. Pivots must be nonzero at
/// the evaluation point; callers run the det-threshold test on the
/// value matrix first, which guarantees usable pivots exist here.
template <class T>
Mat<T> invert(Mat<T> m, const T& one) {
    const int n = m.dim();
    T zero = one - one;
    Mat<T> inv(n, zero);
    for (int i = 0; i < n; ++i) inv(i, i) = one;
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        double best = 0.0;
        for (int r = col; r < n; ++r) {
            double mag = pivot_magnitude(m(r, col));
            if (!entry_is_zero(m(r, col)) && (pivot < 0 || mag > best)) {
                pivot = r;
                best = mag;
            }
        }
        if (pivot < 0) throw SingularFrame("matrix is singular at the evaluation point");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(m(col, j), m(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        }
        T d = m(col, col);
        for (int j = 0; j < n; ++j) {
            m(col, j) = m(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            T f = m(r, col);
            for (int j = 0; j < n; ++j) {
                m(r, j) = m(r, j) - f * m(col, j);
                inv(r, j) = inv(r, j) - f * inv(col, j);
            }
        }
    }
    return inv;
}

/// Values of a jet matrix at its evaluation point.
template <class S>
Mat<S> value_matrix(const Mat<Jet<S>>& m) {
    Mat<S> v(m.dim(), S(0));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) v(i, j) = m(i, j).value();
    return v;
}

}  // namespace framegeo

#endif
