#ifndef OSLT_VEC_HPP
#define OSLT_VEC_HPP

#include <array>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace oslt {

/// Small fixed-capacity point/velocity vector. Spatial dimensions up to 4
/// are supported, which covers every grid-based module in this project.
class Vec {
public:
    static constexpr int kMaxDim = 4;

    Vec() = default;
    explicit Vec(int n) : n_(n) { assert(n >= 0 && n <= kMaxDim); }
    Vec(std::initializer_list<double> xs) : n_(static_cast<int>(xs.size())) {
        assert(n_ <= kMaxDim);
        int i = 0;
        for (double v : xs) a_[i++] = v;
    }

    int size() const { return n_; }
    double& operator[](int i) { assert(i >= 0 && i < n_); return a_[i]; }
    double operator[](int i) const { assert(i >= 0 && i < n_); return a_[i]; }

    Vec& operator+=(const Vec& o) {
        assert(n_ == o.n_);
        for (int i = 0; i < n_; ++i) a_[i] += o.a_[i];
        return *this;
    }
    Vec& operator-=(const Vec& o) {
        assert(n_ == o.n_);
        for (int i = 0; i < n_; ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Vec& operator*=(double c) {
        for (int i = 0; i < n_; ++i) a_[i] *= c;
        return *this;
    }

    friend Vec operator+(Vec a, const Vec& b) { return a += b; }
    friend Vec operator-(Vec a, const Vec& b) { return a -= b; }
    friend Vec operator*(double c, Vec a) { return a *= c; }
    friend Vec operator*(Vec a, double c) { return a *= c; }

    static Vec zero(int n) { return Vec(n); }

private:
    std::array<double, kMaxDim> a_{};
    int n_ = 0;
};

inline double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double s = 0;
    for (int i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm2(const Vec& a) { return dot(a, a); }
inline double norm(const Vec& a) { return std::sqrt(norm2(a)); }

inline bool finite(const Vec& a) {
    for (int i = 0; i < a.size(); ++i)
        if (!std::isfinite(a[i])) return false;
    return true;
}

inline double sgn(double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); }
inline double pos_part(double x) { return x > 0 ? x : 0.0; }

/// Axis-aligned box, per-axis bounds.
struct Box {
    std::vector<double> lo, hi;

    int dim() const { return static_cast<int>(lo.size()); }
    double width(int i) const { return hi[i] - lo[i]; }
    double diameter() const {
        double s = 0;
        for (int i = 0; i < dim(); ++i) s += width(i) * width(i);
        return std::sqrt(s);
    }
    double volume() const {
        double v = 1;
        for (int i = 0; i < dim(); ++i) v *= width(i);
        return v;
    }
    bool contains(const Vec& x, double slack = 0.0) const {
        for (int i = 0; i < dim(); ++i)
            if (x[i] < lo[i] - slack || x[i] > hi[i] + slack) return false;
        return true;
    }
    Vec clamp(Vec x) const {
        for (int i = 0; i < dim(); ++i) {
            if (x[i] < lo[i]) x[i] = lo[i];
            if (x[i] > hi[i]) x[i] = hi[i];
        }
        return x;
    }
    Box enlarged(double margin) const {
        Box b = *this;
        for (int i = 0; i < dim(); ++i) {
            b.lo[i] -= margin;
            b.hi[i] += margin;
        }
        return b;
    }
};

} // namespace oslt

#endif
