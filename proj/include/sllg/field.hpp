#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "sllg/vec3.hpp"

namespace sllg {

/// R^3-valued function sampled on the M+1 uniform grid nodes x_j = j/M of [0,1].
struct VectorField {
    std::vector<Vec3> v;

    VectorField() = default;
    explicit VectorField(std::size_t nodes) : v(nodes) {}

    std::size_t nodes() const { return v.size(); }
    std::size_t grid_size() const { return v.empty() ? 0 : v.size() - 1; }
};

inline void require_same_grid(const VectorField& a, const VectorField& b) {
    if (a.nodes() != b.nodes())
        throw std::invalid_argument("vector fields sampled on different grids");
}

inline bool finite(const VectorField& f) {
    for (const Vec3& p : f.v)
        if (!finite(p)) return false;
    return true;
}

/// Pointwise a(x_j) x b(x_j).
inline VectorField cross(const VectorField& a, const VectorField& b) {
    require_same_grid(a, b);
    VectorField out(a.nodes());
    for (std::size_t j = 0; j < a.nodes(); ++j) out.v[j] = cross(a.v[j], b.v[j]);
    return out;
}

inline VectorField operator+(const VectorField& a, const VectorField& b) {
    require_same_grid(a, b);
    VectorField out(a.nodes());
    for (std::size_t j = 0; j < a.nodes(); ++j) out.v[j] = a.v[j] + b.v[j];
    return out;
}

inline VectorField operator-(const VectorField& a, const VectorField& b) {
    require_same_grid(a, b);
    VectorField out(a.nodes());
    for (std::size_t j = 0; j < a.nodes(); ++j) out.v[j] = a.v[j] - b.v[j];
    return out;
}

inline VectorField operator*(double s, const VectorField& a) {
    VectorField out(a.nodes());
    for (std::size_t j = 0; j < a.nodes(); ++j) out.v[j] = s * a.v[j];
    return out;
}

inline double sup_norm(const VectorField& f) {
    double m = 0.0;
    for (const Vec3& p : f.v) m = std::max(m, norm(p));
    return m;
}

/// max_j | |m(x_j)| - 1 |; zero exactly on the unit sphere.
inline double sphere_deviation(const VectorField& m) {
    double dev = 0.0;
    for (const Vec3& p : m.v) dev = std::max(dev, std::abs(norm(p) - 1.0));
    return dev;
}

/// max_j | |a x b|^2 + <a,b>^2 - |a|^2 |b|^2 |, the Lagrange identity defect.
inline double lagrange_identity_residual(const VectorField& a, const VectorField& b) {
    require_same_grid(a, b);
    double res = 0.0;
    for (std::size_t j = 0; j < a.nodes(); ++j) {
        const double d = dot(a.v[j], b.v[j]);
        const double lhs = norm_sq(cross(a.v[j], b.v[j])) + d * d;
        res = std::max(res, std::abs(lhs - norm_sq(a.v[j]) * norm_sq(b.v[j])));
    }
    return res;
}

}  // namespace sllg
