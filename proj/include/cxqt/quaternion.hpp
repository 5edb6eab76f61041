#pragma once

#include <random>

#include "cxqt/linalg.hpp"

namespace cxqt {

/// w + x i + y j + z k over an exact field.
template <typename T>
struct Quat {
  T w{0}, x{0}, y{0}, z{0};

  static Quat real(T s) { return {std::move(s), T(0), T(0), T(0)}; }
  static Quat from_vector(const Vec<T>& v) { return {v(0), v(1), v(2), v(3)}; }

  Vec<T> vector() const {
    Vec<T> v(4);
    v << w, x, y, z;
    return v;
  }

  Quat conj() const { return {w, -x, -y, -z}; }
  /// Squared Euclidean norm, q q*.
  T norm() const { return w * w + x * x + y * y + z * z; }
  bool is_unit() const { return norm() == T(1); }

  friend Quat operator*(const Quat& p, const Quat& q) {
    return {p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z, p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x, p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w};
  }
  friend Quat operator+(const Quat& p, const Quat& q) { return {p.w + q.w, p.x + q.x, p.y + q.y, p.z + q.z}; }
  friend Quat operator-(const Quat& p, const Quat& q) { return {p.w - q.w, p.x - q.x, p.y - q.y, p.z - q.z}; }
  Quat operator-() const { return {-w, -x, -y, -z}; }
  friend bool operator==(const Quat& p, const Quat& q) = default;
};

using Quaternion = Quat<QSqrt5>;

/// 4x4 matrix, in the basis (1, i, j, k), of a real-linear map on quaternions.
template <typename T, typename Fn>
Mat<T> quaternion_map_matrix(Fn&& f) {
  Mat<T> m(4, 4);
  for (int c = 0; c < 4; ++c) {
    Vec<T> e = Vec<T>::Zero(4);
    e(c) = T(1);
    m.col(c) = f(Quat<T>::from_vector(e)).vector();
  }
  return m;
}

/// x -> l x r*; l and r must be unit quaternions.
ExactMatrix map_lr(const Quaternion& l, const Quaternion& r);
/// x -> p x*; p must be a unit quaternion.
ExactMatrix map_star(const Quaternion& p);
/// x -> l x + x r, for arbitrary l and r.
ExactMatrix map_left_plus_right(const Quaternion& l, const Quaternion& r);

/// The 120 unit icosians: +-1, +-i, +-j, +-k, (+-1 +-i +-j +-k)/2 and the
/// even coordinate permutations of (0, +-1, +-1/tau, +-tau)/2.
std::vector<Quaternion> icosians();

/// Exact unit quaternion drawn from a rational-coordinate stereographic
/// chart over Q(sqrt 5), occasionally multiplied by a random icosian.
Quaternion random_unit_quaternion(std::mt19937_64& rng);

}  // namespace cxqt
