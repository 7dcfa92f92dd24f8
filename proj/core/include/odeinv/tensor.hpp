#pragma once

#include "odeinv/rational.hpp"
#include "odeinv/transform.hpp"

#include <map>
#include <string>
#include <utility>

namespace odeinv {

// Tensor at a point of the plane: r contravariant slots (0 or 1), s symmetric
// covariant slots and w factors of the area form dx^1 ^ dx^2.
// Entry (i, a) is the component with upper index i (0 when r = 0) and lower
// indices a ones followed by s - a twos.
class TensorComp {
public:
  TensorComp() = default;
  TensorComp(int r, int s, int w);

  int r() const { return r_; }
  int s() const { return s_; }
  int w() const { return w_; }

  Rational get(int i, int a) const;
  void set(int i, int a, const Rational &v);
  const std::map<std::pair<int, int>, Rational> &entries() const { return c_; }
  bool is_zero() const { return c_.empty(); }

  TensorComp &operator+=(const TensorComp &o);
  friend TensorComp operator+(TensorComp a, const TensorComp &b) { return a += b; }
  friend TensorComp operator*(const Rational &k, const TensorComp &t);
  friend bool operator==(const TensorComp &a, const TensorComp &b) = default;

private:
  int r_ = 0, s_ = 0, w_ = 0;
  std::map<std::pair<int, int>, Rational> c_; // nonzero entries only
};

std::string to_string(const TensorComp &t);

// Pushforward by a linear map J: J on the upper slot, J^{-1} on each lower
// slot and det(J)^{-w} for the area-form factors.
TensorComp push_tensor(const TensorComp &t, const Mat2 &J);

// Generators e1, e2 of g^2 as (1, 2, 0) tensors.
TensorComp g2_generator(int which);

// (t^i_{jk}) -> (t^m_{mk}) for r = 1, s = 2.
TensorComp trace_contraction(const TensorComp &t);
// Vector-valued area form (r = 1, s = 0, w >= 1) -> covector, taking
// dx^1 ^ dx^2 = (dx^1 (x) dx^2 - dx^2 (x) dx^1) / 2.
TensorComp area_contraction(const TensorComp &t);
// beta^m alpha_m for a vector (r = 1, s = 0) and a covector (r = 0, s = 1).
TensorComp pair_contraction(const TensorComp &vec, const TensorComp &covec);

} // namespace odeinv
