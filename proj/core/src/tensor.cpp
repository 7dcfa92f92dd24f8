#include "odeinv/tensor.hpp"

#include <stdexcept>
#include <vector>

namespace odeinv {

TensorComp::TensorComp(int r, int s, int w) : r_(r), s_(s), w_(w) {
  if (r < 0 || r > 1 || s < 0 || s > 3 || w < 0)
    throw std::invalid_argument("unsupported tensor signature");
}

Rational TensorComp::get(int i, int a) const {
  auto it = c_.find({i, a});
  return it == c_.end() ? Rational(0) : it->second;
}

void TensorComp::set(int i, int a, const Rational &v) {
  if ((r_ == 0) != (i == 0) || i < 0 || i > 2 || a < 0 || a > s_)
    throw std::out_of_range("tensor index out of range");
  if (v == 0)
    c_.erase({i, a});
  else
    c_[{i, a}] = v;
}

TensorComp &TensorComp::operator+=(const TensorComp &o) {
  if (o.r_ != r_ || o.s_ != s_ || o.w_ != w_)
    throw std::invalid_argument("adding tensors of different signatures");
  for (const auto &[k, v] : o.c_)
    set(k.first, k.second, get(k.first, k.second) + v);
  return *this;
}

TensorComp operator*(const Rational &k, const TensorComp &t) {
  TensorComp out(t.r_, t.s_, t.w_);
  for (const auto &[key, v] : t.c_)
    out.set(key.first, key.second, k * v);
  return out;
}

std::string to_string(const TensorComp &t) {
  std::string out = "(" + std::to_string(t.r()) + "," + std::to_string(t.s()) + "," +
                    std::to_string(t.w()) + ") {";
  bool first = true;
  for (const auto &[k, v] : t.entries()) {
    out += first ? "" : ", ";
    first = false;
    out += "[" + std::to_string(k.first) + "|" + std::to_string(k.second) + "]=" + to_string(v);
  }
  return out + "}";
}

namespace {

// Number of ones in an ordered index tuple encoded as bits (bit set = 2).
int ones(unsigned bits, int s) {
  int n = 0;
  for (int m = 0; m < s; ++m)
    n += (bits >> m & 1u) ? 0 : 1;
  return n;
}

} // namespace

TensorComp push_tensor(const TensorComp &t, const Mat2 &J) {
  Mat2 Ji = inverse(J);
  Rational scale = power(det(J), -t.w());
  TensorComp out(t.r(), t.s(), t.w());
  int s = t.s();
  for (int i = t.r() ? 1 : 0; i <= (t.r() ? 2 : 0); ++i)
    for (int a = 0; a <= s; ++a) {
      // target lower tuple: a ones then twos
      std::vector<int> target(s);
      for (int m = 0; m < s; ++m)
        target[m] = m < a ? 0 : 1;
      Rational acc = 0;
      for (int k = t.r() ? 1 : 0; k <= (t.r() ? 2 : 0); ++k) {
        Rational up = t.r() ? J[i - 1][k - 1] : Rational(1);
        if (up == 0)
          continue;
        for (unsigned bits = 0; bits < (1u << s); ++bits) {
          Rational c = t.get(k, ones(bits, s));
          if (c == 0)
            continue;
          Rational f = up * c;
          for (int m = 0; m < s; ++m)
            f *= Ji[bits >> m & 1u][target[m]];
          acc += f;
        }
      }
      out.set(i, a, scale * acc);
    }
  return out;
}

TensorComp g2_generator(int which) {
  TensorComp e(1, 2, 0);
  if (which == 1) {
    e.set(1, 2, 2); // 2 d1 (x) dx1 dx1
    e.set(2, 1, 1); // d2 (x) dx1 dx2
  } else if (which == 2) {
    e.set(2, 0, 2);
    e.set(1, 1, 1);
  } else {
    throw std::out_of_range("g2 has two generators");
  }
  return e;
}

TensorComp trace_contraction(const TensorComp &t) {
  if (t.r() != 1 || t.s() != 2)
    throw std::invalid_argument("trace contraction needs a (1,2,w) tensor");
  TensorComp out(0, 1, t.w());
  // k = 1: t^1_{11} + t^2_{21}; k = 2: t^1_{12} + t^2_{22}
  out.set(0, 1, t.get(1, 2) + t.get(2, 1));
  out.set(0, 0, t.get(1, 1) + t.get(2, 0));
  return out;
}

TensorComp area_contraction(const TensorComp &t) {
  if (t.r() != 1 || t.s() != 0 || t.w() < 1)
    throw std::invalid_argument("area contraction needs a (1,0,w>=1) tensor");
  TensorComp out(0, 1, t.w() - 1);
  // t^m eps_{m s} / 2 with eps_{12} = 1
  out.set(0, 1, -t.get(2, 0) / 2);
  out.set(0, 0, t.get(1, 0) / 2);
  return out;
}

TensorComp pair_contraction(const TensorComp &vec, const TensorComp &covec) {
  if (vec.r() != 1 || vec.s() != 0 || covec.r() != 0 || covec.s() != 1)
    throw std::invalid_argument("pair contraction needs a vector and a covector");
  TensorComp out(0, 0, vec.w() + covec.w());
  out.set(0, 0, vec.get(1, 0) * covec.get(0, 1) + vec.get(2, 0) * covec.get(0, 0));
  return out;
}

} // namespace odeinv
