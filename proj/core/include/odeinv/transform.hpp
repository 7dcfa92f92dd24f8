#pragma once

#include "odeinv/expr.hpp"
#include "odeinv/section_jet.hpp"
#include "odeinv/taylor_jet.hpp"
#include "odeinv/vfjet.hpp"

#include <array>
#include <stdexcept>

namespace odeinv {

using Mat2 = std::array<std::array<Rational, 2>, 2>;

struct SingularMapError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational det(const Mat2 &m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
Mat2 inverse(const Mat2 &m);

// m-jet at p of a plane map (f1, f2).
class MapJet {
public:
  MapJet() = default;
  MapJet(TaylorJet2 f1, TaylorJet2 f2);

  static MapJet identity(const Rational &x0, const Rational &y0, int order);

  int order() const { return f_[0].order(); }
  const Rational &x0() const { return f_[0].x0(); }
  const Rational &y0() const { return f_[0].y0(); }
  const TaylorJet2 &component(int i) const { return f_[i - 1]; }
  // Image of the base point.
  std::array<Rational, 2> image() const { return {f_[0].value(), f_[1].value()}; }
  // J[i][j] = d f^{i+1} / d x^{j+1} at the base point.
  Mat2 jacobian() const;
  MapJet truncated(int m) const { return MapJet(f_[0].truncated(m), f_[1].truncated(m)); }

  friend bool operator==(const MapJet &a, const MapJet &b) { return a.f_ == b.f_; }

private:
  std::array<TaylorJet2, 2> f_;
};

// f o g, where f is based at the image of g's base point.
MapJet compose(const MapJet &f, const MapJet &g);
// Jet at f(p) of the local inverse; same order as f.
MapJet invert_map_jet(const MapJet &f);

struct PointMap {
  CoeffExpr f1, f2;
  Rational x0, y0;
  Mat2 jacobian;
};
// Throws SingularMapError when det J vanishes at p.
PointMap make_point_map(const CoeffExpr &f1, const CoeffExpr &f2, const Rational &x0,
                        const Rational &y0);
MapJet map_jet(const PointMap &f, int order);
MapJet map_jet(const CoeffExpr &f1, const CoeffExpr &f2, const Rational &x0, const Rational &y0,
               int order);

// Coefficients of the transformed equation composed with f, i.e. the
// functions a~^i(f1(x,y), f2(x,y)) in the source coordinates.
Equation pushforward_equation(const Equation &eq, const PointMap &f);
Equation pushforward_equation(const Equation &eq, const CoeffExpr &f1, const CoeffExpr &f2);
// Coefficients in the target coordinates, given an explicit inverse g.
Equation transformed_equation(const Equation &eq, const MapExprs &map);

// k-jet at f(p) of the transformed section; needs a (k+2)-jet of f.
RSectionJet lift_section_jet(const MapJet &f, const RSectionJet &theta);
// m-jet at f(p) of f_* X; needs an (m+1)-jet of f.
RFieldJet push_field_jet(const MapJet &f, const RFieldJet &X);

} // namespace odeinv
