#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "darboux/field/vector_field.hpp"
#include "darboux/poly/polynomial.hpp"

namespace darboux::real {

struct Window {
  Rational xmin = -8, xmax = 8, ymin = -8, ymax = 8;
  int resolution = 512;  // grid cells per axis
};

struct DegenerateWindow {
  std::string detail;
};

/// Throws nothing; reports an empty or inverted window, or resolution < 16.
std::optional<DegenerateWindow> check_window(const Window& w);

/// g with every parameter bound, as a curve in (first, second) evaluated in
/// binary64. Coefficients are rounded once, correctly.
class RealCurve {
 public:
  RealCurve(const Polynomial& g, std::size_t first, std::size_t second, const std::map<std::size_t, Rational>& bindings);
  double operator()(double x, double y) const;
  /// Coefficients of x^i at a fixed y, for row-wise evaluation.
  std::vector<double> row(double y) const;

 private:
  std::vector<std::vector<double>> c_;  // c_[j][i] multiplies x^i y^j
};

struct Box {
  double xmin, xmax, ymin, ymax;
};

struct OvalReport {
  std::size_t bounded = 0;
  std::size_t open = 0;  // components touching the window boundary
  std::vector<Box> bounded_boxes, open_boxes;
  int resolution = 0;
  /// Counts unchanged at twice the resolution.
  bool stable = false;
  std::size_t bounded_doubled = 0, open_doubled = 0;
};

/// Marching squares with exact grid zeros treated as positive, union-find
/// over the crossing points, then a second pass at twice the resolution.
Outcome<OvalReport, DegenerateWindow> count_ovals(const RealCurve& C, const Window& w, unsigned threads = 1);

/// Contour polylines in plane coordinates; closed ones repeat no point.
struct Polyline {
  std::vector<std::array<double, 2>> points;
  bool closed = false;
};
std::vector<Polyline> contour(const RealCurve& C, const Window& w, unsigned threads = 1);

/// The field with every parameter bound, evaluated in binary64.
class RealField {
 public:
  RealField(const field::PolyVectorField& X, const std::map<std::size_t, Rational>& bindings);
  std::array<double, 2> operator()(const std::array<double, 2>& s) const;

 private:
  RealCurve P_, Q_;
};

struct IntegrationOptions {
  double t_end = 10;
  double rtol = 1e-9, atol = 1e-12;
  long max_steps = 1000000;
  /// Stop once the state leaves this box (empty: never).
  std::optional<Box> escape;
};

struct Trajectory {
  std::vector<double> t;
  std::vector<std::array<double, 2>> points;
  bool escaped = false;
  bool step_limit = false;
};

/// Dormand-Prince 5(4) with standard step control; a negative t_end runs
/// backward in time.
Trajectory integrate(const RealField& X, std::array<double, 2> seed, const IntegrationOptions& opt);

struct PlotRequest {
  Window window;
  std::optional<field::PolyVectorField> field;
  std::vector<std::array<Rational, 2>> seeds;
  double t_end = 10;
};

/// Deterministic SVG: curve contours, optional trajectories both ways from
/// each seed, axes and legend.
Outcome<std::string, DegenerateWindow> render_svg(const Polynomial& g, std::size_t first, std::size_t second,
                                                  const std::map<std::size_t, Rational>& bindings,
                                                  const PlotRequest& req);

}  // namespace darboux::real
