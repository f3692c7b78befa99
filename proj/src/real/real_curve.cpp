#include "darboux/real/real_curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <thread>

namespace darboux::real {

std::optional<DegenerateWindow> check_window(const Window& w) {
  if (!(w.xmin < w.xmax)) return DegenerateWindow{"xmin must be below xmax"};
  if (!(w.ymin < w.ymax)) return DegenerateWindow{"ymin must be below ymax"};
  if (w.resolution < 16) return DegenerateWindow{"resolution must be at least 16"};
  if (w.resolution > 16384) return DegenerateWindow{"resolution must be at most 16384"};
  return std::nullopt;
}

RealCurve::RealCurve(const Polynomial& g, std::size_t first, std::size_t second,
                     const std::map<std::size_t, Rational>& bindings) {
  const Polynomial h = substitute(g, bindings);
  for (std::size_t v = 0; v < h.context()->arity(); ++v) {
    if (v != first && v != second && h.involves(v)) {
      throw Error("no value bound for '" + h.context()->name(v) + "'");
    }
  }
  for (const auto& t : h.terms()) {
    const std::size_t i = t.monomial[first], j = t.monomial[second];
    if (c_.size() <= j) c_.resize(j + 1);
    if (c_[j].size() <= i) c_[j].resize(i + 1, 0.0);
    c_[j][i] += to_double(t.coeff);
  }
}

std::vector<double> RealCurve::row(double y) const {
  std::size_t n = 0;
  for (const auto& cj : c_) n = std::max(n, cj.size());
  std::vector<double> out(n, 0.0);
  for (std::size_t j = c_.size(); j-- > 0;) {
    for (auto& v : out) v *= y;
    for (std::size_t i = 0; i < c_[j].size(); ++i) out[i] += c_[j][i];
  }
  return out;
}

namespace {

double horner(const std::vector<double>& a, double x) {
  double s = 0;
  for (std::size_t i = a.size(); i-- > 0;) s = s * x + a[i];
  return s;
}

}  // namespace

double RealCurve::operator()(double x, double y) const { return horner(row(y), x); }

// ---------------------------------------------------------------- contours

namespace {

struct Grid {
  int n;  // cells per axis
  double x0, y0, hx, hy;
  std::vector<double> v;  // (n+1)^2 node values, row-major in y

  double x(int i) const { return x0 + hx * i; }
  double y(int j) const { return y0 + hy * j; }
  double at(int i, int j) const { return v[static_cast<std::size_t>(j) * (n + 1) + i]; }
  bool pos(int i, int j) const { return at(i, j) >= 0; }
};

Grid sample(const RealCurve& C, const Window& w, int n, unsigned threads) {
  Grid g;
  g.n = n;
  g.x0 = to_double(w.xmin);
  g.y0 = to_double(w.ymin);
  g.hx = (to_double(w.xmax) - g.x0) / n;
  g.hy = (to_double(w.ymax) - g.y0) / n;
  g.v.assign(static_cast<std::size_t>(n + 1) * (n + 1), 0.0);
  const auto rows = [&](int from, int step) {
    for (int j = from; j <= n; j += step) {
      const std::vector<double> r = C.row(g.y(j));
      for (int i = 0; i <= n; ++i) g.v[static_cast<std::size_t>(j) * (n + 1) + i] = horner(r, g.x(i));
    }
  };
  threads = std::max(1u, threads);
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(rows, static_cast<int>(t), static_cast<int>(threads));
  rows(0, static_cast<int>(threads));
  for (auto& t : pool) t.join();
  return g;
}

// Edge ids: horizontal edge (i, j)-(i+1, j) is j*n + i; vertical edge
// (i, j)-(i, j+1) is H + i*n + j with H = (n+1)*n.
struct Edges {
  int n;
  std::size_t horizontal(int i, int j) const { return static_cast<std::size_t>(j) * n + i; }
  std::size_t vertical(int i, int j) const {
    return static_cast<std::size_t>(n + 1) * n + static_cast<std::size_t>(i) * n + j;
  }
  std::size_t count() const { return 2 * static_cast<std::size_t>(n + 1) * n; }
  bool on_boundary(std::size_t e) const {
    const std::size_t H = static_cast<std::size_t>(n + 1) * n;
    if (e < H) {
      const std::size_t j = e / n;
      return j == 0 || j == static_cast<std::size_t>(n);
    }
    const std::size_t i = (e - H) / n;
    return i == 0 || i == static_cast<std::size_t>(n);
  }
};

struct Segments {
  Edges edges;
  std::vector<std::array<double, 2>> point;  // crossing point per edge (valid where crossed)
  std::vector<bool> crossed;
  std::vector<std::pair<std::size_t, std::size_t>> segs;
};

double lerp_root(double a, double b) { return a / (a - b); }

Segments march(const Grid& g) {
  Segments s{Edges{g.n}, {}, {}, {}};
  s.point.resize(s.edges.count());
  s.crossed.assign(s.edges.count(), false);
  const int n = g.n;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i < n; ++i) {
      if (g.pos(i, j) == g.pos(i + 1, j)) continue;
      const std::size_t e = s.edges.horizontal(i, j);
      s.crossed[e] = true;
      s.point[e] = {g.x(i) + g.hx * lerp_root(g.at(i, j), g.at(i + 1, j)), g.y(j)};
    }
  }
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (g.pos(i, j) == g.pos(i, j + 1)) continue;
      const std::size_t e = s.edges.vertical(i, j);
      s.crossed[e] = true;
      s.point[e] = {g.x(i), g.y(j) + g.hy * lerp_root(g.at(i, j), g.at(i, j + 1))};
    }
  }
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      // Corners counterclockwise from (i, j); edges bottom, right, top, left.
      const std::size_t b = s.edges.horizontal(i, j), r = s.edges.vertical(i + 1, j);
      const std::size_t t = s.edges.horizontal(i, j + 1), l = s.edges.vertical(i, j);
      std::vector<std::size_t> hit;
      for (std::size_t e : {b, r, t, l}) {
        if (s.crossed[e]) hit.push_back(e);
      }
      if (hit.size() == 2) {
        s.segs.emplace_back(hit[0], hit[1]);
      } else if (hit.size() == 4) {
        // Saddle: the sign at the centre decides which corners connect.
        const double centre = (g.at(i, j) + g.at(i + 1, j) + g.at(i + 1, j + 1) + g.at(i, j + 1)) / 4;
        const bool same_as_origin = (centre >= 0) == g.pos(i, j);
        if (same_as_origin) {
          s.segs.emplace_back(b, r);
          s.segs.emplace_back(t, l);
        } else {
          s.segs.emplace_back(l, b);
          s.segs.emplace_back(r, t);
        }
      }
    }
  }
  return s;
}

struct UnionFind {
  std::vector<std::size_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

struct Component {
  std::size_t root;
  bool open = false;
  Box box{};
};

std::vector<Component> components(const Segments& s) {
  UnionFind uf(s.edges.count());
  for (const auto& [a, b] : s.segs) uf.unite(a, b);
  std::map<std::size_t, Component> by_root;
  for (std::size_t e = 0; e < s.edges.count(); ++e) {
    if (!s.crossed[e]) continue;
    const std::size_t r = uf.find(e);
    auto [it, fresh] = by_root.try_emplace(r, Component{r});
    Component& c = it->second;
    const auto& p = s.point[e];
    if (fresh) {
      c.box = {p[0], p[0], p[1], p[1]};
    } else {
      c.box.xmin = std::min(c.box.xmin, p[0]);
      c.box.xmax = std::max(c.box.xmax, p[0]);
      c.box.ymin = std::min(c.box.ymin, p[1]);
      c.box.ymax = std::max(c.box.ymax, p[1]);
    }
    if (s.edges.on_boundary(e)) c.open = true;
  }
  std::vector<Component> out;
  for (auto& [r, c] : by_root) out.push_back(c);
  return out;
}

void tally(const RealCurve& C, const Window& w, int n, unsigned threads, std::size_t& bounded, std::size_t& open,
           std::vector<Box>* bb, std::vector<Box>* ob) {
  const Segments s = march(sample(C, w, n, threads));
  bounded = open = 0;
  for (const auto& c : components(s)) {
    if (c.open) {
      ++open;
      if (ob) ob->push_back(c.box);
    } else {
      ++bounded;
      if (bb) bb->push_back(c.box);
    }
  }
}

}  // namespace

Outcome<OvalReport, DegenerateWindow> count_ovals(const RealCurve& C, const Window& w, unsigned threads) {
  if (auto bad = check_window(w)) return *bad;
  OvalReport rep;
  rep.resolution = w.resolution;
  tally(C, w, w.resolution, threads, rep.bounded, rep.open, &rep.bounded_boxes, &rep.open_boxes);
  tally(C, w, 2 * w.resolution, threads, rep.bounded_doubled, rep.open_doubled, nullptr, nullptr);
  rep.stable = rep.bounded == rep.bounded_doubled && rep.open == rep.open_doubled;
  return rep;
}

std::vector<Polyline> contour(const RealCurve& C, const Window& w, unsigned threads) {
  const Segments s = march(sample(C, w, w.resolution, threads));
  std::vector<std::vector<std::size_t>> adj(s.edges.count());
  for (const auto& [a, b] : s.segs) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  std::vector<bool> used(s.edges.count(), false);
  std::vector<Polyline> out;
  const auto walk = [&](std::size_t start) {
    Polyline pl;
    std::size_t prev = start, cur = start;
    used[start] = true;
    pl.points.push_back(s.point[start]);
    while (true) {
      std::size_t next = cur;
      for (std::size_t nb : adj[cur]) {
        if (!used[nb]) {
          next = nb;
          break;
        }
      }
      if (next == cur) {
        for (std::size_t nb : adj[cur]) {
          if (nb == start && nb != prev && pl.points.size() > 2) pl.closed = true;
        }
        break;
      }
      used[next] = true;
      pl.points.push_back(s.point[next]);
      prev = cur;
      cur = next;
    }
    out.push_back(std::move(pl));
  };
  // Open chains start at their ends, so every chain is walked whole.
  for (std::size_t e = 0; e < s.edges.count(); ++e) {
    if (s.crossed[e] && !used[e] && adj[e].size() <= 1) walk(e);
  }
  for (std::size_t e = 0; e < s.edges.count(); ++e) {
    if (s.crossed[e] && !used[e]) walk(e);
  }
  return out;
}

// ---------------------------------------------------------------- trajectories

RealField::RealField(const field::PolyVectorField& X, const std::map<std::size_t, Rational>& bindings)
    : P_(X.P(), X.first(), X.second(), bindings), Q_(X.Q(), X.first(), X.second(), bindings) {}

std::array<double, 2> RealField::operator()(const std::array<double, 2>& s) const {
  return {P_(s[0], s[1]), Q_(s[0], s[1])};
}

Trajectory integrate(const RealField& X, std::array<double, 2> y, const IntegrationOptions& opt) {
  // Dormand-Prince tableau; the field is autonomous so the nodes c_i are unused.
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                          a65 = -5103.0 / 18656;
  static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                          b6 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                          e6 = 22.0 / 525, e7 = -1.0 / 40;

  Trajectory tr;
  const double dir = opt.t_end < 0 ? -1.0 : 1.0;
  const double span = std::abs(opt.t_end);
  const auto f = [&](const std::array<double, 2>& s) {
    const auto v = X(s);
    return std::array<double, 2>{dir * v[0], dir * v[1]};
  };
  const auto axpy = [](std::array<double, 2> s, std::initializer_list<std::pair<double, const std::array<double, 2>*>> ks,
                       double h) {
    for (const auto& [c, k] : ks) {
      s[0] += h * c * (*k)[0];
      s[1] += h * c * (*k)[1];
    }
    return s;
  };
  const auto inside = [&](const std::array<double, 2>& s) {
    if (!std::isfinite(s[0]) || !std::isfinite(s[1])) return false;
    if (!opt.escape) return true;
    const Box& b = *opt.escape;
    return s[0] >= b.xmin && s[0] <= b.xmax && s[1] >= b.ymin && s[1] <= b.ymax;
  };

  double t = 0, h = std::min(1e-3, span > 0 ? span : 1e-3);
  tr.t.push_back(0);
  tr.points.push_back(y);
  std::array<double, 2> k1 = f(y);
  long steps = 0;
  while (t < span) {
    if (steps++ >= opt.max_steps) {
      tr.step_limit = true;
      break;
    }
    if (t + h > span) h = span - t;
    const auto k2 = f(axpy(y, {{a21, &k1}}, h));
    const auto k3 = f(axpy(y, {{a31, &k1}, {a32, &k2}}, h));
    const auto k4 = f(axpy(y, {{a41, &k1}, {a42, &k2}, {a43, &k3}}, h));
    const auto k5 = f(axpy(y, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}, h));
    const auto k6 = f(axpy(y, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}, h));
    const auto y5 = axpy(y, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}}, h);
    const auto k7 = f(y5);
    double err = 0;
    for (int c = 0; c < 2; ++c) {
      const double e = h * (e1 * k1[c] + e3 * k3[c] + e4 * k4[c] + e5 * k5[c] + e6 * k6[c] + e7 * k7[c]);
      const double sc = opt.atol + opt.rtol * std::max(std::abs(y[c]), std::abs(y5[c]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) {
      h *= 0.2;
      if (h < 1e-14) {
        tr.escaped = true;
        break;
      }
      continue;
    }
    if (err <= 1) {
      t += h;
      y = y5;
      k1 = k7;
      tr.t.push_back(dir * t);
      tr.points.push_back(y);
      if (!inside(y)) {
        tr.escaped = true;
        break;
      }
    }
    const double factor = err == 0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
    h *= factor;
    if (h < 1e-14) {
      tr.escaped = true;
      break;
    }
  }
  return tr;
}

// ---------------------------------------------------------------- svg

namespace {

constexpr double kSize = 800;
constexpr double kMargin = 40;

struct Frame {
  double x0, x1, y0, y1;
  double px(double x) const { return kMargin + (x - x0) / (x1 - x0) * kSize; }
  double py(double y) const { return kMargin + (y1 - y) / (y1 - y0) * kSize; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

void path(std::ostringstream& out, const Frame& f, const std::vector<std::array<double, 2>>& pts, bool closed,
          const char* cls) {
  out << "    <path class=\"" << cls << "\" d=\"";
  double lx = 0, ly = 0;
  bool first = true;
  for (const auto& p : pts) {
    const double x = f.px(p[0]), y = f.py(p[1]);
    if (!first && std::abs(x - lx) < 0.25 && std::abs(y - ly) < 0.25) continue;
    out << (first ? "M" : " L") << num(x) << ',' << num(y);
    lx = x;
    ly = y;
    first = false;
  }
  if (closed) out << " Z";
  out << "\"/>\n";
}

}  // namespace

Outcome<std::string, DegenerateWindow> render_svg(const Polynomial& g, std::size_t first, std::size_t second,
                                                  const std::map<std::size_t, Rational>& bindings,
                                                  const PlotRequest& req) {
  if (auto bad = check_window(req.window)) return *bad;
  const Window& w = req.window;
  const Frame f{to_double(w.xmin), to_double(w.xmax), to_double(w.ymin), to_double(w.ymax)};
  const RealCurve C(g, first, second, bindings);
  const auto& names = g.context()->names();

  std::ostringstream out;
  const double total = kSize + 2 * kMargin;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(total) << "\" height=\""
      << num(total) << "\" viewBox=\"0 0 " << num(total) << ' ' << num(total) << "\">\n";
  out << "  <style>.curve{fill:none;stroke:#c0392b;stroke-width:1.5}"
         ".orbit{fill:none;stroke:#2c3e50;stroke-width:0.7}"
         ".axis{stroke:#999;stroke-width:0.5}text{font-family:monospace;font-size:12px}</style>\n";
  out << "  <rect x=\"" << num(kMargin) << "\" y=\"" << num(kMargin) << "\" width=\"" << num(kSize)
      << "\" height=\"" << num(kSize) << "\" fill=\"white\" stroke=\"black\"/>\n";

  out << "  <g id=\"axes\">\n";
  if (f.x0 < 0 && f.x1 > 0) {
    out << "    <line class=\"axis\" x1=\"" << num(f.px(0)) << "\" y1=\"" << num(kMargin) << "\" x2=\"" << num(f.px(0))
        << "\" y2=\"" << num(kMargin + kSize) << "\"/>\n";
  }
  if (f.y0 < 0 && f.y1 > 0) {
    out << "    <line class=\"axis\" x1=\"" << num(kMargin) << "\" y1=\"" << num(f.py(0)) << "\" x2=\""
        << num(kMargin + kSize) << "\" y2=\"" << num(f.py(0)) << "\"/>\n";
  }
  out << "    <text x=\"" << num(kMargin) << "\" y=\"" << num(kMargin + kSize + 16) << "\">" << names[first] << " in ["
      << to_string(w.xmin) << ", " << to_string(w.xmax) << "]</text>\n";
  out << "    <text x=\"" << num(kMargin + kSize / 2) << "\" y=\"" << num(kMargin + kSize + 16) << "\">"
      << names[second] << " in [" << to_string(w.ymin) << ", " << to_string(w.ymax) << "]</text>\n";
  out << "  </g>\n";

  out << "  <g id=\"curve\">\n";
  for (const auto& pl : contour(C, w)) path(out, f, pl.points, pl.closed, "curve");
  out << "  </g>\n";

  const bool orbits = req.field && !req.seeds.empty();
  if (orbits) {
    const RealField X(*req.field, bindings);
    IntegrationOptions opt;
    const double mx = (f.x1 - f.x0) / 2, my = (f.y1 - f.y0) / 2;
    opt.escape = Box{f.x0 - mx, f.x1 + mx, f.y0 - my, f.y1 + my};
    out << "  <g id=\"trajectories\">\n";
    for (const auto& seed : req.seeds) {
      const std::array<double, 2> s{to_double(seed[0]), to_double(seed[1])};
      for (const double dir : {1.0, -1.0}) {
        opt.t_end = dir * req.t_end;
        path(out, f, integrate(X, s, opt).points, false, "orbit");
      }
    }
    out << "  </g>\n";
  }

  out << "  <g id=\"legend\">\n";
  out << "    <line class=\"curve\" x1=\"" << num(kMargin) << "\" y1=\"20\" x2=\"" << num(kMargin + 24)
      << "\" y2=\"20\"/><text x=\"" << num(kMargin + 30) << "\" y=\"24\">g = 0</text>\n";
  if (orbits) {
    out << "    <line class=\"orbit\" x1=\"" << num(kMargin + 120) << "\" y1=\"20\" x2=\"" << num(kMargin + 144)
        << "\" y2=\"20\"/><text x=\"" << num(kMargin + 150) << "\" y=\"24\">trajectories</text>\n";
  }
  out << "  </g>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace darboux::real
