#include "kleinian/render.hpp"

#include <cmath>
#include <cstdio>

namespace kleinian {

namespace {

struct Canvas {
  int px;
  std::vector<std::uint8_t> rgb;

  explicit Canvas(int n) : px(n), rgb(static_cast<std::size_t>(n) * n * 3, 255) {}

  void set(int col, int row, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    if (col < 0 || row < 0 || col >= px || row >= px) return;
    const std::size_t k = (static_cast<std::size_t>(row) * px + col) * 3;
    rgb[k] = r;
    rgb[k + 1] = g;
    rgb[k + 2] = b;
  }
};

int axis_from(const std::string& s, int chart) {
  if (s.size() != 3 || (s.rfind("re", 0) != 0 && s.rfind("im", 0) != 0)) {
    throw Error(ErrorCode::BadChart, "axis selectors look like re1 or im2");
  }
  const int index = s[2] - '1';
  if (index < 0 || index > 2) throw Error(ErrorCode::BadChart, "axis index must be 1, 2 or 3");
  if (index == chart) throw Error(ErrorCode::BadChart, "axis refers to the chart coordinate");
  return 2 * index + (s[0] == 'i' ? 1 : 0);
}

}  // namespace

ChartSlice parse_chart_slice(const std::string& chart, const std::string& axes, double window, int px) {
  ChartSlice out;
  if (chart.size() != 2 || chart[0] != 'z' || chart[1] < '1' || chart[1] > '3') {
    throw Error(ErrorCode::BadChart, "chart must be z1, z2 or z3");
  }
  out.chart = chart[1] - '1';
  const auto comma = axes.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::BadChart, "axes must be two comma-separated selectors");
  out.axis[0] = axis_from(axes.substr(0, comma), out.chart);
  out.axis[1] = axis_from(axes.substr(comma + 1), out.chart);
  if (out.axis[0] == out.axis[1]) throw Error(ErrorCode::BadChart, "axes must differ");
  if (!(window > 0.0) || px < 2 || px > 8192) throw Error(ErrorCode::BadChart, "window must be positive, px in [2, 8192]");
  out.window = window;
  out.px = px;
  return out;
}

std::vector<std::uint8_t> render_ppm(std::span<const ProjLine> lines, std::span<const ProjPoint> points,
                                     const ChartSlice& slice) {
  Canvas canvas(slice.px);
  const double w = slice.window;
  const double scale = (slice.px - 1) / (2.0 * w);
  auto plot = [&](double s, double t, std::uint8_t r, std::uint8_t g, std::uint8_t b, int radius) {
    if (std::abs(s) > w || std::abs(t) > w) return;
    const int col = static_cast<int>(std::lround((s + w) * scale));
    const int row = static_cast<int>(std::lround((w - t) * scale));
    for (int dr = -radius; dr <= radius; ++dr)
      for (int dc = -radius; dc <= radius; ++dc) canvas.set(col + dc, row + dr, r, g, b);
  };
  // d/dx of z_index for a real coordinate x (2*index: real part, 2*index+1: imaginary part).
  auto direction = [](const CVec3& l, int axis) {
    const Complex c = l(axis / 2);
    return axis % 2 == 0 ? c : Complex(0.0, 1.0) * c;
  };

  for (const ProjLine& line : lines) {
    const CVec3& l = line.rep();
    const Complex c = l(slice.chart);
    const Complex d1 = direction(l, slice.axis[0]);
    const Complex d2 = direction(l, slice.axis[1]);
    Eigen::Matrix2d a;
    a << d1.real(), d2.real(), d1.imag(), d2.imag();
    const Eigen::Vector2d rhs(-c.real(), -c.imag());
    const Eigen::JacobiSVD<Eigen::Matrix2d> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tiny = 1e-9 * std::max(1.0, l.cwiseAbs().maxCoeff());
    if (sv(1) > tiny) {
      const Eigen::Vector2d st = svd.solve(rhs);
      plot(st(0), st(1), 0, 0, 0, 1);
    } else if (sv(0) > tiny) {
      // Real line: particular solution plus the null direction.
      const Eigen::Vector2d u = svd.matrixU().col(0);
      const Eigen::Vector2d v0 = svd.matrixV().col(0);
      const Eigen::Vector2d dir = svd.matrixV().col(1);
      const double along = u.dot(rhs) / sv(0);
      if (std::abs(svd.matrixU().col(1).dot(rhs)) > 1e-9 * std::max(1.0, rhs.norm())) continue;
      const Eigen::Vector2d base = along * v0;
      const int steps = 4 * slice.px;
      const double span = 2.0 * w + base.norm();
      for (int k = -steps; k <= steps; ++k) {
        const Eigen::Vector2d x = base + (span * k / steps) * dir;
        plot(x(0), x(1), 0, 0, 0, 0);
      }
    }
  }
  for (const ProjPoint& p : points) {
    const Complex pivot = p.rep()(slice.chart);
    if (std::abs(pivot) < 1e-12) continue;
    const CVec3 z = p.rep() / pivot;
    auto coord = [&](int axis) { return axis % 2 == 0 ? z(axis / 2).real() : z(axis / 2).imag(); };
    plot(coord(slice.axis[0]), coord(slice.axis[1]), 220, 0, 0, 2);
  }

  std::vector<std::uint8_t> out;
  const std::string header = "P6\n" + std::to_string(slice.px) + " " + std::to_string(slice.px) + "\n255\n";
  out.insert(out.end(), header.begin(), header.end());
  out.insert(out.end(), canvas.rgb.begin(), canvas.rgb.end());
  return out;
}

std::string cloud_csv(std::span<const ProjPoint> cloud) {
  std::string out = "re1,im1,re2,im2,re3,im3\n";
  char buf[256];
  for (const ProjPoint& p : cloud) {
    const CVec3& r = p.rep();
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r(0).real(), r(0).imag(), r(1).real(),
                  r(1).imag(), r(2).real(), r(2).imag());
    out += buf;
  }
  return out;
}

}  // namespace kleinian
