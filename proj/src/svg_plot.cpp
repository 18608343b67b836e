#include "fractalcap/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "fractalcap/fit.hpp"

namespace fractalcap {

namespace {

double column_value(const SweepRow& row, const std::string& column) {
  if (column == "n") return static_cast<double>(row.n);
  if (column == "mean_hops") return row.mean_hops;
  if (column == "stderr_hops") return row.stderr_hops;
  if (column == "cells") return static_cast<double>(row.cells);
  if (column == "T") return static_cast<double>(row.tdma);
  if (column == "lambda_est") return row.lambda_est;
  if (column == "empty_cell_fraction") return row.empty_cell_fraction;
  if (column == "beta") {
    if (!row.beta) throw std::invalid_argument("emit_plot: row has no beta value");
    return *row.beta;
  }
  if (column == "gamma") return row.gamma;
  if (column == "epsilon") return row.epsilon;
  if (column == "trials") return static_cast<double>(row.trials);
  throw std::invalid_argument("emit_plot: unknown column: " + column);
}

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

}  // namespace

void emit_plot(const std::vector<SweepRow>& rows, const std::string& x_column,
               const std::string& y_column, const std::string& path) {
  if (rows.empty()) throw std::invalid_argument("emit_plot: no rows");
  std::vector<double> xs, ys;
  for (const SweepRow& row : rows) {
    const double x = column_value(row, x_column);
    const double y = column_value(row, y_column);
    if (!(x > 0.0) || !(y > 0.0)) {
      throw std::invalid_argument("emit_plot: log axes need positive values");
    }
    xs.push_back(std::log10(x));
    ys.push_back(std::log10(y));
  }

  double slope = 0.0, intercept = 0.0;
  if (xs.size() >= 2 &&
      *std::max_element(xs.begin(), xs.end()) >
          *std::min_element(xs.begin(), xs.end())) {
    const FitResult fit = linear_fit(xs, ys);
    slope = fit.slope;
    intercept = fit.intercept;
  } else {
    intercept = ys[0];
  }

  const double x_lo = *std::min_element(xs.begin(), xs.end());
  const double x_hi = *std::max_element(xs.begin(), xs.end());
  const double y_lo = *std::min_element(ys.begin(), ys.end());
  const double y_hi = *std::max_element(ys.begin(), ys.end());
  const double x_pad = std::max(0.05, (x_hi - x_lo) * 0.08);
  const double y_pad = std::max(0.05, (y_hi - y_lo) * 0.08);

  constexpr double kW = 640.0, kH = 480.0, kMargin = 56.0;
  const auto sx = [&](double lx) {
    return kMargin + (lx - (x_lo - x_pad)) / ((x_hi + x_pad) - (x_lo - x_pad)) *
                         (kW - 2 * kMargin);
  };
  const auto sy = [&](double ly) {
    return kH - kMargin -
           (ly - (y_lo - y_pad)) / ((y_hi + y_pad) - (y_lo - y_pad)) *
               (kH - 2 * kMargin);
  };

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("emit_plot: cannot open " + path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
         "height=\"480\" viewBox=\"0 0 640 480\">\n";
  out << "<rect width=\"640\" height=\"480\" fill=\"white\"/>\n";
  out << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kH - kMargin)
      << "\" x2=\"" << fmt(kW - kMargin) << "\" y2=\"" << fmt(kH - kMargin)
      << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << fmt(kMargin) << "\" y1=\"" << fmt(kMargin)
      << "\" x2=\"" << fmt(kMargin) << "\" y2=\"" << fmt(kH - kMargin)
      << "\" stroke=\"black\"/>\n";

  const double fx0 = x_lo - x_pad, fx1 = x_hi + x_pad;
  out << "<line x1=\"" << fmt(sx(fx0)) << "\" y1=\""
      << fmt(sy(slope * fx0 + intercept)) << "\" x2=\"" << fmt(sx(fx1))
      << "\" y2=\"" << fmt(sy(slope * fx1 + intercept))
      << "\" stroke=\"#c0392b\" stroke-width=\"1.5\"/>\n";

  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << "<circle cx=\"" << fmt(sx(xs[i])) << "\" cy=\"" << fmt(sy(ys[i]))
        << "\" r=\"3\" fill=\"#2c3e50\"/>\n";
  }

  out << "<text x=\"" << fmt(kW / 2) << "\" y=\"" << fmt(kH - 16)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\">"
      << "log10(" << x_column << ")</text>\n";
  out << "<text x=\"16\" y=\"" << fmt(kH / 2)
      << "\" text-anchor=\"middle\" font-family=\"monospace\" font-size=\"13\" "
         "transform=\"rotate(-90 16 "
      << fmt(kH / 2) << ")\">log10(" << y_column << ")</text>\n";
  out << "<text x=\"" << fmt(kW - kMargin) << "\" y=\"" << fmt(kMargin - 12)
      << "\" text-anchor=\"end\" font-family=\"monospace\" font-size=\"13\">"
      << "slope " << fmt(slope) << "</text>\n";
  out << "</svg>\n";
}

}  // namespace fractalcap
