#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <locale>
#include <sstream>

#include "cli/render.hpp"

namespace fewn::cli {
namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 20;
constexpr double kTop = 40;
constexpr double kBottom = 60;

// Tick spacing giving at most ~10 ticks.
double tick_step(double max) {
  const double raw = max / 10.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

}  // namespace

std::string render_figure1_svg(std::span<const Figure1Row> rows, double alpha, double beta,
                               double p_crit) {
  double y_max = 1.0;
  for (const auto& r : rows) y_max = std::max({y_max, r.n_real, static_cast<double>(r.n_int)});
  const double y_step = tick_step(y_max);
  y_max = std::ceil(y_max / y_step) * y_step;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double gamma) { return format_fixed(kLeft + gamma * plot_w, 2); };
  auto py = [&](double n) { return format_fixed(kTop + plot_h - n / y_max * plot_h, 2); };

  std::ostringstream svg;
  svg.imbue(std::locale::classic());
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "  <title>Participants required for a typicality lower bound (alpha="
      << format_number(alpha) << ", beta=" << format_number(beta)
      << ", p_crit=" << format_number(p_crit) << ")</title>\n"
      << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // Axes, ticks, labels.
  svg << "  <g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "    <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(1) << "\" y2=\""
      << py(0) << "\"/>\n"
      << "    <line x1=\"" << px(0) << "\" y1=\"" << py(0) << "\" x2=\"" << px(0) << "\" y2=\""
      << py(y_max) << "\"/>\n";
  for (int i = 0; i <= 10; ++i) {
    const double g = i / 10.0;
    svg << "    <line x1=\"" << px(g) << "\" y1=\"" << py(0) << "\" x2=\"" << px(g)
        << "\" y2=\"" << format_fixed(kTop + plot_h + 5, 2) << "\"/>\n";
  }
  for (double n = 0; n <= y_max + 1e-9; n += y_step) {
    svg << "    <line x1=\"" << format_fixed(kLeft - 5, 2) << "\" y1=\"" << py(n) << "\" x2=\""
        << px(0) << "\" y2=\"" << py(n) << "\"/>\n";
  }
  svg << "  </g>\n";

  svg << "  <g id=\"tick-labels\" font-family=\"sans-serif\" font-size=\"11\" fill=\"black\">\n";
  for (int i = 0; i <= 10; ++i) {
    const double g = i / 10.0;
    svg << "    <text x=\"" << px(g) << "\" y=\"" << format_fixed(kTop + plot_h + 18, 2)
        << "\" text-anchor=\"middle\">" << format_fixed(g, 1) << "</text>\n";
  }
  for (double n = 0; n <= y_max + 1e-9; n += y_step) {
    svg << "    <text x=\"" << format_fixed(kLeft - 8, 2) << "\" y=\"" << py(n)
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << format_number(n)
        << "</text>\n";
  }
  svg << "  </g>\n";

  svg << "  <text id=\"x-label\" x=\"" << px(0.5) << "\" y=\"" << format_fixed(kHeight - 15, 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\">"
      << "typicality lower bound (gamma_c)</text>\n"
      << "  <text id=\"y-label\" x=\"18\" y=\"" << format_fixed(kTop + plot_h / 2, 2)
      << "\" font-family=\"sans-serif\" font-size=\"13\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << format_fixed(kTop + plot_h / 2, 2) << ")\">"
      << "required participants (N)</text>\n";

  svg << "  <polyline id=\"n-real\" fill=\"none\" stroke=\"blue\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) svg << ' ';
    svg << px(rows[i].gamma_c) << ',' << py(rows[i].n_real);
  }
  svg << "\"/>\n";

  // Staircase: hold each integer until the next grid point, then step.
  svg << "  <polyline id=\"n-int\" fill=\"none\" stroke=\"red\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double n = static_cast<double>(rows[i].n_int);
    if (i) svg << ' ' << px(rows[i].gamma_c) << ',' << py(static_cast<double>(rows[i - 1].n_int)) << ' ';
    svg << px(rows[i].gamma_c) << ',' << py(n);
  }
  svg << "\"/>\n";

  svg << "  <g id=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "    <line x1=\"" << format_fixed(kLeft + 15, 2) << "\" y1=\"" << format_fixed(kTop + 10, 2)
      << "\" x2=\"" << format_fixed(kLeft + 40, 2) << "\" y2=\"" << format_fixed(kTop + 10, 2)
      << "\" stroke=\"blue\" stroke-width=\"1.5\"/>\n"
      << "    <text x=\"" << format_fixed(kLeft + 45, 2) << "\" y=\"" << format_fixed(kTop + 14, 2)
      << "\">real-valued N</text>\n"
      << "    <line x1=\"" << format_fixed(kLeft + 15, 2) << "\" y1=\"" << format_fixed(kTop + 28, 2)
      << "\" x2=\"" << format_fixed(kLeft + 40, 2) << "\" y2=\"" << format_fixed(kTop + 28, 2)
      << "\" stroke=\"red\" stroke-width=\"1.5\"/>\n"
      << "    <text x=\"" << format_fixed(kLeft + 45, 2) << "\" y=\"" << format_fixed(kTop + 32, 2)
      << "\">integer N</text>\n"
      << "  </g>\n"
      << "</svg>\n";
  return svg.str();
}

}  // namespace fewn::cli
