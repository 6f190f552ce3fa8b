#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <string_view>

#include "ofi/audit.hpp"
#include "ofi/errors.hpp"
#include "ofi/metrics.hpp"
#include "ofi/rational.hpp"

// Standalone SVG heatmaps of pairwise grids. Rows are the first group of each
// pair, columns the second.
namespace ofi {

struct HeatmapStyle {
  // Diverging palette. `negative` marks bias toward the column group,
  // `positive` bias toward the row group.
  std::string negative = "#2166ac";
  std::string neutral = "#f7f7f7";
  std::string positive = "#b2182b";
  int decimals = 2;
  int cell_size = 64;
  int font_size = 12;
};

namespace heatmap_detail {

using Rgb = std::array<int, 3>;

inline Rgb parse_hex(std::string_view hex) {
  if (hex.size() != 7 || hex[0] != '#') throw ConfigError("colour must be #rrggbb");
  Rgb rgb{};
  for (int i = 0; i < 3; ++i) {
    rgb[i] = std::stoi(std::string(hex.substr(1 + 2 * i, 2)), nullptr, 16);
  }
  return rgb;
}

inline std::string to_hex(const Rgb& rgb) {
  char buf[8];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

inline std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace heatmap_detail

// Position of a value on the palette in [-1, 1]. OFI is clamped to [-2, 2]
// and centred on 0; DI is clamped to [0, 2] and centred on 1.
inline double palette_position(Metric metric, const Rational& value) {
  const double v = to_double(value);
  if (metric == Metric::Ofi) return std::clamp(v, -2.0, 2.0) / 2.0;
  return std::clamp(v, 0.0, 2.0) - 1.0;
}

// Linear interpolation from the neutral colour toward one end of the palette.
inline std::string palette_colour(double position, const HeatmapStyle& style) {
  using namespace heatmap_detail;
  const Rgb centre = parse_hex(style.neutral);
  const Rgb end = parse_hex(position < 0 ? style.negative : style.positive);
  const double t = std::min(std::abs(position), 1.0);
  Rgb out{};
  for (int i = 0; i < 3; ++i) {
    out[i] = static_cast<int>(std::lround(centre[i] + t * (end[i] - centre[i])));
  }
  return to_hex(out);
}

// Every cell is a <rect class="cell">, every group label a
// <text class="axis-label">. Undefined DI cells use a hatch pattern and read
// "undef".
inline std::string render_heatmap(const PairwiseMatrix& m, const HeatmapStyle& style = {}) {
  using heatmap_detail::escape;
  m.validate();
  const int k = static_cast<int>(m.size());
  const int cs = style.cell_size;
  std::size_t longest = 0;
  for (const auto& g : m.group_order) longest = std::max(longest, g.size());
  const int margin = 24 + static_cast<int>(longest) * style.font_size * 6 / 10;
  const int left = margin;
  const int top = margin + 24;
  const int width = left + k * cs + 16;
  const int height = top + k * cs + 16;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\" font-family=\"sans-serif\" font-size=\""
      << style.font_size << "\">\n"
      << "  <defs>\n"
      << "    <pattern id=\"undef-hatch\" patternUnits=\"userSpaceOnUse\" width=\"8\" height=\"8\" "
         "patternTransform=\"rotate(45)\">\n"
      << "      <rect width=\"8\" height=\"8\" fill=\"#ffffff\"/>\n"
      << "      <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"8\" stroke=\"#888888\" stroke-width=\"3\"/>\n"
      << "    </pattern>\n"
      << "  </defs>\n"
      << "  <text class=\"title\" x=\"" << left << "\" y=\"16\" font-weight=\"bold\">"
      << to_string(m.metric) << " (row vs column)</text>\n";

  for (int i = 0; i < k; ++i) {
    const auto label = escape(m.group_order[static_cast<std::size_t>(i)]);
    const int y = top + i * cs + cs / 2;
    svg << "  <text class=\"axis-label\" x=\"" << left - 6 << "\" y=\"" << y
        << "\" text-anchor=\"end\" dominant-baseline=\"middle\">" << label << "</text>\n";
  }
  for (int j = 0; j < k; ++j) {
    const auto label = escape(m.group_order[static_cast<std::size_t>(j)]);
    const int x = left + j * cs + cs / 2;
    svg << "  <text class=\"axis-label\" x=\"" << x << "\" y=\"" << top - 6
        << "\" text-anchor=\"start\" transform=\"rotate(-45 " << x << ' ' << top - 6 << ")\">"
        << label << "</text>\n";
  }

  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      std::string fill;
      std::string text;
      if (m.metric == Metric::Ofi) {
        const auto& v = m.ofi_at(ui, uj);
        fill = palette_colour(palette_position(Metric::Ofi, v), style);
        text = to_decimal_string(v, style.decimals);
      } else {
        const auto& d = m.di_at(ui, uj);
        switch (d.kind()) {
          case DiScore::Kind::Finite:
            fill = palette_colour(palette_position(Metric::Di, *d.value()), style);
            text = to_decimal_string(*d.value(), style.decimals);
            break;
          case DiScore::Kind::UndefinedContextualOne:
            fill = palette_colour(0.0, style);
            text = "1 (ctx)";
            break;
          case DiScore::Kind::UndefinedZeroDenominator:
            fill = "url(#undef-hatch)";
            text = "undef";
            break;
        }
      }
      const int x = left + j * cs;
      const int y = top + i * cs;
      svg << "  <rect class=\"cell\" data-row=\"" << i << "\" data-col=\"" << j << "\" x=\"" << x
          << "\" y=\"" << y << "\" width=\"" << cs << "\" height=\"" << cs << "\" fill=\"" << fill
          << "\" stroke=\"#ffffff\"/>\n"
          << "  <text class=\"value\" x=\"" << x + cs / 2 << "\" y=\"" << y + cs / 2
          << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << text << "</text>\n";
    }
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace ofi
