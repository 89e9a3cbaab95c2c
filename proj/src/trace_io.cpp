#include "wbag/trace_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace wbag {

namespace {

std::string fmt9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, sep)) out.push_back(cell);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_number(const std::string& cell, std::size_t row) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw std::runtime_error("trajectory row " + std::to_string(row) + ": bad number '" + cell +
                             "'");
  }
  return v;
}

std::string xml_escape(const std::string& s) {
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

constexpr const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

}  // namespace

void write_trajectory_csv(std::ostream& out, const Bag& bag,
                          const std::vector<TrajectorySample>& samples) {
  out << 't';
  for (const Argument& a : bag.arguments()) out << ',' << a.name;
  out << '\n';
  for (const TrajectorySample& s : samples) {
    out << fmt9(s.time);
    for (double v : s.values) out << ',' << fmt9(v);
    out << '\n';
  }
}

void write_report_csv(std::ostream& out, const Bag& bag, const ConvergenceReport& report) {
  out << "name,converged,final,lower,upper,sign_changes\n";
  for (ArgId j = 0; j < report.arguments.size(); ++j) {
    const ArgumentReport& r = report.arguments[j];
    out << bag.name(j) << ',' << (r.converged ? "true" : "false") << ',' << fmt9(r.final_value)
        << ',' << fmt9(r.lower_bound) << ',' << fmt9(r.upper_bound) << ',' << r.sign_changes
        << '\n';
  }
}

TrajectoryTable read_trajectory_csv(std::istream& in) {
  TrajectoryTable table;
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("trajectory CSV is empty");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line, ',');
  if (header.empty() || header.front() != "t") {
    throw std::runtime_error("trajectory CSV must start with a 't' column");
  }
  table.names.assign(header.begin() + 1, header.end());
  table.columns.resize(table.names.size());

  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line, ',');
    if (cells.size() != header.size()) {
      throw std::runtime_error("trajectory row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(header.size()));
    }
    table.times.push_back(parse_number(cells[0], row));
    for (std::size_t k = 0; k < table.names.size(); ++k) {
      table.columns[k].push_back(parse_number(cells[k + 1], row));
    }
  }
  return table;
}

std::string render_svg(const TrajectoryTable& table, const std::string& title) {
  constexpr double width = 800, height = 480;
  constexpr double left = 60, right = 150, top = 40, bottom = 50;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double t_max = 0.0;
  for (double t : table.times) t_max = std::max(t_max, t);
  if (t_max <= 0.0) t_max = 1.0;

  auto x_of = [&](double t) { return left + plot_w * (t / t_max); };
  auto y_of = [&](double s) { return top + plot_h * (1.0 - std::clamp(s, 0.0, 1.0)); };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"24\" text-anchor=\"middle\" "
        << "font-family=\"sans-serif\" font-size=\"16\">" << xml_escape(title) << "</text>\n";
  }

  // Axes and ticks.
  svg << "<g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n"
      << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w
      << "\" y2=\"" << top + plot_h << "\"/>\n"
      << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\""
      << top + plot_h << "\"/>\n</g>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int i = 0; i <= 5; ++i) {
    const double s = i / 5.0;
    svg << "<line x1=\"" << left - 4 << "\" y1=\"" << y_of(s) << "\" x2=\"" << left
        << "\" y2=\"" << y_of(s) << "\" stroke=\"black\"/>"
        << "<text x=\"" << left - 8 << "\" y=\"" << y_of(s) + 4
        << "\" text-anchor=\"end\">" << fmt9(s) << "</text>\n";
    const double t = t_max * i / 5.0;
    svg << "<line x1=\"" << x_of(t) << "\" y1=\"" << top + plot_h << "\" x2=\"" << x_of(t)
        << "\" y2=\"" << top + plot_h + 4 << "\" stroke=\"black\"/>"
        << "<text x=\"" << x_of(t) << "\" y=\"" << top + plot_h + 18
        << "\" text-anchor=\"middle\">" << fmt9(t) << "</text>\n";
  }
  svg << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 10
      << "\" text-anchor=\"middle\">t</text>\n"
      << "<text x=\"16\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 16 " << top + plot_h / 2 << ")\">strength</text>\n</g>\n";

  for (std::size_t k = 0; k < table.columns.size(); ++k) {
    const char* colour = kPalette[k % std::size(kPalette)];
    svg << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t row = 0; row < table.times.size(); ++row) {
      if (row) svg << ' ';
      svg << fmt9(x_of(table.times[row])) << ',' << fmt9(y_of(table.columns[k][row]));
    }
    svg << "\"/>\n";

    const double ly = top + 10 + 16.0 * static_cast<double>(k);
    const double lx = left + plot_w + 15;
    svg << "<line x1=\"" << lx << "\" y1=\"" << ly << "\" x2=\"" << lx + 20 << "\" y2=\"" << ly
        << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>"
        << "<text x=\"" << lx + 26 << "\" y=\"" << ly + 4
        << "\" font-family=\"sans-serif\" font-size=\"11\">" << xml_escape(table.names[k])
        << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace wbag
