#include "semidg/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace semidg {

namespace {

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

void open_or_throw(std::ofstream& out, const std::string& path) {
  out.open(path);
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace

void RateTable::compute_eoc() {
  eoc.clear();
  for (size_t i = 0; i + 1 < rows.size(); ++i) {
    const RateRow& a = rows[i];
    const RateRow& b = rows[i + 1];
    const double lh = std::log(a.h_max / b.h_max);
    auto rate = [&](double e0, double e1) { return std::log(e0 / e1) / lh; };
    eoc.push_back({rate(a.enorm_err, b.enorm_err), rate(a.lp_err, b.lp_err),
                   rate(a.quasinorm_err, b.quasinorm_err), rate(a.l2_err, b.l2_err),
                   rate(a.estimator_total, b.estimator_total)});
  }
}

std::string rate_csv_string(const RateTable& table) {
  std::ostringstream out;
  out << "level,cells,dofs,h_max,enorm_err,lp_err,quasinorm_err,l2_err,"
         "estimator_total,effectivity,eoc_enorm,eoc_lp,eoc_quasinorm,eoc_l2,"
         "eoc_estimator\n";
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const RateRow& r = table.rows[i];
    out << r.level << "," << r.cells << "," << r.dofs << "," << fmt12(r.h_max) << ","
        << fmt12(r.enorm_err) << "," << fmt12(r.lp_err) << ","
        << fmt12(r.quasinorm_err) << "," << fmt12(r.l2_err) << ","
        << fmt12(r.estimator_total) << "," << fmt12(r.effectivity);
    if (i == 0) {
      out << ",,,,,";
    } else {
      const auto& e = table.eoc[i - 1];
      for (double v : e) out << "," << fmt12(v);
    }
    out << "\n";
  }
  return out.str();
}

void write_rate_csv(const RateTable& table, const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  out << rate_csv_string(table);
}

RateTable parse_rate_csv_string(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("rate csv: empty");
  RateTable table;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
      if (ch == ',') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(ch);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 15) throw std::runtime_error("rate csv: bad column count");
    RateRow r;
    r.level = std::stoi(fields[0]);
    r.cells = std::stoi(fields[1]);
    r.dofs = std::stol(fields[2]);
    r.h_max = std::stod(fields[3]);
    r.enorm_err = std::stod(fields[4]);
    r.lp_err = std::stod(fields[5]);
    r.quasinorm_err = std::stod(fields[6]);
    r.l2_err = std::stod(fields[7]);
    r.estimator_total = std::stod(fields[8]);
    r.effectivity = std::stod(fields[9]);
    if (!fields[10].empty()) {
      std::array<double, 5> e{};
      for (int j = 0; j < 5; ++j) e[j] = std::stod(fields[10 + j]);
      table.eoc.push_back(e);
    }
    table.rows.push_back(r);
  }
  return table;
}

RateTable read_rate_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_rate_csv_string(buf.str());
}

void write_adapt_csv(const std::vector<AdaptRecord>& records, const std::string& path) {
  std::ofstream out;
  open_or_throw(out, path);
  out << "iteration,cells,dofs,estimator,newton_iters\n";
  for (const AdaptRecord& r : records)
    out << r.iteration << "," << r.cells << "," << r.dofs << ","
        << fmt12(r.estimator_total) << "," << r.newton_iterations << "\n";
}

namespace {

struct LogPlotAxis {
  double lo, hi;          // data range (log10)
  double px0, px1;        // pixel range
  double map(double v) const {
    return px0 + (std::log10(v) - lo) / (hi - lo) * (px1 - px0);
  }
};

}  // namespace

void write_rate_svg(const RateTable& table, int degree, const std::string& path) {
  if (table.rows.size() < 2) throw std::invalid_argument("rate svg: need >= 2 rows");
  const int width = 640, height = 480;
  const double ml = 70, mr = 170, mt = 30, mb = 50;

  struct Series {
    const char* name;
    const char* color;
    std::vector<double> y;
  };
  std::vector<Series> series = {{"dG norm", "#1f77b4", {}},
                                {"Lp norm", "#d62728", {}},
                                {"quasinorm", "#2ca02c", {}},
                                {"L2 norm", "#9467bd", {}},
                                {"estimator", "#8c564b", {}}};
  std::vector<double> hs;
  for (const RateRow& r : table.rows) {
    hs.push_back(r.h_max);
    series[0].y.push_back(r.enorm_err);
    series[1].y.push_back(r.lp_err);
    series[2].y.push_back(r.quasinorm_err);
    series[3].y.push_back(r.l2_err);
    series[4].y.push_back(r.estimator_total);
  }

  double ymin = 1e300, ymax = 0, xmin = 1e300, xmax = 0;
  for (double h : hs) {
    xmin = std::min(xmin, h);
    xmax = std::max(xmax, h);
  }
  for (const auto& s : series)
    for (double v : s.y) {
      if (v <= 0) continue;
      ymin = std::min(ymin, v);
      ymax = std::max(ymax, v);
    }
  LogPlotAxis ax{std::log10(xmin) - 0.05, std::log10(xmax) + 0.05, ml, width - mr};
  LogPlotAxis ay{std::log10(ymin) - 0.2, std::log10(ymax) + 0.2, height - mb, mt};

  std::ofstream out;
  open_or_throw(out, path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
      << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << " " << height
      << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<g stroke=\"#999\" stroke-width=\"1\">\n"
      << "<line x1=\"" << ml << "\" y1=\"" << height - mb << "\" x2=\"" << width - mr
      << "\" y2=\"" << height - mb << "\"/>\n"
      << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\""
      << height - mb << "\"/>\n</g>\n";
  out << "<text x=\"" << (ml + width - mr) / 2 << "\" y=\"" << height - 14
      << "\" text-anchor=\"middle\" font-size=\"13\">h (log)</text>\n";
  out << "<text x=\"18\" y=\"" << (mt + height - mb) / 2
      << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
      << (mt + height - mb) / 2 << ")\">error (log)</text>\n";

  int legend_row = 0;
  for (const auto& s : series) {
    out << "<polyline fill=\"none\" stroke=\"" << s.color
        << "\" stroke-width=\"1.6\" points=\"";
    for (size_t i = 0; i < hs.size(); ++i)
      out << ax.map(hs[i]) << "," << ay.map(s.y[i]) << " ";
    out << "\"/>\n";
    for (size_t i = 0; i < hs.size(); ++i)
      out << "<circle cx=\"" << ax.map(hs[i]) << "\" cy=\"" << ay.map(s.y[i])
          << "\" r=\"2.5\" fill=\"" << s.color << "\"/>\n";
    const double ly = mt + 16 * legend_row++;
    out << "<line x1=\"" << width - mr + 12 << "\" y1=\"" << ly << "\" x2=\""
        << width - mr + 34 << "\" y2=\"" << ly << "\" stroke=\"" << s.color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << width - mr + 40 << "\" y=\"" << ly + 4
        << "\" font-size=\"12\">" << s.name << "</text>\n";
  }

  // reference slopes anchored at the coarsest dG-norm point
  for (int slope : {degree, degree + 1}) {
    const double x0 = hs.front(), x1 = hs.back();
    const double y0 = series[0].y.front() * 1.6;
    const double y1 = y0 * std::pow(x1 / x0, slope);
    out << "<line x1=\"" << ax.map(x0) << "\" y1=\"" << ay.map(y0) << "\" x2=\""
        << ax.map(x1) << "\" y2=\"" << ay.map(y1)
        << "\" stroke=\"#444\" stroke-dasharray=\"5 4\" stroke-width=\"1\"/>\n";
    out << "<text x=\"" << ax.map(x1) + 4 << "\" y=\"" << ay.map(y1)
        << "\" font-size=\"12\" fill=\"#444\">O(h^" << slope << ")</text>\n";
  }
  out << "</svg>\n";
}

void write_vtk(const DGSpace& space, const DGFunction& u, const EstimatorReport* est,
               const std::string& path) {
  const Mesh& mesh = space.mesh();
  std::ofstream out;
  open_or_throw(out, path);
  out.precision(12);
  out << "# vtk DataFile Version 3.0\n";
  out << "semidg output\n";
  out << "ASCII\n";
  out << "DATASET UNSTRUCTURED_GRID\n";
  out << "POINTS " << mesh.num_vertices() << " double\n";
  for (int v = 0; v < mesh.num_vertices(); ++v)
    out << mesh.vertex(v).x << " " << mesh.vertex(v).y << " 0\n";
  out << "CELLS " << mesh.num_cells() << " " << 4 * mesh.num_cells() << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const auto& t = mesh.cell(c);
    out << "3 " << t[0] << " " << t[1] << " " << t[2] << "\n";
  }
  out << "CELL_TYPES " << mesh.num_cells() << "\n";
  for (int c = 0; c < mesh.num_cells(); ++c) out << "5\n";

  out << "CELL_DATA " << mesh.num_cells() << "\n";
  out << "SCALARS u double 1\nLOOKUP_TABLE default\n";
  for (int c = 0; c < mesh.num_cells(); ++c)
    out << u.cell_coeffs(c)[0] * std::sqrt(2.0) << "\n";  // cell mean
  if (est != nullptr) {
    out << "SCALARS eta_R2 double 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < mesh.num_cells(); ++c) out << est->eta_R2[c] << "\n";
    out << "SCALARS eta_J2 double 1\nLOOKUP_TABLE default\n";
    for (int c = 0; c < mesh.num_cells(); ++c) out << est->eta_J2[c] << "\n";
  }
}

}  // namespace semidg
