#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>

#include "gmaos/bench.hpp"

namespace gmaos {
namespace {

// Shortest representation that parses back to the same double.
std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc{}) return "nan";
  return std::string(buf.data(), end);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path.string() + "' failed");
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, sep)) fields.push_back(field);
  if (!line.empty() && line.back() == sep) fields.emplace_back();
  return fields;
}

double parse_double(const std::string& text, const std::filesystem::path& path, int line) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || *end != '\0') {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": bad number '" +
                             text + "'");
  }
  return v;
}

long long parse_int(const std::string& text, const std::filesystem::path& path, int line) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": bad integer '" +
                             text + "'");
  }
  return v;
}

}  // namespace

void write_records_csv(const std::filesystem::path& path, std::span<const RunRecord> records) {
  std::ofstream out = open_for_write(path);
  out << kRecordsCsvHeader << '\n';
  for (const RunRecord& r : records) {
    out << r.problem_name << ',' << r.n << ',' << r.solver_name << ',' << to_string(r.status)
        << ',' << r.iters << ',' << r.nf << ',' << r.ng << ','
        << format_double(r.wall_time_seconds) << ',' << format_double(r.final_f) << ','
        << format_double(r.final_gnorm_inf) << '\n';
  }
  finish(out, path);
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kRecordsCsvHeader) {
    throw std::runtime_error(path.string() + ": missing or unexpected header");
  }
  std::vector<RunRecord> records;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> f = split(line, ',');
    if (f.size() != 10) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": expected 10 fields");
    }
    RunRecord r;
    r.problem_name = f[0];
    r.n = static_cast<std::size_t>(parse_int(f[1], path, line_no));
    r.solver_name = f[2];
    const auto status = parse_status(f[3]);
    if (!status) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) +
                               ": unknown status '" + f[3] + "'");
    }
    r.status = *status;
    r.iters = parse_int(f[4], path, line_no);
    r.nf = parse_int(f[5], path, line_no);
    r.ng = parse_int(f[6], path, line_no);
    r.wall_time_seconds = parse_double(f[7], path, line_no);
    r.final_f = parse_double(f[8], path, line_no);
    r.final_gnorm_inf = parse_double(f[9], path, line_no);
    records.push_back(std::move(r));
  }
  return records;
}

void write_profile_csv(const std::filesystem::path& path, std::span<const ProfileCurve> curves) {
  std::ofstream out = open_for_write(path);
  out << kProfileCsvHeader << '\n';
  for (const ProfileCurve& c : curves) {
    for (const ProfilePoint& p : c.points) {
      out << to_string(c.metric) << ',' << c.solver_name << ',' << format_double(p.tau) << ','
          << format_double(p.fraction) << '\n';
    }
  }
  finish(out, path);
}

void write_profile_svg(const std::filesystem::path& path, std::span<const ProfileCurve> curves) {
  constexpr double kWidth = 640, kHeight = 420;
  constexpr double kLeft = 60, kRight = 150, kTop = 30, kBottom = 50;
  constexpr double kPlotW = kWidth - kLeft - kRight;
  constexpr double kPlotH = kHeight - kTop - kBottom;
  static constexpr std::array<const char*, 6> kColors = {"#1f77b4", "#d62728", "#2ca02c",
                                                         "#ff7f0e", "#9467bd", "#8c564b"};

  double log_max = 1.0;
  for (const ProfileCurve& c : curves) {
    for (const ProfilePoint& p : c.points) log_max = std::max(log_max, std::log2(p.tau));
  }
  log_max = std::ceil(log_max * 1.05);
  auto px = [&](double tau) { return kLeft + kPlotW * std::log2(tau) / log_max; };
  auto py = [&](double frac) { return kTop + kPlotH * (1.0 - frac); };

  std::ofstream out = open_for_write(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const std::string metric = curves.empty() ? "" : std::string(to_string(curves[0].metric));
  out << "<text x=\"" << kLeft << "\" y=\"18\">Performance profile (" << metric << ")</text>\n";

  // Axes and ticks.
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kPlotW << "\" height=\""
      << kPlotH << "\" fill=\"none\" stroke=\"black\"/>\n";
  const int step = std::max(1, static_cast<int>(log_max / 8));
  for (int t = 0; t <= static_cast<int>(log_max); t += step) {
    const double x = kLeft + kPlotW * t / log_max;
    out << "<line x1=\"" << x << "\" y1=\"" << kTop + kPlotH << "\" x2=\"" << x << "\" y2=\""
        << kTop + kPlotH + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << x << "\" y=\"" << kTop + kPlotH + 18
        << "\" text-anchor=\"middle\">2^" << t << "</text>\n";
  }
  for (int i = 0; i <= 5; ++i) {
    const double frac = i / 5.0;
    out << "<text x=\"" << kLeft - 8 << "\" y=\"" << py(frac) + 4
        << "\" text-anchor=\"end\">" << frac << "</text>\n";
  }
  out << "<text x=\"" << kLeft + kPlotW / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\">tau (log2 scale)</text>\n";

  for (std::size_t i = 0; i < curves.size(); ++i) {
    const ProfileCurve& c = curves[i];
    const char* color = kColors[i % kColors.size()];
    std::ostringstream d;
    double prev_frac = 0.0;
    d << "M " << px(1.0) << ' ' << py(prev_frac);
    for (const ProfilePoint& p : c.points) {
      d << " L " << px(p.tau) << ' ' << py(prev_frac) << " L " << px(p.tau) << ' '
        << py(p.fraction);
      prev_frac = p.fraction;
    }
    d << " L " << kLeft + kPlotW << ' ' << py(prev_frac);
    out << "<path d=\"" << d.str() << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    const double ly = kTop + 20 + 20 * static_cast<double>(i);
    out << "<line x1=\"" << kLeft + kPlotW + 15 << "\" y1=\"" << ly << "\" x2=\""
        << kLeft + kPlotW + 40 << "\" y2=\"" << ly << "\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";
    out << "<text x=\"" << kLeft + kPlotW + 45 << "\" y=\"" << ly + 4 << "\">" << c.solver_name
        << "</text>\n";
  }
  out << "</svg>\n";
  finish(out, path);
}

void write_trace_csv(const std::filesystem::path& path, std::span<const RunRecord> records) {
  std::ofstream out = open_for_write(path);
  out << "problem,n,solver,k,f,C,Q,gnorm_inf,alpha_proposed,alpha,branch,sigma,sigma_next,rho,"
         "mu,mu_prev,sty,grad_ratio,near_quadratic,fd_curvature,f_next,backtracks,retries\n";
  for (const RunRecord& r : records) {
    for (const TraceEntry& e : r.trace) {
      out << r.problem_name << ',' << r.n << ',' << r.solver_name << ',' << e.k << ','
          << format_double(e.f) << ',' << format_double(e.C) << ',' << format_double(e.Q) << ','
          << format_double(e.gnorm_inf) << ',' << format_double(e.alpha_proposed) << ','
          << format_double(e.alpha) << ',' << to_string(e.branch) << ','
          << format_double(e.sigma) << ',' << format_double(e.sigma_next) << ','
          << format_double(e.rho) << ',' << format_double(e.mu) << ','
          << (e.mu_prev ? format_double(*e.mu_prev) : std::string()) << ','
          << format_double(e.sty) << ',' << format_double(e.grad_ratio) << ','
          << (e.near_quadratic ? 1 : 0) << ',' << format_double(e.fd_curvature) << ','
          << format_double(e.f_next) << ',' << e.backtracks << ',' << e.retries << '\n';
    }
  }
  finish(out, path);
}

void emit_outputs(std::span<const RunRecord> records, std::span<const ProfileCurve> curves,
                  const OutputPaths& paths) {
  if (paths.records_csv) write_records_csv(*paths.records_csv, records);
  if (paths.profile_csv) write_profile_csv(*paths.profile_csv, curves);
  if (paths.trace_csv) write_trace_csv(*paths.trace_csv, records);
  if (paths.plot_prefix) {
    std::map<Metric, std::vector<ProfileCurve>> by_metric;
    for (const ProfileCurve& c : curves) by_metric[c.metric].push_back(c);
    for (const auto& [metric, group] : by_metric) {
      std::filesystem::path file = *paths.plot_prefix;
      file += "_" + std::string(to_string(metric)) + ".svg";
      write_profile_svg(file, group);
    }
  }
}

}  // namespace gmaos
