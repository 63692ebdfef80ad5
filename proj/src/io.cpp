#include "icgrad/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "icgrad/errors.hpp"

namespace icgrad {

namespace fs = std::filesystem;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failed for " + path.string());
  return buf.str();
}

namespace {

std::string rep_stem(int rep) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "walk_rep%03d", rep);
  return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string::size_type start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    if (comma == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

double parse_double(const std::string& s, const fs::path& file, std::size_t line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ParseError(file.string(), line, "not a number: '" + s + "'");
  return v;
}

long parse_int(const std::string& s, const fs::path& file, std::size_t line) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0')
    throw ParseError(file.string(), line, "not an integer: '" + s + "'");
  return v;
}

std::vector<std::string> read_lines(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

}  // namespace

std::filesystem::path walk_csv_name(int rep) { return rep_stem(rep) + ".csv"; }

void write_walk_dataset(const fs::path& dir, int rep, const WalkRecord& walk,
                        const WalkManifest& manifest, bool dump_theta) {
  if (rep < 0) throw ArgumentError("write_walk_dataset: rep must be >= 0");
  const std::string stem = rep_stem(rep);

  std::ostringstream csv;
  csv << "rep,step,cost,step_norm\n";
  for (std::size_t i = 0; i < walk.costs.size(); ++i) {
    const double norm = i < walk.step_norms.size() ? walk.step_norms[i] : 0.0;
    csv << rep << ',' << i << ',' << format_double(walk.costs[i]) << ','
        << format_double(norm) << '\n';
  }
  write_text_file(dir / (stem + ".csv"), csv.str());

  nlohmann::json j;
  j["m"] = manifest.m;
  j["d"] = manifest.d;
  j["S"] = manifest.S;
  j["seed"] = manifest.seed;
  j["cost_id"] = manifest.cost_id;
  j["mode"] = manifest.mode;
  write_text_file(dir / (stem + ".json"), j.dump(2) + "\n");

  if (dump_theta) {
    std::ostringstream theta;
    theta << "rep,step";
    const int m = walk.dimension();
    for (int k = 0; k < m; ++k) theta << ",theta" << k;
    theta << '\n';
    for (std::size_t i = 0; i < walk.points.size(); ++i) {
      theta << rep << ',' << i;
      for (double x : walk.points[i]) theta << ',' << format_double(x);
      theta << '\n';
    }
    write_text_file(dir / (stem + "_theta.csv"), theta.str());
  }
}

LoadedWalk read_walk(const fs::path& csv_path) {
  fs::path manifest_path = csv_path;
  manifest_path.replace_extension(".json");

  LoadedWalk out;
  try {
    const nlohmann::json j = nlohmann::json::parse(read_text_file(manifest_path));
    out.manifest.m = j.at("m").get<int>();
    out.manifest.d = j.at("d").get<double>();
    out.manifest.S = j.at("S").get<int>();
    out.manifest.seed = j.at("seed").get<std::uint64_t>();
    out.manifest.cost_id = j.at("cost_id").get<std::string>();
    out.manifest.mode = j.value("mode", std::string("isotropic"));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(manifest_path.string() + ": " + e.what());
  }
  if (out.manifest.m < 1)
    throw ParseError(manifest_path.string() + ": m must be >= 1");
  if (out.manifest.S < 2)
    throw ParseError(manifest_path.string() + ": S must be >= 2");

  const std::vector<std::string> lines = read_lines(csv_path);
  if (lines.empty()) throw ParseError(csv_path.string(), 1, "empty file");
  if (lines[0] != "rep,step,cost,step_norm")
    throw ParseError(csv_path.string(), 1, "unexpected header '" + lines[0] + "'");
  if (static_cast<int>(lines.size()) - 1 != out.manifest.S + 1)
    throw ParseError(csv_path.string(), lines.size(),
                     "expected " + std::to_string(out.manifest.S + 1) + " rows, got " +
                         std::to_string(lines.size() - 1));

  out.walk.costs.reserve(lines.size() - 1);
  std::vector<double> norms;
  norms.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto fields = split_csv_line(lines[li]);
    if (fields.size() != 4)
      throw ParseError(csv_path.string(), li + 1, "expected 4 fields");
    const long rep = parse_int(fields[0], csv_path, li + 1);
    const long step = parse_int(fields[1], csv_path, li + 1);
    if (li == 1)
      out.rep = static_cast<int>(rep);
    else if (rep != out.rep)
      throw ParseError(csv_path.string(), li + 1, "mixed rep values");
    if (step != static_cast<long>(li) - 1)
      throw ParseError(csv_path.string(), li + 1,
                       "step out of order: " + std::to_string(step));
    out.walk.costs.push_back(parse_double(fields[2], csv_path, li + 1));
    norms.push_back(parse_double(fields[3], csv_path, li + 1));
  }
  const std::size_t s = out.walk.costs.size() - 1;
  out.walk.step_norms.assign(norms.begin(), norms.begin() + s);
  out.walk.deltas.resize(s);
  for (std::size_t i = 0; i < s; ++i) {
    if (!(out.walk.step_norms[i] > 0.0))
      throw ParseError(csv_path.string(), i + 2,
                       "step_norm must be > 0 before the final row");
    out.walk.deltas[i] =
        (out.walk.costs[i + 1] - out.walk.costs[i]) / out.walk.step_norms[i];
  }
  return out;
}

std::vector<fs::path> list_walk_files(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const std::string name = entry.path().filename().string();
    if (name.rfind("walk_rep", 0) == 0 && name.size() >= 4 &&
        name.substr(name.size() - 4) == ".csv" &&
        name.find("_theta") == std::string::npos)
      files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

void write_ic_curve_csv(const fs::path& path, const ICCurve& curve) {
  std::ostringstream csv;
  csv << "epsilon,H\n";
  for (const auto& e : curve.entries)
    csv << format_double(e.epsilon) << ',' << format_double(e.h) << '\n';
  write_text_file(path, csv.str());
}

void write_scan_csv(const fs::path& path, const std::vector<ScanRow>& rows) {
  std::ostringstream csv;
  csv << "observable,qubits,layers,rep,eps_M,eps_S,H_M,lower_mic,upper_mic,upper_sic\n";
  for (const auto& r : rows) {
    csv << r.observable << ',' << r.qubits << ',' << r.layers << ',' << r.rep << ','
        << format_double(r.eps_m) << ',' << format_double(r.eps_s) << ','
        << format_double(r.h_m) << ',' << format_double(r.lower_mic) << ','
        << format_double(r.upper_mic) << ',' << format_double(r.upper_sic) << '\n';
  }
  write_text_file(path, csv.str());
}

std::vector<ScanRow> read_scan_csv(const fs::path& path) {
  const std::vector<std::string> lines = read_lines(path);
  if (lines.empty()) throw ParseError(path.string(), 1, "empty file");
  if (lines[0] !=
      "observable,qubits,layers,rep,eps_M,eps_S,H_M,lower_mic,upper_mic,upper_sic")
    throw ParseError(path.string(), 1, "unexpected header '" + lines[0] + "'");
  std::vector<ScanRow> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const auto f = split_csv_line(lines[li]);
    if (f.size() != 10)
      throw ParseError(path.string(), li + 1, "expected 10 fields");
    ScanRow r;
    r.observable = f[0];
    if (r.observable != "local" && r.observable != "global")
      throw ParseError(path.string(), li + 1, "unknown observable '" + f[0] + "'");
    r.qubits = static_cast<int>(parse_int(f[1], path, li + 1));
    r.layers = static_cast<int>(parse_int(f[2], path, li + 1));
    r.rep = static_cast<int>(parse_int(f[3], path, li + 1));
    r.eps_m = parse_double(f[4], path, li + 1);
    r.eps_s = parse_double(f[5], path, li + 1);
    r.h_m = parse_double(f[6], path, li + 1);
    r.lower_mic = parse_double(f[7], path, li + 1);
    r.upper_mic = parse_double(f[8], path, li + 1);
    r.upper_sic = parse_double(f[9], path, li + 1);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace icgrad
