#include "polydisk/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace polydisk::io {

namespace {

using nlohmann::json;

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

double parse_double(std::string_view field, const std::filesystem::path& path, std::size_t line,
                    std::size_t column) {
  double value = 0.0;
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end > begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  require(ec == std::errc{} && ptr == end, ErrorKind::MalformedFile,
          path.string() + ": row " + std::to_string(line) + ", field " + std::to_string(column) +
              ": cannot parse '" + std::string(field) + "' as a number");
  require(std::isfinite(value), ErrorKind::NonFiniteValue,
          path.string() + ": row " + std::to_string(line) + ", field " + std::to_string(column) +
              ": non-finite value");
  return value;
}

std::vector<std::string_view> split_fields(std::string_view row) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = row.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(row.substr(start));
      break;
    }
    fields.push_back(row.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

Complex json_to_complex(const json& j, const std::string& where) {
  require(j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number(),
          ErrorKind::MalformedFile, where + ": expected a [re, im] pair");
  return Complex{j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const ComplexMatrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ComplexMatrix json_to_matrix(const json& j, const std::string& where) {
  require(j.is_array() && !j.empty(), ErrorKind::MalformedFile, where + ": expected a matrix");
  const std::size_t rows = j.size();
  require(j[0].is_array() && !j[0].empty(), ErrorKind::MalformedFile,
          where + ": expected nested rows");
  const std::size_t cols = j[0].size();
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    require(j[i].is_array() && j[i].size() == cols, ErrorKind::MalformedFile,
            where + ": ragged rows");
    for (std::size_t k = 0; k < cols; ++k) {
      m(i, k) = json_to_complex(j[i][k], where);
    }
  }
  return m;
}

}  // namespace

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  require(out.good(), ErrorKind::IoError, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.flush();
  require(out.good(), ErrorKind::IoError, "write to '" + path.string() + "' failed");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::IoError, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  require(!in.bad(), ErrorKind::IoError, "read from '" + path.string() + "' failed");
  return buffer.str();
}

Burst read_burst(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<std::string_view> rows;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string::npos) stop = text.size();
    std::string_view row(text.data() + start, stop - start);
    if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
    if (!row.empty()) rows.push_back(row);
    start = stop + 1;
  }
  require(!rows.empty(), ErrorKind::MalformedFile, path.string() + ": empty file");

  int n_pulses = -1;
  std::size_t first_data = 0;
  if (rows[0].starts_with("#")) {
    std::string_view header = rows[0];
    const std::size_t eq = header.find("pulses=");
    require(eq != std::string_view::npos, ErrorKind::MalformedFile,
            path.string() + ": unrecognized header '" + std::string(header) + "'");
    std::string_view value = header.substr(eq + 7);
    int parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    require(ec == std::errc{} && ptr == value.data() + value.size() && parsed >= 1,
            ErrorKind::MalformedFile, path.string() + ": bad pulse count in header");
    n_pulses = parsed;
    first_data = 1;
  }
  require(first_data < rows.size(), ErrorKind::MalformedFile,
          path.string() + ": no data rows");

  std::vector<std::vector<Complex>> cells;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const std::size_t display_row = r + 1;  // 1-based, counting the header
    const std::vector<std::string_view> fields = split_fields(rows[r]);
    if (n_pulses < 0) {
      require(fields.size() % 2 == 0 && !fields.empty(), ErrorKind::MalformedFile,
              path.string() + ": row " + std::to_string(display_row) +
                  ": expected an even number of fields");
      n_pulses = static_cast<int>(fields.size() / 2);
    }
    require(fields.size() == static_cast<std::size_t>(2 * n_pulses), ErrorKind::MalformedFile,
            path.string() + ": row " + std::to_string(display_row) + ": expected " +
                std::to_string(2 * n_pulses) + " fields, got " + std::to_string(fields.size()));
    std::vector<Complex> cell(n_pulses);
    for (int t = 0; t < n_pulses; ++t) {
      const double re = parse_double(fields[2 * t], path, display_row, 2 * t + 1);
      const double im = parse_double(fields[2 * t + 1], path, display_row, 2 * t + 2);
      cell[t] = Complex{re, im};
    }
    cells.push_back(std::move(cell));
  }

  Burst burst(n_pulses, static_cast<Eigen::Index>(cells.size()));
  for (std::size_t j = 0; j < cells.size(); ++j) {
    for (int t = 0; t < n_pulses; ++t) burst(t, static_cast<Eigen::Index>(j)) = cells[j][t];
  }
  return burst;
}

void write_burst(const Burst& burst, const std::filesystem::path& path) {
  require(burst.allFinite(), ErrorKind::NonFiniteValue, "burst has non-finite samples");
  std::string out = "# pulses=" + std::to_string(burst.rows()) + "\n";
  for (Eigen::Index j = 0; j < burst.cols(); ++j) {
    for (Eigen::Index t = 0; t < burst.rows(); ++t) {
      if (t > 0) out += ',';
      out += format_double(burst(t, j).real());
      out += ',';
      out += format_double(burst(t, j).imag());
    }
    out += '\n';
  }
  write_file(path, out);
}

std::vector<ProductPoint> read_points(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<ProductPoint> points;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string::npos) stop = text.size();
    std::string_view line(text.data() + start, stop - start);
    start = stop + 1;
    ++line_no;
    if (line.empty() || line == "\r") continue;

    const std::string where = path.string() + ": line " + std::to_string(line_no);
    json j = json::parse(line, nullptr, false);
    require(!j.is_discarded() && j.is_object(), ErrorKind::MalformedFile,
            where + ": expected one JSON object per line");
    for (const auto& [key, value] : j.items()) {
      require(key == "log_p0" || key == "mu" || key == "n_pulses", ErrorKind::MalformedFile,
              where + ": unknown key '" + key + "'");
      (void)value;
    }
    require(j.contains("log_p0") && j["log_p0"].is_number(), ErrorKind::MalformedFile,
            where + ": missing numeric 'log_p0'");
    require(j.contains("n_pulses") && j["n_pulses"].is_number_integer(), ErrorKind::MalformedFile,
            where + ": missing integer 'n_pulses'");
    require(j.contains("mu") && j["mu"].is_array(), ErrorKind::MalformedFile,
            where + ": missing array 'mu'");
    std::vector<Complex> mu;
    mu.reserve(j["mu"].size());
    for (const json& pair : j["mu"]) mu.push_back(json_to_complex(pair, where));
    try {
      points.push_back(
          make_product_point(j["log_p0"].get<double>(), std::move(mu), j["n_pulses"].get<int>()));
    } catch (const Error& e) {
      fail(ErrorKind::MalformedFile, where + ": " + e.what());
    }
  }
  require(!points.empty(), ErrorKind::MalformedFile, path.string() + ": no points");
  return points;
}

void write_points(std::span<const ProductPoint> points, const std::filesystem::path& path) {
  std::string out;
  for (const ProductPoint& point : points) {
    json j;
    j["log_p0"] = point.log_p0;
    json mu = json::array();
    for (const Complex& m : point.mu) mu.push_back(complex_to_json(m));
    j["mu"] = std::move(mu);
    j["n_pulses"] = point.n_pulses;
    out += j.dump();
    out += '\n';
  }
  write_file(path, out);
}

std::vector<int> read_labels(const std::filesystem::path& path) {
  const std::string text = read_file(path);
  std::vector<int> labels;
  std::size_t start = 0;
  std::size_t line_no = 0;
  while (start < text.size()) {
    std::size_t stop = text.find('\n', start);
    if (stop == std::string::npos) stop = text.size();
    std::string_view line(text.data() + start, stop - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    start = stop + 1;
    ++line_no;
    if (line.empty()) continue;
    int value = 0;
    const auto [ptr, ec] = std::from_chars(line.data(), line.data() + line.size(), value);
    require(ec == std::errc{} && ptr == line.data() + line.size() && value >= 0,
            ErrorKind::MalformedFile,
            path.string() + ": line " + std::to_string(line_no) + ": expected a label");
    labels.push_back(value);
  }
  require(!labels.empty(), ErrorKind::MalformedFile, path.string() + ": no labels");
  return labels;
}

void write_labels(std::span<const int> labels, const std::filesystem::path& path) {
  std::string out;
  for (const int label : labels) {
    out += std::to_string(label);
    out += '\n';
  }
  write_file(path, out);
}

std::string siegel_params_to_json(const SiegelParams& params) {
  json j;
  j["n"] = params.n();
  j["r0"] = matrix_to_json(params.r0.matrix());
  json blocks = json::array();
  for (const SiegelPoint& a : params.a) blocks.push_back(matrix_to_json(a.matrix()));
  j["a"] = std::move(blocks);
  return j.dump();
}

SiegelParams siegel_params_from_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  require(!j.is_discarded() && j.is_object(), ErrorKind::MalformedFile,
          "expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    require(key == "n" || key == "r0" || key == "a", ErrorKind::MalformedFile,
            "unknown key '" + key + "'");
    (void)value;
  }
  require(j.contains("r0") && j.contains("a") && j["a"].is_array(), ErrorKind::MalformedFile,
          "expected 'r0' and 'a'");
  HpdMatrix r0{json_to_matrix(j["r0"], "r0")};
  std::vector<SiegelPoint> blocks;
  for (std::size_t k = 0; k < j["a"].size(); ++k) {
    blocks.emplace_back(json_to_matrix(j["a"][k], "a[" + std::to_string(k) + "]"));
  }
  SiegelParams params = make_siegel_params(std::move(r0), std::move(blocks));
  if (j.contains("n")) {
    require(j["n"].is_number_integer() && j["n"].get<int>() == params.n(),
            ErrorKind::MalformedFile, "'n' disagrees with the block count");
  }
  return params;
}

}  // namespace polydisk::io
