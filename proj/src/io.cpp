#include "tgeo/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

#include <json.hpp>

#include "tgeo/error.hpp"

namespace tgeo {

namespace {

nlohmann::json parse_json_file(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(file.string() + ": " + e.what());
  }
  return doc;
}

double number_at(const nlohmann::json& j, const std::string& where) {
  if (!j.is_number()) throw Error(where + " is not a number");
  return j.get<double>();
}

std::vector<double> split_csv_row(const std::string& line, const std::string& where) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= line.size()) {
    std::size_t comma = line.find(',', pos);
    std::size_t end = comma == std::string::npos ? line.size() : comma;
    std::size_t lo = pos;
    while (lo < end && std::isspace(static_cast<unsigned char>(line[lo]))) ++lo;
    std::size_t hi = end;
    while (hi > lo && std::isspace(static_cast<unsigned char>(line[hi - 1]))) --hi;
    if (lo == hi) throw Error(where + ": empty cell");
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(line.data() + lo, line.data() + hi, value);
    if (ec != std::errc() || ptr != line.data() + hi)
      throw Error(where + ": cannot parse '" + line.substr(lo, hi - lo) + "' as a number");
    out.push_back(value);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

bool blank(const std::string& line) {
  for (char c : line)
    if (!std::isspace(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

GeneratorKind parse_generator_kind(const std::string& name) {
  if (name == "euclidean") return GeneratorKind::euclidean;
  if (name == "pseudo_euclidean") return GeneratorKind::pseudo_euclidean;
  if (name == "sphere_chordal") return GeneratorKind::sphere_chordal;
  if (name == "sphere_intrinsic") return GeneratorKind::sphere_intrinsic;
  throw Error("unknown generator '" + name + "'");
}

std::string generator_kind_name(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::euclidean: return "euclidean";
    case GeneratorKind::pseudo_euclidean: return "pseudo_euclidean";
    case GeneratorKind::sphere_chordal: return "sphere_chordal";
    case GeneratorKind::sphere_intrinsic: return "sphere_intrinsic";
    case GeneratorKind::matrix: return "matrix";
  }
  throw InternalError("unhandled generator kind");
}

PointCloudInput load_point_cloud_json(const std::filesystem::path& file) {
  nlohmann::json doc = parse_json_file(file);
  if (!doc.is_object()) throw Error(file.string() + ": top level must be an object");
  if (!doc.contains("generator")) throw Error(file.string() + ": missing 'generator'");
  if (!doc.contains("dimension")) throw Error(file.string() + ": missing 'dimension'");
  if (!doc.contains("points")) throw Error(file.string() + ": missing 'points'");

  PointCloudInput input;
  if (!doc["generator"].is_string())
    throw Error(file.string() + ": 'generator' must be a string");
  input.spec.kind = parse_generator_kind(doc["generator"].get<std::string>());
  if (input.spec.kind == GeneratorKind::matrix)
    throw Error(file.string() + ": point clouds cannot use the matrix generator");

  if (!doc["dimension"].is_number_integer())
    throw Error(file.string() + ": 'dimension' must be an integer");
  input.spec.dimension = doc["dimension"].get<Eigen::Index>();

  if (doc.contains("signature")) {
    const auto& sig = doc["signature"];
    if (!sig.is_array()) throw Error(file.string() + ": 'signature' must be an array");
    input.spec.signature.resize(static_cast<Eigen::Index>(sig.size()));
    for (std::size_t i = 0; i < sig.size(); ++i)
      input.spec.signature[static_cast<Eigen::Index>(i)] =
          number_at(sig[i], file.string() + ": signature[" + std::to_string(i) + "]");
  }

  const auto& pts = doc["points"];
  if (!pts.is_array()) throw Error(file.string() + ": 'points' must be an array");
  if (pts.empty()) throw Error(file.string() + ": 'points' is empty");
  input.points.resize(static_cast<Eigen::Index>(pts.size()), input.spec.dimension);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& row = pts[i];
    std::string where = file.string() + ": points[" + std::to_string(i) + "]";
    if (!row.is_array()) throw Error(where + " is not an array");
    if (static_cast<Eigen::Index>(row.size()) != input.spec.dimension)
      throw Error(where + " has " + std::to_string(row.size()) + " coordinates, expected " +
                  std::to_string(input.spec.dimension));
    for (std::size_t j = 0; j < row.size(); ++j)
      input.points(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          number_at(row[j], where + "[" + std::to_string(j) + "]");
  }
  return input;
}

Eigen::MatrixXd load_matrix_csv(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw Error("cannot open " + file.string());

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    rows.push_back(split_csv_row(line, file.string() + ":" + std::to_string(lineno)));
  }
  if (rows.empty()) throw Error(file.string() + ": no data rows");

  const auto n = static_cast<Eigen::Index>(rows.size());
  bool lower_triangle = true;
  bool full_square = true;
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto w = static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size());
    if (w != i + 1) lower_triangle = false;
    if (w != n) full_square = false;
  }
  // A 1x1 input satisfies both layouts and both readings agree.
  if (!lower_triangle && !full_square)
    throw Error(file.string() +
                ": rows form neither a full square nor a lower triangle with diagonal");

  Eigen::MatrixXd m(n, n);
  if (full_square) {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k < n; ++k)
        m(i, k) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
  } else {
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index k = 0; k <= i; ++k) {
        double v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        m(i, k) = v;
        m(k, i) = v;
      }
  }
  return m;
}

std::optional<TableValues> read_values_sidecar(const std::filesystem::path& csv_file) {
  std::filesystem::path sidecar = csv_file;
  sidecar += ".json";
  std::error_code ec;
  if (!std::filesystem::exists(sidecar, ec)) return std::nullopt;

  nlohmann::json doc = parse_json_file(sidecar);
  if (!doc.is_object() || !doc.contains("values") || !doc["values"].is_string())
    throw Error(sidecar.string() + ": expected { \"values\": \"sigma\" | \"rho\" }");
  std::string v = doc["values"].get<std::string>();
  if (v == "sigma") return TableValues::sigma;
  if (v == "rho") return TableValues::rho;
  throw Error(sidecar.string() + ": 'values' must be \"sigma\" or \"rho\", got '" + v + "'");
}

WorldFunction load_world_function(const std::filesystem::path& file,
                                  std::optional<TableValues> values_flag) {
  std::string ext = file.extension().string();
  for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));

  if (ext == ".json") {
    PointCloudInput input = load_point_cloud_json(file);
    return make_world_function(input.spec, input.points);
  }

  Eigen::MatrixXd table = load_matrix_csv(file);
  std::optional<TableValues> sidecar = read_values_sidecar(file);
  if (sidecar && values_flag && *sidecar != *values_flag)
    throw Error(file.string() +
                ": values declaration conflicts between the sidecar and the --values flag");
  std::optional<TableValues> values = sidecar ? sidecar : values_flag;
  if (!values)
    throw Error(file.string() +
                ": matrix input needs a values declaration (sidecar or --values flag); "
                "sigma vs rho is never guessed");
  return make_world_function(table, *values);
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw InternalError("float formatting failed");
  return std::string(buf, ptr);
}

}  // namespace tgeo
