#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fefkit/states.hpp"

namespace fefkit {

namespace {

using nlohmann::json;

std::vector<std::vector<double>> read_block(const json& doc, const char* key, std::size_t dim) {
  if (!doc.contains(key)) throw Error(ErrorKind::Parse, std::string("missing \"") + key + "\"");
  const json& block = doc.at(key);
  if (!block.is_array() || block.size() != dim) {
    throw Error(ErrorKind::Parse, std::string("\"") + key + "\" must have " + std::to_string(dim) + " rows");
  }
  std::vector<std::vector<double>> rows;
  for (const json& row : block) {
    if (!row.is_array() || row.size() != dim) {
      throw Error(ErrorKind::Parse, std::string("\"") + key + "\" rows must have " + std::to_string(dim) + " entries");
    }
    std::vector<double> values;
    for (const json& v : row) {
      if (!v.is_number()) throw Error(ErrorKind::Parse, std::string("non-numeric entry in \"") + key + "\"");
      values.push_back(v.get<double>());
    }
    rows.push_back(std::move(values));
  }
  return rows;
}

}  // namespace

ComplexMatrix parse_matrix_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
  if (!doc.is_object() || !doc.contains("dim") || !doc.at("dim").is_number_integer()) {
    throw Error(ErrorKind::Parse, "expected an object with integer \"dim\"");
  }
  const auto dim = doc.at("dim").get<long long>();
  if (dim < 1 || dim > static_cast<long long>(kMaxDim)) {
    throw Error(ErrorKind::Parse, "\"dim\" must be in [1, 16]");
  }
  const auto n = static_cast<std::size_t>(dim);
  const auto re = read_block(doc, "re", n);
  const auto im = read_block(doc, "im", n);
  ComplexMatrix m(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) m(r, c) = cplx{re[r][c], im[r][c]};
  return m;
}

DensityMatrix parse_density_json(std::string_view text) {
  return DensityMatrix::from_matrix(parse_matrix_json(text));
}

DensityMatrix read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Parse, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_density_json(buf.str());
}

std::string to_density_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json re_row = json::array();
    json im_row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(std::move(re_row));
    im.push_back(std::move(im_row));
  }
  json doc = {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
  return doc.dump();
}

}  // namespace fefkit
