#include "z2cross/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace z2cross {
namespace {

using nlohmann::json;

[[noreturn]] void file_error(const std::string& what) {
  throw std::invalid_argument("algebra file: " + what);
}

Complex entry_from(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2 || !j.at(0).is_number() ||
      !j.at(1).is_number())
    file_error(where + ": expected an [re, im] pair");
  return Complex(j.at(0).get<double>(), j.at(1).get<double>());
}

CMatrix matrix_from(const json& j, Eigen::Index d, const std::string& where) {
  if (!j.is_array() || Eigen::Index(j.size()) != d)
    file_error(where + ": expected " + std::to_string(d) + " rows");
  CMatrix m(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    const json& row = j.at(std::size_t(r));
    if (!row.is_array() || Eigen::Index(row.size()) != d)
      file_error(where + "[" + std::to_string(r) + "]: expected " +
                 std::to_string(d) + " entries");
    for (Eigen::Index c = 0; c < d; ++c)
      m(r, c) = entry_from(row.at(std::size_t(c)),
                           where + "[" + std::to_string(r) + "][" +
                               std::to_string(c) + "]");
  }
  return m;
}

json matrix_to(const CMatrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace

LoadedAlgebra parse_algebra_text(const std::string& text,
                                 const TolerancePolicy& tol) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    file_error(std::string("parse error: ") + e.what());
  }
  if (!root.is_object() || !root.contains("format") ||
      !root.at("format").is_number_integer() ||
      root.at("format").get<int>() != 1)
    file_error("unsupported format version (expected format: 1)");
  if (!root.contains("ambient_dim") ||
      !root.at("ambient_dim").is_number_integer())
    file_error("ambient_dim: expected an integer");
  Eigen::Index d = root.at("ambient_dim").get<Eigen::Index>();
  if (d < 1) file_error("ambient_dim: must be at least 1");
  std::string name = root.value("name", std::string());

  if (!root.contains("generators") || !root.at("generators").is_array())
    file_error("generators: expected an array of matrices");
  std::vector<CMatrix> gens;
  for (std::size_t k = 0; k < root.at("generators").size(); ++k)
    gens.push_back(matrix_from(root.at("generators").at(k), d,
                               "generators[" + std::to_string(k) + "]"));

  StarAlgebra alg = StarAlgebra::generate(d, gens, name, tol);

  LoadedAlgebra out{std::move(alg), std::nullopt};
  if (root.contains("automorphism")) {
    const json& a = root.at("automorphism");
    if (!a.is_object() || !a.contains("generator_images") ||
        !a.at("generator_images").is_array())
      file_error("automorphism.generator_images: expected an array of matrices");
    if (a.at("generator_images").size() != gens.size())
      file_error("automorphism.generator_images: need one image per generator");
    std::vector<CMatrix> file_images;
    for (std::size_t k = 0; k < a.at("generator_images").size(); ++k)
      file_images.push_back(
          matrix_from(a.at("generator_images").at(k), d,
                      "automorphism.generator_images[" + std::to_string(k) +
                          "]"));
    // The algebra's generating set is the identity followed by each file
    // generator and its adjoint, in order; extend the images to match.
    std::vector<CMatrix> images;
    images.push_back(CMatrix::Identity(d, d));
    for (const CMatrix& im : file_images) {
      images.push_back(im);
      images.push_back(im.adjoint());
    }
    out.sigma = make_automorphism(out.algebra, images);
  }
  return out;
}

LoadedAlgebra load_algebra_file(const std::string& path,
                                const TolerancePolicy& tol) {
  std::ifstream in(path);
  if (!in) file_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_algebra_text(buf.str(), tol);
}

std::string algebra_file_text(const StarAlgebra& alg,
                              const OrderTwoAutomorphism* sigma) {
  json root;
  root["format"] = 1;
  if (!alg.name().empty()) root["name"] = alg.name();
  root["ambient_dim"] = alg.ambient_dim();
  json gens = json::array();
  for (const CMatrix& g : alg.generators()) gens.push_back(matrix_to(g));
  root["generators"] = std::move(gens);
  if (sigma) {
    json images = json::array();
    for (const CMatrix& g : alg.generators())
      images.push_back(matrix_to(z2cross::apply(sigma->action, g)));
    root["automorphism"] = json{{"generator_images", std::move(images)}};
  }
  return root.dump(2) + "\n";
}

}  // namespace z2cross
