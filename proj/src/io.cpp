#include "chaos/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "chaos/error.hpp"

namespace chaos {
namespace {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T required(const json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InvalidInput(std::string("missing field \"") + key + "\"");
  }
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("field \"") + key + "\": " + e.what());
  }
}

}  // namespace

SymmetricMultilinearForm parse_form(const std::string& text) {
  const json doc = parse_json(text);
  const int k = required<int>(doc, "k");
  const int n = required<int>(doc, "n");
  const json entries = required<json>(doc, "entries");
  if (!entries.is_array()) throw InvalidInput("\"entries\" must be an array");

  SymmetricMultilinearForm::CoefficientMap coeffs;
  for (const json& e : entries) {
    auto indices = required<IndexTuple>(e, "indices");
    const double value = required<double>(e, "value");
    for (std::size_t i = 1; i < indices.size(); ++i) {
      if (indices[i - 1] >= indices[i]) {
        throw InvalidInput("entry indices must be strictly increasing");
      }
    }
    if (!coeffs.emplace(indices, value).second) {
      throw InvalidInput("entry indices listed twice");
    }
  }
  return SymmetricMultilinearForm(k, n, std::move(coeffs));
}

SymmetricMultilinearForm load_form(const std::filesystem::path& path) {
  return parse_form(read_file(path));
}

std::string dump_form(const SymmetricMultilinearForm& form) {
  nlohmann::ordered_json doc;
  doc["k"] = form.degree();
  doc["n"] = form.dimension();
  doc["entries"] = nlohmann::ordered_json::array();
  for (const auto& [key, value] : form.coefficients()) {
    doc["entries"].push_back({{"indices", key}, {"value", value}});
  }
  return doc.dump(2);
}

DiscreteKernel parse_kernel(const std::string& text) {
  const json doc = parse_json(text);
  const int arity = required<int>(doc, "arity");
  const int ground = required<int>(doc, "ground_size");
  auto values = required<std::vector<double>>(doc, "values");
  std::vector<double> measure;
  if (doc.contains("measure")) {
    measure = required<std::vector<double>>(doc, "measure");
  } else if (ground > 0) {
    measure.assign(static_cast<std::size_t>(ground), 1.0);
  }
  return DiscreteKernel(arity, ground, std::move(values), std::move(measure));
}

DiscreteKernel load_kernel(const std::filesystem::path& path) {
  return parse_kernel(read_file(path));
}

}  // namespace chaos
