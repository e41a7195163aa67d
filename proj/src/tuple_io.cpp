#include "mtuple/tuple_io.hpp"

#include <fstream>
#include <numeric>
#include <optional>

#include "mtuple/errors.hpp"

namespace mtuple::io {

Json spec_to_json(const BasisSpec& spec) {
  Json out = Json::array();
  for (const auto& f : spec.factors()) out.push_back({{"order", f.order}, {"degree", f.degree}});
  return out;
}

BasisSpec spec_from_json(int dimension, const Json& j) {
  if (j.is_string()) return BasisSpec::parse(dimension, j.get<std::string>());
  if (!j.is_array()) throw FormatError("spec must be an array of {order, degree}");
  std::vector<BasisFactor> factors;
  for (const auto& f : j) factors.push_back({f.at("order").get<int>(), f.at("degree").get<int>()});
  return {dimension, std::move(factors)};
}

Json basis_to_json(const MonomialBasis& basis) {
  Json out = Json::array();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    Json mono = Json::array();
    for (const auto& m : basis.factors_of(i)) mono.push_back(m.exponents());
    out.push_back(std::move(mono));
  }
  return out;
}

Json family_to_json(const TupleFamily& family) {
  Json tuples = Json::array();
  for (const auto& t : family.tuples()) tuples.push_back({{"id", t.id}, {"alphas", t.alphas}});
  return {{"format", kTupleFormat},
          {"dimension", family.dimension()},
          {"spec", spec_to_json(family.spec())},
          {"basis_size", family.basis()->size()},
          {"basis", basis_to_json(*family.basis())},
          {"tuples", std::move(tuples)}};
}

Json battery_to_json(const TupleBattery& battery) {
  Json families = Json::array();
  int dim = 0;
  for (const auto& f : battery) {
    dim = f.dimension();
    families.push_back(family_to_json(f));
  }
  return {{"format", kBatteryFormat}, {"dimension", dim}, {"families", std::move(families)}};
}

namespace {

TupleFamily family_from_json(const Json& j, int expected_dim, const LoadOptions& options,
                             std::vector<std::string>& warnings) {
  const int dim = j.at("dimension").get<int>();
  if (expected_dim > 0 && dim != expected_dim) {
    throw FormatError("tuple family has dimension " + std::to_string(dim) + ", expected " +
                      std::to_string(expected_dim));
  }
  const auto spec = spec_from_json(dim, j.at("spec"));
  auto basis = std::make_shared<const MonomialBasis>(spec);
  if (j.contains("basis") && j.at("basis") != basis_to_json(*basis)) {
    throw FormatError("basis listed for spec " + spec.to_string() + " differs from its canonical basis");
  }
  std::optional<ConstraintSystem> system;
  if (options.verify_constraints) system = assemble_constraints(spec);

  std::vector<TupleDefinition> tuples;
  for (const auto& jt : j.at("tuples")) {
    TupleDefinition def;
    def.basis = basis;
    def.id = jt.at("id").get<int>();
    def.alphas = jt.at("alphas").get<std::vector<std::vector<std::int64_t>>>();
    if (static_cast<int>(def.alphas.size()) != dim) {
      throw FormatError("tuple " + std::to_string(def.id) + " needs " + std::to_string(dim) + " alpha vectors");
    }
    for (const auto& a : def.alphas) {
      if (a.size() != basis->size()) {
        throw FormatError("tuple " + std::to_string(def.id) + ": alpha length " + std::to_string(a.size()) +
                          " != basis size " + std::to_string(basis->size()));
      }
    }
    auto primitive = make_primitive(def.stacked());
    if (primitive != def.stacked()) {
      warnings.push_back("spec " + spec.to_string() + " tuple " + std::to_string(def.id) +
                         ": coefficients were not primitive and have been normalized");
      std::size_t k = 0;
      for (auto& a : def.alphas) {
        for (auto& c : a) c = static_cast<std::int64_t>(primitive[k++]);
      }
    }
    if (system && !system->satisfied_by(def.stacked())) {
      throw FormatError("spec " + spec.to_string() + " tuple " + std::to_string(def.id) +
                        ": coefficients do not define an equivariant tuple");
    }
    tuples.push_back(std::move(def));
  }
  return {basis, std::move(tuples)};
}

}  // namespace

LoadedTuples tuples_from_json(const Json& j, LoadOptions options) {
  LoadedTuples out;
  const auto format = j.value("format", std::string(kTupleFormat));
  try {
    if (format == kBatteryFormat) {
      const int dim = j.at("dimension").get<int>();
      for (const auto& f : j.at("families")) out.battery.push_back(family_from_json(f, dim, options, out.warnings));
    } else if (format == kTupleFormat) {
      out.battery.push_back(family_from_json(j, 0, options, out.warnings));
    } else {
      throw FormatError("unknown tuple document format '" + format + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed tuple document: ") + e.what());
  } catch (const ArgumentError& e) {
    throw FormatError(std::string("invalid tuple document: ") + e.what());
  }
  return out;
}

Json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "' for reading");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot open '" + path.string() + "' for writing");
  out << j.dump(2) << '\n';
}

void save_tuples(const std::filesystem::path& path, const TupleBattery& battery) {
  write_json(path, battery_to_json(battery));
}

void save_tuples(const std::filesystem::path& path, const TupleFamily& family) {
  write_json(path, family_to_json(family));
}

LoadedTuples load_tuples(const std::filesystem::path& path, LoadOptions options) {
  return tuples_from_json(read_json(path), options);
}

LoadedTuples load_tuples(const std::filesystem::path& path, int dimension, LoadOptions options) {
  auto loaded = load_tuples(path, options);
  for (const auto& f : loaded.battery) {
    if (f.dimension() != dimension) {
      throw FormatError("'" + path.string() + "' holds " + std::to_string(f.dimension()) +
                        "D tuples, expected " + std::to_string(dimension) + "D");
    }
  }
  return loaded;
}

namespace {

Json triplets_to_json(const SparseIntMatrix& m) {
  Json entries = Json::array();
  for (const auto& t : m.entries()) entries.push_back({t.row, t.col, t.value});
  return entries;
}

SparseIntMatrix triplets_from_json(std::int64_t rows, std::int64_t cols, const Json& j) {
  std::vector<Triplet> entries;
  for (const auto& e : j) {
    entries.push_back({e.at(0).get<std::int64_t>(), e.at(1).get<std::int64_t>(), e.at(2).get<std::int64_t>()});
  }
  return {rows, cols, std::move(entries)};
}

}  // namespace

Json operator_to_json(const MonomialOperator& op) {
  return {{"format", kOperatorFormat},
          {"kind", "monomial"},
          {"dimension", op.basis->dimension()},
          {"spec", spec_to_json(op.basis->spec())},
          {"generator", {op.generator.a, op.generator.b}},
          {"basis", basis_to_json(*op.basis)},
          {"size", op.matrix.rows()},
          {"entries", triplets_to_json(op.matrix)}};
}

MonomialOperator operator_from_json(const Json& j) {
  try {
    const int dim = j.at("dimension").get<int>();
    auto basis = std::make_shared<const MonomialBasis>(spec_from_json(dim, j.at("spec")));
    if (j.contains("basis") && j.at("basis") != basis_to_json(*basis)) throw FormatError("operator basis mismatch");
    const GeneratorId g{j.at("generator").at(0).get<int>(), j.at("generator").at(1).get<int>()};
    validate_generator(dim, g);
    const auto size = j.at("size").get<std::int64_t>();
    if (size != static_cast<std::int64_t>(basis->size())) throw FormatError("operator size mismatch");
    return {g, basis, triplets_from_json(size, size, j.at("entries"))};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed operator document: ") + e.what());
  }
}

Json operator_to_json(const MomentOperator& op) {
  return {{"format", kOperatorFormat},
          {"kind", "moment"},
          {"dimension", op.dimension},
          {"order", op.order},
          {"generator", {op.generator.a, op.generator.b}},
          {"size", op.matrix.rows()},
          {"entries", triplets_to_json(op.matrix)}};
}

MomentOperator moment_operator_from_json(const Json& j) {
  try {
    const int dim = j.at("dimension").get<int>();
    const int order = j.at("order").get<int>();
    const GeneratorId g{j.at("generator").at(0).get<int>(), j.at("generator").at(1).get<int>()};
    validate_generator(dim, g);
    const auto size = j.at("size").get<std::int64_t>();
    if (size != static_cast<std::int64_t>(multi_index_count(dim, order))) throw FormatError("operator size mismatch");
    return {dim, order, g, triplets_from_json(size, size, j.at("entries"))};
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("malformed operator document: ") + e.what());
  }
}

}  // namespace mtuple::io
